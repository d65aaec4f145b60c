"""Model files: JSON framing, expressions as strings in the polynomial grammar.

A model looks like::

    {
      "mode": "real",
      "variables": [{"name": "x", "weight": 0, "kind": "base"},
                    {"name": "x_d1", "weight": 1}],
      "items": {"h": {"type": "action", "monoid": "G2-right",
                      "components": {"x_d1": "a*x_d1"}}},
      "tasks": [{"command": "verify-action", "target": "h"}]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .fields import VectorField
from .g2 import BulletProduct, WeightMinusOneField
from .parsing import ParseError, parse_expr
from .polynomial import BASE, EVEN, FIBER, ODD, Variable
from .structures import ActionFamily, GradedSignature, SignatureError, monoid_by_name

MODES = ("real", "complex", "super")
COMMANDS = (
    "verify-action", "weights", "homogenize", "flow", "g2-right", "g2-classify",
    "g2-left-bullet", "m2-analyze", "nice", "holomorphic", "fourier-project",
    "super-homogenize", "body-reduce", "morphism-check",
)
ALIASES = {"weight-field": "weights"}


class ModelError(ValueError):
    """Malformed model; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


@dataclass
class Task:
    name: str
    command: str
    target: str | None
    args: dict = field(default_factory=dict)


@dataclass
class MapItem:
    source: GradedSignature
    target: GradedSignature
    components: dict


@dataclass
class Model:
    mode: str
    variables: dict[str, Variable]
    items: dict[str, Any]
    tasks: list[Task]
    text: str = ""

    @property
    def complex_mode(self) -> bool:
        return self.mode == "complex"

    def signature(self, names=None) -> GradedSignature:
        if names is None:
            return GradedSignature(v for v in self.variables.values() if not v.is_conjugated)
        return GradedSignature(self._lookup(n) for n in names)

    def _lookup(self, name: str) -> Variable:
        if name not in self.variables:
            raise ModelError(f"undeclared variable {name!r}", *self.locate(name))
        return self.variables[name]

    def locate(self, snippet: str) -> tuple[int | None, int | None]:
        """Line and column of the first quoted occurrence of ``snippet``."""
        pos = self.text.find(json.dumps(snippet))
        if pos < 0:
            return None, None
        return _line_col(self.text, pos + 1)

    def parse(self, text, extra=()) -> Any:
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            text = str(Fraction(text))
        if not isinstance(text, str):
            raise ModelError(f"expected an expression string, got {text!r}")
        scope = dict(self.variables)
        for v in extra:
            scope[v.name] = v
        try:
            return parse_expr(text, scope, self.complex_mode)
        except ParseError as exc:
            line, col = self.locate(text)
            if line is not None:
                col = col + 1 + exc.offset
            raise ModelError(f"cannot parse {text!r}: {exc.bare_message}", line, col) from exc


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _variable(spec: dict, mode: str) -> Variable:
    try:
        name = spec["name"]
    except (KeyError, TypeError):
        raise ModelError(f"variable declaration without a name: {spec!r}")
    weight = int(spec.get("weight", 0))
    parity = spec.get("parity", EVEN)
    if parity not in (EVEN, ODD):
        raise ModelError(f"unknown parity {parity!r} for {name}")
    if parity == ODD and mode != "super":
        raise ModelError(f"odd variable {name} outside super mode")
    kind = spec.get("kind", BASE if weight == 0 else FIBER)
    if kind not in (BASE, FIBER):
        raise ModelError(f"unknown kind {kind!r} for {name}")
    return Variable(name, weight, parity, kind)


def _action(model: Model, name: str, spec: dict) -> ActionFamily:
    try:
        monoid = monoid_by_name(spec.get("monoid", "complexes" if model.complex_mode else "reals"))
    except ValueError as exc:
        raise ModelError(f"item {name}: {exc}") from exc
    sig = model.signature(spec.get("coordinates"))
    comps = {}
    for cname, text in spec.get("components", {}).items():
        comps[model._lookup(cname)] = model.parse(text, monoid.params)
    try:
        fam = ActionFamily(sig, monoid, comps)
    except SignatureError as exc:
        raise ModelError(f"item {name}: {exc}") from exc
    return fam.with_conjugates() if model.complex_mode else fam


def _field(model: Model, spec: dict) -> VectorField:
    return VectorField({model._lookup(c): model.parse(t) for c, t in spec.get("components", {}).items()})


def _block_field(model: Model, spec: dict) -> WeightMinusOneField:
    def conv(x):
        if isinstance(x, list):
            return [conv(y) for y in x]
        return model.parse(x)

    base = [model._lookup(n) for n in spec.get("base", [])]
    return WeightMinusOneField(conv(spec["F"]), conv(spec["G"]), conv(spec["H"]), conv(spec["I"]), base)


def _bullet(spec: dict) -> BulletProduct:
    n = int(spec["n"])
    products = {}
    for key, vec in spec.get("products", {}).items():
        i, j = (int(k) - 1 for k in key.split(","))
        if len(vec) != n:
            raise ModelError(f"product {key} needs {n} entries")
        products[(i, j)] = [Fraction(str(c)) for c in vec]
    return BulletProduct.from_products(n, products)


def _map(model: Model, spec: dict) -> MapItem:
    src = model.signature(spec["source"])
    dst = model.signature(spec["target"])
    comps = {dst[n]: model.parse(t) for n, t in spec.get("components", {}).items()}
    missing = [v.name for v in dst if v not in comps]
    if missing:
        raise ModelError(f"map lacks components for {missing}")
    return MapItem(src, dst, comps)


def load_model_text(text: str) -> Model:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(raw, dict):
        raise ModelError("model must be a JSON object")
    mode = raw.get("mode", "real")
    if mode not in MODES:
        raise ModelError(f"unknown mode {mode!r}")
    variables: dict[str, Variable] = {}
    for spec in raw.get("variables", []):
        v = _variable(spec, mode)
        if v.name in variables:
            raise ModelError(f"duplicate variable {v.name}", *_locate(text, v.name))
        variables[v.name] = v
        if mode == "complex":
            variables[v.conj().name] = v.conj()
    model = Model(mode, variables, {}, [], text)
    builders = {
        "action": lambda n, s: _action(model, n, s),
        "field": lambda n, s: _field(model, s),
        "block-field": lambda n, s: _block_field(model, s),
        "bullet": lambda n, s: _bullet(s),
        "map": lambda n, s: _map(model, s),
    }
    for name, spec in raw.get("items", {}).items():
        kind = spec.get("type")
        if kind not in builders:
            raise ModelError(f"item {name}: unknown type {kind!r}", *model.locate(name))
        try:
            model.items[name] = builders[kind](name, spec)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ModelError):
                raise
            raise ModelError(f"item {name}: {exc}", *model.locate(name)) from exc
    names = set()
    for k, spec in enumerate(raw.get("tasks", [])):
        command = ALIASES.get(spec.get("command"), spec.get("command"))
        if command not in COMMANDS:
            raise ModelError(f"unknown task {spec.get('command')!r}", *model.locate(str(spec.get("command"))))
        target = spec.get("target")
        if target is not None and target not in model.items:
            raise ModelError(f"task {k + 1}: unknown target {target!r}", *model.locate(target))
        tname = spec.get("name", f"{k + 1:02d}-{command}")
        if tname in names:
            raise ModelError(f"duplicate task name {tname}")
        names.add(tname)
        model.tasks.append(Task(tname, command, target, dict(spec.get("args", {}))))
    return model


def _locate(text: str, snippet: str):
    pos = text.find(json.dumps(snippet))
    return _line_col(text, pos + 1) if pos >= 0 else (None, None)


def load_model(path: str | Path) -> Model:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from exc
    return load_model_text(text)
