"""Batch front end: ``homogeneity run MODEL [--task NAME]... [--machine-output PATH] [--parallel]``."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable

from .complex_graded import (
    NotNiceError,
    complex_homogenize,
    fourier_weight_project,
    is_holomorphic,
    niceness_check,
    real_restriction,
    specialize_base,
    verify_c_action,
)
from .fields import (
    FlowError,
    VectorField,
    euler_field,
    field_weight,
    flow_nilpotent,
    lie_bracket,
    verify_flow_group_law,
    weight_field,
)
from .g2 import (
    BulletProduct,
    G2Error,
    WeightMinusOneField,
    bullet_obstruction,
    bullet_polarize,
    criterion_deg_le3,
    extendable_to_zero,
    infinitesimal_pair,
    left_family_from_bullet,
    right_family,
    straight_line_check,
)
from .graded import HomogenizeError, check_morphism, homogenize
from .m2 import double_weight_analysis
from .model import MapItem, Model, ModelError, Task, load_model
from .polynomial import RationalExpr, to_expr
from .structures import ActionFamily, CheckResult, verify_action
from .supergraded import body_reduce, super_homogenize, verify_super_action

OK, VIOLATION, ERROR = "ok", "violation", "error"


class TaskInputError(ValueError):
    """The task cannot run on its target (wrong item type, bad arguments)."""


def _record(task: Task, status: str, witness=None, location=None, artifacts=None, message=None) -> dict:
    rec = {"task": task.name, "command": task.command, "target": task.target, "status": status}
    if location is not None:
        rec["location"] = location
    if witness is not None:
        rec["witness"] = witness
    if message is not None:
        rec["message"] = message
    if artifacts:
        rec["artifacts"] = artifacts
    return rec


def _from_check(task: Task, res: CheckResult, artifacts=None) -> dict:
    if res:
        return _record(task, OK, artifacts=artifacts)
    return _record(task, VIOLATION, res.witness, res.location, artifacts)


def _strings(mapping) -> dict[str, str]:
    return {v.name: str(e) for v, e in mapping.items()}


def _item(model: Model, task: Task, *types):
    if task.target is None:
        raise TaskInputError(f"{task.command} needs a target")
    item = model.items[task.target]
    if types and not isinstance(item, types):
        names = " or ".join(t.__name__ for t in types)
        raise TaskInputError(f"{task.command} expects {names}, {task.target} is {type(item).__name__}")
    return item


def _family_kind(fam: ActionFamily) -> str:
    return fam.monoid.name


# ---------------------------------------------------------------------------
# commands


def cmd_verify_action(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    if model.mode == "complex":
        res = verify_c_action(fam)
    elif model.mode == "super":
        res = verify_super_action(fam)
    else:
        res = verify_action(fam)
    return _from_check(task, res, {"monoid": fam.monoid.name})


def cmd_weights(model: Model, task: Task) -> dict:
    item = _item(model, task, ActionFamily, VectorField)
    if isinstance(item, VectorField):
        sig = model.signature(task.args.get("coordinates"))
        w = field_weight(item, euler_field(sig))
        if w is None:
            return _record(task, VIOLATION, str(item), message="field is not weight-homogeneous")
        return _record(task, OK, artifacts={"field": str(item), "weight": w})
    fam = item
    kind = _family_kind(fam)
    art = {"weights": fam.signature.weights(), "rank": list(fam.signature.rank())}
    if kind == "reals":
        art["delta"] = str(weight_field(fam))
    elif kind == "complexes":
        art["delta"] = str(weight_field(real_restriction(fam)))
    elif kind in ("G2-right", "G2-left"):
        delta, X = infinitesimal_pair(fam)
        art.update({"delta": str(delta), "X": str(X), "[delta,X]": str(lie_bracket(delta, X)),
                    "weight(X)": field_weight(X, delta)})
    elif kind.startswith("M2"):
        rep = double_weight_analysis(fam)
        art.update({"delta1": str(rep.delta1), "delta2": str(rep.delta2)})
    else:
        raise TaskInputError(f"weights does not support the monoid {kind}")
    if "delta" in art and str(euler_field(fam.signature)) != art["delta"]:
        return _record(task, VIOLATION, art["delta"], message="coordinates are not graded",
                       artifacts=art)
    return _record(task, OK, artifacts=art)


def _base_values(model: Model, task: Task) -> dict:
    return {k: model.parse(v) for k, v in task.args.get("base", {}).items()}


def cmd_homogenize(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    try:
        if fam.monoid.name == "complexes":
            res = complex_homogenize(fam, _base_values(model, task))
            art = {"coordinates": _strings(res.forward), "inverse": _strings(res.inverse),
                   "weights": res.signature.weights()}
        else:
            res = homogenize(fam)
            art = {"coordinates": _strings(res.forward), "inverse": _strings(res.inverse),
                   "weights": res.signature.weights()}
    except NotNiceError as exc:
        return _record(task, VIOLATION, exc.witness, f"level {exc.level}", message=str(exc))
    except HomogenizeError as exc:
        return _record(task, VIOLATION, exc.witness, message=str(exc))
    return _record(task, OK, artifacts=art)


def _weight_minus_one(model: Model, task: Task):
    """(delta, X, signature) from a field or block-field target."""
    item = _item(model, task, VectorField, WeightMinusOneField)
    if isinstance(item, WeightMinusOneField):
        sig = item.signature()
        return euler_field(sig), item.field(), sig
    sig = model.signature(task.args.get("coordinates"))
    return euler_field(sig), item, sig


def cmd_flow(model: Model, task: Task) -> dict:
    delta, X, sig = _weight_minus_one(model, task)
    try:
        flow = flow_nilpotent(X, delta, sig)
    except FlowError as exc:
        return _record(task, VIOLATION, str(X), message=str(exc))
    return _from_check(task, verify_flow_group_law(flow), {"flow": _strings(flow.components)})


def cmd_g2_right(model: Model, task: Task) -> dict:
    delta, X, sig = _weight_minus_one(model, task)
    try:
        fam = right_family(delta, X, sig)
    except G2Error as exc:
        return _record(task, VIOLATION, str(X), message=str(exc))
    return _from_check(task, verify_action(fam), {"action": _strings(fam.components)})


def _negative_part(e, a) -> str:
    e = to_expr(e)
    num = e.num if isinstance(e, RationalExpr) else e
    part = num.filter_terms(lambda m: dict(m).get(a, 0) < 0)
    if isinstance(e, RationalExpr):
        return str(RationalExpr(part, e.den))
    return str(part)


def cmd_g2_classify(model: Model, task: Task) -> dict:
    item = _item(model, task, ActionFamily, VectorField, WeightMinusOneField)
    art: dict = {}
    if isinstance(item, ActionFamily):
        if not item.monoid.name.startswith("G2"):
            raise TaskInputError("g2-classify expects a G2 family")
        delta, X = infinitesimal_pair(item)
        sig = item.signature
        if delta != euler_field(sig):
            return _record(task, VIOLATION, str(delta), message="coordinates are not graded")
    else:
        delta, X, sig = _weight_minus_one(model, task)
        if isinstance(item, WeightMinusOneField):
            art["criterion"] = criterion_deg_le3(item)
    art.update({"delta": str(delta), "X": str(X)})
    try:
        fam = right_family(delta, X, sig)
    except G2Error as exc:
        return _record(task, VIOLATION, str(X), message=str(exc), artifacts=art)
    if isinstance(item, ActionFamily):
        art["reconstructs"] = all(to_expr(fam.components[v]) == to_expr(item.components[v])
                                  for v in sig)
    ext = extendable_to_zero(fam)
    art["action"] = _strings(fam.components)
    if ext:
        art["class"] = "extendable"
        return _record(task, OK, artifacts=art)
    art["class"] = "blocked"
    a = fam.params[0]
    witness = _negative_part(fam.components[sig[ext.coordinate]], a)
    return _record(task, VIOLATION, witness, ext.coordinate, art,
                   message=f"a^{ext.exponent} in {ext.coordinate}")


def cmd_g2_left_bullet(model: Model, task: Task) -> dict:
    B = _item(model, task, BulletProduct)
    obstruction = bullet_obstruction(B)
    if any(obstruction):
        witness = "(" + ", ".join(str(x) for x in obstruction) + ")"
        return _record(task, VIOLATION, witness, message="v.(v.v) does not vanish",
                       artifacts={"cube": [str(x) for x in B.cube()]})
    fam = left_family_from_bullet(B)
    pol = bullet_polarize(B)
    art = {"action": _strings(fam.components),
           "polarization": [str(x) for x in pol["polarization"]],
           "square": [str(x) for x in pol["square"]]}
    res = verify_action(fam)
    if not res:
        return _from_check(task, res, art)
    if any(pol["polarization"]) or any(pol["square"]):
        return _record(task, VIOLATION, str(art), message="polarization identities fail")
    return _from_check(task, straight_line_check(B), art)


def cmd_m2_analyze(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    if not fam.monoid.name.startswith("M2"):
        raise TaskInputError("m2-analyze expects an M2 family")
    res = verify_action(fam)
    if not res:
        return _from_check(task, res)
    rep = double_weight_analysis(fam)
    art = {"delta1": str(rep.delta1), "delta2": str(rep.delta2), "X": str(rep.X),
           "Y": str(rep.Y), "brackets": rep.bracket_strings()}
    for key in ("[D1,D2]", "[X,Y]-(D1-D2)"):
        if rep.brackets[key]:
            return _record(task, VIOLATION, str(rep.brackets[key]), key, art)
    return _record(task, OK, artifacts=art)


def cmd_nice(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    try:
        rep = niceness_check(fam)
    except NotNiceError as exc:
        return _record(task, VIOLATION, exc.witness, message=str(exc))
    levels = {str(j): (OK if r else VIOLATION) for j, r in rep.levels.items()}
    art = {"levels": levels, "coordinates": _strings(rep.homogenization.forward)}
    if rep:
        return _record(task, OK, artifacts=art)
    bad = rep.levels[rep.failed_level]
    return _record(task, VIOLATION, bad.witness, f"level {rep.failed_level}", art,
                   message=f"not nice at level {rep.failed_level} ({bad.location})")


def cmd_holomorphic(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    return _from_check(task, is_holomorphic(fam))


def cmd_fourier_project(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    if "function" not in task.args or "weight" not in task.args:
        raise TaskInputError("fourier-project needs args.function and args.weight")
    f = model.parse(task.args["function"])
    if task.args.get("base"):
        fam = specialize_base(fam, _base_values(model, task))
    proj = fourier_weight_project(f, fam, int(task.args["weight"]))
    return _record(task, OK, artifacts={"projection": str(proj)})


def cmd_super_homogenize(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    try:
        res = super_homogenize(fam, fallback=task.args.get("fallback", True))
    except HomogenizeError as exc:
        return _record(task, VIOLATION, exc.witness, message=str(exc))
    art = {"coordinates": _strings(res.forward), "inverse": _strings(res.inverse),
           "method": res.method, "weights": res.signature.weights()}
    if res.domain:
        art["domain"] = [f"{d} != 0" for d in res.domain]
    return _record(task, OK, artifacts=art)


def cmd_body_reduce(model: Model, task: Task) -> dict:
    fam = _item(model, task, ActionFamily)
    red = body_reduce(fam)
    art = {"body": _strings(red.body.components), "alpha": red.alpha_strings(),
           "odd": [v.name for v in red.odd]}
    body_ok = verify_action(red.body)
    if not body_ok:
        return _record(task, VIOLATION, body_ok.witness, body_ok.location, art,
                       message="body is not an action")
    res = red.multiplicative
    if not res:
        return _record(task, VIOLATION, res.witness, res.location, art,
                       message="alpha is not multiplicative")
    return _record(task, OK, artifacts=art)


def cmd_morphism_check(model: Model, task: Task) -> dict:
    phi = _item(model, task, MapItem)
    return _from_check(task, check_morphism(phi.components, phi.source, phi.target))


COMMAND_TABLE: dict[str, Callable[[Model, Task], dict]] = {
    "verify-action": cmd_verify_action,
    "weights": cmd_weights,
    "homogenize": cmd_homogenize,
    "flow": cmd_flow,
    "g2-right": cmd_g2_right,
    "g2-classify": cmd_g2_classify,
    "g2-left-bullet": cmd_g2_left_bullet,
    "m2-analyze": cmd_m2_analyze,
    "nice": cmd_nice,
    "holomorphic": cmd_holomorphic,
    "fourier-project": cmd_fourier_project,
    "super-homogenize": cmd_super_homogenize,
    "body-reduce": cmd_body_reduce,
    "morphism-check": cmd_morphism_check,
}


def run_task(model: Model, task: Task) -> dict:
    try:
        return COMMAND_TABLE[task.command](model, task)
    except (TaskInputError, ModelError) as exc:
        return _record(task, ERROR, message=str(exc))
    except (ValueError, ArithmeticError, AssertionError) as exc:
        return _record(task, ERROR, message=f"{type(exc).__name__}: {exc}")


def run_model(model: Model, names: list[str] | None = None, parallel: bool = False) -> list[dict]:
    tasks = model.tasks
    if names:
        known = {t.name for t in tasks} | {t.command for t in tasks}
        unknown = [n for n in names if n not in known]
        if unknown:
            raise ModelError(f"unknown task {unknown[0]!r}")
        tasks = [t for t in tasks if t.name in names or t.command in names]
    if parallel and len(tasks) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda t: run_task(model, t), tasks))
    return [run_task(model, t) for t in tasks]


def exit_status(records: list[dict]) -> int:
    statuses = {r["status"] for r in records}
    if ERROR in statuses:
        return 2
    if VIOLATION in statuses:
        return 1
    return 0


def render_text(records: list[dict]) -> str:
    lines = []
    for r in records:
        head = f"[{r['status']}] {r['task']} ({r['command']} {r['target'] or '-'})"
        lines.append(head)
        for key in ("message", "location", "witness"):
            if key in r:
                lines.append(f"    {key}: {r[key]}")
        for key, value in r.get("artifacts", {}).items():
            if isinstance(value, dict):
                lines.append(f"    {key}:")
                for k, v in value.items():
                    lines.append(f"        {k}: {v}")
            else:
                lines.append(f"    {key}: {value}")
    ok = sum(1 for r in records if r["status"] == OK)
    lines.append(f"{ok}/{len(records)} tasks ok")
    return "\n".join(lines) + "\n"


def render_machine(records: list[dict]) -> str:
    return json.dumps(records, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homogeneity",
                                     description="Check graded and homogeneity structures in model files.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run the tasks of a model file")
    run.add_argument("model")
    run.add_argument("--task", action="append", default=[], metavar="NAME",
                     help="run only this task (name or command); repeatable")
    run.add_argument("--machine-output", metavar="PATH", help="write JSON records here")
    run.add_argument("--parallel", action="store_true", help="run tasks concurrently")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model = load_model(args.model)
        records = run_model(model, args.task, args.parallel)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_text(records))
    if args.machine_output:
        with open(args.machine_output, "w", encoding="utf-8") as fh:
            fh.write(render_machine(records))
    return exit_status(records)


if __name__ == "__main__":
    sys.exit(main())
