from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from homogeneity.fields import (
    FlowError,
    VectorField,
    euler_field,
    field_weight,
    flow_nilpotent,
    lie_bracket,
    verify_flow_group_law,
    weight_field,
)
from homogeneity.graded import (
    HomogenizeError,
    NotGradedError,
    check_morphism,
    core_extract,
    core_restriction,
    homogenize,
    homogenize_real,
    tower_truncate,
    transform_family,
)
from homogeneity.jet_bundles import tk_right_action, tkstar_signature
from homogeneity.polynomial import (
    Polynomial,
    Variable,
    all_monomials,
    substitute,
    to_expr,
    weight_decompose,
)
from homogeneity.structures import (
    ActionFamily,
    GradedSignature,
    reals,
    standard_homothety,
    verify_action,
)

from strategies import EVEN_VARS, polynomials, rationals

P = Polynomial.var
u, v = Variable("u", 1), Variable("v", 2)
R11 = GradedSignature([u, v])
T = P(reals().params[0])


def twisted_family():
    """The standard R^(1,1) action conjugated by (u, v) -> (u, v + u^2 + u)."""
    return ActionFamily(R11, reals(), {u: T * P(u), v: T ** 2 * P(v) + (T - T ** 2) * P(u)})


def g2_at_scalings(fam):
    a, b = fam.params
    comps = {y: substitute(e, {a: T, b: Polynomial()}, check_parity=False)
             for y, e in fam.components.items()}
    return ActionFamily(fam.signature, reals(), comps)


# --- homotheties and actions ----------------------------------------------------

def test_standard_homothety_r21():
    x1, x2, y = Variable("x1", 1), Variable("x2", 1), Variable("y", 2)
    h = standard_homothety(GradedSignature([x1, x2, y]))
    assert h.components == {x1: T * P(x1), x2: T * P(x2), y: T ** 2 * P(y)}
    assert h.at([1]) == {x1: P(x1), x2: P(x2), y: P(y)}
    assert verify_action(h)


def test_verify_action_examples():
    assert verify_action(twisted_family())
    y = Variable("y", 1)
    bad = ActionFamily(GradedSignature([y]), reals(), {y: T * P(y) + T ** 2 * P(y)})
    res = verify_action(bad)
    assert not res and res.location == "y" and res.witness


def test_weight_field_examples():
    assert weight_field(standard_homothety(R11)) == VectorField({u: P(u), v: 2 * P(v)})
    x = Variable("x", 0, kind="base")
    assert not weight_field(standard_homothety(GradedSignature([x])))
    assert weight_field(twisted_family()) == VectorField({u: P(u), v: 2 * P(v) - P(u)})


def test_t2_bracket_and_weight():
    xd1, xd2 = Variable("x_d1", 1), Variable("x_d2", 2)
    delta = VectorField({xd1: P(xd1), xd2: 2 * P(xd2)})
    X = VectorField({xd2: P(xd1)})
    assert lie_bracket(delta, X) == X.scale(-1)
    assert not lie_bracket(X, X)
    assert field_weight(X, delta) == -1
    assert field_weight(delta, delta) == 0
    assert str(X) == "x_d1*d/dx_d2"


def test_tkstar_field_has_weight_one():
    sig = tkstar_signature(1)
    p1, p11 = sig["p1"], sig["p1_1"]
    Y = VectorField({p11: P(p1) ** 2})
    assert field_weight(Y, euler_field(sig)) == 1


def test_inhomogeneous_field_has_no_weight():
    X = VectorField({v: P(u) + P(v)})
    assert field_weight(X, euler_field(R11)) is None


@settings(max_examples=50, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_jacobi_identity(p, q, r):
    fields = []
    for a_, b_, c_ in ((p, q, r), (q, r, p), (r, p, q)):
        fields.append(VectorField(dict(zip(EVEN_VARS, (a_, b_, c_)))))
    X, Y, Z = fields
    total = (lie_bracket(X, lie_bracket(Y, Z)) + lie_bracket(Y, lie_bracket(Z, X))
             + lie_bracket(Z, lie_bracket(X, Y)))
    assert not total


@pytest.mark.parametrize("fam", [standard_homothety(R11), twisted_family(),
                                 g2_at_scalings(tk_right_action(2, 2))])
def test_weight_field_commutes_with_itself(fam):
    assert verify_action(fam)
    delta = weight_field(fam)
    assert not lie_bracket(delta, delta)
    assert field_weight(delta, delta) == 0


# --- weight -1 fields and flows -------------------------------------------------

x = Variable("x", 0, kind="base")
y1, y2, y3 = Variable("y1", 1), Variable("y2", 2), Variable("y3", 3)
SIG3 = GradedSignature([x, y1, y2, y3])
base_coeffs = polynomials([x], max_terms=2)


@st.composite
def weight_minus_one_fields(draw):
    F, G, H, I = (draw(base_coeffs) for _ in range(4))
    return VectorField({y1: F, y2: G * P(y1), y3: H * P(y2) + I * P(y1) ** 2})


@settings(max_examples=40, deadline=None)
@given(weight_minus_one_fields())
def test_weight_minus_one_fields_have_no_base_part(X):
    delta = euler_field(SIG3)
    assert field_weight(X, delta) in (-1, 0)
    assert not X[x]
    bent = X + VectorField({x: Polynomial.const(1)})
    assert field_weight(bent, delta) != -1


@settings(max_examples=40, deadline=None)
@given(weight_minus_one_fields())
def test_flow_group_law(X):
    flow = flow_nilpotent(X, euler_field(SIG3), SIG3)
    assert verify_flow_group_law(flow)


def test_flow_examples():
    xd1, xd2 = Variable("x_d1", 1), Variable("x_d2", 2)
    sig = GradedSignature([xd1, xd2])
    flow = flow_nilpotent(VectorField({xd2: P(xd1)}), euler_field(sig), sig)
    s = P(flow.params[0])
    assert flow.components[xd2] == P(xd2) + s * P(xd1)
    zero = flow_nilpotent(VectorField(), euler_field(sig), sig)
    assert all(to_expr(e) == P(w) for w, e in zero.components.items())
    with pytest.raises(FlowError):
        flow_nilpotent(VectorField({xd2: P(xd2)}), euler_field(sig), sig)


# --- homogeneous functions -------------------------------------------------------

@pytest.mark.parametrize("weights", [(1,), (1, 2), (1, 1, 3), (2, 3)])
def test_homogeneous_iff_single_weight(weights):
    sig = GradedSignature([x] + [Variable(f"z{i}", w) for i, w in enumerate(weights)])
    h = standard_homothety(sig)
    monos = all_monomials(list(sig), 4)
    candidates = monos + [m1 + m2 for m1, m2 in combinations(monos[:30], 2)]
    top = 4 * max(weights)
    for f in candidates:
        pulled = to_expr(substitute(f, h.components))
        keys = set(weight_decompose(f, sig.weights()))
        for w in range(top + 1):
            assert (pulled == to_expr(f) * T ** w) == (keys == {w}), (str(f), w)


# --- tower and core ---------------------------------------------------------------

def test_tower_truncate_t2():
    fam = g2_at_scalings(tk_right_action(1, 2))
    sig = fam.signature
    s1, f1 = tower_truncate(sig, fam, 1)
    assert [w.name for w in s1] == ["x", "x_d1"]
    assert verify_action(f1)
    assert tower_truncate(sig, fam, 2)[0] == sig
    assert [w.name for w in tower_truncate(sig, fam, 0)[0]] == ["x"]


def test_tower_rejects_non_graded():
    fam = ActionFamily(R11, reals(), {u: T * P(u) + T * P(v) - T ** 2 * P(v)})
    with pytest.raises(NotGradedError):
        tower_truncate(R11, fam, 1)


def test_core_of_t3_is_tangent_bundle():
    fam = g2_at_scalings(tk_right_action(1, 2))
    core_sig, core = core_extract(fam.signature, fam)
    assert [(w.name, w.weight) for w in core_sig] == [("x", 0), ("x_d2", 1)]
    assert core.components[core_sig["x_d2"]] == T * P(core_sig["x_d2"])
    vb = standard_homothety(GradedSignature([x, y1]))
    assert core_extract(vb.signature, vb)[0] == vb.signature
    sig, fam11 = core_restriction(R11, standard_homothety(R11))
    assert [w.name for w in sig] == ["v"]


# --- morphisms ---------------------------------------------------------------------

def test_check_morphism_examples():
    x1, x2, y = Variable("x1", 1), Variable("x2", 1), Variable("y", 2)
    sig = GradedSignature([x1, x2, y])
    phi = {x1: 3 * P(x2), x2: P(x1) + 2 * P(x2), y: P(y) + P(x1) * P(x2) + 5 * P(x2) ** 2}
    assert check_morphism(phi, sig, sig)
    assert check_morphism({w: P(w) for w in sig}, sig, sig)
    res = check_morphism({x1: P(x1), x2: P(x2), y: P(y) + P(x1)}, sig, sig)
    assert not res and res.location == "y"


# --- the homogenizer ----------------------------------------------------------------

def test_homogenize_twisted():
    res = homogenize_real(twisted_family())
    assert res.forward_strings() == {"u": "u", "v": "-u + v"}
    new = transform_family(twisted_family(), res)
    assert new.components == standard_homothety(res.signature).components
    again = homogenize_real(new)
    assert again.is_identity()


def test_homogenize_standard_is_identity():
    assert homogenize_real(standard_homothety(GradedSignature([x, y1, y2]))).is_identity()


def test_homogenize_rejects_non_actions():
    y = Variable("y", 1)
    bad = ActionFamily(GradedSignature([y]), reals(), {y: T * P(y) + T ** 2 * P(y)})
    with pytest.raises(HomogenizeError):
        homogenize(bad)


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals)
def test_homogenize_undoes_triangular_scrambles(c1, c2, c3):
    # old coordinates: q = v + c2 u + c3 u^2, p = u + c1 q, over the standard action on (u, v)
    p, q = Variable("p", 1), Variable("q", 2)
    sig = GradedSignature([p, q])
    q_of = P(v) + c2 * P(u) + c3 * P(u) ** 2
    scramble = {p: P(u) + c1 * q_of, q: q_of}
    uu = P(p) - c1 * P(q)
    unscramble = {u: uu, v: P(q) - c2 * uu - c3 * uu ** 2}
    comps = {w: substitute(substitute(e, {u: T * P(u), v: T ** 2 * P(v)}), unscramble)
             for w, e in scramble.items()}
    fam = ActionFamily(sig, reals(), comps)
    assert verify_action(fam)
    res = homogenize(fam)
    assert transform_family(fam, res).components == standard_homothety(res.signature).components
