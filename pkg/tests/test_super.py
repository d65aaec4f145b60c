from pathlib import Path

import pytest
from hypothesis import given, settings

from homogeneity.graded import HomogenizeError, homogenize
from homogeneity.jet_bundles import adapted_signature, tk_lift, tk_right_action
from homogeneity.model import load_model
from homogeneity.polynomial import (
    ODD,
    Polynomial,
    Variable,
    all_monomials,
    reduce_mod_odd,
    substitute,
    to_expr,
)
from homogeneity.structures import ActionFamily, GradedSignature, reals, standard_homothety
from homogeneity.supergraded import (
    block_locus,
    body_reduce,
    f_bracket,
    super_homogenize,
    homogeneous_iff_single_weight,
    super_morphism_check,
    super_rank,
    verify_super_action,
)

from strategies import rationals

FIXTURES = Path(__file__).parent / "fixtures"
P = Polynomial.var
T = P(reals().params[0])
x = Variable("x", 0, kind="base")
theta = Variable("theta", 0, ODD, kind="base")


def strs(mapping):
    return {v.name: str(e) for v, e in mapping.items()}


@pytest.fixture(scope="module")
def model():
    return load_model(FIXTURES / "super_fixtures.json")


def t2_super_homothety():
    fam = tk_right_action([x, theta], 2)
    a, b = fam.params
    comps = {v: substitute(e, {a: T, b: Polynomial()}, check_parity=False)
             for v, e in fam.components.items()}
    return ActionFamily(fam.signature, reals(), comps)


def assert_homogeneous(res, fam):
    t = fam.params[0]
    for z, f in res.forward.items():
        pulled = substitute(f, fam.components)
        assert to_expr(pulled) == to_expr(f) * P(t) ** z.weight, z.name


# --- actions ------------------------------------------------------------------------

def test_standard_super_homothety():
    sig = GradedSignature([Variable("u", 1), Variable("th", 2, ODD)])
    assert verify_super_action(standard_homothety(sig))


def test_t2_super_homothety():
    fam = t2_super_homothety()
    assert [(v.name, v.weight, v.parity) for v in fam.signature] == [
        ("x", 0, "even"), ("theta", 0, "odd"), ("x_d1", 1, "even"), ("theta_d1", 1, "odd"),
        ("x_d2", 2, "even"), ("theta_d2", 2, "odd")]
    assert verify_super_action(fam)
    assert super_rank(fam.signature) == {0: (1, 1), 1: (1, 1), 2: (1, 1)}


def test_t2_super_body_reduction():
    red = body_reduce(t2_super_homothety())
    assert red.alpha_strings() == [["1", "0", "0"], ["0", "t", "0"], ["0", "0", "t^2"]]
    assert strs(red.body.components) == {"x": "x", "x_d1": "t*x_d1", "x_d2": "t^2*x_d2"}
    assert red.multiplicative


def test_non_action_with_base_factor():
    th = Variable("th", 1, ODD)
    fam = ActionFamily(GradedSignature([x, th]), reals(), {th: T * P(th) + T * P(x) * P(th)})
    assert not verify_super_action(fam)


def test_parity_violation_is_reported():
    th = Variable("th", 1, ODD)
    u = Variable("u", 1)
    fam = ActionFamily(GradedSignature([u, th]), reals(), {u: T * P(u) + T * P(th), th: T * P(th)})
    res = verify_super_action(fam)
    assert not res and res.location == "u" and res.data["law"] == "parity"


def test_purely_even_body_reduction():
    fam = standard_homothety(GradedSignature([x, Variable("u", 1)]))
    red = body_reduce(fam)
    assert red.body.components == fam.components
    assert red.tilde.components == fam.components


# --- morphisms ------------------------------------------------------------------------

def test_lift_of_odd_rescaling():
    lift = tk_lift({x: P(x), theta: P(theta) * (1 + P(x))}, [x, theta], [x, theta], 2)
    assert strs(lift)["theta_d1"] == "theta*x_d1 + theta_d1*x + theta_d1"
    assert strs(lift)["theta_d2"] == "theta*x_d2 + 2*theta_d1*x_d1 + theta_d2*x + theta_d2"
    sig = adapted_signature([x, theta], 2)
    assert super_morphism_check(lift, sig, sig)


def test_mixed_weight_map_rejected():
    sig = adapted_signature([x, theta], 1)
    phi = {v: P(v) for v in sig}
    phi[sig["theta_d1"]] = P(sig["theta_d1"]) + P(theta)
    res = super_morphism_check(phi, sig, sig)
    assert not res and res.location == "theta_d1"


def test_identity_morphism():
    sig = adapted_signature([x, theta], 2)
    assert super_morphism_check({v: P(v) for v in sig}, sig, sig)


# --- the homogenizer on fixtures --------------------------------------------------------

def test_standard_is_fixed(model):
    fam = standard_homothety(GradedSignature([x, theta, Variable("u", 1), Variable("e", 2, ODD)]))
    res = super_homogenize(fam)
    assert res.method == "normal-form"
    assert all(to_expr(f) == P(z) for z, f in res.forward.items())


def test_shifted_fixture(model):
    fam = model.items["shifted"]
    res = super_homogenize(fam)
    assert res.method == "normal-form"
    assert strs(res.forward)["y"] == "-th1*th2 + y"
    assert_homogeneous(res, fam)
    red = body_reduce(fam)
    assert red.multiplicative


def test_odd_shift_fixture(model):
    fam = model.items["odd-shift"]
    res = super_homogenize(fam)
    assert strs(res.forward)["xi"] == "-th1*th3*th4 + xi"
    assert_homogeneous(res, fam)
    assert {z.name: z.parity for z in res.signature} == {v.name: v.parity for v in fam.signature}


def test_mis_specified_shape_is_not_an_action(model):
    fam = model.items["cross-term"]
    assert not verify_super_action(fam)
    with pytest.raises(HomogenizeError):
        super_homogenize(fam)


def test_alpha_fixture(model):
    fam = model.items["alpha"]
    assert not verify_super_action(fam)
    with pytest.raises(HomogenizeError):
        super_homogenize(fam)
    red = body_reduce(fam)
    assert red.alpha_strings() == [["t*y1 + t"]]
    assert not red.multiplicative and red.multiplicative.location == "Y_eta"
    eta = fam.signature["eta"]
    assert str(f_bracket(fam, P(eta), 1)) == "eta*y1 + eta"
    forward = {v: f_bracket(fam, P(v), 1) for v in fam.signature}
    assert block_locus(forward, list(fam.signature)) == ["y1 + 1"]


def test_rational_family_reports_domain():
    # old odd coordinates a = o1 + o2, b = o1 + xb*o2 over the standard action on (o1, o2)
    xb = Variable("xb", 0, kind="base")
    o1, o2 = Variable("o1", 1, ODD), Variable("o2", 2, ODD)
    a, b = Variable("a", 1, ODD), Variable("b", 1, ODD)
    new_o2 = (P(a) - P(b)) / (1 - P(xb))
    back = {o1: P(a) - new_o2, o2: new_o2}
    old = {a: P(o1) + P(o2), b: P(o1) + P(xb) * P(o2)}
    std = {o1: T * P(o1), o2: T ** 2 * P(o2)}
    comps = {w: substitute(substitute(e, std), back) for w, e in old.items()}
    fam = ActionFamily(GradedSignature([xb, a, b]), reals(), comps)
    assert verify_super_action(fam)
    res = super_homogenize(fam)
    assert res.method == "projector"
    assert res.domain == ["xb - 1"]
    assert sorted(z.weight for z in res.signature.fiber) == [1, 2]
    assert_homogeneous(res, fam)


# --- properties ------------------------------------------------------------------------

u, v = Variable("u", 1), Variable("v", 2)
th0, th1 = Variable("th0", 0, ODD, kind="base"), Variable("th1", 1, ODD)
SCRAMBLE_SIG = GradedSignature([th0, u, v, th1])


def scrambled(c1, c2, c3):
    """Standard action rewritten in v' = v + c1 u + c2 th0 th1 + c3 u^2."""
    shift = c1 * P(u) + c2 * P(th0) * P(th1) + c3 * P(u) ** 2
    std = standard_homothety(SCRAMBLE_SIG)
    comps = {}
    for w in SCRAMBLE_SIG:
        image = substitute(P(v) + shift if w == v else P(w), std.components)
        comps[w] = substitute(image, {v: P(v) - shift})
    return ActionFamily(SCRAMBLE_SIG, reals(), comps)


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals)
def test_scrambled_super_actions(c1, c2, c3):
    fam = scrambled(c1, c2, c3)
    assert verify_super_action(fam)
    res = super_homogenize(fam)
    assert_homogeneous(res, fam)
    assert sorted((z.weight, z.parity) for z in res.signature) == sorted(
        (w.weight, w.parity) for w in SCRAMBLE_SIG)
    body = homogenize(body_reduce(fam).body)
    body_forward = {z.name: to_expr(f) for z, f in body.forward.items()}
    reduced = {z.name: to_expr(reduce_mod_odd(f)) for z, f in res.forward.items() if not z.odd}
    assert body_forward == reduced


@settings(max_examples=25, deadline=None)
@given(rationals, rationals, rationals)
def test_f_bracket_is_homogeneous(c1, c2, c3):
    fam = scrambled(c1, c2, c3)
    for f in (P(v), P(v) * P(u), P(th0) * P(th1) + P(v), P(u) ** 2 + P(v) * P(th1)):
        for k in range(5):
            fk = f_bracket(fam, f, k)
            pulled = substitute(fk, fam.components)
            assert to_expr(pulled) == to_expr(fk) * T ** k


@pytest.mark.parametrize("sig", [
    GradedSignature([Variable("e", 1, ODD), Variable("y", 2)]),
    GradedSignature([theta, Variable("z", 1), Variable("e", 1, ODD)]),
    GradedSignature([Variable("e", 1, ODD), Variable("f", 2, ODD), Variable("y", 3)]),
    GradedSignature([Variable("y", 1), Variable("e", 3, ODD)]),
])
def test_homogeneous_super_functions_have_single_weight(sig):
    monos = all_monomials(list(sig), 4)
    top = 4 * sig.degree
    for f in monos + [a + b for a, b in zip(monos, monos[1:])]:
        for w in range(top + 1):
            assert homogeneous_iff_single_weight(f, sig, w), (str(f), w)
