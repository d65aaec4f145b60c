import pytest
from hypothesis import given, settings, strategies as st

from homogeneity.fields import euler_field, lie_bracket
from homogeneity.g2 import infinitesimal_pair
from homogeneity.graded import check_morphism
from homogeneity.jet_bundles import (
    adapted_signature,
    base_variables,
    level_var,
    resolve_symmetric,
    tk_lift,
    tk_right_action,
    tkstar_left_action,
    tkstar_signature,
)
from homogeneity.polynomial import Polynomial, Variable, substitute, to_expr
from homogeneity.structures import standard_homothety, verify_action

from strategies import polynomials

P = Polynomial.var
x = Variable("x", 0, kind="base")


def strs(mapping):
    return {v.name: str(e) for v, e in mapping.items()}


def test_adapted_signature_rank():
    sig = adapted_signature(base_variables(2), 3)
    assert sig.rank() == (2, 2, 2)
    assert [v.weight for v in sig] == [0, 0, 1, 1, 2, 2, 3, 3]
    assert level_var(x, 2).name == "x_d2"


def test_tk_lift_square():
    lift = tk_lift({x: P(x) ** 2}, [x], [x], 2)
    assert strs(lift) == {"x": "x^2", "x_d1": "2*x*x_d1", "x_d2": "2*x*x_d2 + 2*x_d1^2"}
    assert check_morphism(lift, adapted_signature([x], 2), adapted_signature([x], 2))


def test_tk_lift_identity_and_linear():
    xs = base_variables(2)
    ident = tk_lift({v: P(v) for v in xs}, xs, xs, 3)
    assert all(to_expr(e) == P(v) for v, e in ident.items())
    y = Variable("y", 0, kind="base")
    lin = tk_lift({y: 2 * P(xs[0]) - P(xs[1])}, xs, [y], 3)
    for a in range(4):
        expected = 2 * P(level_var(xs[0], a)) - P(level_var(xs[1], a))
        assert to_expr(lin[level_var(y, a)]) == expected


x1, x2 = base_variables(2)
y = Variable("y", 0, kind="base")
z = Variable("z", 0, kind="base")


@settings(max_examples=20, deadline=None)
@given(polynomials([x1, x2], max_terms=3, max_exp=2), polynomials([y], max_terms=3, max_exp=3),
       st.integers(1, 3))
def test_tk_lift_is_functorial(phi, psi, k):
    first = tk_lift({y: phi}, [x1, x2], [y], k)
    second = tk_lift({z: psi}, [y], [z], k)
    composite = tk_lift({z: substitute(psi, {y: phi})}, [x1, x2], [z], k)
    for v, e in composite.items():
        assert to_expr(substitute(second[v], first)) == to_expr(e)


def test_t2_right_action_formula():
    fam = tk_right_action(1, 2)
    assert strs(fam.components) == {"x": "x", "x_d1": "a*x_d1", "x_d2": "a^2*x_d2 + b*x_d1"}
    assert verify_action(fam)
    assert all(to_expr(e) == P(v) for v, e in fam.at([1, 0]).items())


@pytest.mark.parametrize("m,k", [(1, 1), (1, 3), (2, 2), (1, 4)])
def test_right_action_is_action_and_restricts_to_homothety(m, k):
    fam = tk_right_action(m, k)
    assert verify_action(fam)
    a = P(fam.params[0])
    restricted = fam.at([a] + [0] * (k - 1))
    hom = standard_homothety(fam.signature)
    t = hom.params[0]
    for v in fam.signature:
        assert to_expr(restricted[v]) == to_expr(substitute(hom.components[v], {t: a},
                                                            check_parity=False))


def test_t2_weight_minus_one_field():
    delta, X = infinitesimal_pair(tk_right_action(2, 2))
    sig = tk_right_action(2, 2).signature
    assert delta == euler_field(sig)
    assert str(X) == "x1_d1*d/dx1_d2 + x2_d1*d/dx2_d2"
    assert lie_bracket(delta, X) == X.scale(-1)


def test_tkstar_formula_and_action():
    fam = tkstar_left_action(2)
    assert strs(fam.components) == {
        "x1": "x1", "x2": "x2", "p1": "a*p1", "p2": "a*p2",
        "p1_1": "b*p1^2 + a*p1_1", "p1_2": "b*p1*p2 + a*p1_2", "p2_2": "b*p2^2 + a*p2_2",
    }
    assert verify_action(fam)
    assert all(to_expr(e) == P(v) for v, e in fam.at([1, 0]).items())
    delta, Y = infinitesimal_pair(fam)
    assert lie_bracket(delta, Y) == Y


def test_tkstar_symmetric_names():
    assert resolve_symmetric("p2_1") == "p1_2"
    assert resolve_symmetric("p1_2") == "p1_2"
    assert "p2_1" not in [v.name for v in tkstar_signature(2)]


def test_curve_coordinates_use_factorials():
    lift = tk_lift({x: P(x) ** 3}, [x], [x], 3)
    # third derivative of x(t)^3 at t = 0
    expected = 3 * P(x) ** 2 * P(level_var(x, 3)) + 18 * P(x) * P(level_var(x, 1)) * P(level_var(x, 2)) \
        + 6 * P(level_var(x, 1)) ** 3
    assert to_expr(lift[level_var(x, 3)]) == expected
