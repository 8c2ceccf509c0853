from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import sdmred.lib as slib
import sdmred.field as sfield
import sdmred.cases as scases
import sdmred.support as ssupport
from sdmred.cases import INF

from .conftest import element, elements, P


def spec(r, kp):
    return scases.CaseSpec(r, [scases.parse_kp(v) for v in kp])


def test_l_index():
    assert ssupport.l_index(5, Fraction(7, 2)) == 2
    assert ssupport.l_index(3, INF) == 0
    assert ssupport.l_index(2, 1) == 1
    assert ssupport.l_index(2, 2) == 2
    assert ssupport.l_vector([2, 5], [Fraction(1, 2), 5]) == [1, 1]
    with pytest.raises(slib.DomainError):
        ssupport.l_vector([2], [1, 1])


def test_inv_p_minus_phi_two_embeddings():
    y0, y1 = Fraction(1), Fraction(5, 7)
    rho = ssupport.inv_p_minus_phi([y0, y1])
    assert rho[0] == (P * y0 + y1) / (P * P - 1)
    assert rho[1] == (P * y1 + y0) / (P * P - 1)


@settings(max_examples=30, deadline=None)
@given(elements(), elements(), elements())
def test_p_minus_phi_inverts(y0, y1, y2):
    y = [y0, y1, y2]
    assert ssupport.p_minus_phi(ssupport.inv_p_minus_phi(y)) == y


def test_L_from_x_single_embedding():
    # delta_1(-1) = 0 for r = 1, so L = p x / (p - 1)
    L = ssupport.L_from_x(spec([1], ["1/2"]), [Fraction(1, 13)])
    assert L.to_json() == ["1/12"]
    assert L.j0 == frozenset()


def test_L_from_x_two_embeddings():
    x = [Fraction(2), Fraction(1, 13)]
    L = ssupport.L_from_x(spec([2, 2], ["1", "1"]), x)
    # x_j = (p L_j - L_{j-1} + 1) / p
    for j in range(2):
        assert x[j] == (L[j] * P - L[j - 1] + 1) / P


def test_L_from_x_is_infinite_on_j0():
    L = ssupport.L_from_x(spec([1, 5], ["inf", "3/2"]), [Fraction(5), Fraction(1)])
    assert L.to_json() == ["inf", "997/1008"]
    assert L.j0 == frozenset([0])


def test_x_from_L_constant_steps():
    roots = ssupport.x_from_L(spec([2, 2], ["1", "1"]), ["0", "0"])
    assert len(roots) == 1
    assert list(roots[0]) == [Fraction(1, 13), Fraction(1, 13)]
    assert roots[0].l == [1, 1]


def test_x_from_L_with_free_coordinate():
    case = spec([1, 5], ["inf", "3/2"])
    L = ssupport.LInvariant.parse(["inf", "997/1008"])
    roots = ssupport.x_from_L(case, L)
    assert [list(x) for x in roots] == [[Fraction(143, 1008), Fraction(1)]]
    assert ssupport.L_from_x(case, roots[0]) == L
    assert ssupport.root_valuations(roots) == [[1, 0]]


def test_x_from_L_round_trip_single_embedding():
    case = spec([1], ["1/2"])
    roots = ssupport.x_from_L(case, ["13/12"])
    assert [list(x) for x in roots] == [[1]]


def test_x_from_L_needs_matching_j0():
    with pytest.raises(slib.DomainError):
        ssupport.x_from_L(spec([1, 5], ["inf", "3/2"]), ["1", "2"])
    with pytest.raises(slib.DomainError):
        ssupport.x_from_L(spec([2, 2], ["1", "1"]), ["0"])


def test_L_invariant_parsing():
    L = ssupport.LInvariant.parse(["inf", "3/2", ["0", "1"]])
    assert L[0] is INF
    assert L[1] == Fraction(3, 2)
    assert L[2] == element(0, 1)
    assert L.to_json() == ["inf", "3/2", ["0", "1"]]


def test_x_vector_checks_lengths():
    with pytest.raises(slib.DomainError):
        ssupport.XVector([1, 2], [2], [1])
    x = ssupport.XVector([Fraction(1, 13)], [2], [1])
    assert x.valuations() == [-1]
    assert x.to_dict()["valuations"] == ["-1"]


def test_psi_l():
    x = ssupport.XVector([Fraction(1, 13), Fraction(2)], [2, 2], [1, 1])
    # delta_1(-1) = -1 for r = 2
    assert ssupport.psi_l(x) == [sfield.coerce(0), sfield.coerce(25)]


QUADRATIC_CASES = [
    ([2], ["3/2"]), ([2], ["2"]),
    ([2, 2], ["1/2", "2"]), ([2, 2], ["1", "3/2"]), ([2, 2], ["3/2", "1"]),
    ([2, 2], ["3/2", "2"]), ([2, 2], ["2", "1/2"]), ([2, 2], ["2", "3/2"]),
]


def test_quadratic_cases_have_a_quadratic_branch():
    for r, kp in QUADRATIC_CASES:
        assert 2 in ssupport.l_vector(r, [scases.parse_kp(v) for v in kp])


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(QUADRATIC_CASES), st.lists(elements(nonzero=True), min_size=2, max_size=2))
def test_x_from_L_recovers_x_on_quadratic_branches(case, values):
    r, kp = case
    case = spec(r, kp)
    x = values[:case.f]
    try:
        L = ssupport.L_from_x(case, x)
    except slib.PoleError:
        assume(False)
    roots = ssupport.x_from_L(case, L)
    assert 1 <= len(roots) <= 2
    assert x in [list(root) for root in roots]
    assert [v.valuation() for v in x] in ssupport.root_valuations(roots)
    for root in roots:
        assert ssupport.L_from_x(case, root) == L


def test_quadratic_branch_two_embeddings():
    case = spec([2, 2], ["1/2", "2"])
    x = [Fraction(1), Fraction(1, 13)]
    L = ssupport.L_from_x(case, x)
    roots = ssupport.x_from_L(case, L)
    assert x in [list(root) for root in roots]
    assert [0, -1] in ssupport.root_valuations(roots)
