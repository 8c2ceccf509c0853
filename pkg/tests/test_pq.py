from fractions import Fraction

import pytest
from sympy import Matrix, Poly, QQ, Rational, simplify

import sdmred.lib as slib
import sdmred.pq as spq
import sdmred.poly as spoly
from sdmred.poly import T, X


def test_build_matrix():
    assert spq.build_matrix(2) == Matrix([[X, 1], [0, X]])
    assert spq.build_matrix(3) == Matrix([[X, 1, Rational(-1, 2)], [0, X, 1], [0, 0, X]])


def test_check_weight():
    with pytest.raises(slib.DomainError):
        spq.check_weight(12)
    with pytest.raises(slib.DomainError):
        spq.check_weight(0)
    # below p - 1 but above max_weight
    with pytest.raises(slib.DomainError):
        spq.check_weight(9, 23)
    spq.check_weight(8)


def test_block_determinant():
    assert spq.block_determinant(6, 4, Fraction(0)) == Fraction(-19, 720)
    assert spq.block_determinant(3, 0, Fraction(5)) == 1


def test_q_table_of_case_zero():
    table = spq.pq_table(5, 0)
    assert table.Q_at(0, 0).as_expr() == T - T ** 2 / 2 + T ** 3 / 3 - T ** 4 / 4


def test_p_table_for_weight_one():
    table = spq.pq_table(1, 1)
    assert table.P_at(0, 2).as_expr() == Rational(1, 2)
    assert table.d.as_expr() == X
    with pytest.raises(slib.SingularBlockError):
        table.P_at(0, 0)


@pytest.mark.parametrize("r, k, expected", [(5, 2, -6), (2, 1, 1)])
def test_p_at_minus1(r, k, expected):
    assert spq.p_at_minus1(r, k) == expected


def test_p_at_minus1_of_a_later_column():
    assert spq.p_at_minus1(6, 3, i=3) == -10


@pytest.mark.parametrize("r", range(2, 7))
def test_p_at_minus1_closed_form(r):
    for k in range(1, r // 2 + 1):
        assert spq.p_at_minus1(r, k) == spq.p_at_minus1_closed_form(r, k)


def test_p_at_minus1_needs_k_in_range():
    with pytest.raises(slib.DomainError):
        spq.p_at_minus1(5, 3)


@pytest.mark.parametrize("r, m", [(3, 1), (5, 2)])
def test_normalizer_at_zero_is_twice_a_harmonic_number(r, m):
    assert spoly.evaluate(spq.normalizer(r, m + 1), Fraction(0)) == 2 * spoly.harmonic(m)


def test_normalizer_of_full_case_is_a_power_of_x():
    assert spq.normalizer(4, 4).as_expr() == X ** 4
    assert spq.normalizer(4, 2).as_expr() == 1


def test_a_values():
    assert spq.a_value(5, 3) == Fraction(1, 3)
    assert spq.a_value(4, 2) == 4


@pytest.mark.parametrize("r, k, expected", [(5, 4, Fraction(-13, 36)), (3, 3, Fraction(-5, 4)), (6, 4, 0)])
def test_b_values(r, k, expected):
    assert spq.b_value(r, k) == expected


@pytest.mark.parametrize("r", range(1, 9))
def test_b_value_matches_closed_form(r):
    for k in range(r + 1):
        assert spq.b_value(r, k) == spq.b_closed_form(r, k)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_b_function_times_p_squared(m):
    r = 2 * m + 1
    P = spq.pq_table(r, m).P_at(0, 0).as_expr()
    expected = 2 * m * (m + 1) * T ** r - T ** (r + 1)
    assert simplify(spq.b_function(r, m + 2) * P ** 2 - expected) == 0


def test_b_function_of_weight_three():
    case_one = spq.pq_table(3, 1)
    delta_1 = case_one.Q_at(0, 0).as_expr() / case_one.P_at(0, 0).as_expr()
    p_300 = spq.pq_table(3, 3).P[0].x_coefficient(0).as_expr()
    assert simplify(spq.b_function(3, 3) - (p_300 - delta_1 ** 2)) == 0
    assert spq.b_function(4, 3) == 0


def test_delta_values():
    assert spq.delta_at_minus1(5, 1) == Fraction(-25, 12)
    assert spq.delta_at_minus1(5, 3) == -3
    assert spq.delta_at_minus1(4, 0, Fraction(2)) == -2


@pytest.mark.parametrize("r", range(1, 7))
def test_delta_matches_harmonic_closed_form(r):
    for l in range(1, (r + 1) // 2 + 1):
        assert spq.delta_value(r, l).constant() == spq.harmonic_delta(r, l)


def test_quadratic_delta_branch():
    value = spq.delta_value(2, 2)
    assert value.depends_on_x and value.is_quadratic
    assert simplify(spq.delta_function(2, 2) - (-1 + 1 / (X + 1))) == 0
    assert spq.delta_at_minus1(2, 2, Fraction(1)) == Fraction(-1, 2)
    with pytest.raises(slib.PoleError):
        spq.delta_at_minus1(2, 2, Fraction(-1))
    with pytest.raises(slib.DomainError):
        spq.delta_at_minus1(2, 2)


@pytest.mark.parametrize("r, l, expected", [(5, 1, 4), (7, 1, 6), (5, 2, 10), (4, 2, 7)])
def test_delta_dot(r, l, expected):
    assert spq.delta_dot_at_minus1(r, l) == expected
    assert spq.delta_dot_closed_form(r, l) == expected


def test_delta_dot_range():
    with pytest.raises(slib.DomainError):
        spq.delta_dot_at_minus1(4, 3)
    with pytest.raises(slib.DomainError):
        spq.delta_dot_at_minus1(4, 0)


def test_delta_recurrence():
    r = 6
    for k in range(1, 3):
        difference = spq.delta_value(r, k + 1).constant() - spq.delta_value(r, k).constant()
        assert difference == Fraction(1, r - k) - Fraction(1, k)


def test_table_to_dict():
    result = spq.pq_table(2, 1).to_dict()
    assert (result["r"], result["k"], result["m"]) == (2, 1, 1)
    assert result["d"] == ["1"]
    assert len(result["P"]) == len(result["Q"]) == 2


def regular_point(table):
    for x in (Fraction(0), Fraction(1, 3), Fraction(-5, 2), Fraction(7)):
        if spoly.evaluate(table.d, x) != 0:
            return x


WEIGHTS_AND_CASES = [(r, k) for r in range(1, 9) for k in range(r + 1)]


@pytest.mark.parametrize("r, k", WEIGHTS_AND_CASES)
def test_q_is_the_truncated_product(r, k):
    table = spq.pq_table(r, k)
    x = regular_point(table)
    series = spoly.log1p_truncated(r - 1) + spoly.to_rational(x)
    for i in range(r):
        assert table.Q_at(i, x) == spoly.truncate(series * table.P_at(i, x), r - 1)


@pytest.mark.parametrize("r, k", [(r, k) for r, k in WEIGHTS_AND_CASES if 1 <= k <= r - 1])
def test_pq_degree_bounds(r, k):
    table = spq.pq_table(r, k)
    x = regular_point(table)
    for i in range(r):
        P, Q = table.P_at(i, x), table.Q_at(i, x)
        if i < k:
            assert spoly.degree(P) <= k - 1
            assert spoly.degree(Q - Poly(T ** (i + r - k), T, domain=QQ)) <= r - k - 1
        else:
            assert spoly.degree(P - Poly(T ** i, T, domain=QQ)) <= k - 1
            assert spoly.degree(Q) <= r - k - 1


@pytest.mark.parametrize("r, k", [(r, k) for r, k in WEIGHTS_AND_CASES if 1 <= k <= r - 1])
def test_pade_cross_determinant(r, k):
    table = spq.pq_table(r, k)
    x = regular_point(table)
    cross = table.P_at(k, x) * table.Q_at(0, x) - table.P_at(0, x) * table.Q_at(k, x)
    assert cross == Poly(T ** r, T, domain=QQ)


@pytest.mark.parametrize("r, k", [(r, k) for r, k in WEIGHTS_AND_CASES if 1 <= k <= r - 1])
def test_pade_approximation_of_log(r, k):
    table = spq.pq_table(r, k)
    x = regular_point(table)
    series = spoly.log1p_truncated(2 * r) + spoly.to_rational(x)
    for i in (0, k):
        error = table.Q_at(i, x) - series * table.P_at(i, x)
        assert spoly.truncate(error, r - 1).is_zero
    assert spoly.coefficients(table.Q_at(0, x))[-1] == 1
    assert spoly.coefficients(table.P_at(k, x))[-1] == 1


@pytest.mark.parametrize("r, k", [(r, k) for r, k in WEIGHTS_AND_CASES if k >= 1])
def test_a_k_links_consecutive_cases(r, k):
    previous, table = spq.pq_table(r, k - 1), spq.pq_table(r, k)
    x = next(x for x in (Fraction(1, 3), Fraction(-5, 2), Fraction(7))
             if spoly.evaluate(previous.d, x) != 0 and spoly.evaluate(table.d, x) != 0)
    a_k = table.P_at(0, x).coeff_monomial(T ** (k - 1))
    assert a_k != 0
    assert previous.P_at(k - 1, x) * a_k == table.P_at(0, x)
    assert previous.Q_at(k - 1, x) * a_k == table.Q_at(0, x)


@pytest.mark.parametrize("r", range(1, 9))
def test_normalizer_is_monic(r):
    for k in range(r + 1):
        d = spq.normalizer(r, k)
        assert d.degree() == max(2 * k - r, 0)
        assert d.LC() == 1
