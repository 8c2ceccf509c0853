import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import sdmred.lib as slib
import sdmred.field as sfield
import sdmred.cases as scases
import sdmred.breuil as sbreuil

from .conftest import element, P, E


def spec(r, kp):
    return scases.CaseSpec(r, [scases.parse_kp(v) for v in kp])


def reduce_(r, kp, x, theta, **kwargs):
    instance = sbreuil.make_instance(spec(r, kp), x, theta, **kwargs)
    return sbreuil.reduce_instance(instance)


def test_tst_rank1():
    assert sbreuil.tst_rank1([1, 0], 2) == 27
    assert sbreuil.tst_rank1([2, 0], 2) == 26
    assert sbreuil.tst_rank1([2, 2], 2) == 0
    assert sbreuil.tst_rank1([0], 3) == 3
    with pytest.raises(slib.DomainError):
        sbreuil.tst_rank1([0, 0, 0], 2)
    with pytest.raises(slib.DomainError):
        sbreuil.tst_rank1([3], 2)


def test_tst_rank2_irred():
    assert sbreuil.tst_rank2_irred(1, (0, 2), (2, 0), 2) == [2 + 2 * P, 2 * P ** 2 + 2 * P ** 3]
    assert sbreuil.tst_rank2_irred(0, (5, 3), (4, 2), 5) == [2 * P + P ** 2 + 3 * P ** 3, 1 + 3 * P + 2 * P ** 3]
    with pytest.raises(slib.DomainError):
        sbreuil.tst_rank2_irred(0, (1, 1), (1, 1), 2)
    with pytest.raises(slib.DomainError):
        sbreuil.tst_rank2_irred(2, (0, 1), (1, 0), 2)


def test_orbit_exponent_is_reduced():
    assert sbreuil.orbit_exponent([0], 0, P) == 0
    assert 0 <= sbreuil.orbit_exponent([0, 0], 11, P) < P ** 2 - 1


def test_alpha_beta_units():
    third = element(Fraction(1, 13))
    pair = sbreuil.alpha_beta(1, Fraction(1, 2), element(1), third, third, third)
    assert pair.alpha == 1
    assert pair.beta == 1
    assert pair.ratio() == 1
    assert pair.to_dict() == {"alpha": "1", "beta": "1"}
    with pytest.raises(slib.NonUnitError):
        sbreuil.alpha_beta(1, Fraction(1, 2), element(13), third, third, third)


def test_make_instance():
    instance = sbreuil.make_instance(spec([1], ["1/2"]), ["1/13"], ["1/13"])
    assert instance.r == 1
    assert instance.t() == [-1]
    assert instance.T() == [-1]
    assert [v.valuation() for v in instance.lam] == [0]
    assert instance.to_dict()["x"] == ["1/13"]


def test_make_instance_errors():
    with pytest.raises(slib.InfeasibleError):
        sbreuil.make_instance(spec([1], ["1/2"]), ["1"], ["13"])
    with pytest.raises(slib.DomainError):
        sbreuil.make_instance(spec([1], ["1/2"]), ["1/13"], ["1/13"], r=12)
    with pytest.raises(slib.DomainError):
        sbreuil.make_instance(spec([1], ["1/2"]), ["1/13"], ["0"])
    with pytest.raises(slib.DomainError):
        sbreuil.make_instance(spec([1], ["1/2"]), ["1/13", "1"], ["1/13"])


def test_upoly_truncates_at_p():
    field = sfield.ResidueField(P)
    u7 = sbreuil.UPoly.monomial(field, 1, 7)
    assert (u7 * u7).is_zero()
    u2 = sbreuil.UPoly.monomial(field, 3, 2)
    assert (u2 * u7).coefficient(9) == field(3)
    assert (u2 + u7).valuation() == 2
    assert (u2 - u2).is_zero()
    assert u2.truncate(2).is_zero()


def test_poly_matrix():
    field = sfield.ResidueField(P)
    m = sbreuil.PolyMatrix.build(field, [[[(1, 0)], []], [[(2, 1)], [(1, 3)]]])
    assert m.u_valuation_det() == 3
    assert m.constant_term() == [[field(1), field(0)], [field(0), field(0)]]
    identity = sbreuil.PolyMatrix.constant(field, [[1, 0], [0, 1]])
    assert identity * m == m


def test_reduce_non_split_t_negative():
    report = reduce_([1], ["1/2"], ["1/13"], ["1/13"])
    assert report.kind == "reducible"
    assert report.diagonal == [1, 0]
    assert report.exponents == [0, 1]
    assert report.mt == [0]
    assert report.verdict == "non-split"
    assert report.niveau == 1


def test_reduce_monodromy_type():
    report = reduce_([1], ["1/2"], ["1"], ["1"])
    assert report.mt == [1]
    assert report.verdict == "non-split"


def test_reduce_irreducible():
    report = reduce_([2], ["2"], ["1/13"], [sfield.pi_power(-1, E, P)])
    assert report.kind == "irreducible"
    assert report.exponent_set() == [2, 26]
    assert report.niveau == 2
    assert report.to_dict()["verdict"] is None


def test_reduce_needs_quadratic_extension(default_settings):
    theta = [sfield.pi_power(-1, E, P)]
    extended = reduce_([2], ["1"], [["0", "3/13"]], theta)
    assert extended.residue_degree == 2
    assert extended.verdict == "split"
    default_settings["max_residue_degree"] = 1
    undetermined = reduce_([2], ["1"], [["0", "3/13"]], theta)
    assert undetermined.verdict == "undetermined"
    assert undetermined.residue_degree == 1
    assert "residue field degree 2 needed" in undetermined.branch_notes


def test_module_invariants():
    instance = sbreuil.make_instance(spec([1], ["1/2"]), ["1/13"], ["1/13"])
    module = sbreuil.breuil_matrices(instance)
    assert module.f == 1
    assert module.p == P
    assert [fil.u_valuation_det() for fil in module.filtration] == [2 * instance.r - 1]
    report = sbreuil.classify(module)
    field = module.field
    changed = module.change_basis([[[field(2), field(0)], [field(0), field(3)]]])
    assert sbreuil.classify(changed).same_reduction(report)
    lifted = module.lift(2)
    assert lifted.field.k == 2
    assert sbreuil.classify(lifted).same_reduction(report)
    assert sorted(module.to_dict()) == ["Fil", "N", "phi", "r", "residue_degree"]


def test_change_basis_must_be_invertible():
    instance = sbreuil.make_instance(spec([1], ["1/2"]), ["1/13"], ["1/13"])
    module = sbreuil.breuil_matrices(instance)
    with pytest.raises(slib.DomainError):
        module.change_basis([[[1, 1], [1, 1]]])


def half_integral(values):
    return all((2 * v).denominator == 1 for v in values)


@st.composite
def feasible_instances(draw):
    """ x = (a + b pi) pi^{2t} on the half-integer grid, in the first case (from a random offset) holding t """
    f = draw(st.sampled_from([1, 2]))
    r = draw(st.lists(st.integers(1, 6), min_size=f, max_size=f))
    t = [Fraction(draw(st.integers(-2 * r_j - 2, 2)), 2) for r_j in r]
    units = [draw(st.tuples(st.integers(1, P - 1), st.integers(1, P - 1))) for _ in r]
    x = [sfield.make_element([Fraction(c) for c in u], E, P) * sfield.pi_power(int(2 * t_j), E, P)
         for u, t_j in zip(units, t)]
    cases = list(itertools.product(*[scases.k_range(r_j)[:-1] for r_j in r]))
    offset = draw(st.integers(0, len(cases) - 1))
    for kp in cases[offset:] + cases[:offset]:
        case = scases.CaseSpec(r, kp, P)
        solution = scases.solve_cyclic(case, t)
        if solution is None or not half_integral(solution.T) or not half_integral(solution.lambda_valuations()):
            continue
        theta = [sfield.pi_power(int(2 * T_j), E, P) for T_j in solution.T]
        return sbreuil.make_instance(case, x, theta)
    assume(False)


def degree_splits(module):
    """ Per embedding, the (a_j, b_j) in [r - r_j, r] with a_j + b_j = 2r - r_j """
    r = module.r
    return [[(a, 2 * r - r_j - a) for a in range(r - r_j, r + 1)] for r_j in module.r_vector]


def irreducible_exponent_sets(module):
    r, splits = module.r, degree_splits(module)
    if module.f == 1:
        return [sorted([sbreuil.orbit_exponent([a, b], r, P), sbreuil.orbit_exponent([b, a], r, P)])
                for a, b in splits[0]]
    sets = []
    for i, (a0, b0), (a1, b1) in itertools.product((0, 1), splits[0], splits[1]):
        if (a0, a1) != (b0, b1):
            sets.append(sorted(sbreuil.tst_rank2_irred(i, (a0, a1), (b0, b1), r)))
    return sets


@settings(max_examples=40, deadline=None)
@given(feasible_instances())
def test_reduction_of_feasible_instances(instance):
    module = sbreuil.breuil_matrices(instance)
    r, f, weights = instance.r, instance.f, instance.spec.r
    for fil, phi, r_j in zip(module.filtration, module.frobenius, weights):
        assert len(fil.rows) == len(phi.rows) == 2
        assert fil.u_valuation_det() == 2 * r - r_j
    report = sbreuil.classify(module)
    assert report.mt == [int(T_j == 0) for T_j in instance.T()]
    assume(report.verdict != "undetermined")
    determinant = sum(weights[(-t) % f] * P ** t for t in range(f)) % (P ** f - 1)
    if report.kind == "reducible":
        assert report.niveau == f
        quotient = [2 * r - r_j - d for r_j, d in zip(weights, report.sub_degrees)]
        assert report.diagonal == [sbreuil.tst_rank1(quotient, r), sbreuil.tst_rank1(report.sub_degrees, r)]
        assert sum(report.diagonal) % (P ** f - 1) == determinant
    else:
        assert report.niveau == 2 * f
        assert report.exponents[0] % (P ** f - 1) == determinant
        assert report.exponent_set() in irreducible_exponent_sets(module)
