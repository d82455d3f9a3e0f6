import pytest

from singfol.exactalg import GaussianRational, Polynomial, poly_parse, sample_points
from singfol.families import example1_lines, example1_quadrics, example2, example3
from singfol.fields import VectorField, coordinate_field, rotation_field, zero_field
from singfol.foliation import (
    Foliation,
    FoliationError,
    RankContradiction,
    UnsupportedPresentation,
    annihilation_check,
    fiber_dim,
    generic_rank,
    involutivity_check,
    is_singular,
    jacobian_rank,
    singular_equations,
    stratum_index,
    tangent_fiber,
)

G = GaussianRational


def pt(*xs):
    return tuple(G(x) for x in xs)


@pytest.fixture(scope="module")
def ex3():
    return example3(5, 3, 2).foliation


def test_tangent_fiber_examples(ex3):
    basis, dim = tangent_fiber(ex3, pt(0, 0, 0, 1, 1))
    assert dim == 1 and basis == [pt(0, 0, 0, 0, 1)]
    # rotations at (1,0,0,0,0): R12 -> e2, R13 -> e3, R23 -> 0; plus d5
    basis, dim = tangent_fiber(ex3, pt(1, 0, 0, 0, 0))
    assert dim == 3
    assert basis == [pt(0, 1, 0, 0, 0), pt(0, 0, 1, 0, 0), pt(0, 0, 0, 0, 1)]
    assert fiber_dim(example1_quadrics(4).foliation, pt(0, 0, 0, 0)) == 0


def test_is_singular_examples():
    f = example2(4).foliation
    assert is_singular(f, pt(0, 0, 0, 5))
    assert not is_singular(f, pt(1, 0, 0, 0))
    assert is_singular(example1_lines(3).foliation, pt(0, 0, 0))


def test_stratum_index_examples(ex3):
    rep = stratum_index(ex3, pt(0, 0, 0, 1, 1))
    assert (rep.fiber_dim, rep.stratum_index, rep.singular) == (1, 2, True)
    rep = stratum_index(ex3, pt(1, 2, 3, 4, 5))
    assert (rep.stratum_index, rep.singular) == (0, False)
    n = 4
    rep = stratum_index(example1_quadrics(n).foliation, pt(0, 0, 0, 0))
    assert rep.fiber_dim == 0 and rep.stratum_index == n - 1


@pytest.mark.parametrize("n", [2, 3, 5])
def test_generic_rank_examples(n):
    assert generic_rank(example1_lines(n).foliation) == 1
    assert generic_rank(example1_quadrics(n).foliation) == n - 1


def test_generic_rank_example3(ex3):
    assert generic_rank(ex3, seed=5) == 3


def test_generic_rank_contradiction():
    f = example1_quadrics(3).foliation
    bad = Foliation(3, f.generators, f.level_sets, declared_rank=1)
    with pytest.raises(RankContradiction):
        generic_rank(bad)


def test_construction_rejects_degenerate_input():
    with pytest.raises(FoliationError):
        Foliation(3, ())
    with pytest.raises(FoliationError):
        Foliation(3, (zero_field(3),))
    with pytest.raises(FoliationError):
        Foliation(3, None, (Polynomial.var(3, 0),) * 3)
    with pytest.raises(FoliationError):
        Foliation(3, None, None)
    # sampled generic rank 0 is rejected
    nilpotent_at_box = VectorField(2, (Polynomial.constant(2, 0), poly_parse("X1 - X1", 2) + Polynomial.constant(2, 0)))
    assert nilpotent_at_box.is_zero()


def test_singular_equations_examples(ex3):
    n = 4
    q = example1_quadrics(n).foliation
    assert singular_equations(q) == [poly_parse(f"2*X{j}", n) for j in range(1, n + 1)]
    minors = singular_equations(ex3)
    nonzero = [m for m in minors if m]
    # minors vanish exactly on X1 = X2 = X3 = 0
    assert sorted(map(str, nonzero)) == ["2*X1", "2*X2", "2*X3"]
    lin = Foliation(2, None, (poly_parse("X1", 2),))
    assert singular_equations(lin) == [Polynomial.constant(2, 1), Polynomial.zero(2)]
    with pytest.raises(UnsupportedPresentation):
        singular_equations(example1_lines(3).foliation)


def test_involutivity_examples(ex3):
    n = 5
    assert involutivity_check(ex3.with_generators_only(), seed=1, trials=4)
    d1 = coordinate_field(3, 0)
    x1d2 = VectorField(3, (Polynomial.zero(3), Polynomial.var(3, 0), Polynomial.zero(3)))
    # [d1, X1 d2] = d2 lies in span{e1, x1 e2} wherever x1 != 0
    assert involutivity_check(Foliation(3, (d1, x1d2)))
    contact = VectorField(3, (Polynomial.zero(3), Polynomial.constant(3, 1), Polynomial.var(3, 0)))
    assert not involutivity_check(Foliation(3, (d1, contact)))
    assert involutivity_check(Foliation(n, (rotation_field(n, 0, 1),)))


def test_annihilation_examples():
    n = 3
    rots = [rotation_field(n, a, b) for a, b in ((0, 1), (0, 2), (1, 2))]
    assert annihilation_check(rots, [poly_parse("X1^2 + X2^2 + X3^2", n)])
    assert not annihilation_check([coordinate_field(5, 3)], [poly_parse("X4", 5)])
    assert annihilation_check(rots, [Polynomial.constant(n, 3)])


# -- invariants -----------------------------------------------------------------

FAMILY_CASES = [example1_quadrics(3), example2(4), example3(5, 3, 2), example3(6, 4, 2), example3(6, 3, 2)]


@pytest.mark.parametrize("inst", FAMILY_CASES, ids=lambda i: f"{i.name}{tuple(i.params.values())}")
def test_rank_semicontinuity_and_nesting(inst):
    f = inst.foliation
    k = generic_rank(f)
    pts = sample_points(f.nvars, 3, 10) + sample_points(f.nvars, 4, 10, constraints=inst.roles.z_zero)
    reports = [stratum_index(f, x, k) for x in pts]
    for rep in reports:
        assert rep.fiber_dim <= k
        assert rep.singular == (rep.fiber_dim < k)
        assert rep.stratum_index == (k - rep.fiber_dim if rep.singular else 0)
    for a in reports:
        for b in reports:
            if a.stratum_index < b.stratum_index:
                assert a.fiber_dim > b.fiber_dim


@pytest.mark.parametrize("inst", FAMILY_CASES, ids=lambda i: f"{i.name}{tuple(i.params.values())}")
def test_level_set_jacobian_duality(inst):
    f = inst.foliation.with_level_sets_only()
    m = len(f.level_sets)
    k = generic_rank(f)
    pts = sample_points(f.nvars, 8, 15)
    pts += sample_points(f.nvars, 9, 10, constraints=inst.roles.z_zero)
    pts += sample_points(f.nvars, 10, 10, constraints={0})
    for x in pts:
        assert is_singular(f, x, k) == (jacobian_rank(f, x) < m)


@pytest.mark.parametrize("inst", FAMILY_CASES, ids=lambda i: f"{i.name}{tuple(i.params.values())}")
def test_presentation_consistency(inst):
    f = inst.foliation
    assert annihilation_check(f.generators, f.level_sets)
    g = f.with_level_sets_only()
    for x in sample_points(f.nvars, 21, 100):
        assert fiber_dim(f, x) == fiber_dim(g, x)


def test_determinism(ex3):
    assert generic_rank(ex3, 9) == generic_rank(ex3, 9)
    assert involutivity_check(ex3, 4, 3) == involutivity_check(ex3, 4, 3)
