"""Foliation presentations and their pointwise analysis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .exactalg import (
    DimensionError,
    Polynomial,
    independent_rows,
    in_span,
    jacobian,
    matrix_rank,
    poly_eval,
    sample_points,
)
from .fields import VectorField, poly_det, kernel_generators, lie_bracket, vf_apply, vf_eval

GENERIC_TRIALS = 8


class FoliationError(ValueError):
    pass


class RankContradiction(FoliationError):
    """Declared rank disagrees with the sampled generic rank."""


class UnsupportedPresentation(FoliationError):
    pass


@dataclass(frozen=True)
class Foliation:
    """A singular foliation of C^nvars.

    At least one of ``generators`` (vector fields spanning the tangent
    sheaf) and ``level_sets`` (polynomials whose joint fibers are the leaves)
    is given. When both are present the generators are used for pointwise
    analysis.
    """

    nvars: int
    generators: tuple | None = None
    level_sets: tuple | None = None
    declared_rank: int | None = None

    def __post_init__(self):
        n = self.nvars
        if n < 1:
            raise FoliationError("nvars must be positive")
        if self.generators is None and self.level_sets is None:
            raise FoliationError("a foliation needs generators or level sets")
        if self.generators is not None:
            gens = tuple(self.generators)
            object.__setattr__(self, "generators", gens)
            if not gens:
                raise FoliationError("generator list is empty")
            for v in gens:
                if v.nvars != n:
                    raise DimensionError(f"generator has nvars={v.nvars}, expected {n}")
                if v.is_zero():
                    raise FoliationError("zero vector field in generator list")
        if self.level_sets is not None:
            levels = tuple(self.level_sets)
            object.__setattr__(self, "level_sets", levels)
            if not 0 < len(levels) < n:
                raise FoliationError(f"need between 1 and {n - 1} level-set polynomials, got {len(levels)}")
            if any(p.nvars != n for p in levels):
                raise DimensionError("level-set polynomials must share nvars")
        if self.declared_rank is not None and not 1 <= self.declared_rank < n:
            raise FoliationError(f"declared rank must satisfy 1 <= k < {n}")

    @property
    def gens(self) -> tuple:
        """Generators, materialized from the level sets when not given."""
        if self.generators is not None:
            return self.generators
        return _materialize(self.level_sets)

    def with_generators_only(self) -> "Foliation":
        return Foliation(self.nvars, self.gens, None, self.declared_rank)

    def with_level_sets_only(self) -> "Foliation":
        if self.level_sets is None:
            raise UnsupportedPresentation("foliation has no level-set presentation")
        return Foliation(self.nvars, None, self.level_sets, self.declared_rank)


@lru_cache(maxsize=512)
def _materialize(levels: tuple) -> tuple:
    gens = kernel_generators(jacobian(levels))
    if not gens:
        raise FoliationError("level sets are dependent; no tangent generators")
    return tuple(gens)


@dataclass(frozen=True)
class StratumReport:
    point: tuple
    fiber_dim: int
    stratum_index: int
    singular: bool


def tangent_fiber(f: Foliation, x: Sequence) -> tuple[list[tuple], int]:
    """Span of the generators evaluated at ``x``: (basis vectors, dimension).

    The basis keeps generators in input order, adding each one that raises the rank.
    """
    if len(x) != f.nvars:
        raise DimensionError(f"point has {len(x)} coordinates, foliation has {f.nvars}")
    values = [vf_eval(v, x) for v in f.gens]
    chosen = independent_rows(values)
    return [values[i] for i in chosen], len(chosen)


def fiber_dim(f: Foliation, x: Sequence) -> int:
    return tangent_fiber(f, x)[1]


@lru_cache(maxsize=1024)
def _sampled_max_rank(f: Foliation, seed: int) -> int:
    return max(fiber_dim(f, x) for x in sample_points(f.nvars, seed, GENERIC_TRIALS))


def generic_rank(f: Foliation, seed: int = 0) -> int:
    """Maximum fiber dimension over 8 seeded points."""
    k = _sampled_max_rank(f, seed)
    if k == 0:
        raise FoliationError("sampled generic rank is 0")
    if f.declared_rank is not None and f.declared_rank != k:
        raise RankContradiction(f"declared rank {f.declared_rank} but sampled generic rank {k}")
    return k


def is_singular(f: Foliation, x: Sequence, k: int | None = None, seed: int = 0) -> bool:
    if k is None:
        k = generic_rank(f, seed)
    return fiber_dim(f, x) < k


def stratum_index(f: Foliation, x: Sequence, k: int | None = None, seed: int = 0) -> StratumReport:
    if k is None:
        k = generic_rank(f, seed)
    d = fiber_dim(f, x)
    singular = d < k
    return StratumReport(tuple(x), d, k - d if singular else 0, singular)


def singular_equations(f: Foliation) -> list[Polynomial]:
    """All m×m Jacobian minors of the level sets, columns in lexicographic subset order."""
    if f.level_sets is None:
        raise UnsupportedPresentation("singular_equations needs a level-set presentation")
    jac = jacobian(f.level_sets)
    m = len(jac)
    cache: dict = {}
    return [poly_det(jac, m, cols, cache) for cols in combinations(range(f.nvars), m)]


def jacobian_rank(f: Foliation, x: Sequence) -> int:
    if f.level_sets is None:
        raise UnsupportedPresentation("foliation has no level-set presentation")
    rows = [[poly_eval(d, x) for d in row] for row in jacobian(f.level_sets)]
    return matrix_rank(rows)


def involutivity_check(f: Foliation, seed: int = 0, trials: int = GENERIC_TRIALS) -> bool:
    """Pointwise bracket closure at seeded generic points.

    A necessary condition for involutivity on the generic locus, not a proof
    of module membership.
    """
    gens = f.gens
    if len(gens) < 2:
        return True
    brackets = [lie_bracket(gens[i], gens[j]) for i, j in combinations(range(len(gens)), 2)]
    brackets = [b for b in brackets if not b.is_zero()]
    if not brackets:
        return True
    for x in sample_points(f.nvars, seed, trials):
        values = [vf_eval(v, x) for v in gens]
        for b in brackets:
            if not in_span(values, vf_eval(b, x)):
                return False
    return True


def annihilation_check(gens: Sequence[VectorField], levels: Sequence[Polynomial]) -> bool:
    """True iff every generator kills every level-set polynomial exactly."""
    for v in gens:
        for F in levels:
            if v.nvars != F.nvars:
                raise DimensionError("generators and level sets must share nvars")
            if vf_apply(v, F):
                return False
    return True
