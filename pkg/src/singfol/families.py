"""The three example families with their expected profiles and coordinate roles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exactalg import Polynomial
from .fields import coordinate_field, euler_field, rotation_field
from .foliation import Foliation
from .structure import CoordinateRoles, FoliationProfile, MalgrangeError, ProfileError, malgrange_check


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    params: dict
    foliation: Foliation
    expected_profile: FoliationProfile
    roles: CoordinateRoles
    expected_eta_profile: FoliationProfile | None = None
    expected_alpha_profile: FoliationProfile | None = None

    def __post_init__(self):
        p = self.expected_profile
        if len(self.roles.z) != p.r or len(self.roles.az) != p.s:
            raise ValueError("roles do not match the expected profile")


def _rotations(n: int, m: int) -> tuple:
    """All X_a∂_b − X_b∂_a with a < b < m, in lexicographic pair order."""
    return tuple(rotation_field(n, a, b) for a, b in combinations(range(m), 2))


def _sum_of_squares(n: int, m: int) -> Polynomial:
    out = Polynomial.zero(n)
    for j in range(m):
        out = out + Polynomial.var(n, j) ** 2
    return out


def example1_lines(n: int) -> FamilyInstance:
    """Lines through the origin, generated by the Euler field."""
    if n < 2:
        raise ProfileError("example1-lines needs n >= 2")
    fol = Foliation(n, (euler_field(n),), None, 1)
    roles = CoordinateRoles(n, (), (), ())
    prof = FoliationProfile(n, 1, 0, 0)
    return FamilyInstance("example1-lines", {"n": n}, fol, prof, roles, prof, prof)


def example1_quadrics(n: int) -> FamilyInstance:
    """Level sets of X1² + … + Xn², generated by the rotations."""
    if n < 2:
        raise ProfileError("example1-quadrics needs n >= 2")
    fol = Foliation(n, _rotations(n, n), (_sum_of_squares(n, n),), n - 1)
    roles = CoordinateRoles(n, (), (), ())
    prof = FoliationProfile(n, n - 1, 0, 0)
    return FamilyInstance("example1-quadrics", {"n": n}, fol, prof, roles, prof, prof)


def example2(n: int) -> FamilyInstance:
    """Level sets of (X1² + … + X_{n−1}², X_n); singular along the X_n axis."""
    if n < 3:
        raise ProfileError("example2 needs n >= 3")
    levels = (_sum_of_squares(n, n - 1), Polynomial.var(n, n - 1))
    fol = Foliation(n, _rotations(n, n - 1), levels, n - 2)
    roles = CoordinateRoles(n, (n - 1,), (), (n - 1,))
    prof = FoliationProfile(n, n - 2, 1, 0)
    return FamilyInstance("example2", {"n": n}, fol, prof, roles, prof,
                          FoliationProfile(n - 1, n - 2, 0, 0))


def example3(n: int, k: int, r: int) -> FamilyInstance:
    """Rank-k foliation of C^n with an r-dimensional singular set.

    Leaves are cut out by X1² + … + X_{n−r}² = λ1 and X_j = λ for
    j = n−r+1, …, 2n−k−r−1 (1-based). Generators are the rotations in the
    first n−r coordinates and ∂/∂X_j for j = 2n−k−r, …, n.
    """
    if not n > k > r >= 0:
        raise ProfileError(f"example3 needs n > k > r >= 0, got ({n},{k},{r})")
    if not malgrange_check(n, k, r):
        raise MalgrangeError(f"r >= n-k-1 violated: r={r} < {n - k - 1} (Malgrange bound)")
    s = k + r + 1 - n
    q = n - r  # variables of the quadric
    levels = (_sum_of_squares(n, q),) + tuple(Polynomial.var(n, j) for j in range(q, 2 * n - k - r - 1))
    gens = _rotations(n, q) + tuple(coordinate_field(n, j) for j in range(2 * n - k - r - 1, n))
    fol = Foliation(n, gens, levels, k)
    az = tuple(range(2 * n - k - r - 1, n))
    bz = tuple(range(q, 2 * n - k - r - 1))
    roles = CoordinateRoles(n, tuple(range(q, n)), az, bz)
    return FamilyInstance(
        "example3", {"n": n, "k": k, "r": r}, fol,
        FoliationProfile(n, k, r, s), roles,
        FoliationProfile(2 * n - k - r - 1, n - r - 1, n - k - 1, 0),
        FoliationProfile(n - r, n - r - 1, 0, 0),
    )


FAMILIES = {
    "example1-lines": example1_lines,
    "example1-quadrics": example1_quadrics,
    "example2": example2,
    "example3": example3,
}


def example3_grid(n_min: int = 3, n_max: int = 8) -> list[tuple]:
    """All (n, k, r) with n_min ≤ n ≤ n_max, n > k > r ≥ 0 and r ≥ n − k − 1."""
    return [(n, k, r) for n in range(n_min, n_max + 1) for k in range(1, n) for r in range(k)
            if r >= n - k - 1]
