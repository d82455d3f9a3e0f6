"""Instance-level checks of the product decomposition ξ = η × C^s and of splitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactalg import GaussianRational, Polynomial, in_span, intersection_dim, sample_points
from .exactalg.poly import extend_vars, select_vars, substitute_zero
from .fields import VectorField, coordinate_field, vf_eval
from .foliation import (
    GENERIC_TRIALS,
    Foliation,
    FoliationError,
    annihilation_check,
    fiber_dim,
    generic_rank,
    tangent_fiber,
)


class ProfileError(ValueError):
    pass


class MalgrangeError(ProfileError):
    pass


class DecompositionError(ValueError):
    def __init__(self, check: str, message: str, report: "DecompositionReport | None" = None):
        super().__init__(f"{check}: {message}")
        self.check = check
        self.report = report


@dataclass(frozen=True)
class FoliationProfile:
    """The index (n, k, r, s) of a class Fol(n, k, r, s).

    Construction enforces n > k ≥ r ≥ s ≥ 0 and k ≥ 1. The range n > k > r
    is reported by ``standard``; Example 2 at n = 3 lands on k = r.
    """

    n: int
    k: int
    r: int
    s: int

    def __post_init__(self):
        n, k, r, s = self.n, self.k, self.r, self.s
        if not (n > k >= 1 and k >= r >= s >= 0):
            raise ProfileError(f"invalid profile (n,k,r,s)=({n},{k},{r},{s})")

    @property
    def standard(self) -> bool:
        return self.n > self.k > self.r >= self.s >= 0

    def as_tuple(self) -> tuple:
        return (self.n, self.k, self.r, self.s)


def _complement(n: int, idx: Sequence[int]) -> tuple:
    s = set(idx)
    return tuple(j for j in range(n) if j not in s)


@dataclass(frozen=True)
class CoordinateRoles:
    """Coordinate index sets (0-based) in adapted coordinates.

    ``z`` lists the coordinates that stay free along the singular component Z
    (the others vanish on Z); ``az`` and ``bz`` split ``z``; the slice D fixes
    the ``az`` coordinates to zero and K fixes all of ``z`` to zero.
    """

    n: int
    z: tuple
    az: tuple
    bz: tuple
    d: tuple | None = None

    def __post_init__(self):
        for name in ("z", "az", "bz"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name))))
        d = _complement(self.n, self.az) if self.d is None else tuple(sorted(self.d))
        object.__setattr__(self, "d", d)
        everything = self.z + self.az + self.bz + self.d
        if any(not 0 <= j < self.n for j in everything):
            raise ValueError("role index out of range")
        if set(self.az) & set(self.bz):
            raise ValueError("az and bz must be disjoint")
        if set(self.az) | set(self.bz) != set(self.z) or len(self.z) != len(set(self.z)):
            raise ValueError("az and bz must partition z")
        if self.d != _complement(self.n, self.az):
            raise ValueError("d must be the complement of az")

    @property
    def z_zero(self) -> tuple:
        """Coordinates that vanish on Z; also the free coordinates of K."""
        return _complement(self.n, self.z)

    @property
    def k(self) -> tuple:
        return self.z_zero

    def to_dict(self) -> dict:
        return {"z": list(self.z), "az": list(self.az), "bz": list(self.bz), "d": list(self.d)}


@dataclass(frozen=True)
class SplitResult:
    split: bool
    reason: str
    alpha: Foliation | None = None
    alpha_profile: FoliationProfile | None = None
    sampled: bool = True

    def __bool__(self):
        return self.split


@dataclass
class DecompositionReport:
    profile: FoliationProfile
    roles: CoordinateRoles
    eta: Foliation | None
    eta_profile: FoliationProfile | None
    checks: dict = field(default_factory=dict)
    split: SplitResult | None = None

    @property
    def az_indices(self) -> tuple:
        return self.roles.az

    @property
    def bz_indices(self) -> tuple:
        return self.roles.bz

    @property
    def d_indices(self) -> tuple:
        return self.roles.d

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


# -- simple operations --------------------------------------------------------

def malgrange_check(n: int, k: int, r: int) -> bool:
    """True iff r ≥ n − k − 1."""
    if not n > k > r >= 0:
        raise ProfileError(f"need n > k > r >= 0, got ({n},{k},{r})")
    return r >= n - k - 1


def flow_constant_field(t: Sequence, p: Sequence, s: int) -> tuple:
    """Time-1 flow of t₁∂/∂z₁ + … + t_s∂/∂z_s from p: translation by (t, 0, …, 0)."""
    if len(t) != s or s > len(p):
        raise ValueError(f"need {s} flow parameters and a point with at least {s} coordinates")
    t = [GaussianRational.coerce(v) for v in t]
    p = [GaussianRational.coerce(v) for v in p]
    return tuple(p[j] + t[j] if j < s else p[j] for j in range(len(p)))


def _extend_field(v: VectorField, m: int) -> VectorField:
    n = v.nvars + m
    comps = [extend_vars(c, m) for c in v.components] + [Polynomial.zero(n)] * m
    return VectorField(n, tuple(comps))


def product_extend(f: Foliation, m: int) -> Foliation:
    """f × C^m: generators padded with zeros plus ∂/∂X_{n+1}, …, ∂/∂X_{n+m}."""
    if m < 1:
        raise ValueError("m must be positive")
    n = f.nvars + m
    gens = tuple(_extend_field(v, m) for v in f.gens)
    gens += tuple(coordinate_field(n, j) for j in range(f.nvars, n))
    levels = None if f.level_sets is None else tuple(extend_vars(p, m) for p in f.level_sets)
    rank = None if f.declared_rank is None else f.declared_rank + m
    return Foliation(n, gens, levels, rank)


def slice_extend(f: Foliation, m: int) -> Foliation:
    """i_m(f): each slice with the last m coordinates fixed carries a copy of f."""
    if m < 1:
        raise ValueError("m must be positive")
    n = f.nvars + m
    gens = tuple(_extend_field(v, m) for v in f.gens)
    levels = None
    if f.level_sets is not None:
        levels = tuple(extend_vars(p, m) for p in f.level_sets)
        levels += tuple(Polynomial.var(n, j) for j in range(f.nvars, n))
    return Foliation(n, gens, levels, f.declared_rank)


def restrict_to_slice(f: Foliation, keep: Sequence[int], declared_rank: int | None = None) -> Foliation:
    """Restrict f to the coordinate slice where every coordinate outside ``keep`` is 0.

    Generators are set to zero on the dropped coordinates; those still pointing
    out of the slice are discarded and the rest are written in the ``keep``
    coordinates. Level sets are carried along when none of them involves a
    dropped coordinate and they still annihilate the restricted generators.
    """
    keep = tuple(keep)
    if keep == tuple(range(f.nvars)):
        return f
    dropped = _complement(f.nvars, keep)
    gens = []
    for v in f.gens:
        comps = [substitute_zero(c, dropped) for c in v.components]
        if any(comps[j] for j in dropped):
            continue
        w = VectorField(len(keep), tuple(select_vars(comps[j], keep) for j in keep))
        if not w.is_zero() and w not in gens:
            gens.append(w)
    if not gens:
        raise FoliationError("no generator is tangent to the slice")
    levels = None
    if f.level_sets is not None and not any(p.variables() & set(dropped) for p in f.level_sets):
        cand = tuple(select_vars(p, keep) for p in f.level_sets)
        if 0 < len(cand) < len(keep) and all(cand) and annihilation_check(gens, cand):
            levels = cand
    return Foliation(len(keep), tuple(gens), levels, declared_rank)


def _unit(n: int, j: int) -> tuple:
    return tuple(GaussianRational(1 if i == j else 0) for i in range(n))


# -- checks -------------------------------------------------------------------

def tangency_check(f: Foliation, z_zero_indices: Sequence[int], seed: int = 0,
                   trials: int = GENERIC_TRIALS) -> bool:
    """T_x(ξ) ⊂ T_x(Z) at seeded points of Z = {x_j = 0 for j in z_zero_indices}."""
    zero = tuple(z_zero_indices)
    for x in sample_points(f.nvars, seed, trials, constraints=zero):
        basis, _ = tangent_fiber(f, x)
        if any(vec[j] for vec in basis for j in zero):
            return False
    return True


def _z_fiber_check(f: Foliation, roles: CoordinateRoles, s: int, seed: int, trials: int) -> bool:
    # On Z the fiber is exactly span{∂/∂z_j : j in az}.
    units = [_unit(f.nvars, j) for j in roles.az]
    for x in sample_points(f.nvars, seed + 1, trials, constraints=roles.z_zero):
        basis, dim = tangent_fiber(f, x)
        if dim != s or any(not in_span(basis, u) for u in units):
            return False
    return True


def _fiber_split_check(f: Foliation, eta: Foliation, roles: CoordinateRoles, seed: int,
                       trials: int) -> bool:
    s = len(roles.az)
    units = [_unit(f.nvars, j) for j in roles.az]
    for x in sample_points(f.nvars, seed + 2, trials):
        basis, dim = tangent_fiber(f, x)
        xd = tuple(x[j] for j in roles.d)
        if dim != s + fiber_dim(eta, xd):
            return False
        if any(not in_span(basis, u) for u in units):
            return False
    return True


def _positions(sub: Sequence[int], within: Sequence[int]) -> tuple:
    where = {j: i for i, j in enumerate(within)}
    return tuple(where[j] for j in sub)


def build_decomposition(f: Foliation, profile_hint: FoliationProfile, roles: CoordinateRoles,
                        seed: int = 0, trials: int = GENERIC_TRIALS,
                        strict: bool = True) -> DecompositionReport:
    """Restrict f to the slice D and certify f = η × C^s on sampled points.

    Checks, in order: ``tangency`` (fibers on Z are tangent to Z), ``z_fiber``
    (the fiber on Z is exactly the AZ coordinate directions), ``fiber_split``
    (off Z, dim T_x f = s + dim T η at the projection and the AZ directions
    lie in T_x f), ``eta_rank`` (η has generic rank k − s) and
    ``eta_singular_rank_zero`` (η has fiber dimension 0 along BZ). With
    ``strict`` the first failed check raises DecompositionError.
    """
    n, k, r, s = profile_hint.as_tuple()
    if f.nvars != n or roles.n != n:
        raise DecompositionError("roles", f"profile/roles dimension {n} does not match nvars={f.nvars}")
    if len(roles.z) != r or len(roles.az) != s:
        raise DecompositionError("roles", f"|z|={len(roles.z)}, |az|={len(roles.az)} do not match r={r}, s={s}")
    if generic_rank(f, seed) != k:
        raise DecompositionError("rank", f"sampled generic rank {generic_rank(f, seed)} != k={k}")

    checks = {"tangency": tangency_check(f, roles.z_zero, seed, trials)}
    checks["z_fiber"] = _z_fiber_check(f, roles, s, seed, trials)
    try:
        eta = f if s == 0 else restrict_to_slice(f, roles.d)
    except FoliationError:
        eta = None
    eta_profile = None
    if eta is None:
        checks.update(fiber_split=False, eta_rank=False, eta_singular_rank_zero=False)
    else:
        checks["fiber_split"] = _fiber_split_check(f, eta, roles, seed, trials)
        k_eta = max(fiber_dim(eta, x) for x in sample_points(eta.nvars, seed, GENERIC_TRIALS))
        checks["eta_rank"] = k_eta == k - s
        bz_zero = _complement(eta.nvars, _positions(roles.bz, roles.d))
        sing_dims = [fiber_dim(eta, x)
                     for x in sample_points(eta.nvars, seed + 3, trials, constraints=bz_zero)]
        checks["eta_singular_rank_zero"] = max(sing_dims) == 0
        try:
            eta_profile = FoliationProfile(n - s, k_eta, len(roles.bz), max(sing_dims))
        except ProfileError:
            eta_profile = None
    report = DecompositionReport(profile_hint, roles, eta, eta_profile, checks)
    if strict:
        for name, passed in checks.items():
            if not passed:
                raise DecompositionError(name, "check failed", report)
    return report


def split_check(report: DecompositionReport, f: Foliation, seed: int = 0,
                trials: int = GENERIC_TRIALS) -> SplitResult:
    """Decide whether η = i_{r−s}(α) for a foliation α of K with an isolated singularity.

    Returns False without sampling when n − r ≤ k − s. Otherwise, at sampled
    points of K the η-fiber must lie in T K with dimension k − s, and at
    sampled points across BZ-slices the η-fiber must have no BZ component and
    match α's fiber at the K-projection. The witness α is η restricted to K.
    """
    n, k, r, s = report.profile.as_tuple()
    if n - r <= k - s:
        return SplitResult(False, f"n-r={n - r} <= k-s={k - s}", sampled=False)
    eta = report.eta
    if eta is None:
        return SplitResult(False, "no reduced foliation")
    roles = report.roles
    bz = _positions(roles.bz, roles.d)
    kk = _complement(eta.nvars, bz)
    leaf = k - s
    units_k = [_unit(eta.nvars, j) for j in kk]
    for x in sample_points(eta.nvars, seed + 4, trials, constraints=bz):
        basis, dim = tangent_fiber(eta, x)
        if dim < leaf:
            continue
        if intersection_dim(basis, units_k) != leaf:
            return SplitResult(False, "eta fiber on K is not k-s dimensional inside T K")
    try:
        alpha = restrict_to_slice(eta, kk)
    except FoliationError:
        return SplitResult(False, "no eta generator is tangent to K")
    for x in sample_points(eta.nvars, seed + 5, trials):
        basis, dim = tangent_fiber(eta, x)
        if any(vec[j] for vec in basis for j in bz):
            return SplitResult(False, "eta has components along BZ")
        if dim != fiber_dim(alpha, tuple(x[j] for j in kk)):
            return SplitResult(False, "BZ-slice foliation differs from alpha")
    alpha_rank = max(fiber_dim(alpha, x) for x in sample_points(alpha.nvars, seed, GENERIC_TRIALS))
    origin = tuple(GaussianRational(0) for _ in range(alpha.nvars))
    if alpha_rank != leaf or fiber_dim(alpha, origin) != 0:
        return SplitResult(False, "alpha is not a rank k-s foliation singular at the origin")
    return SplitResult(True, "eta is a constant family over BZ", alpha,
                       FoliationProfile(n - r, alpha_rank, 0, 0))


def matched_point(x: Sequence, roles: CoordinateRoles) -> tuple:
    """Reorder a point of f's coordinates into product_extend(η, s) coordinates (D first, then AZ)."""
    return tuple(x[j] for j in roles.d) + tuple(x[j] for j in roles.az)
