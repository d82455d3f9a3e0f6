"""Polynomial vector fields: evaluation, derivation action, brackets, kernels."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .exactalg import DimensionError, GaussianRational, Polynomial, poly_eval, poly_parse, poly_partial, poly_print
from .exactalg.poly import divide_monomial, integer_content, monomial_content


@dataclass(frozen=True)
class VectorField:
    """Σ_j components[j] · ∂/∂X_{j+1} with polynomial coefficients."""

    nvars: int
    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != self.nvars:
            raise DimensionError(f"{len(comps)} components for nvars={self.nvars}")
        if any(c.nvars != self.nvars for c in comps):
            raise DimensionError("component polynomials must share the field's nvars")

    @classmethod
    def from_strings(cls, texts: Sequence[str]) -> "VectorField":
        n = len(texts)
        return cls(n, tuple(poly_parse(t, n) for t in texts))

    def to_strings(self) -> list[str]:
        return [poly_print(c) for c in self.components]

    def is_zero(self) -> bool:
        return not any(self.components)

    def _other(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        if other.nvars != self.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return VectorField(self.nvars, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return VectorField(self.nvars, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return VectorField(self.nvars, tuple(-c for c in self.components))

    def scale(self, f) -> "VectorField":
        """Multiply every component by a polynomial or scalar ``f``."""
        if isinstance(f, Polynomial) and f.nvars != self.nvars:
            raise DimensionError("scaling polynomial has wrong nvars")
        return VectorField(self.nvars, tuple(c * f for c in self.components))

    def __str__(self):
        parts = [f"({poly_print(c)})*d{j + 1}" for j, c in enumerate(self.components) if c]
        return " + ".join(parts) if parts else "0"


# -- standard fields ----------------------------------------------------------

def zero_field(n: int) -> VectorField:
    return VectorField(n, tuple(Polynomial.zero(n) for _ in range(n)))


def coordinate_field(n: int, j: int) -> VectorField:
    """∂/∂X_{j+1}."""
    comps = [Polynomial.zero(n)] * n
    comps[j] = Polynomial.constant(n, 1)
    return VectorField(n, tuple(comps))


def rotation_field(n: int, a: int, b: int) -> VectorField:
    """X_a·∂/∂X_b − X_b·∂/∂X_a (0-based a, b)."""
    comps = [Polynomial.zero(n)] * n
    comps[b] = Polynomial.var(n, a)
    comps[a] = -Polynomial.var(n, b)
    return VectorField(n, tuple(comps))


def euler_field(n: int) -> VectorField:
    return VectorField(n, tuple(Polynomial.var(n, j) for j in range(n)))


# -- operations ---------------------------------------------------------------

def vf_eval(v: VectorField, x: Sequence) -> tuple:
    if len(x) != v.nvars:
        raise DimensionError(f"point has {len(x)} coordinates, field has {v.nvars}")
    return tuple(poly_eval(c, x) for c in v.components)


def vf_apply(v: VectorField, f: Polynomial) -> Polynomial:
    """The derivation v(f) = Σ_j v_j ∂f/∂X_j."""
    if f.nvars != v.nvars:
        raise DimensionError(f"nvars mismatch: field {v.nvars} vs polynomial {f.nvars}")
    out = Polynomial.zero(f.nvars)
    for j, c in enumerate(v.components):
        if c:
            d = poly_partial(f, j)
            if d:
                out = out + c * d
    return out


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    if v.nvars != w.nvars:
        raise DimensionError(f"nvars mismatch: {v.nvars} vs {w.nvars}")
    return VectorField(v.nvars, tuple(vf_apply(v, wc) - vf_apply(w, vc)
                                      for vc, wc in zip(v.components, w.components)))


def normalize_field(v: VectorField) -> VectorField:
    """Divide out integer and monomial content; fix the sign of the leading coefficient."""
    if v.is_zero():
        return v
    low = monomial_content(v.components)
    comps = [divide_monomial(c, low) for c in v.components]
    content = integer_content(comps)
    comps = [c * GaussianRational(1 / content) for c in comps]
    lead = next(c for c in comps if c).sorted_terms()[0][1]
    if lead.re < 0 or (lead.re == 0 and lead.im < 0):
        comps = [-c for c in comps]
    return VectorField(v.nvars, tuple(comps))


def poly_det(mat, rows: int, cols: tuple, cache: dict, start: int = 0) -> Polynomial:
    # Laplace expansion along row `start`, memoized on the column subset.
    key = (start, cols)
    if key in cache:
        return cache[key]
    nvars = mat[0][0].nvars
    if start == rows:
        result = Polynomial.constant(nvars, 1)
    else:
        result = Polynomial.zero(nvars)
        for j, c in enumerate(cols):
            entry = mat[start][c]
            if not entry:
                continue
            minor = poly_det(mat, rows, cols[:j] + cols[j + 1:], cache, start + 1)
            if minor:
                term = entry * minor
                result = result + term if j % 2 == 0 else result - term
    cache[key] = result
    return result


def kernel_generators(mat: Sequence[Sequence[Polynomial]]) -> list[VectorField]:
    """Polynomial vector fields annihilating every row of ``mat``.

    For each (m+1)-subset S of columns the field with component
    (−1)^j · det(mat restricted to S minus its j-th column) at S[j] is in the
    kernel (expand a determinant with a repeated row). These are the
    cleared-denominator solutions that fraction-free elimination produces for
    every choice of pivot columns, so together they span the kernel at every
    point where the matrix has full row rank. Outputs are normalized and
    deduplicated; the list spans a working presentation, not a saturated module.
    """
    rows = [list(r) for r in mat]
    if not rows or not rows[0]:
        raise ValueError("kernel_generators needs a nonempty matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows) or any(p.nvars != n for r in rows for p in r):
        raise DimensionError("rows must hold nvars polynomials in nvars variables")
    m = len(rows)
    if m >= n:
        return []
    cache: dict = {}
    out: list[VectorField] = []
    seen = set()
    for subset in combinations(range(n), m + 1):
        comps = [Polynomial.zero(n)] * n
        for j, col in enumerate(subset):
            minor = poly_det(rows, m, subset[:j] + subset[j + 1:], cache)
            comps[col] = minor if j % 2 == 0 else -minor
        v = VectorField(n, tuple(comps))
        if v.is_zero():
            continue
        v = normalize_field(v)
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out
