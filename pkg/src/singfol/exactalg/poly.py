"""Sparse multivariate polynomials over Q(i)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .gaussian import ONE, ZERO, GaussianRational


class DimensionError(ValueError):
    """Operands live in ambient spaces of different dimension."""


Exponent = tuple


class Polynomial:
    """A polynomial in ``nvars`` variables with Gaussian-rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients; the zero polynomial
    has no terms. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise DimensionError(f"bad exponent vector {exps} for nvars={nvars}")
                c = GaussianRational.coerce(c)
                if c:
                    clean[exps] = clean[exps] + c if exps in clean else c
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Polynomial":
        # terms already canonical
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        c = GaussianRational.coerce(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int) -> "Polynomial":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls._raw(nvars, {tuple(exps): ONE})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.nvars, ZERO)

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def variables(self) -> set[int]:
        return {j for exps in self.terms for j, e in enumerate(exps) if e}

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .parse import poly_print
        return f"Polynomial({self.nvars}, {poly_print(self)!r})"

    def __str__(self):
        from .parse import poly_print
        return poly_print(self)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for exps, c in other.terms.items():
            if exps in out:
                s = out[exps] + c
                if s:
                    out[exps] = s
                else:
                    del out[exps]
            else:
                out[exps] = c
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = GaussianRational.coerce(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        self._check(other)
        out: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                if e in out:
                    out[e] = out[e] + c
                else:
                    out[e] = c
        return Polynomial._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials of equal nvars."""
    if a.nvars != b.nvars:
        raise DimensionError(f"nvars mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_partial(p: Polynomial, var_index: int) -> Polynomial:
    if not 0 <= var_index < p.nvars:
        raise IndexError(f"variable index {var_index} out of range for nvars={p.nvars}")
    out = {}
    for exps, c in p.terms.items():
        e = exps[var_index]
        if e:
            new = list(exps)
            new[var_index] = e - 1
            out[tuple(new)] = c * e
    return Polynomial._raw(p.nvars, out)


def poly_eval(p: Polynomial, x: Sequence) -> GaussianRational:
    if len(x) != p.nvars:
        raise DimensionError(f"point has {len(x)} coordinates, polynomial has {p.nvars} variables")
    x = [GaussianRational.coerce(v) for v in x]
    total = ZERO
    for exps, c in p.terms.items():
        term = c
        for v, e in zip(x, exps):
            if e:
                if not v:
                    term = ZERO
                    break
                term = term * (v if e == 1 else v ** e)
        if term:
            total = total + term
    return total


def jacobian(polys: Sequence[Polynomial]) -> list[list[Polynomial]]:
    """Rows are the differentials of ``polys``."""
    return [[poly_partial(f, j) for j in range(f.nvars)] for f in polys]


# -- coordinate plumbing ----------------------------------------------------

def substitute_zero(p: Polynomial, indices: Iterable[int]) -> Polynomial:
    """Set the listed variables to zero, keeping nvars."""
    idx = set(indices)
    return Polynomial._raw(p.nvars, {e: c for e, c in p.terms.items()
                                     if not any(e[j] for j in idx)})


def select_vars(p: Polynomial, keep: Sequence[int]) -> Polynomial:
    """Restrict to the variables in ``keep`` (others set to 0) and renumber them in order."""
    dropped = set(range(p.nvars)) - set(keep)
    out = {}
    for e, c in p.terms.items():
        if any(e[j] for j in dropped):
            continue
        out[tuple(e[j] for j in keep)] = c
    return Polynomial._raw(len(keep), out)


def embed(p: Polynomial, nvars: int, positions: Sequence[int]) -> Polynomial:
    """Place variable ``j`` of ``p`` at index ``positions[j]`` of an ``nvars``-variable ring."""
    if len(positions) != p.nvars:
        raise DimensionError("positions must list one target index per variable")
    out = {}
    for e, c in p.terms.items():
        new = [0] * nvars
        for j, k in enumerate(positions):
            new[k] = e[j]
        out[tuple(new)] = c
    return Polynomial._raw(nvars, out)


def extend_vars(p: Polynomial, m: int) -> Polynomial:
    """Append ``m`` unused variables."""
    return embed(p, p.nvars + m, list(range(p.nvars)))


# -- content ----------------------------------------------------------------

def integer_content(polys: Iterable[Polynomial]) -> Fraction:
    """The positive rational c such that polys/c have coprime Gaussian-integer coefficients."""
    den = 1
    num = 0
    coeffs = [c for p in polys for c in p.terms.values()]
    for c in coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    for c in coeffs:
        num = gcd(num, int(c.re * den), int(c.im * den))
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)


def monomial_content(polys: Iterable[Polynomial]) -> tuple | None:
    """Componentwise minimum exponent over all terms, or None if every poly is zero."""
    low = None
    for p in polys:
        for e in p.terms:
            low = e if low is None else tuple(min(a, b) for a, b in zip(low, e))
    return low


def divide_monomial(p: Polynomial, exps: tuple) -> Polynomial:
    return Polynomial._raw(p.nvars, {tuple(a - b for a, b in zip(e, exps)): c
                                     for e, c in p.terms.items()})
