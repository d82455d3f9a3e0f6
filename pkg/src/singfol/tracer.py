"""Numeric leaf tracing with classical fixed-step RK4 in complex time."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactalg import GaussianRational, Polynomial, sample_point
from .foliation import Foliation, fiber_dim, generic_rank

DRIFT_TOLERANCE = 1e-6
# Drifts below this are floating round-off; halving the step cannot shrink them.
ROUNDOFF_FLOOR = 1e-12


class TraceError(ValueError):
    pass


class SingularStartError(TraceError):
    pass


def compile_poly(p: Polynomial):
    """Numeric evaluator z -> complex for a polynomial (z indexable by 0-based variable)."""
    if not p.terms:
        return lambda z: 0j
    names = {}
    parts = []
    for t, (exps, c) in enumerate(p.terms.items()):
        names[f"c{t}"] = complex(c)
        factors = [f"c{t}"]
        for j, e in enumerate(exps):
            if e:
                factors.append(f"z[{j}]" if e == 1 else f"z[{j}]**{e}")
        parts.append("*".join(factors))
    return eval("lambda z: " + " + ".join(parts), names)


def compile_field(v):
    comps = [compile_poly(c) for c in v.components]

    def f(z):
        return np.array([c(z) for c in comps], dtype=complex)
    return f


@dataclass
class TraceRecord:
    points: list
    times: list
    step: float
    direction_angle: float
    drift: float
    generator_index: int = 0
    halved_drift: float | None = None
    richardson_ok: bool | None = None


def drift_of(points: Sequence[np.ndarray], integrals) -> float:
    """max over points and integrals of |F(z_t) − F(z_0)| / (1 + |F(z_0)|)."""
    worst = 0.0
    for F in integrals:
        f0 = F(points[0])
        scale = 1.0 + abs(f0)
        for z in points[1:]:
            worst = max(worst, float(abs(F(z) - f0) / scale))
    return worst


def _rk4(rhs, z0: np.ndarray, total_time: float, step: float):
    nsteps = math.ceil(total_time / step - 1e-9) if total_time > 0 else 0
    points = [z0.copy()]
    times = [0.0]
    z = z0.copy()
    tau = 0.0
    for i in range(nsteps):
        h = min(step, total_time - tau) if i == nsteps - 1 else step
        k1 = rhs(z)
        k2 = rhs(z + 0.5 * h * k1)
        k3 = rhs(z + 0.5 * h * k2)
        k4 = rhs(z + h * k3)
        z = z + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        tau = (i + 1) * step if i < nsteps - 1 else total_time
        points.append(z.copy())
        times.append(tau)
    return points, times


def nearest_rational(start: Sequence[complex], max_den: int = 10**6) -> tuple:
    out = []
    for c in start:
        c = complex(c)
        out.append(GaussianRational(Fraction(c.real).limit_denominator(max_den),
                                    Fraction(c.imag).limit_denominator(max_den)))
    return tuple(out)


def seeded_start(nvars: int, seed: int) -> list[complex]:
    """Unit-scale complex start: (sample_point(seed) + i*sample_point(seed+1)) / 1000."""
    re_part = sample_point(nvars, seed)
    im_part = sample_point(nvars, seed + 1)
    return [complex(float(a.re), float(b.re)) / 1000 for a, b in zip(re_part, im_part)]


def trace_leaf(f: Foliation, start: Sequence[complex], generator_index: int, theta: float,
               total_time: float, step: float, seed: int = 0, richardson: bool = True) -> TraceRecord:
    """Integrate dz/dτ = e^{iθ}·V(z) for one generator V and measure first-integral drift.

    The level sets of ``f`` serve as first integrals. With ``richardson`` the
    trace is repeated at half the step and ``richardson_ok`` records whether
    the drift dropped at least fourfold (or both runs sit at round-off).
    """
    if step <= 0:
        raise TraceError("step must be positive")
    if total_time < 0:
        raise TraceError("total_time must be non-negative")
    if f.level_sets is None:
        raise TraceError("tracing needs level sets to measure drift")
    gens = f.gens
    if not 0 <= generator_index < len(gens):
        raise TraceError(f"generator index {generator_index} out of range (0..{len(gens) - 1})")
    if len(start) != f.nvars:
        raise TraceError(f"start has {len(start)} coordinates, foliation has {f.nvars}")
    k = generic_rank(f, seed)
    d = fiber_dim(f, nearest_rational(start))
    if d < k:
        raise SingularStartError(f"start point is singular: fiber dimension {d} < rank {k}")

    field_fn = compile_field(gens[generator_index])
    rot = complex(math.cos(theta), math.sin(theta))

    def rhs(z):
        return rot * field_fn(z)

    integrals = [compile_poly(p) for p in f.level_sets]
    z0 = np.array([complex(c) for c in start], dtype=complex)
    points, times = _rk4(rhs, z0, total_time, step)
    drift = drift_of(points, integrals)
    rec = TraceRecord(points, times, step, theta, drift, generator_index)
    if richardson and total_time > 0:
        half_points, _ = _rk4(rhs, z0, total_time, step / 2)
        rec.halved_drift = drift_of(half_points, integrals)
        rec.richardson_ok = bool(rec.halved_drift <= rec.drift / 4
                             or max(rec.drift, rec.halved_drift) <= ROUNDOFF_FLOOR)
    return rec
