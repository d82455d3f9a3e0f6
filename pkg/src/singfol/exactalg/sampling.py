"""Seeded integer sample points for genericity tests."""

from __future__ import annotations

import random
from typing import Iterable

from .gaussian import GaussianRational

BOX = 1000


def _draw(rng: random.Random, nvars: int, zeros: set[int]) -> tuple:
    coords = [rng.randint(-BOX, BOX) for _ in range(nvars)]
    return tuple(GaussianRational(0 if j in zeros else c) for j, c in enumerate(coords))


def sample_point(nvars: int, seed: int, constraints: Iterable[int] | None = None) -> tuple:
    """Integer point in [-1000, 1000]^nvars; coordinates in ``constraints`` are 0."""
    return sample_points(nvars, seed, 1, constraints)[0]


def sample_points(nvars: int, seed: int, count: int, constraints: Iterable[int] | None = None) -> list:
    """``count`` points from one seeded stream; the first equals ``sample_point(nvars, seed)``."""
    zeros = set(constraints or ())
    rng = random.Random(seed)
    return [_draw(rng, nvars, zeros) for _ in range(count)]
