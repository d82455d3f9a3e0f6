import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from singfol.exactalg import GaussianRational, Polynomial
from singfol.fields import VectorField

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_scalar(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    im = Fraction(rng.randint(-5, 5), rng.randint(1, 3)) if rng.random() < 0.4 else 0
    return GaussianRational(re, im)


def random_poly(rng: random.Random, n: int, terms: int = 3, maxdeg: int = 2) -> Polynomial:
    out = {}
    for _ in range(rng.randint(0, terms)):
        exps = tuple(rng.randint(0, maxdeg) for _ in range(n))
        out[exps] = random_scalar(rng)
    return Polynomial(n, out)


def random_field(rng: random.Random, n: int, terms: int = 2, maxdeg: int = 2) -> VectorField:
    return VectorField(n, tuple(random_poly(rng, n, terms, maxdeg) for _ in range(n)))


def leibniz_det(m):
    """Determinant by the permutation expansion."""
    n = len(m)
    total = GaussianRational(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = GaussianRational(1)
        for i in range(n):
            term = term * m[i][perm[i]]
            if not term:
                break
        total = total + (term if inversions % 2 == 0 else -term)
    return total


def brute_rank(m):
    """Largest size of a nonvanishing square minor."""
    rows = len(m)
    cols = len(m[0]) if m else 0
    for size in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), size):
            for cs in combinations(range(cols), size):
                if leibniz_det([[m[i][j] for j in cs] for i in rs]):
                    return size
    return 0


@pytest.fixture
def rng():
    return random.Random(20240601)
