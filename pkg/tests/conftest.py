import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cubicinv.poly import Polynomial

COEFFS = [Fraction(n, q) for n in range(-3, 4) for q in (1, 2, 3) if n]


def evaluate(p: Polynomial, point) -> Fraction:
    """Exact value at a rational point; uses only the public ``terms()`` view."""
    total = Fraction(0)
    for exps, c in p.terms().items():
        v = c
        for x, e in zip(point, exps):
            v *= Fraction(x) ** e
        total += v
    return total


def random_poly(rng: random.Random, dim: int, max_deg: int = 4, max_terms: int = 8) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        deg = rng.randint(0, max_deg)
        exps = [0] * dim
        for _ in range(deg):
            exps[rng.randrange(dim)] += 1
        terms[tuple(exps)] = rng.choice(COEFFS)
    return Polynomial(dim, terms)


@st.composite
def polynomials(draw, dim: int, max_deg: int = 4, max_terms: int = 20):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = draw(st.lists(st.integers(0, max_deg), min_size=dim, max_size=dim))
        if sum(exps) > max_deg:
            continue
        terms[tuple(exps)] = draw(st.sampled_from(COEFFS))
    return Polynomial(dim, terms)


@pytest.fixture
def X():
    """``X(d, i)`` builds the variable ``X_i`` in dimension ``d``."""
    return Polynomial.variable


# Shared acceptance bookkeeping: tests record outcomes, the terminal summary prints them.
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}  {detail}")
