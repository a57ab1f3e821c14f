"""Cubic-linear maps ``F = Id + (L_1^3, ..., L_d^3)`` and seeded instance generators.

Matrix file format (JSON)::

    {
      "dim": 2,
      "entries": [["0", "1"], ["0", "0"]]
    }

Every entry is a rational string ``p``, ``-p`` or ``p/q``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .poly import Polynomial, as_rational, parse_rational
from .polymap import PolyMap, PolyMatrix, jacobian
from .rng import SplitMix64

DEFAULT_POOL: tuple[Fraction, ...] = tuple(
    Fraction(x) for x in ("-2", "-1", "-1/2", "1/2", "1", "2")
)
DEFAULT_DENSITY = Fraction(3, 4)

Matrix = tuple[tuple[Fraction, ...], ...]


class GenerationError(RuntimeError):
    """A generator could not produce an instance with the requested properties."""


class MatrixFormatError(ValueError):
    """A matrix document could not be parsed."""


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of :func:`generate_leveled`.

    ``levels`` is the number of variable levels, which bounds the
    nilpotency index of ``JH`` from above.
    """

    dimension: int
    levels: int
    seed: int = 0
    density: Fraction = DEFAULT_DENSITY
    pool: tuple[Fraction, ...] = DEFAULT_POOL

    def __post_init__(self):
        object.__setattr__(self, "density", as_rational(self.density))
        object.__setattr__(self, "pool", tuple(as_rational(c) for c in self.pool))
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if not 1 <= self.levels <= self.dimension:
            raise ValueError(f"levels must lie in 1..{self.dimension}")
        if not 0 < self.density <= 1:
            raise ValueError("density must lie in (0, 1]")
        if not any(self.pool):
            raise ValueError("coefficient pool needs a nonzero value")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "levels": self.levels,
            "seed": self.seed,
            "density": str(self.density),
            "pool": [str(c) for c in self.pool],
        }


@dataclass(frozen=True)
class DruzkowskiMap:
    """``F = Id + H`` with ``H_i = L_i^3`` and ``L_i = sum_j a_ij X_j``."""

    matrix: Matrix = field()

    def __post_init__(self):
        rows = tuple(tuple(as_rational(x) for x in r) for r in self.matrix)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("coefficient matrix must be square and nonempty")
        object.__setattr__(self, "matrix", rows)

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def entry(self, i: int, j: int) -> Fraction:
        """``a_ij`` with 1-based indices."""
        return self.matrix[i - 1][j - 1]

    @cached_property
    def linear_forms(self) -> tuple[Polynomial, ...]:
        return tuple(Polynomial.linear_form(r) for r in self.matrix)

    @cached_property
    def cubic_part(self) -> PolyMap:
        return PolyMap(tuple(l**3 for l in self.linear_forms))

    @cached_property
    def map(self) -> PolyMap:
        return PolyMap.identity(self.dimension) + self.cubic_part

    def jacobian_h(self) -> PolyMatrix:
        return jacobian(self.cubic_part)

    def matrix_square(self) -> Matrix:
        a, d = self.matrix, self.dimension
        return tuple(
            tuple(sum((a[i][k] * a[k][j] for k in range(d)), Fraction(0)) for j in range(d))
            for i in range(d)
        )

    def to_text(self) -> str:
        return matrix_to_text(self)


def from_matrix(a: Sequence[Sequence]) -> DruzkowskiMap:
    return DruzkowskiMap(tuple(tuple(r) for r in a))


def paper_example(a2=0, a3=0, a4=0, a5=0, b3=0, b4=0, b5=0) -> DruzkowskiMap:
    """The five-variable family with ``L1 = a2 X2 + ... + a5 X5``,
    ``L2 = b3 X3 + b4 X4 + b5 X5`` and ``L3 = L4 = L5 = 0``."""
    zero = Fraction(0)
    rows = [
        [zero, a2, a3, a4, a5],
        [zero, zero, b3, b4, b5],
        [zero] * 5,
        [zero] * 5,
        [zero] * 5,
    ]
    return from_matrix(rows)


def level_sizes(dimension: int, levels: int) -> list[int]:
    """Contiguous level sizes; the first ``dimension % levels`` levels get one extra."""
    base, extra = divmod(dimension, levels)
    return [base + (1 if k < extra else 0) for k in range(levels)]


def level_of_variables(dimension: int, levels: int) -> list[int]:
    out = []
    for lvl, size in enumerate(level_sizes(dimension, levels)):
        out.extend([lvl] * size)
    return out


def generate_leveled(config: GeneratorConfig) -> DruzkowskiMap:
    """Random matrix whose row support only reaches strictly higher levels.

    Entries are visited row-major. For each admissible position one draw
    decides presence (probability ``density``) and, if present, a second
    draw picks a pool value. ``JH = 3 diag(L_i^2) A`` is then block strictly
    upper triangular with ``levels`` blocks, so ``(JH)^levels = 0``.
    """
    d = config.dimension
    lvl = level_of_variables(d, config.levels)
    rng = SplitMix64(config.seed)
    zero = Fraction(0)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            if lvl[j] > lvl[i] and rng.bernoulli(config.density):
                row.append(rng.choice(config.pool))
            else:
                row.append(zero)
        rows.append(row)
    return from_matrix(rows)


def square_zero_from_vectors(u: Sequence, v: Sequence) -> DruzkowskiMap:
    """``A = u v^T``; requires ``v . u = 0`` so that ``A^2 = 0``."""
    u = [as_rational(x) for x in u]
    v = [as_rational(x) for x in v]
    if len(u) != len(v):
        raise ValueError("u and v must have equal length")
    if sum((a * b for a, b in zip(u, v)), Fraction(0)) != 0:
        raise GenerationError("v . u is nonzero, so (u v^T)^2 != 0")
    return from_matrix([[a * b for b in v] for a in u])


def generate_square_zero(
    dimension: int,
    seed: int,
    pool: Sequence = DEFAULT_POOL,
    attempts: int = 64,
) -> DruzkowskiMap:
    """Rank-one ``A = u v^T`` with ``A^2 = 0``.

    ``u`` and ``v`` are drawn from ``pool``; one coordinate of ``v``, at a
    randomly chosen index where ``u`` is nonzero, is then solved for so that
    ``v . u = 0``. That coordinate is generally not a pool value.
    """
    if dimension < 2:
        raise ValueError("need dimension >= 2")
    pool = tuple(as_rational(c) for c in pool)
    if not any(pool):
        raise GenerationError("pool has no nonzero value; u would vanish")
    rng = SplitMix64(seed)
    for _ in range(attempts):
        u = [rng.choice(pool) for _ in range(dimension)]
        v = [rng.choice(pool) for _ in range(dimension)]
        support = [k for k, x in enumerate(u) if x]
        if not support:
            continue
        k = support[rng.below(len(support))]
        rest = sum((u[j] * v[j] for j in range(dimension) if j != k), Fraction(0))
        v[k] = -rest / u[k]
        return square_zero_from_vectors(u, v)
    raise GenerationError(f"no nonzero u drawn in {attempts} attempts")


# -- matrix files ------------------------------------------------------------

def matrix_to_text(m: DruzkowskiMap) -> str:
    doc = {"dim": m.dimension, "entries": [[str(x) for x in r] for r in m.matrix]}
    return json.dumps(doc, indent=2) + "\n"


def matrix_from_text(text: str) -> DruzkowskiMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("top level must be an object with fields 'dim' and 'entries'")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise MatrixFormatError("field 'dim': expected a positive integer")
    entries = doc.get("entries")
    if not isinstance(entries, list) or len(entries) != dim:
        raise MatrixFormatError(f"field 'entries': expected {dim} rows")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != dim:
            raise MatrixFormatError(f"field 'entries[{i}]': expected {dim} values")
        parsed = []
        for j, x in enumerate(row):
            if not isinstance(x, str):
                raise MatrixFormatError(f"field 'entries[{i}][{j}]': expected a rational string")
            try:
                parsed.append(parse_rational(x))
            except ValueError as exc:
                raise MatrixFormatError(f"field 'entries[{i}][{j}]': {exc}") from None
        rows.append(parsed)
    return from_matrix(rows)


def load_matrix(path: str | Path) -> DruzkowskiMap:
    return matrix_from_text(Path(path).read_text())


def save_matrix(path: str | Path, m: DruzkowskiMap) -> None:
    Path(path).write_text(matrix_to_text(m))
