"""Polynomial maps, symbolic Jacobians and nilpotency of polynomial matrices."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .poly import NEG_INFINITY, Polynomial, variables

#: Largest dimension accepted by :func:`determinant` unless overridden.
DETERMINANT_MAX_DIM = 8


class _NotNilpotent:
    __slots__ = ()

    def __repr__(self) -> str:
        return "NOT_NILPOTENT"

    def __str__(self) -> str:
        return "NOT_NILPOTENT"

    def __reduce__(self):
        return "NOT_NILPOTENT"


#: Returned by :func:`nilpotency_index` when no power up to the cap vanishes.
NOT_NILPOTENT = _NotNilpotent()


class DimensionLimitError(ValueError):
    """The requested operation is not supported at this matrix size."""


class NotIdPlusHomogeneous(ValueError):
    """A map is not of the form ``Id + H`` with ``H`` homogeneous."""


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map ``K^d -> K^d`` given by its component polynomials."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        d = len(comps)
        if d == 0:
            raise ValueError("a polynomial map needs at least one component")
        for c in comps:
            if c.dimension != d:
                raise ValueError(
                    f"component of dimension {c.dimension} in a map of dimension {d}"
                )

    @classmethod
    def identity(cls, dimension: int) -> "PolyMap":
        return cls(tuple(variables(dimension)))

    @classmethod
    def parse(cls, lines: Sequence[str], var: str = "X") -> "PolyMap":
        d = len(lines)
        return cls(tuple(Polynomial.parse(s, d, var) for s in lines))

    @property
    def dimension(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __getitem__(self, i: int) -> Polynomial:
        return self.components[i]

    def __add__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(tuple(a + b for a, b in zip(self, other, strict=True)))

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        return PolyMap(tuple(a - b for a, b in zip(self, other, strict=True)))

    def __neg__(self) -> "PolyMap":
        return PolyMap(tuple(-a for a in self))

    def degree(self) -> int | float:
        return max(c.degree() for c in self.components)

    def compose(self, inner: "PolyMap", max_terms: int | None = None) -> "PolyMap":
        """``self o inner``, i.e. ``X -> self(inner(X))``."""
        if inner.dimension != self.dimension:
            raise ValueError("dimension mismatch in map composition")
        return PolyMap(tuple(c.compose(inner.components, max_terms) for c in self))

    def is_identity(self) -> bool:
        return all(c.is_variable(i + 1) for i, c in enumerate(self.components))

    def nonlinear_part(self) -> "PolyMap":
        """``self - Id``."""
        return self - PolyMap.identity(self.dimension)

    def jacobian(self) -> "PolyMatrix":
        return jacobian(self)

    def to_text(self, var: str = "X", name: str = "F") -> str:
        return "\n".join(
            f"{name}{i + 1} = {c.to_text(var)}" for i, c in enumerate(self.components)
        )


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of polynomials in ``d`` variables, ``d`` rows."""

    rows: tuple[tuple[Polynomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("polynomial matrix must be square and nonempty")
        for r in rows:
            for p in r:
                if p.dimension != d:
                    raise ValueError("matrix entries must have dimension equal to the matrix size")

    @classmethod
    def identity(cls, dimension: int) -> "PolyMatrix":
        one, zero = Polynomial.one(dimension), Polynomial.zero(dimension)
        return cls(tuple(
            tuple(one if i == j else zero for j in range(dimension)) for i in range(dimension)
        ))

    @classmethod
    def zeros(cls, dimension: int) -> "PolyMatrix":
        zero = Polynomial.zero(dimension)
        return cls(tuple((zero,) * dimension for _ in range(dimension)))

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.rows for p in r)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return matrix_mul(self, other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return PolyMatrix(tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)
        ))

    def to_text(self, var: str = "X") -> str:
        return "\n".join(" ; ".join(p.to_text(var) for p in r) for r in self.rows)


def jacobian(m: PolyMap) -> PolyMatrix:
    """Entry ``(i, j)`` is the derivative of component ``i`` in ``X_{j+1}``."""
    d = m.dimension
    return PolyMatrix(tuple(
        tuple(c.partial_derivative(j) for j in range(1, d + 1)) for c in m.components
    ))


def matrix_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    d = a.dimension
    cols = [[b.rows[k][j] for k in range(d)] for j in range(d)]
    out = []
    for row in a.rows:
        out_row = []
        for col in cols:
            prods = [x * y for x, y in zip(row, col) if x and y]
            out_row.append(Polynomial.sum(prods, d))
        out.append(tuple(out_row))
    return PolyMatrix(tuple(out))


def matrix_powers(m: PolyMatrix, count: int) -> list[PolyMatrix]:
    """``[m, m^2, ..., m^count]``, stopping early after the first zero power."""
    out = [m]
    while len(out) < count and not out[-1].is_zero():
        out.append(matrix_mul(out[-1], m))
    return out


def nilpotency_index(m: PolyMatrix, cap: int | None = None):
    """Smallest ``g <= cap`` with ``m^g = 0``, else ``NOT_NILPOTENT``.

    ``cap`` defaults to the matrix dimension.
    """
    if cap is None:
        cap = m.dimension
    if cap < 1:
        raise ValueError("cap must be at least 1")
    current = m
    for g in range(1, cap + 1):
        if current.is_zero():
            return g
        if g < cap:
            current = matrix_mul(current, m)
    return NOT_NILPOTENT


def determinant(m: PolyMatrix, max_dim: int = DETERMINANT_MAX_DIM) -> Polynomial:
    """Cofactor expansion along rows, memoized on the remaining column set."""
    d = m.dimension
    if d > max_dim:
        raise DimensionLimitError(
            f"determinant of a {d}x{d} polynomial matrix exceeds the limit {max_dim}"
        )
    memo: dict[int, Polynomial] = {}
    full = (1 << d) - 1

    def minor(cols: int) -> Polynomial:
        # rows used so far = d - popcount(cols)
        if cols == 0:
            return Polynomial.one(d)
        if cols in memo:
            return memo[cols]
        row = d - bin(cols).count("1")
        parts = []
        sign = 1
        for c in range(d):
            if not cols >> c & 1:
                continue
            entry = m.rows[row][c]
            if entry:
                sub = minor(cols & ~(1 << c))
                if sub:
                    parts.append(entry * sub if sign > 0 else -(entry * sub))
            sign = -sign
        memo[cols] = Polynomial.sum(parts, d)
        return memo[cols]

    return minor(full)


def split_homogeneous(f: PolyMap) -> tuple[PolyMap, int | float]:
    """Write ``f = Id + H`` and return ``(H, deg H)``.

    Raises :class:`NotIdPlusHomogeneous` unless every nonzero component of
    ``H`` is homogeneous of one common degree, at least 2.
    """
    h = f.nonlinear_part()
    degrees = set()
    for i, c in enumerate(h.components):
        if c.is_zero():
            continue
        if not c.is_homogeneous():
            raise NotIdPlusHomogeneous(f"component {i + 1} of F - Id is not homogeneous")
        degrees.add(c.degree())
    if len(degrees) > 1:
        raise NotIdPlusHomogeneous(f"F - Id mixes degrees {sorted(degrees)}")
    deg = degrees.pop() if degrees else NEG_INFINITY
    if deg != NEG_INFINITY and deg < 2:
        raise NotIdPlusHomogeneous(f"F - Id has degree {deg}; need at least 2")
    return h, deg


def is_keller(f: PolyMap) -> bool:
    """Jacobian determinant test for ``f = Id + H`` with ``H`` homogeneous.

    Uses the equivalence ``det JF = 1  <=>  (JH)^d = 0``.
    """
    h, _ = split_homogeneous(f)
    jh = jacobian(h)
    return nilpotency_index(jh, h.dimension) is not NOT_NILPOTENT
