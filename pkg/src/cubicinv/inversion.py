"""Inversion of ``F = Id + H`` (``H`` homogeneous cubic) by iterated differences.

For each coordinate ``i`` the sequence is::

    P_0 = X_i,  P_1 = H_i,  P_j = P_{j-1}(F) - P_{j-1}(X)

``F`` is invertible exactly when every sequence reaches zero, at index
``m_i`` say, and then ``G_i = sum_{l < m_i} (-1)^l P_l`` is the inverse.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .poly import NEG_INFINITY, Polynomial, TermBudgetExceeded
from .polymap import NotIdPlusHomogeneous, PolyMap, split_homogeneous


class NotCubicPerturbation(NotIdPlusHomogeneous):
    """``F - Id`` is not a homogeneous cubic map."""


class Status(str, enum.Enum):
    INVERTED = "INVERTED"
    INCONCLUSIVE = "INCONCLUSIVE"


def default_cap(dimension: int) -> int:
    """``(3^(d-1) + 1) / 2``: the step count matching the ``3^(d-1)`` inverse-degree bound."""
    return (3 ** (dimension - 1) + 1) // 2


def cubic_part(f: PolyMap) -> PolyMap:
    """``H = F - Id``, checked to be homogeneous of degree 3 (or zero)."""
    try:
        h, deg = split_homogeneous(f)
    except NotIdPlusHomogeneous as exc:
        raise NotCubicPerturbation(str(exc)) from None
    if deg not in (3, NEG_INFINITY):
        raise NotCubicPerturbation(f"F - Id has degree {deg}, expected 3")
    return h


def iter_p_sequence(
    f: PolyMap,
    h: PolyMap,
    i: int,
    cap: int,
    max_terms: int | None = None,
) -> Iterator[Polynomial]:
    """Yield ``P_0, P_1, ...`` for coordinate ``i`` (1-based) up to ``P_cap``,
    stopping right after the first zero."""
    d = f.dimension
    p = Polynomial.variable(d, i)
    yield p
    p = h.components[i - 1]
    yield p
    for _ in range(2, cap + 1):
        if p.is_zero():
            return
        p = p.compose(f.components, max_terms=max_terms) - p
        if max_terms is not None and len(p) > max_terms:
            raise TermBudgetExceeded(len(p), max_terms)
        yield p


def p_sequence(
    f: PolyMap,
    i: int,
    cap: int,
    max_terms: int | None = None,
) -> list[Polynomial]:
    """``[P_0, ..., P_j]`` where ``j`` is the first zero index or ``cap``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if not 1 <= i <= f.dimension:
        raise IndexError(f"coordinate {i} outside 1..{f.dimension}")
    h = cubic_part(f)
    return list(iter_p_sequence(f, h, i, cap, max_terms))


@dataclass(frozen=True)
class InversionTrace:
    dimension: int
    sequences: tuple[tuple[Polynomial, ...], ...]
    termination: tuple[int | None, ...]
    cap: int
    budget_exceeded: bool = False
    # set only when the unmodified default cap was exhausted
    provably_not_invertible: bool = False

    @property
    def degrees(self) -> tuple[tuple, ...]:
        return tuple(tuple(p.degree() for p in seq) for seq in self.sequences)

    @property
    def resolved(self) -> bool:
        return all(m is not None for m in self.termination)

    def to_text(self) -> str:
        lines = [f"dimension {self.dimension}", f"cap {self.cap}"]
        for i, seq in enumerate(self.sequences, start=1):
            m = self.termination[i - 1]
            lines.append(f"coordinate {i}: m = {m if m is not None else 'UNRESOLVED'}")
            for j, p in enumerate(seq):
                deg = "0" if p.is_zero() else str(p.degree())
                lines.append(f"  P_{j}: deg {deg}, terms {len(p)}")
        if self.budget_exceeded:
            lines.append("budget exceeded")
        if self.provably_not_invertible:
            lines.append("provably_not_invertible = true")
        return "\n".join(lines)


@dataclass(frozen=True)
class InversionResult:
    status: Status
    inverse: PolyMap | None
    trace: InversionTrace

    @property
    def inverted(self) -> bool:
        return self.status is Status.INVERTED


def alternating_sum(seq: Sequence[Polynomial]) -> Polynomial:
    """``sum_l (-1)^l P_l`` over the given prefix."""
    return Polynomial.sum((p if l % 2 == 0 else -p for l, p in enumerate(seq)), seq[0].dimension)


def invert(f: PolyMap, cap: int | None = None, max_terms: int | None = None) -> InversionResult:
    """Run the difference sequences for every coordinate and assemble ``F^{-1}``.

    ``cap`` defaults to :func:`default_cap`. Reaching the cap, or the term
    budget, gives ``INCONCLUSIVE`` with the partial trace.
    """
    h = cubic_part(f)
    d = f.dimension
    use_default = cap is None
    if cap is None:
        cap = default_cap(d)
    if cap < 1:
        raise ValueError("cap must be at least 1")
    sequences: list[tuple[Polynomial, ...]] = []
    termination: list[int | None] = []
    over_budget = False
    for i in range(1, d + 1):
        seq: list[Polynomial] = []
        if not over_budget:
            try:
                for p in iter_p_sequence(f, h, i, cap, max_terms):
                    seq.append(p)
            except TermBudgetExceeded:
                over_budget = True
        sequences.append(tuple(seq))
        termination.append(len(seq) - 1 if seq and seq[-1].is_zero() else None)

    resolved = all(m is not None for m in termination)
    trace = InversionTrace(
        dimension=d,
        sequences=tuple(sequences),
        termination=tuple(termination),
        cap=cap,
        budget_exceeded=over_budget,
        provably_not_invertible=use_default and not resolved and not over_budget,
    )
    if not resolved:
        return InversionResult(Status.INCONCLUSIVE, None, trace)
    inverse = PolyMap(tuple(alternating_sum(seq[:-1]) for seq in sequences))
    return InversionResult(Status.INVERTED, inverse, trace)


def verify_inverse(f: PolyMap, g: PolyMap) -> bool:
    """True iff ``g o f = Id`` and ``f o g = Id``, exactly."""
    if f.dimension != g.dimension:
        return False
    return g.compose(f).is_identity() and f.compose(g).is_identity()


def taylor_components(p: Polynomial, h: PolyMap | Sequence[Polynomial]) -> list[Polynomial]:
    """Order-by-order expansion of ``p(X + h) - p(X)``.

    Returns ``deg p`` polynomials; entry ``n - 1`` is
    ``sum_{|alpha| = n} (d^alpha p / alpha!) h^alpha``. Multi-indices are
    enumerated depth-first in nondecreasing variable order, and a branch is
    dropped as soon as its derivative vanishes, so only multi-indices
    dividing some monomial of ``p`` are visited.
    """
    hs = tuple(h.components if isinstance(h, PolyMap) else h)
    d = p.dimension
    if len(hs) != d or any(q.dimension != d for q in hs):
        raise ValueError("h must have one component of matching dimension per variable")
    top = p.degree()
    if top == NEG_INFINITY or top == 0:
        return []
    active = [k for k in range(d) if hs[k]]
    buckets: list[list[Polynomial]] = [[] for _ in range(top)]

    def walk(deriv: Polynomial, hprod: Polynomial, order: int, start: int, alpha: list[int]):
        for pos in range(start, len(active)):
            k = active[pos]
            # d^(alpha + e_k) p / (alpha + e_k)!  from  d^alpha p / alpha!
            nxt = deriv.partial_derivative(k + 1)
            if nxt.is_zero():
                continue
            alpha[k] += 1
            nxt = nxt * Fraction(1, alpha[k])
            term_h = hprod * hs[k]
            buckets[order].append(nxt * term_h)
            walk(nxt, term_h, order + 1, pos, alpha)
            alpha[k] -= 1

    walk(p, Polynomial.one(d), 0, 0, [0] * d)
    return [Polynomial.sum(b, d) for b in buckets]

