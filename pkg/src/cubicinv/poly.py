"""Sparse multivariate polynomials over the rationals.

A polynomial in ``d`` variables is stored as a map from packed monomial keys
to integer numerators, plus one positive common denominator. The packed key
of ``X1^e1 * ... * Xd^ed`` is::

    deg << (16*d) | e1 << (16*(d-1)) | ... | ed

with ``deg = e1 + ... + ed``. Multiplying monomials adds keys, and sorting
keys as integers gives graded-lex order with ``X1 > X2 > ... > Xd``.
Exponents and total degree are limited to ``MAX_DEGREE``.

Instances are immutable and hashable.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._backend import kernels

FIELD_BITS = 16
MAX_DEGREE = (1 << FIELD_BITS) - 1

#: Degree of the zero polynomial. Compares below every integer.
NEG_INFINITY = float("-inf")

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")
_FACTOR_RE = re.compile(r"([A-Za-z]+)(\d+)(?:\^(\d+))?")
_SIGN_SPLIT_RE = re.compile(r"\s+([+-])\s+")


class TermBudgetExceeded(RuntimeError):
    """An intermediate polynomial grew past the configured term budget."""

    def __init__(self, size: int, limit: int):
        super().__init__(f"polynomial with {size} terms exceeds budget of {limit}")
        self.size = size
        self.limit = limit


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q``; anything else raises ``ValueError``."""
    s = text.strip()
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"inexact or unsupported coefficient type {type(value).__name__}")


def _pack(exps: Sequence[int], dim: int) -> int:
    key = 0
    deg = 0
    for e in exps:
        if e < 0:
            raise ValueError("negative exponent")
        deg += e
        key = (key << FIELD_BITS) | e
    if deg > MAX_DEGREE:
        raise OverflowError(f"total degree {deg} exceeds {MAX_DEGREE}")
    return (deg << (FIELD_BITS * dim)) | key


def _unpack(key: int, dim: int) -> tuple[int, ...]:
    out = [0] * dim
    for i in range(dim - 1, -1, -1):
        out[i] = key & MAX_DEGREE
        key >>= FIELD_BITS
    return tuple(out)


def _content_gcd(terms: dict, den: int) -> int:
    g = den
    for v in terms.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("_dim", "_terms", "_den", "_hash")

    def __init__(self, dimension: int, terms: Mapping[Sequence[int], object] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        packed: dict[int, Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != dimension:
                raise ValueError(f"monomial {tuple(exps)} does not have {dimension} exponents")
            c = as_rational(c)
            k = _pack(exps, dimension)
            packed[k] = packed.get(k, Fraction(0)) + c
        den = 1
        for c in packed.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = {k: int(c * den) for k, c in packed.items() if c}
        self._set(dimension, nums, den)

    def _set(self, dim: int, terms: dict, den: int) -> None:
        if not terms:
            den = 1
        elif den != 1:
            if den < 0:
                den = -den
                terms = {k: -v for k, v in terms.items()}
            g = _content_gcd(terms, den)
            if g != 1:
                den //= g
                terms = {k: v // g for k, v in terms.items()}
        self._dim = dim
        self._terms = terms
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, dim: int, terms: dict, den: int = 1) -> "Polynomial":
        # terms must already be zero-free
        p = cls.__new__(cls)
        p._set(dim, terms, den)
        return p

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls._make(dimension, {})

    @classmethod
    def one(cls, dimension: int) -> "Polynomial":
        return cls.constant(dimension, 1)

    @classmethod
    def constant(cls, dimension: int, value) -> "Polynomial":
        c = as_rational(value)
        if not c:
            return cls.zero(dimension)
        return cls._make(dimension, {0: c.numerator}, c.denominator)

    @classmethod
    def variable(cls, dimension: int, index: int) -> "Polynomial":
        """The variable ``X_index`` (1-based)."""
        if not 1 <= index <= dimension:
            raise IndexError(f"variable index {index} outside 1..{dimension}")
        exps = [0] * dimension
        exps[index - 1] = 1
        return cls._make(dimension, {_pack(exps, dimension): 1})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coefficient=1) -> "Polynomial":
        return cls(len(exponents), {tuple(exponents): coefficient})

    @classmethod
    def linear_form(cls, coefficients: Sequence) -> "Polynomial":
        """``sum_j c_j X_j`` for the given coefficient row."""
        d = len(coefficients)
        terms = {}
        for j, c in enumerate(coefficients):
            exps = [0] * d
            exps[j] = 1
            terms[tuple(exps)] = c
        return cls(d, terms)

    # -- inspection -----------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dim

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    def _shift(self) -> int:
        return FIELD_BITS * self._dim

    def degree(self) -> int | float:
        """Total degree; ``NEG_INFINITY`` for the zero polynomial."""
        if not self._terms:
            return NEG_INFINITY
        return max(self._terms) >> self._shift()

    def min_degree(self) -> int | float:
        """Smallest total degree among the terms; ``NEG_INFINITY`` for zero."""
        if not self._terms:
            return NEG_INFINITY
        return min(self._terms) >> self._shift()

    def is_homogeneous(self) -> bool:
        return self.degree() == self.min_degree()

    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Exponent tuple -> coefficient, in graded-lex descending order."""
        d, den = self._dim, self._den
        return {
            _unpack(k, d): Fraction(self._terms[k], den)
            for k in sorted(self._terms, reverse=True)
        }

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        num = self._terms.get(_pack(exponents, self._dim), 0)
        return Fraction(num, self._den)

    def constant_term(self) -> Fraction:
        return Fraction(self._terms.get(0, 0), self._den)

    def is_variable(self, index: int) -> bool:
        """True iff this polynomial is exactly ``X_index``."""
        if self._den != 1 or len(self._terms) != 1:
            return False
        exps = [0] * self._dim
        exps[index - 1] = 1
        return self._terms.get(_pack(exps, self._dim)) == 1

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other._dim != self._dim:
                raise ValueError(f"dimension mismatch: {self._dim} vs {other._dim}")
            return other
        return Polynomial.constant(self._dim, other)

    def __add__(self, other) -> "Polynomial":
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not q._terms:
            return self
        if not self._terms:
            return q
        da, db = self._den, q._den
        lcm = da * db // math.gcd(da, db)
        terms = kernels.lincomb_terms(self._terms, lcm // da, q._terms, lcm // db)
        return Polynomial._make(self._dim, terms, lcm)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self._dim, kernels.scale_terms(self._terms, -1), self._den)

    def __sub__(self, other) -> "Polynomial":
        try:
            q = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            q = self._coerce(other)
            if not self._terms or not q._terms:
                return Polynomial.zero(self._dim)
            if self.degree() + q.degree() > MAX_DEGREE:
                raise OverflowError("product degree exceeds MAX_DEGREE")
            terms = kernels.mul_terms(self._terms, q._terms)
            return Polynomial._make(self._dim, terms, self._den * q._den)
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Polynomial.zero(self._dim)
        terms = kernels.scale_terms(self._terms, c.numerator)
        return Polynomial._make(self._dim, terms, self._den * c.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        # successive multiplication by the (usually small) base beats squaring
        # for sparse inputs
        result = Polynomial.one(self._dim)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return (
                self._dim == other._dim
                and self._den == other._den
                and self._terms == other._terms
            )
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self._dim, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._dim, self._den, frozenset(self._terms.items())))
        return self._hash

    @staticmethod
    def sum(polys: Iterable["Polynomial"], dimension: int | None = None) -> "Polynomial":
        """Sum of many polynomials with a single accumulation pass."""
        polys = [p for p in polys]
        if not polys:
            if dimension is None:
                raise ValueError("dimension required for an empty sum")
            return Polynomial.zero(dimension)
        dim = polys[0]._dim
        lcm = 1
        for p in polys:
            if p._dim != dim:
                raise ValueError("dimension mismatch in sum")
            lcm = lcm * p._den // math.gcd(lcm, p._den)
        acc: dict = {}
        for p in polys:
            kernels.axpy_into(acc, p._terms, lcm // p._den)
        return Polynomial._make(dim, {k: v for k, v in acc.items() if v}, lcm)

    # -- calculus and substitution --------------------------------------

    def partial_derivative(self, index: int) -> "Polynomial":
        """Formal derivative with respect to ``X_index`` (1-based)."""
        d = self._dim
        if not 1 <= index <= d:
            raise IndexError(f"variable index {index} outside 1..{d}")
        shift = FIELD_BITS * (d - index)
        step = (1 << shift) | (1 << (FIELD_BITS * d))
        return Polynomial._make(d, kernels.diff_terms(self._terms, shift, step), self._den)

    def compose(self, subst: Sequence["Polynomial"], max_terms: int | None = None) -> "Polynomial":
        """Substitute ``subst[k]`` for ``X_{k+1}`` and expand.

        Monomials are grouped by shared exponent prefixes, so each distinct
        prefix costs one multiplication; powers of every substituted
        polynomial are computed once and reused.
        """
        d = self._dim
        if len(subst) != d:
            raise ValueError(f"need {d} substitutions, got {len(subst)}")
        target = subst[0]._dim
        if any(s._dim != target for s in subst):
            raise ValueError("substituted polynomials have different dimensions")
        if not self._terms:
            return Polynomial.zero(target)

        powers = [[Polynomial.one(target)] for _ in range(d)]

        def power(k: int, e: int) -> Polynomial:
            cache = powers[k]
            while len(cache) <= e:
                nxt = cache[-1] * subst[k]
                _check_budget(nxt, max_terms)
                cache.append(nxt)
            return cache[e]

        def expand(items: list, k: int) -> Polynomial:
            if k == d:
                return Polynomial.constant(target, sum(c for _, c in items))
            groups: dict[int, list] = {}
            for exps, c in items:
                groups.setdefault(exps[k], []).append((exps, c))
            parts = []
            for e in sorted(groups):
                inner = expand(groups[e], k + 1)
                if e:
                    inner = inner * power(k, e)
                    _check_budget(inner, max_terms)
                parts.append(inner)
            if len(parts) == 1:
                return parts[0]
            total = Polynomial.sum(parts)
            _check_budget(total, max_terms)
            return total

        items = [(_unpack(k, d), c) for k, c in self._terms.items()]
        result = expand(items, 0)
        if self._den != 1:
            result = result * Fraction(1, self._den)
        return result

    def homogeneous_components(self) -> list[tuple[int, "Polynomial"]]:
        """``(degree, component)`` pairs in increasing degree, zero parts omitted."""
        shift = self._shift()
        groups: dict[int, dict] = {}
        for k, v in self._terms.items():
            groups.setdefault(k >> shift, {})[k] = v
        return [
            (deg, Polynomial._make(self._dim, groups[deg], self._den))
            for deg in sorted(groups)
        ]

    def homogeneous_part(self, degree: int) -> "Polynomial":
        shift = self._shift()
        terms = {k: v for k, v in self._terms.items() if k >> shift == degree}
        return Polynomial._make(self._dim, terms, self._den)

    # -- text format ----------------------------------------------------

    def to_text(self, var: str = "X") -> str:
        """Canonical text form, terms in graded-lex descending order."""
        if not self._terms:
            return "0"
        out = []
        d, den = self._dim, self._den
        for n, k in enumerate(sorted(self._terms, reverse=True)):
            c = Fraction(self._terms[k], den)
            exps = _unpack(k, d)
            factors = [
                f"{var}{i + 1}" if e == 1 else f"{var}{i + 1}^{e}"
                for i, e in enumerate(exps)
                if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if n == 0:
                out.append("-" + body if c < 0 else body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self._dim}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, dimension: int, var: str = "X") -> "Polynomial":
        """Inverse of :meth:`to_text`. Raises ``ValueError`` on malformed input."""
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        pieces = _SIGN_SPLIT_RE.split(s)
        signed = [("+", pieces[0])] + list(zip(pieces[1::2], pieces[2::2]))
        terms: dict[tuple[int, ...], Fraction] = {}
        for sign, body in signed:
            body = body.strip()
            neg = sign == "-"
            if body.startswith("-"):
                neg = not neg
                body = body[1:]
            if not body:
                raise ValueError(f"dangling sign in {text!r}")
            coeff = Fraction(1)
            exps = [0] * dimension
            for n, factor in enumerate(body.split("*")):
                factor = factor.strip()
                m = _FACTOR_RE.fullmatch(factor)
                if m is None:
                    if n == 0:
                        coeff = parse_rational(factor)
                        continue
                    raise ValueError(f"malformed factor {factor!r} in {text!r}")
                name, idx, e = m.group(1), int(m.group(2)), int(m.group(3) or 1)
                if name != var:
                    raise ValueError(f"unexpected variable {name}{idx}; expected prefix {var}")
                if not 1 <= idx <= dimension:
                    raise ValueError(f"variable {name}{idx} outside dimension {dimension}")
                exps[idx - 1] += e
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + (-coeff if neg else coeff)
        return cls(dimension, terms)


def _check_budget(p: Polynomial, max_terms: int | None) -> None:
    if max_terms is not None and len(p) > max_terms:
        raise TermBudgetExceeded(len(p), max_terms)


# Functional spellings of the core operations.

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def power(p: Polynomial, n: int) -> Polynomial:
    return p**n


def partial_derivative(p: Polynomial, index: int) -> Polynomial:
    return p.partial_derivative(index)


def compose(p: Polynomial, subst: Sequence[Polynomial], max_terms: int | None = None) -> Polynomial:
    return p.compose(subst, max_terms=max_terms)


def degree(p: Polynomial) -> int | float:
    return p.degree()


def homogeneous_components(p: Polynomial) -> list[tuple[int, Polynomial]]:
    return p.homogeneous_components()


def variables(dimension: int) -> list[Polynomial]:
    """``[X1, ..., Xd]``."""
    return [Polynomial.variable(dimension, i) for i in range(1, dimension + 1)]
