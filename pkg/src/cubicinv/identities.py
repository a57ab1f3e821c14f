"""Polynomial identities forced by ``(JH)^3 = 0`` for cubic-linear maps.

Every check expands its indexed sum over all index tuples directly from the
coefficient matrix and the linear forms. Nothing here goes through the
inversion code, so these functions serve as independent oracles for it.

Notation: ``a`` is the coefficient matrix and ``L_j`` the linear forms.

* eq3  (i, l):    sum_{j,k} a_ij a_jk a_kl L_j^2 L_k^2 = 0
* eq4  (i, l, m): sum_{j,k} a_ij a_jk a_kl (a_jm L_j L_k^2 + a_km L_j^2 L_k) = 0
* eq8  (i):       sum_{j,k} a_ij a_jk L_j^2 L_k^3 = 0
* eq9  (i, m):    sum_{j,k} a_ij a_jk a_jm L_j L_k^3 = 0
* eq10 (i, m, n): sum_{j,k} a_ij a_jk a_jm a_jn L_k^3
                  + 3 sum_{j,k} a_ij a_jk a_jm a_kn L_j L_k^2 = 0
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from .druzkowski import DruzkowskiMap
from .poly import Polynomial


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    index: tuple[int, ...] | None = None
    residual: Polynomial | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_text(self) -> str:
        if self.passed:
            return f"{self.name}: PASS"
        idx = ", ".join(str(k) for k in self.index)
        return f"{self.name}: FAIL at ({idx}): residual = {self.residual.to_text()}"


class _Powers:
    """Memoized ``L_j^e``."""

    def __init__(self, m: DruzkowskiMap):
        self.forms = m.linear_forms
        self.cache: dict[tuple[int, int], Polynomial] = {}

    def __call__(self, j: int, e: int) -> Polynomial:
        key = (j, e)
        if key not in self.cache:
            self.cache[key] = self.forms[j] ** e
        return self.cache[key]


def _scan(name: str, d: int, arity: int, residual: Callable[..., Polynomial]) -> IdentityCheck:
    for idx in itertools.product(range(d), repeat=arity):
        r = residual(*idx)
        if r:
            return IdentityCheck(name, False, tuple(k + 1 for k in idx), r)
    return IdentityCheck(name, True)


def check_eq3(m: DruzkowskiMap) -> IdentityCheck:
    a, d, L = m.matrix, m.dimension, _Powers(m)

    def residual(i, l):
        terms = [
            (a[i][j] * a[j][k] * a[k][l]) * (L(j, 2) * L(k, 2))
            for j in range(d)
            for k in range(d)
            if a[i][j] and a[j][k] and a[k][l]
        ]
        return Polynomial.sum(terms, d)

    return _scan("eq3", d, 2, residual)


def check_eq4(m: DruzkowskiMap) -> IdentityCheck:
    a, d, L = m.matrix, m.dimension, _Powers(m)

    def residual(i, l, mm):
        terms = []
        for j in range(d):
            for k in range(d):
                c = a[i][j] * a[j][k] * a[k][l]
                if not c:
                    continue
                if a[j][mm]:
                    terms.append((c * a[j][mm]) * (L(j, 1) * L(k, 2)))
                if a[k][mm]:
                    terms.append((c * a[k][mm]) * (L(j, 2) * L(k, 1)))
        return Polynomial.sum(terms, d)

    return _scan("eq4", d, 3, residual)


def check_eq8(m: DruzkowskiMap) -> IdentityCheck:
    a, d, L = m.matrix, m.dimension, _Powers(m)

    def residual(i):
        terms = [
            (a[i][j] * a[j][k]) * (L(j, 2) * L(k, 3))
            for j in range(d)
            for k in range(d)
            if a[i][j] and a[j][k]
        ]
        return Polynomial.sum(terms, d)

    return _scan("eq8", d, 1, residual)


def check_eq9(m: DruzkowskiMap) -> IdentityCheck:
    a, d, L = m.matrix, m.dimension, _Powers(m)

    def residual(i, mm):
        terms = [
            (a[i][j] * a[j][k] * a[j][mm]) * (L(j, 1) * L(k, 3))
            for j in range(d)
            for k in range(d)
            if a[i][j] and a[j][k] and a[j][mm]
        ]
        return Polynomial.sum(terms, d)

    return _scan("eq9", d, 2, residual)


def check_eq10(m: DruzkowskiMap) -> IdentityCheck:
    a, d, L = m.matrix, m.dimension, _Powers(m)

    def residual(i, mm, n):
        terms = []
        for j in range(d):
            for k in range(d):
                c = a[i][j] * a[j][k] * a[j][mm]
                if not c:
                    continue
                if a[j][n]:
                    terms.append((c * a[j][n]) * L(k, 3))
                if a[k][n]:
                    terms.append((3 * c * a[k][n]) * (L(j, 1) * L(k, 2)))
        return Polynomial.sum(terms, d)

    return _scan("eq10", d, 3, residual)


CHECKS = {
    "eq3": check_eq3,
    "eq4": check_eq4,
    "eq8": check_eq8,
    "eq9": check_eq9,
    "eq10": check_eq10,
}


def check_all(m: DruzkowskiMap) -> list[IdentityCheck]:
    return [check(m) for check in CHECKS.values()]


def identity_report(checks: list[IdentityCheck]) -> str:
    return "\n".join(c.to_text() for c in checks) + "\n"


def p3_closed_form(m: DruzkowskiMap, i: int) -> Polynomial:
    """``6 L_i sum_{j,k} a_ij a_ik L_j^3 L_k^3 + 6 sum_{j,k,l} a_ij a_ik a_il L_j^3 L_k^3 L_l^3``.

    ``i`` is 1-based. Equal to the third difference only when ``(JH)^3 = 0``.
    """
    a, d, L = m.matrix, m.dimension, _Powers(m)
    r = i - 1
    pair = [
        (a[r][j] * a[r][k]) * (L(j, 3) * L(k, 3))
        for j in range(d)
        for k in range(d)
        if a[r][j] and a[r][k]
    ]
    first = 6 * L(r, 1) * Polynomial.sum(pair, d)
    return first + p4_closed_form(m, i)


def p4_closed_form(m: DruzkowskiMap, i: int) -> Polynomial:
    """``6 sum_{j,k,l} a_ij a_ik a_il L_j^3 L_k^3 L_l^3`` (1-based ``i``)."""
    a, d, L = m.matrix, m.dimension, _Powers(m)
    r = i - 1
    terms = [
        (6 * a[r][j] * a[r][k] * a[r][l]) * (L(j, 3) * L(k, 3) * L(l, 3))
        for j in range(d)
        for k in range(d)
        for l in range(d)
        if a[r][j] and a[r][k] and a[r][l]
    ]
    return Polynomial.sum(terms, d)


def quasi_translation_residual(m: DruzkowskiMap, i: int) -> Polynomial:
    """``sum_j (dH_i/dX_j) H_j``; zero for every ``i`` when ``(JH)^2 = 0``."""
    h = m.cubic_part
    d = m.dimension
    hi = h.components[i - 1]
    return Polynomial.sum(
        (hi.partial_derivative(j + 1) * h.components[j] for j in range(d)), d
    )
