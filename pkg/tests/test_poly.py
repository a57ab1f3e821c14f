import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicinv.poly import (
    NEG_INFINITY,
    Polynomial,
    TermBudgetExceeded,
    compose,
    degree,
    homogeneous_components,
    parse_rational,
    partial_derivative,
    power,
    variables,
)

from conftest import evaluate, polynomials, random_poly


def P(text, d):
    return Polynomial.parse(text, d)


class TestAdd:
    def test_cancellation(self, X):
        assert X(2, 1) + X(2, 2) + (-X(2, 2)) == X(2, 1)

    def test_zero_identity(self):
        p = P("3*X1^2 - 1/2*X2", 2)
        assert p + Polynomial.zero(2) == p

    def test_fraction_addition(self):
        p = P("1/2*X1^2", 1) + P("1/3*X1^2", 1)
        assert p.terms() == {(2,): Fraction(5, 6)}

    def test_dimension_mismatch(self, X):
        with pytest.raises(ValueError):
            X(2, 1) + X(3, 1)


class TestMul:
    def test_difference_of_squares(self, X):
        x1, x2 = X(2, 1), X(2, 2)
        assert (x1 + x2) * (x1 - x2) == P("X1^2 - X2^2", 2)

    def test_one_identity(self):
        p = P("X1*X2 - 7/3", 2)
        assert p * Polynomial.one(2) == p

    def test_repeated_cube(self, X):
        c = X(3, 2) ** 3
        assert c * c * c == Polynomial.monomial((0, 9, 0))

    def test_term_count_bound(self):
        rng = random.Random(5)
        for _ in range(50):
            p, q = random_poly(rng, 3), random_poly(rng, 3)
            assert len(p * q) <= len(p) * len(q)

    def test_rejects_float(self, X):
        with pytest.raises(TypeError):
            X(1, 1) * 0.5


class TestPow:
    def test_cube_of_variable(self, X):
        assert X(3, 2) ** 3 == Polynomial.monomial((0, 3, 0))

    def test_binomial_cube(self, X):
        assert (X(3, 2) + X(3, 3)) ** 3 == P("X2^3 + 3*X2^2*X3 + 3*X2*X3^2 + X3^3", 3)

    def test_ninth_power_against_mul_chain_and_binomials(self, X):
        l2 = X(4, 3) + X(4, 4)
        chain = Polynomial.one(4)
        for _ in range(9):
            chain = chain * l2
        got = power(l2, 9)
        assert got == chain
        expected = {(0, 0, 9 - k, k): Fraction(math.comb(9, k)) for k in range(10)}
        assert got.terms() == dict(sorted(expected.items(), key=lambda t: t[0], reverse=True))

    def test_zeroth_power(self):
        assert P("X1 + 5", 1) ** 0 == Polynomial.one(1)


class TestPartialDerivative:
    def test_cube_of_linear_form(self):
        L = P("2*X1 + X2", 2)
        # (2X1+X2)^3 = 8X1^3 + 12X1^2X2 + 6X1X2^2 + X2^3, differentiated by hand in X1
        assert partial_derivative(L**3, 1) == P("24*X1^2 + 24*X1*X2 + 6*X2^2", 2)
        assert partial_derivative(L**3, 1) == 6 * L**2

    def test_constant(self):
        assert Polynomial.constant(3, 7).partial_derivative(1).is_zero()

    def test_monomial(self):
        assert P("X1^2*X2", 2).partial_derivative(2) == P("X1^2", 2)

    def test_index_range(self):
        with pytest.raises(IndexError):
            P("X1", 2).partial_derivative(3)
        with pytest.raises(IndexError):
            P("X1", 2).partial_derivative(0)


class TestCompose:
    def test_direct_expansion(self):
        p = P("X1^2", 2)
        assert compose(p, [P("X1 + X2^3", 2), P("X2", 2)]) == P("X1^2 + 2*X1*X2^3 + X2^6", 2)

    def test_identity_substitution(self):
        p = P("3*X1^2*X3 - 1/4*X2 + 2", 3)
        assert compose(p, variables(3)) == p

    def test_five_variable_family_second_difference(self):
        a2, a3, a4, a5 = Fraction(1), Fraction(2, 3), Fraction(-1, 2), Fraction(5)
        b3, b4, b5 = Fraction(3), Fraction(0), Fraction(-7, 4)
        Xs = variables(5)
        L1 = a2 * Xs[1] + a3 * Xs[2] + a4 * Xs[3] + a5 * Xs[4]
        L2 = b3 * Xs[2] + b4 * Xs[3] + b5 * Xs[4]
        F = [Xs[0] + L1**3, Xs[1] + L2**3, Xs[2], Xs[3], Xs[4]]
        got = compose(L1**3, F) - L1**3
        expected = 3 * a2 * L1**2 * L2**3 + 3 * a2**2 * L1 * L2**6 + a2**3 * L2**9
        assert got == expected

    def test_different_target_dimension(self):
        p = P("X1*X2", 2)
        got = p.compose([P("X1 + X3", 3), P("X2", 3)])
        assert got == P("X1*X2 + X2*X3", 3)

    def test_wrong_arity(self):
        with pytest.raises(ValueError):
            compose(P("X1", 2), [P("X1", 2)])

    def test_budget(self):
        p = P("X1^6", 2)
        with pytest.raises(TermBudgetExceeded):
            p.compose([P("X1 + X2 + 1", 2), P("X2", 2)], max_terms=5)

    def test_against_pointwise_evaluation(self):
        rng = random.Random(11)
        for _ in range(40):
            d = rng.randint(1, 3)
            p = random_poly(rng, d)
            subst = [random_poly(rng, d, max_deg=3, max_terms=4) for _ in range(d)]
            got = compose(p, subst)
            for _ in range(3):
                pt = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(d)]
                inner = [evaluate(s, pt) for s in subst]
                assert evaluate(got, pt) == evaluate(p, inner)

    def test_against_sympy(self):
        rng = random.Random(3)
        syms = sympy.symbols("X1:4")
        for _ in range(15):
            p = random_poly(rng, 3)
            subst = [random_poly(rng, 3, max_deg=3, max_terms=4) for _ in range(3)]
            expected = sympy.expand(
                sympy.sympify(p.to_text().replace("^", "**"))
                .subs({s: sympy.sympify(q.to_text().replace("^", "**")) for s, q in zip(syms, subst)},
                      simultaneous=True)
            )
            got = sympy.sympify(compose(p, subst).to_text().replace("^", "**"))
            assert sympy.expand(got - expected) == 0


class TestDegree:
    def test_zero(self):
        assert degree(Polynomial.zero(3)) == NEG_INFINITY
        assert degree(Polynomial.zero(3)) <= 9

    def test_mixed(self):
        assert degree(P("X1^2*X2 + X3", 3)) == 3

    def test_min_degree(self):
        assert P("X1^2*X2 + X3", 3).min_degree() == 1


class TestHomogeneousComponents:
    def test_two_parts(self):
        assert homogeneous_components(P("X1 + X1*X2", 2)) == [(1, P("X1", 2)), (2, P("X1*X2", 2))]

    def test_homogeneous(self):
        p = P("X1^3 - 2*X1*X2^2", 2)
        assert homogeneous_components(p) == [(3, p)]

    def test_second_difference_degrees(self):
        Xs = variables(5)
        L1, L2 = Xs[1] + 2 * Xs[3], Xs[2] - Xs[4]
        p21 = 3 * L1**2 * L2**3 + 3 * L1 * L2**6 + L2**9
        assert [deg for deg, _ in homogeneous_components(p21)] == [5, 7, 9]


class TestTextFormat:
    @pytest.mark.parametrize(
        "poly,text",
        [
            (Polynomial.zero(2), "0"),
            (Polynomial.constant(2, Fraction(-3, 4)), "-3/4"),
            (Polynomial(2, {(2, 0): Fraction(1, 2), (0, 1): -1, (0, 0): 3}), "1/2*X1^2 - X2 + 3"),
            (Polynomial(3, {(1, 0, 2): -2, (0, 3, 0): 1}), "-2*X1*X3^2 + X2^3"),
            (Polynomial(2, {(1, 1): 1, (2, 0): -1}), "-X1^2 + X1*X2"),
        ],
    )
    def test_canonical(self, poly, text):
        assert poly.to_text() == text
        assert Polynomial.parse(text, poly.dimension) == poly

    def test_graded_lex_descending(self):
        p = P("X2 + X1 + X1*X2 + X1^2 + X2^2 + 1", 2)
        assert p.to_text() == "X1^2 + X1*X2 + X2^2 + X1 + X2 + 1"

    def test_other_variable_name(self):
        p = P("X1 - X2^3", 2)
        assert p.to_text("Y") == "-Y2^3 + Y1"
        assert Polynomial.parse("-Y2^3 + Y1", 2, var="Y") == p

    @pytest.mark.parametrize("bad", ["1/0*X1", "X3", "2**X1", "X1 +", "Z1", "1.5*X1", ""])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            Polynomial.parse(bad, 2)

    def test_rational_parser(self):
        assert parse_rational("-7/14") == Fraction(-1, 2)
        for bad in ("1/0", "1.0", "a", "1/-2"):
            with pytest.raises(ValueError):
                parse_rational(bad)


class TestRationalInvariants:
    def test_normalized_storage(self):
        p = Polynomial(1, {(1,): Fraction(2, 4), (0,): Fraction(-6, 8)})
        assert p._den == 4
        assert sorted(p._terms.values()) == [-3, 2]
        assert p.terms() == {(1,): Fraction(1, 2), (0,): Fraction(-3, 4)}
        assert math.gcd(p._den, *p._terms.values()) == 1

    def test_zero_stored_as_zero_over_one(self):
        p = P("X1", 1) - P("X1", 1)
        assert p._terms == {} and p._den == 1

    def test_hash_consistency(self):
        a = P("1/2*X1 + 1/3", 1)
        b = P("X1", 1) * Fraction(1, 2) + Fraction(1, 3)
        assert a == b and hash(a) == hash(b)


D = 3


@settings(max_examples=60, deadline=None)
@given(polynomials(D), polynomials(D), polynomials(D))
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p + q == q + p
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(D)


@settings(max_examples=40, deadline=None)
@given(
    polynomials(2, max_deg=3, max_terms=6),
    st.lists(polynomials(2, max_deg=2, max_terms=4), min_size=2, max_size=2),
    st.lists(polynomials(2, max_deg=2, max_terms=4), min_size=2, max_size=2),
)
def test_compose_associative(p, f, g):
    lhs = compose(compose(p, f), g)
    rhs = compose(p, [compose(fi, g) for fi in f])
    assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(polynomials(D), polynomials(D), st.integers(1, D))
def test_leibniz(p, q, k):
    assert (p * q).partial_derivative(k) == p.partial_derivative(k) * q + p * q.partial_derivative(k)


@settings(max_examples=60, deadline=None)
@given(polynomials(4))
def test_components_sum(p):
    comps = homogeneous_components(p)
    assert Polynomial.sum([c for _, c in comps], 4) == p
    assert all(c.is_homogeneous() and c.degree() == deg for deg, c in comps)
    assert [deg for deg, _ in comps] == sorted({deg for deg, _ in comps})


@settings(max_examples=80, deadline=None)
@given(polynomials(4))
def test_text_round_trip(p):
    text = p.to_text()
    back = Polynomial.parse(text, 4)
    assert back == p
    assert back.to_text() == text
