from fractions import Fraction

import pytest

from cubicinv.druzkowski import GeneratorConfig, from_matrix, generate_leveled, paper_example
from cubicinv.identities import (
    CHECKS,
    check_all,
    check_eq3,
    check_eq8,
    identity_report,
    p3_closed_form,
    p4_closed_form,
    quasi_translation_residual,
)
from cubicinv.inversion import p_sequence, taylor_components
from cubicinv.poly import Polynomial
from cubicinv.rng import derive_seed


def P(text, d):
    return Polynomial.parse(text, d)


def g3_instances(n=12):
    return [
        generate_leveled(GeneratorConfig(4 + k % 3, 3, seed=derive_seed(77, k)))
        for k in range(n)
    ]


class TestChecks:
    def test_canonical_example_passes_all(self):
        checks = check_all(paper_example(a2=1, b3=1))
        assert [c.name for c in checks] == list(CHECKS)
        assert all(checks)
        assert identity_report(checks) == "".join(f"{n}: PASS\n" for n in CHECKS)

    def test_one_by_one_negative_control(self):
        m = from_matrix([[1]])
        for name in ("eq3", "eq4", "eq8"):
            check = CHECKS[name](m)
            assert not check
            assert check.residual is not None and not check.residual.is_zero()
        eq3 = check_eq3(m)
        assert eq3.index == (1, 1)
        assert eq3.residual == P("X1^4", 1)
        assert eq3.to_text() == "eq3: FAIL at (1, 1): residual = X1^4"
        assert check_eq8(m).residual == P("X1^5", 1)

    def test_cube_nilpotent_fails_at_g4(self):
        # a g = 4 chain has (JH)^3 != 0, so eq3 must fail somewhere
        m = generate_leveled(GeneratorConfig(4, 4, seed=1, density=1))
        assert not check_eq3(m)

    @pytest.mark.parametrize("m", g3_instances())
    def test_g3_sweep(self, m):
        assert all(check_all(m))


class TestClosedForms:
    def test_canonical_values(self):
        m = paper_example(a2=1, b3=1)
        assert p3_closed_form(m, 1) == P("6*X2*X3^6 + 6*X3^9", 5)
        assert p4_closed_form(m, 1) == P("6*X3^9", 5)
        for i in range(2, 6):
            assert p3_closed_form(m, i).is_zero()
            assert p4_closed_form(m, i).is_zero()

    def test_rational_parameters(self):
        a2, b3, b5 = Fraction(2, 3), Fraction(-1, 2), Fraction(3)
        m = paper_example(a2=a2, a5=1, b3=b3, b5=b5)
        l1, l2 = m.linear_forms[0], m.linear_forms[1]
        assert p3_closed_form(m, 1) == 6 * a2**2 * l1 * l2**6 + 6 * a2**3 * l2**9
        assert p4_closed_form(m, 1) == 6 * a2**3 * l2**9

    @pytest.mark.parametrize("m", g3_instances())
    def test_match_difference_sequence(self, m):
        for i in range(1, m.dimension + 1):
            seq = p_sequence(m.map, i, cap=6)
            padded = seq + [Polynomial.zero(m.dimension)] * (6 - len(seq))
            assert padded[3] == p3_closed_form(m, i)
            assert padded[4] == p4_closed_form(m, i)
            assert padded[5].is_zero()


@pytest.mark.parametrize("m", g3_instances(6))
def test_taylor_ladders(m):
    """Homogeneous degrees of P_2..P_4: P_j lives in odd degrees 2j+1..9."""
    h = m.cubic_part
    for i in range(1, m.dimension + 1):
        seq = p_sequence(m.map, i, cap=6)
        for j in range(2, len(seq)):
            comps = taylor_components(seq[j - 1], h)
            assert Polynomial.sum(comps, m.dimension) == seq[j]
            for deg, _ in seq[j].homogeneous_components():
                assert deg % 2 == 1 and 2 * j + 1 <= deg <= 9


class TestQuasiTranslation:
    def test_zero_for_g2(self):
        for k in range(6):
            m = generate_leveled(GeneratorConfig(5, 2, seed=k))
            assert all(quasi_translation_residual(m, i).is_zero() for i in range(1, 6))

    def test_nonzero_for_canonical_example(self):
        m = paper_example(a2=1, b3=1)
        assert quasi_translation_residual(m, 1) == P("3*X2^2*X3^3", 5)
