import itertools
import random
from fractions import Fraction

import pytest

from cubicinv.druzkowski import (
    GeneratorConfig,
    from_matrix,
    generate_leveled,
    generate_square_zero,
    paper_example,
)
from cubicinv.poly import Polynomial, variables
from cubicinv.polymap import (
    NOT_NILPOTENT,
    DimensionLimitError,
    NotIdPlusHomogeneous,
    PolyMap,
    PolyMatrix,
    determinant,
    is_keller,
    jacobian,
    matrix_mul,
    nilpotency_index,
)


def P(text, d):
    return Polynomial.parse(text, d)


def leibniz_det(m: PolyMatrix) -> Polynomial:
    """Permutation-expansion determinant; independent of the cofactor code."""
    d = m.dimension
    total = []
    for perm in itertools.permutations(range(d)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Polynomial.one(d)
        for i, j in enumerate(perm):
            term = term * m[i, j]
        total.append(term if inversions % 2 == 0 else -term)
    return Polynomial.sum(total, d)


class TestJacobian:
    def test_identity(self):
        assert jacobian(PolyMap.identity(4)) == PolyMatrix.identity(4)

    def test_triangular_cubic(self):
        h = PolyMap((P("X2^3", 2), Polynomial.zero(2)))
        zero = Polynomial.zero(2)
        assert jacobian(h) == PolyMatrix(((zero, P("3*X2^2", 2)), (zero, zero)))

    @pytest.mark.parametrize("seed", range(5))
    def test_druzkowski_entries(self, seed):
        m = generate_leveled(GeneratorConfig(5, 3, seed=seed, density=1))
        jh = m.jacobian_h()
        for i in range(5):
            for j in range(5):
                assert jh[i, j] == 3 * m.matrix[i][j] * m.linear_forms[i] ** 2


class TestMatrixMul:
    def test_right_identity(self):
        m = PolyMatrix(((P("X1", 2), P("X2^2", 2)), (P("1/2", 2), P("X1*X2 - 1", 2))))
        assert m @ PolyMatrix.identity(2) == m

    def test_strictly_triangular_square(self):
        zero = Polynomial.zero(2)
        m = PolyMatrix(((zero, P("3*X2^2", 2)), (zero, zero)))
        assert matrix_mul(m, m).is_zero()

    def test_example_square_entry(self):
        jh = paper_example(a2=1, b3=1).jacobian_h()
        sq = jh @ jh
        assert sq[0, 2] == P("9*X2^2*X3^2", 5)
        assert not sq.is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            matrix_mul(PolyMatrix.identity(2), PolyMatrix.identity(3))


class TestNilpotency:
    def test_zero_matrix(self):
        assert nilpotency_index(PolyMatrix.zeros(3)) == 1

    def test_five_variable_family(self):
        assert nilpotency_index(paper_example(a2=1, b3=1).jacobian_h()) == 3

    def test_two_by_two(self):
        h = PolyMap((P("X2^3", 2), Polynomial.zero(2)))
        assert nilpotency_index(jacobian(h)) == 2

    def test_not_nilpotent(self):
        assert nilpotency_index(from_matrix([[1]]).jacobian_h()) is NOT_NILPOTENT
        assert str(NOT_NILPOTENT) == "NOT_NILPOTENT"

    def test_cap(self):
        jh = paper_example(a2=1, b3=1).jacobian_h()
        assert nilpotency_index(jh, cap=2) is NOT_NILPOTENT

    @pytest.mark.parametrize("seed", range(12))
    def test_index_is_minimal(self, seed):
        d = 3 + seed % 3
        g = 1 + seed % d
        m = generate_leveled(GeneratorConfig(d, g, seed=seed))
        jh = m.jacobian_h()
        idx = nilpotency_index(jh)
        assert idx is not NOT_NILPOTENT and idx <= g
        power = PolyMatrix.identity(d)
        for _ in range(idx - 1):
            power = power @ jh
        assert idx == 1 or not power.is_zero()
        assert (power @ jh).is_zero()


class TestDeterminant:
    def test_identity(self):
        assert determinant(PolyMatrix.identity(5)) == Polynomial.one(5)

    def test_triangular_jf(self):
        f = PolyMap((P("X1 + X2^3", 2), P("X2", 2)))
        assert determinant(jacobian(f)) == Polynomial.one(2)

    def test_five_variable_family_random_parameters(self):
        m = paper_example(Fraction(2, 3), -1, Fraction(1, 5), 4, Fraction(-3, 2), 7, Fraction(1, 9))
        assert determinant(jacobian(m.map)) == Polynomial.one(5)

    def test_matches_permutation_expansion(self):
        rng = random.Random(9)
        for d in (2, 3, 4):
            for _ in range(4):
                rows = tuple(
                    tuple(
                        Polynomial(d, {tuple(rng.randint(0, 2) for _ in range(d)): rng.randint(-3, 3)})
                        for _ in range(d)
                    )
                    for _ in range(d)
                )
                m = PolyMatrix(rows)
                assert determinant(m) == leibniz_det(m)

    def test_dimension_limit(self):
        with pytest.raises(DimensionLimitError):
            determinant(PolyMatrix.identity(9))
        assert determinant(PolyMatrix.identity(9), max_dim=9) == Polynomial.one(9)


class TestKeller:
    def test_identity(self):
        assert is_keller(PolyMap.identity(3))

    def test_five_variable_family(self):
        assert is_keller(paper_example(a2=1, b3=1).map)

    def test_diagonal_cube_is_not_keller(self):
        x = variables(3)
        f = PolyMap((x[0] + x[0] ** 3, x[1], x[2]))
        assert not is_keller(f)

    def test_rejects_non_homogeneous(self):
        x = variables(2)
        with pytest.raises(NotIdPlusHomogeneous):
            is_keller(PolyMap((x[0] + x[1] ** 2 + x[1] ** 3, x[1])))

    def test_rejects_linear_perturbation(self):
        x = variables(2)
        with pytest.raises(NotIdPlusHomogeneous):
            is_keller(PolyMap((x[0] + x[1], x[1])))


def _small_instances():
    out = []
    for seed in range(6):
        out.append(generate_leveled(GeneratorConfig(3, 1 + seed % 3, seed=seed)))
        out.append(generate_square_zero(3, seed))
    rng = random.Random(2)
    for _ in range(6):
        out.append(from_matrix([[rng.choice([0, 0, 1, -1, 2]) for _ in range(3)] for _ in range(3)]))
    for seed in range(3):
        out.append(generate_leveled(GeneratorConfig(5, 3, seed=seed)))
    return out


@pytest.mark.parametrize("m", _small_instances())
def test_determinant_equivalence(m):
    det_is_one = determinant(jacobian(m.map)) == Polynomial.one(m.dimension)
    nilpotent = nilpotency_index(m.jacobian_h(), m.dimension) is not NOT_NILPOTENT
    assert det_is_one == nilpotent
