from fractions import Fraction
import itertools
import unittest

import numpy as np

from radinv import matrices as mx
from radinv.errors import InputError, NonexistenceError
from radinv.finite_ring import oracle
from radinv.matrices import Matrix, MatrixRing


def q(value: str) -> Fraction:
    return Fraction(value)


class TestMatrix(unittest.TestCase):
    def test_from_rows_normalizes_fraction_strings(self) -> None:
        M = Matrix.from_rows([["2/4", 1], [0, "-3"]])
        self.assertEqual(M[0, 0], q("1/2"))
        self.assertEqual(M.to_lists(), [["1/2", "1"], ["0", "-3"]])

    def test_modular_entries_reduce(self) -> None:
        M = Matrix.from_rows([[5, -1], ["1/3", 0]], modulus=4)
        self.assertEqual(M.data, ((1, 3), (3, 0)))

    def test_rejects_ragged_rows(self) -> None:
        with self.assertRaises(InputError):
            Matrix(2, 2, ((1, 0),), None)

    def test_mixing_rational_and_modular_fails(self) -> None:
        with self.assertRaises(InputError):
            Matrix.identity(2) + Matrix.identity(2, modulus=3)

    def test_pad_and_crop(self) -> None:
        M = Matrix.from_rows([[1, 2, 3]])
        padded = M.pad(3, 3)
        self.assertEqual(padded.shape, (3, 3))
        self.assertEqual(padded.crop(1, 3), M)
        with self.assertRaises(InputError):
            padded.pad(2, 2)


class TestRowReduction(unittest.TestCase):
    def test_rref_of_identity(self) -> None:
        result = mx.rref(Matrix.identity(2))
        self.assertEqual(result.reduced, Matrix.identity(2))
        self.assertEqual(result.pivots, (0, 1))
        self.assertEqual(result.rank, 2)
        self.assertEqual(result.transform, Matrix.identity(2))

    def test_rref_of_rank_one(self) -> None:
        A = Matrix.from_rows([[1, 1], [1, 1]])
        result = mx.rref(A)
        self.assertEqual(result.rank, 1)
        self.assertEqual(result.pivots, (0,))
        self.assertEqual(result.transform @ A, result.reduced)

    def test_rank_of_zero(self) -> None:
        self.assertEqual(mx.rank(Matrix.zeros(2, 2)), 0)

    def test_composite_modulus_is_rejected(self) -> None:
        with self.assertRaises(InputError):
            mx.rref(Matrix.identity(2, modulus=4))

    def test_solve_consistent_and_inconsistent(self) -> None:
        A = Matrix.from_rows([[1, 2], [2, 4]])
        X = mx.solve(A, Matrix.from_rows([[3], [6]]))
        self.assertIsNotNone(X)
        self.assertEqual(A @ X, Matrix.from_rows([[3], [6]]))
        self.assertIsNone(mx.solve(A, Matrix.from_rows([[1], [0]])))

    def test_inverse(self) -> None:
        A = Matrix.from_rows([[2, 1], [1, 1]])
        self.assertEqual(mx.inverse(A), Matrix.from_rows([[1, -1], [-1, 2]]))
        with self.assertRaises(NonexistenceError):
            mx.inverse(Matrix.from_rows([[1, 1], [1, 1]]))

    def test_inverse_modulo_prime(self) -> None:
        A = Matrix.from_rows([[2, 1], [1, 1]], modulus=5)
        self.assertEqual(A @ mx.inverse(A), Matrix.identity(2, modulus=5))


class TestFullRankFactorization(unittest.TestCase):
    def test_rank_one(self) -> None:
        frf = mx.full_rank_factorize(Matrix.from_rows([[1, 1], [1, 1]]))
        self.assertEqual(frf.G, Matrix.from_rows([[1], [1]]))
        self.assertEqual(frf.H, Matrix.from_rows([[1, 1]]))
        self.assertEqual(frf.rank, 1)

    def test_identity(self) -> None:
        frf = mx.full_rank_factorize(Matrix.identity(3))
        self.assertEqual(frf.G, Matrix.identity(3))
        self.assertEqual(frf.H, Matrix.identity(3))

    def test_zero_uses_empty_factors(self) -> None:
        frf = mx.full_rank_factorize(Matrix.zeros(2, 3))
        self.assertEqual(frf.G.shape, (2, 0))
        self.assertEqual(frf.H.shape, (0, 3))
        self.assertEqual(frf.G @ frf.H, Matrix.zeros(2, 3))

    def test_product_reproduces_input(self) -> None:
        A = Matrix.from_rows([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        frf = mx.full_rank_factorize(A)
        self.assertEqual(frf.G @ frf.H, A)
        self.assertEqual(frf.rank, 2)


class TestClassicalInverses(unittest.TestCase):
    def test_moore_penrose(self) -> None:
        A = Matrix.from_rows([[1, 1], [0, 0]])
        X = mx.mp_inverse(A)
        self.assertEqual(X, Matrix.from_rows([["1/2", 0], ["1/2", 0]]))
        self.assertEqual(A @ X @ A, A)
        self.assertEqual(X @ A @ X, X)
        self.assertEqual((A @ X).T, A @ X)
        self.assertEqual((X @ A).T, X @ A)

    def test_moore_penrose_of_column_and_zero(self) -> None:
        self.assertEqual(mx.mp_inverse(Matrix.from_rows([[1], [1]])), Matrix.from_rows([["1/2", "1/2"]]))
        self.assertEqual(mx.mp_inverse(Matrix.zeros(2, 3)), Matrix.zeros(3, 2))

    def test_reflexive_inverse(self) -> None:
        self.assertEqual(mx.reflexive_inverse(Matrix.diag(1, 0)), Matrix.diag(1, 0))
        A = Matrix.from_rows([[1, 1], [1, 1]])
        self.assertEqual(mx.reflexive_inverse(A), Matrix.from_rows([["1/4", "1/4"], ["1/4", "1/4"]]))

    def test_reflexive_inverse_over_prime_field(self) -> None:
        A = Matrix.from_rows([[1, 2], [2, 4]], modulus=5)
        X = mx.reflexive_inverse(A)
        self.assertEqual(A @ X @ A, A)
        self.assertEqual(X @ A @ X, X)

    def test_non_regular_modulo_four(self) -> None:
        with self.assertRaises(NonexistenceError):
            mx.reflexive_inverse(Matrix.from_rows([[2]], modulus=4))

    def test_group_inverse(self) -> None:
        A = Matrix.from_rows([[1, 1], [1, 1]])
        self.assertEqual(mx.group_inverse(A), Matrix.from_rows([["1/4", "1/4"], ["1/4", "1/4"]]))
        self.assertEqual(mx.group_inverse(Matrix.identity(2)), Matrix.identity(2))

    def test_group_inverse_of_nilpotent_does_not_exist(self) -> None:
        with self.assertRaises(NonexistenceError) as ctx:
            mx.group_inverse(Matrix.from_rows([[0, 1], [0, 0]]))
        self.assertEqual(ctx.exception.residual, Matrix.from_rows([[0]]))

    def test_core_inverse(self) -> None:
        A = Matrix.from_rows([[1, 1], [0, 0]])
        X = mx.core_inverse(A)
        self.assertEqual(X @ A @ A, A)
        self.assertEqual(A @ X @ X, X)
        self.assertEqual((A @ X).T, A @ X)

    def test_drazin(self) -> None:
        nilpotent = mx.drazin_inverse(Matrix.from_rows([[0, 1], [0, 0]]))
        self.assertEqual(nilpotent.inverse, Matrix.zeros(2, 2))
        self.assertEqual(nilpotent.index, 2)

        result = mx.drazin_inverse(Matrix.diag(2, 0))
        self.assertEqual(result.inverse, Matrix.diag("1/2", 0))
        self.assertEqual(result.index, 1)

        invertible = mx.drazin_inverse(Matrix.identity(2))
        self.assertEqual(invertible.inverse, Matrix.identity(2))
        self.assertEqual(invertible.index, 0)

    def test_bc_inverse(self) -> None:
        e = Matrix.diag(1, 0)
        self.assertEqual(mx.bc_inverse(Matrix.identity(2), e, e), e)
        I = Matrix.identity(2)
        self.assertEqual(mx.bc_inverse(I, I, I), I)

    def test_bc_inverse_reports_ranks(self) -> None:
        with self.assertRaises(NonexistenceError) as ctx:
            mx.bc_inverse(Matrix.identity(2), Matrix.diag(1, 0), Matrix.diag(0, 1))
        self.assertEqual(ctx.exception.details, {"rank_CAB": 0, "rank_B": 1, "rank_C": 1})

    def test_factor_through(self) -> None:
        e = Matrix.diag(1, 0)
        witness = mx.factor_through(e, e, e)
        self.assertTrue(witness.ok)
        self.assertEqual(e @ witness.r, e)
        self.assertEqual(witness.s @ e, e)

        missing = mx.factor_through(Matrix.from_rows([[0, 0], [1, 0]]), e, e)
        self.assertIn("left", missing.failures)

        zero = mx.factor_through(Matrix.zeros(2, 2), e, e)
        self.assertEqual(zero.r, Matrix.zeros(2, 2))
        self.assertEqual(zero.s, Matrix.zeros(2, 2))

    def test_group_invertible_reflexive_inverse(self) -> None:
        A = Matrix.from_rows([[0, 1], [0, 0]])
        X = mx.group_invertible_reflexive_inverse(A)
        self.assertEqual(A @ X @ A, A)
        self.assertEqual(X @ A @ X, X)
        mx.group_inverse(X)


class TestMatrixRing(unittest.TestCase):
    def test_radical_over_a_field_is_zero(self) -> None:
        ring = MatrixRing(2)
        self.assertTrue(ring.is_radical(ring.zero))
        self.assertFalse(ring.is_radical(ring.elem(Matrix.from_rows([[0, 1], [0, 0]]))))

    def test_bc_inverse_agrees_with_brute_force_mod_two(self) -> None:
        ring = MatrixRing(2, 2)
        brute = oracle(ring)
        for a, b, c in itertools.product(brute.elements, repeat=3):
            self.assertEqual(ring.bc_inverse(a, b, c), brute.bc_inverse(a, b, c), (a, b, c))

    def test_composite_modulus_bc_inverse_goes_through_the_ring(self) -> None:
        I = Matrix.identity(2, modulus=4)
        with self.assertRaisesRegex(InputError, r"MatrixRing\(n, 4\)\.bc_inverse"):
            mx.bc_inverse(I, I, I)
        ring = MatrixRing(2, 4)
        self.assertEqual(ring.bc_inverse(ring.one, ring.one, ring.one), ring.one)


def random_matrix(rng: np.random.Generator, rows: int, cols: int) -> Matrix:
    """Entries in {-2..2}/{1,2}; a third of the draws are built with rank at most one."""
    if rng.integers(0, 3) == 0:
        u = rng.integers(-2, 3, size=rows).tolist()
        v = rng.integers(-2, 3, size=cols).tolist()
        return Matrix.from_rows([[a * b for b in v] for a in u], cols=cols)
    numerators = rng.integers(-2, 3, size=(rows, cols)).tolist()
    denominators = rng.integers(1, 3, size=(rows, cols)).tolist()
    return Matrix.from_rows(
        [[Fraction(p, q) for p, q in zip(row_p, row_q)] for row_p, row_q in zip(numerators, denominators)],
        cols=cols,
    )


class TestRandomFactorizations(unittest.TestCase):
    def test_full_rank_factorization(self) -> None:
        rng = np.random.default_rng(11)
        for shape in ((2, 2), (2, 3), (3, 2), (3, 3)):
            for _ in range(200):
                A = random_matrix(rng, *shape)
                frf = mx.full_rank_factorize(A)
                self.assertEqual(frf.G @ frf.H, A)
                self.assertEqual(frf.rank, mx.rank(A))
                self.assertEqual(frf.G.shape, (shape[0], frf.rank))
                self.assertEqual(frf.H.shape, (frf.rank, shape[1]))
                if frf.rank:
                    self.assertEqual(mx.rank(frf.G), frf.rank)
                    self.assertEqual(mx.rank(frf.H), frf.rank)


if __name__ == "__main__":
    unittest.main()
