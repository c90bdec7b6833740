import unittest

import numpy as np

from radinv import matrices as mx
from radinv.dualmat import (
    DualMatrix,
    clean_facts,
    closed_form_inverse,
    dual_bc_inverse,
    dual_drazin_index,
    dual_generalized_inverse,
    dual_power,
    dual_solve,
    dual_transpose,
    dual_unit_inverse,
    mp_first_order,
    outer_inverse_prescribed,
    radical_split,
    regularity_certificate,
    verify_dual_inverse,
)
from radinv.errors import InputError, NonexistenceError
from radinv.matrices import Matrix

N = Matrix.from_rows([[0, 1], [0, 0]])
SWAP = Matrix.from_rows([[0, 1], [1, 0]])
ONES = Matrix.from_rows([[1, 1], [1, 1]])
E11 = Matrix.diag(1, 0)
E22 = Matrix.diag(0, 1)


def idempotent() -> DualMatrix:
    """diag(1,0) + ε[[0,1],[1,0]], a symmetric idempotent."""
    return DualMatrix(E11, SWAP)


class TestArithmetic(unittest.TestCase):
    def test_unit_times_inverse(self) -> None:
        I = Matrix.identity(2)
        self.assertEqual(DualMatrix(I, N) @ DualMatrix(I, -N), DualMatrix.identity(2))

    def test_idempotent(self) -> None:
        A = idempotent()
        self.assertEqual(A @ A, A)
        self.assertTrue((A @ DualMatrix.zeros(2, 2)).is_zero())

    def test_transpose_reverses_products(self) -> None:
        X = DualMatrix(Matrix.from_rows([[1, 2], [3, 4]]), N)
        Y = DualMatrix(N.T, Matrix.from_rows([[0, 5], [1, 1]]))
        self.assertEqual(dual_transpose(X @ Y), Y.T @ X.T)

    def test_shape_mismatch(self) -> None:
        with self.assertRaises(InputError):
            DualMatrix(Matrix.identity(2), Matrix.zeros(2, 3))

    def test_unit_inverse(self) -> None:
        I = Matrix.identity(2)
        self.assertEqual(dual_unit_inverse(DualMatrix(I, N)), DualMatrix(I, -N))
        self.assertEqual(
            dual_unit_inverse(DualMatrix.from_real(Matrix.diag(2, 1))),
            DualMatrix.from_real(Matrix.diag("1/2", 1)),
        )
        with self.assertRaises(NonexistenceError):
            dual_unit_inverse(DualMatrix.from_real(ONES))

    def test_solve(self) -> None:
        I = Matrix.identity(2)
        e1 = DualMatrix.from_real(Matrix.from_rows([[1], [0]]))
        e2 = DualMatrix.from_real(Matrix.from_rows([[0], [1]]))
        A = DualMatrix(I, N)
        self.assertEqual(dual_solve(A, e1), DualMatrix(I, -N) @ e1)
        self.assertIsNone(dual_solve(DualMatrix.from_real(E11), e2))
        self.assertEqual(dual_solve(A, DualMatrix.zeros(2, 1)), DualMatrix.zeros(2, 1))

    def test_power(self) -> None:
        A = DualMatrix(N, Matrix.identity(2))
        self.assertEqual(dual_power(A, 1), A)
        self.assertEqual(dual_power(A, 2), DualMatrix(Matrix.zeros(2, 2), Matrix.from_rows([[0, 2], [0, 0]])))
        self.assertEqual(dual_power(A, 2), A @ A)
        self.assertEqual(dual_power(idempotent(), 5), idempotent())


class TestRegularity(unittest.TestCase):
    def test_not_regular(self) -> None:
        cert = regularity_certificate(DualMatrix(E11, E22))
        self.assertFalse(cert.regular)
        self.assertEqual(cert.residual, E22)
        self.assertIsNone(cert.reflexive_inverse)

    def test_regular(self) -> None:
        A = idempotent()
        cert = regularity_certificate(A)
        self.assertTrue(cert.regular)
        X = cert.reflexive_inverse
        self.assertEqual(X, DualMatrix.from_real(E11))
        self.assertEqual(A @ X @ A, A)

    def test_invertible_real_part_is_always_regular(self) -> None:
        cert = regularity_certificate(DualMatrix(Matrix.from_rows([[2, 1], [1, 1]]), ONES))
        self.assertTrue(cert.regular)

    def test_rejects_bad_override(self) -> None:
        with self.assertRaises(InputError):
            regularity_certificate(idempotent(), a_plus=Matrix.identity(2))

    def test_radical_split(self) -> None:
        A = idempotent()
        split = radical_split(A)
        self.assertEqual(split.left, Matrix.from_rows([[0, 0], [1, 0]]))
        self.assertEqual(split.right, Matrix.from_rows([[0, 1], [0, 0]]))
        self.assertEqual(split.compose(), A)

    def test_radical_split_of_invertible(self) -> None:
        real = Matrix.from_rows([[2, 1], [1, 1]])
        split = radical_split(DualMatrix(real, ONES))
        self.assertTrue(split.left.is_zero())
        self.assertEqual(real @ split.right, ONES)

    def test_radical_split_without_dual_part(self) -> None:
        split = radical_split(DualMatrix.from_real(ONES))
        self.assertTrue(split.left.is_zero())
        self.assertTrue(split.right.is_zero())

    def test_radical_split_needs_regularity(self) -> None:
        with self.assertRaises(NonexistenceError):
            radical_split(DualMatrix(E11, E22))


class TestDualGeneralizedInverse(unittest.TestCase):
    def test_moore_penrose_of_idempotent(self) -> None:
        A = idempotent()
        cert = dual_generalized_inverse("mp", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.witness, A)
        self.assertEqual(cert.closed_form_path, A)
        self.assertTrue(cert.report.passed)
        self.assertEqual(mp_first_order(A), A)

    def test_moore_penrose_does_not_exist(self) -> None:
        cert = dual_generalized_inverse("mp", DualMatrix(E11, E22))
        self.assertFalse(cert.exists)
        self.assertIsNone(cert.witness)
        self.assertEqual(cert.residual, DualMatrix.epsilon(E22))
        self.assertIsNone(mp_first_order(DualMatrix(E11, E22)))

    def test_moore_penrose_of_non_square(self) -> None:
        A = DualMatrix(Matrix.from_rows([[1, 0, 0], [0, 0, 0]]), Matrix.from_rows([[0, 1, 0], [0, 0, 0]]))
        cert = dual_generalized_inverse("mp", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.witness.shape, (3, 2))
        self.assertEqual(cert.padding, 3)
        self.assertEqual(mp_first_order(A), cert.witness)

    def test_group_of_scalar_multiple(self) -> None:
        A = DualMatrix(ONES, ONES)
        quarter = Matrix.from_rows([["1/4", "1/4"], ["1/4", "1/4"]])
        cert = dual_generalized_inverse("group", A)
        self.assertEqual(cert.witness, DualMatrix(quarter, -quarter))

    def test_group_of_idempotent_is_itself(self) -> None:
        A = DualMatrix(E11, N)
        self.assertEqual(dual_generalized_inverse("group", A).witness, A)

    def test_group_does_not_exist_for_nilpotent(self) -> None:
        cert = dual_generalized_inverse("group", DualMatrix.from_real(N))
        self.assertFalse(cert.exists)
        self.assertIn("group", cert.reason)

    def test_core(self) -> None:
        A = idempotent()
        cert = dual_generalized_inverse("core", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.witness, A)

    def test_drazin_of_nilpotent(self) -> None:
        A = DualMatrix(N, Matrix.identity(2))
        cert = dual_generalized_inverse("drazin", A)
        self.assertTrue(cert.exists)
        self.assertTrue(cert.witness.is_zero())
        self.assertEqual(cert.index, 3)
        self.assertEqual(dual_drazin_index(A), 3)

    def test_drazin_index_doubles(self) -> None:
        A = DualMatrix(E11, E22)
        cert = dual_generalized_inverse("drazin", A)
        self.assertEqual(cert.witness, DualMatrix.from_real(E11))
        self.assertEqual(cert.index, 2)
        self.assertEqual(cert.l, 2)

    def test_bc(self) -> None:
        I = DualMatrix.identity(2)
        B = DualMatrix.from_real(E11)
        cert = dual_generalized_inverse("bc", I, B=B, C=B)
        self.assertEqual(cert.witness, B)

    def test_bc_of_idempotent(self) -> None:
        B = DualMatrix.from_real(E11)
        cert = dual_generalized_inverse("bc", idempotent(), B=B, C=B)
        self.assertEqual(cert.witness, B)

    def test_bc_with_non_regular_prescription(self) -> None:
        B = DualMatrix(E11, E22)
        C = DualMatrix.from_real(E11)
        cert = dual_generalized_inverse("bc", DualMatrix.identity(2), B=B, C=C)
        self.assertFalse(cert.exists)
        self.assertEqual(cert.residual, DualMatrix.epsilon(E22))

    def test_bc_needs_prescriptions(self) -> None:
        with self.assertRaises(InputError):
            dual_generalized_inverse("bc", DualMatrix.identity(2))
        with self.assertRaises(InputError):
            dual_generalized_inverse("weighted", DualMatrix.identity(2))

    def test_bc_is_independent_of_the_one_inverse(self) -> None:
        real = Matrix.from_rows([[1, 1], [0, 0]])
        B = DualMatrix(real, N)
        A = DualMatrix(Matrix.identity(2), Matrix.from_rows([[1, 0], [2, 3]]))
        first = dual_bc_inverse(A, B, B, b_plus=Matrix.diag(1, 0))
        second = dual_bc_inverse(A, B, B, b_plus=Matrix.from_rows([[0, 0], [1, 0]]))
        self.assertEqual(first, second)
        self.assertEqual(first, dual_bc_inverse(A, B, B))

    def test_along_invertible(self) -> None:
        I = Matrix.identity(2)
        A = DualMatrix(I, N)
        cert = dual_generalized_inverse("along", A, D=A)
        self.assertEqual(cert.kind, "bc")
        self.assertEqual(cert.witness, DualMatrix(I, -N))
        self.assertEqual(closed_form_inverse("along", A, D=A), DualMatrix(I, -N))

    def test_outer(self) -> None:
        B = DualMatrix.from_real(E11)
        outer = outer_inverse_prescribed(idempotent(), B, B)
        self.assertEqual(outer.witness, B)
        self.assertTrue(outer.range_matches)
        self.assertTrue(outer.null_space_matches)

        I = DualMatrix.identity(2)
        self.assertEqual(outer_inverse_prescribed(I, I, I).witness, I)

    def test_group_of_non_square_keeps_padded_witness(self) -> None:
        A = DualMatrix.from_real(Matrix.from_rows([[1, 1]]))
        padded = DualMatrix.from_real(Matrix.from_rows([[1, 1], [0, 0]]))
        cert = dual_generalized_inverse("group", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.padding, 2)
        self.assertEqual(cert.padded_witness, padded)
        self.assertEqual(cert.witness, DualMatrix.from_real(Matrix.from_rows([[1], [0]])))
        self.assertEqual(cert.closed_form_path, cert.witness)
        self.assertTrue(cert.report.passed)

    def test_group_of_non_square_nilpotent_does_not_exist(self) -> None:
        cert = dual_generalized_inverse("group", DualMatrix.from_real(Matrix.from_rows([[0, 1]])))
        self.assertFalse(cert.exists)
        self.assertIsNone(cert.padded_witness)
        self.assertEqual(cert.padding, 2)

    def test_core_of_non_square(self) -> None:
        A = DualMatrix.from_real(Matrix.from_rows([[1, 1]]))
        cert = dual_generalized_inverse("core", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.padded_witness, DualMatrix.from_real(E11))
        self.assertEqual(cert.witness, DualMatrix.from_real(Matrix.from_rows([[1], [0]])))
        self.assertTrue(cert.report.passed)

    def test_drazin_of_non_square(self) -> None:
        A = DualMatrix.from_real(Matrix.from_rows([[1, 1]]))
        cert = dual_generalized_inverse("drazin", A)
        self.assertTrue(cert.exists)
        self.assertEqual(cert.index, 1)
        self.assertEqual(cert.padded_witness, DualMatrix.from_real(Matrix.from_rows([[1, 1], [0, 0]])))
        self.assertEqual(cert.witness.shape, (2, 1))
        self.assertTrue(cert.report.passed)

    def test_verify_rejects_wrong_witness(self) -> None:
        B = DualMatrix.from_real(E11)
        report, size = verify_dual_inverse("bc", DualMatrix.identity(2), DualMatrix.identity(2), B, B)
        self.assertFalse(report.passed)
        self.assertEqual(size, 2)


def random_dual(rng: np.random.Generator, rows: int, cols: int) -> DualMatrix:
    """Entries in {-2..2}/{1,2}; every other draw has a rank-one real part."""

    def fractions(shape):
        numerators = rng.integers(-2, 3, size=shape).tolist()
        denominators = rng.integers(1, 3, size=shape).tolist()
        return [[f"{p}/{q}" for p, q in zip(row_p, row_q)] for row_p, row_q in zip(numerators, denominators)]

    if rng.integers(0, 2):
        u = rng.integers(-2, 3, size=rows).tolist()
        v = rng.integers(-2, 3, size=cols).tolist()
        real = Matrix.from_rows([[a * b for b in v] for a in u])
    else:
        real = Matrix.from_rows(fractions((rows, cols)))
    return DualMatrix(real, Matrix.from_rows(fractions((rows, cols))))


def solvable_inner_equation(A: DualMatrix) -> bool:
    """Decide ÂX̂Â = Â by solving the block system in vec(X), vec(X0) directly."""
    m, n = A.shape
    A1, A0 = A.real, A.dual

    def flat(M: Matrix) -> list:
        return [M[i, j] for i in range(M.rows) for j in range(M.cols)]

    columns = []
    for i in range(n):
        for j in range(m):
            E = Matrix.from_rows([[1 if (r, c) == (i, j) else 0 for c in range(m)] for r in range(n)], cols=m)
            columns.append(flat(A1 @ E @ A1) + flat(A0 @ E @ A1 + A1 @ E @ A0))
    for i in range(n):
        for j in range(m):
            E = Matrix.from_rows([[1 if (r, c) == (i, j) else 0 for c in range(m)] for r in range(n)], cols=m)
            columns.append([0] * (m * n) + flat(A1 @ E @ A1))
    system = Matrix.from_rows(columns).T
    rhs = Matrix.from_rows([[v] for v in flat(A1) + flat(A0)])
    return mx.solve(system, rhs) is not None


class TestRandomInstances(unittest.TestCase):
    def setUp(self) -> None:
        self.rng = np.random.default_rng(2024)

    def test_regularity_matches_block_solvability(self) -> None:
        for _ in range(1000):
            rows, cols = [(2, 2), (2, 3), (3, 2)][self.rng.integers(0, 3)]
            A = random_dual(self.rng, rows, cols)
            self.assertEqual(regularity_certificate(A).regular, solvable_inner_equation(A), msg=str(A))

    def test_engine_and_closed_form_agree(self) -> None:
        for kind in ("mp", "group", "core", "along", "bc"):
            for _ in range(500):
                A = random_dual(self.rng, 2, 2)
                extra = {}
                if kind == "along":
                    extra = {"D": random_dual(self.rng, 2, 2)}
                elif kind == "bc":
                    extra = {"B": random_dual(self.rng, 2, 2), "C": random_dual(self.rng, 2, 2)}
                cert = dual_generalized_inverse(kind, A, **extra)
                if cert.exists:
                    self.assertEqual(cert.closed_form_path, cert.witness, msg=f"{kind}: {A}")
                    self.assertTrue(cert.report.passed)
                else:
                    self.assertIsNone(cert.witness)

    def test_drazin_index_at_most_doubles(self) -> None:
        for _ in range(200):
            n = 2 if self.rng.integers(0, 2) else 3
            A = random_dual(self.rng, n, n)
            if self.rng.integers(0, 2):
                upper = [[int(self.rng.integers(-2, 3)) if c > r else 0 for c in range(n)] for r in range(n)]
                A = DualMatrix(Matrix.from_rows(upper), A.dual)
            k = mx.drazin_index(A.real)
            t = dual_drazin_index(A)
            self.assertLessEqual(k, t)
            self.assertLessEqual(t, 2 * k)
            cert = dual_generalized_inverse("drazin", A)
            self.assertTrue(cert.exists)
            self.assertEqual(cert.index, t)

    def test_special_clean_exactly_when_regular(self) -> None:
        for _ in range(500):
            A = random_dual(self.rng, 2, 2)
            facts = clean_facts(A)
            regular = regularity_certificate(A).regular
            self.assertEqual(facts.special is not None, regular)
            self.assertEqual(facts.regular, regular)
            self.assertEqual((facts.strongly.idempotent + facts.strongly.unit).value, A)

    def test_regularity_certificate(self) -> None:
        for _ in range(60):
            rows, cols = (2, 2) if self.rng.integers(0, 2) else (2, 3)
            A = random_dual(self.rng, rows, cols)
            cert = regularity_certificate(A)
            if cert.regular:
                X = cert.reflexive_inverse
                self.assertEqual(A @ X @ A, A)
                self.assertEqual(X @ A @ X, X)
                self.assertEqual(radical_split(A).compose(), A)
            else:
                self.assertFalse(cert.residual.is_zero())
                with self.assertRaises(NonexistenceError):
                    radical_split(A)

    def test_moore_penrose_agrees_with_first_order_oracle(self) -> None:
        for _ in range(30):
            A = random_dual(self.rng, 2, 2)
            cert = dual_generalized_inverse("mp", A)
            expected = mp_first_order(A)
            self.assertEqual(cert.exists, expected is not None)
            if cert.exists:
                self.assertEqual(cert.witness, expected)
                self.assertTrue(cert.report.passed)


class TestCleanFacts(unittest.TestCase):
    def test_regular_is_special_clean(self) -> None:
        facts = clean_facts(idempotent())
        self.assertTrue(facts.regular)
        self.assertIsNotNone(facts.special)
        self.assertTrue(facts.strongly.strongly)

    def test_non_regular_is_only_strongly_clean(self) -> None:
        facts = clean_facts(DualMatrix(E11, E22))
        self.assertFalse(facts.regular)
        self.assertIsNone(facts.special)
        self.assertTrue(facts.strongly.strongly)


if __name__ == "__main__":
    unittest.main()
