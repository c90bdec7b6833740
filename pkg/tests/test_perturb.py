import unittest

import numpy as np

from radinv import matrices as mx
from radinv.core import phi
from radinv.dualmat import DualMatrix, DualMatrixRing, dual_generalized_inverse
from radinv.errors import InputError, NonexistenceError
from radinv.finite_ring import ZnRing
from radinv.matrices import Matrix, MatrixRing
from radinv.perturb import (
    CleanDecomposition,
    PerturbationInput,
    absorption_equivalences,
    clean_transfer,
    drazin_perturb,
    idempotence_check,
    lemma31_residual,
    mgc_perturb,
    regular_perturb,
    special_clean_transfer,
    theorem33,
)

E11 = Matrix.diag(1, 0)
E22 = Matrix.diag(0, 1)
SWAP = Matrix.from_rows([[0, 1], [1, 0]])
ONES = Matrix.from_rows([[1, 1], [1, 1]])
QUARTER = Matrix.from_rows([["1/4", "1/4"], ["1/4", "1/4"]])


def random_dual(rng: np.random.Generator, rows: int, cols: int) -> DualMatrix:
    """Small rational entries; half the draws get a rank-one real part."""

    def fractions(shape):
        numerators = rng.integers(-2, 3, size=shape).tolist()
        denominators = rng.integers(1, 3, size=shape).tolist()
        return [[f"{p}/{q}" for p, q in zip(row_p, row_q)] for row_p, row_q in zip(numerators, denominators)]

    if rng.integers(0, 2):
        u = rng.integers(-2, 3, size=rows).tolist()
        v = rng.integers(-2, 3, size=cols).tolist()
        real = Matrix.from_rows([[p * q for q in v] for p in u])
    else:
        real = Matrix.from_rows(fractions((rows, cols)))
    return DualMatrix(real, Matrix.from_rows(fractions((rows, cols))))


class TestRegularPerturb(unittest.TestCase):
    def test_modulo_four(self) -> None:
        ring = ZnRing(4)
        x = regular_perturb(ring.one, ring.one, ring.elem(2))
        self.assertEqual(x, ring.elem(3))

    def test_rejects_non_radical(self) -> None:
        ring = ZnRing(4)
        with self.assertRaises(InputError):
            regular_perturb(ring.one, ring.one, ring.one)

    def test_rejects_non_reflexive(self) -> None:
        ring = ZnRing(4)
        with self.assertRaises(InputError):
            regular_perturb(ring.one, ring.elem(3), ring.elem(2))

    def test_residual_blocks_regularity(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        j = ring.eps(E22)
        self.assertEqual(lemma31_residual(a, a, j), j)
        with self.assertRaises(NonexistenceError) as ctx:
            regular_perturb(a, a, j)
        self.assertEqual(ctx.exception.residual, j)

    def test_dual_symmetric_idempotent(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        x = regular_perturb(a, a, ring.eps(SWAP))
        self.assertEqual(x, a)


class TestTheorem33(unittest.TestCase):
    def test_only_a_perturbed(self) -> None:
        ring = DualMatrixRing(2)
        e = ring.real(E11)
        inp = PerturbationInput(e, e, e, e, e, e, ring.eps(SWAP), ring.zero, ring.zero)
        report = theorem33(inp)
        self.assertTrue(report.exists)
        self.assertEqual(report.inverse(), e)
        self.assertEqual(report.composite_j, ring.eps(SWAP))
        self.assertEqual(report.unperturbed_a_inverse, e)

    def test_non_regular_prescription(self) -> None:
        ring = DualMatrixRing(2)
        e = ring.real(E11)
        inp = PerturbationInput(ring.one, e, e, e, e, e, ring.zero, ring.eps(E22), ring.zero)
        report = theorem33(inp)
        self.assertFalse(report.exists)
        self.assertEqual(report.conditions[0], ring.eps(E22))
        self.assertTrue(report.conditions[1].is_zero())
        with self.assertRaises(NonexistenceError):
            report.inverse()

    def test_rejects_wrong_inverse(self) -> None:
        ring = DualMatrixRing(2)
        e = ring.real(E11)
        inp = PerturbationInput(ring.one, e, e, ring.one, e, e, ring.zero, ring.zero, ring.zero)
        with self.assertRaises(InputError):
            theorem33(inp)

    def test_modulo_four(self) -> None:
        ring = ZnRing(4)
        one, two = ring.one, ring.elem(2)
        inp = PerturbationInput(one, one, one, one, one, one, two, ring.zero, ring.zero)
        self.assertEqual(theorem33(inp).inverse(), ring.elem(3))


class TestMgcPerturb(unittest.TestCase):
    def test_moore_penrose(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        result = mgc_perturb("mp", a, a, ring.eps(SWAP))
        self.assertEqual(result, ring.elem(DualMatrix(E11, SWAP)))

    def test_moore_penrose_does_not_exist(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        with self.assertRaises(NonexistenceError) as ctx:
            mgc_perturb("mp", a, a, ring.eps(E22))
        self.assertEqual(ctx.exception.residual, ring.eps(E22))

    def test_core_without_perturbation(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        self.assertEqual(mgc_perturb("core", a, a, ring.zero), a)

    def test_group(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(ONES)
        result = mgc_perturb("group", a, ring.real(QUARTER), ring.eps(ONES))
        self.assertEqual(result, ring.elem(DualMatrix(QUARTER, -QUARTER)))

    def test_unknown_kind(self) -> None:
        ring = ZnRing(4)
        with self.assertRaises(InputError):
            mgc_perturb("drazin", ring.one, ring.one, ring.zero)


class TestDrazinPerturb(unittest.TestCase):
    def test_perturbed_to_zero(self) -> None:
        ring = ZnRing(4)
        report = drazin_perturb(ring.elem(2), ring.elem(2))
        self.assertEqual(report.l, 2)
        self.assertEqual(report.index, 2)
        self.assertEqual(report.result, ring.zero)
        self.assertTrue(report.condition_residual.is_zero())

    def test_exponent_below_index(self) -> None:
        ring = ZnRing(4)
        with self.assertRaises(InputError):
            drazin_perturb(ring.elem(2), ring.elem(2), l=1)

    def test_unit(self) -> None:
        ring = ZnRing(4)
        report = drazin_perturb(ring.one, ring.elem(2))
        self.assertEqual(report.index, 0)
        self.assertEqual(report.result, ring.elem(3))

    def test_value_does_not_depend_on_exponent(self) -> None:
        rng = np.random.default_rng(7)
        for _ in range(200):
            n = 2 if rng.integers(0, 2) else 3
            A = random_dual(rng, n, n)
            space = DualMatrixRing(n)
            a, j = space.real(A.real), space.eps(A.dual)
            drazin = mx.drazin_inverse(A.real)
            k = drazin.index
            expected = dual_generalized_inverse("drazin", A, closed_form=False).witness
            for l in (k, k + 1, k + 2):
                report = drazin_perturb(a, j, l, a_drazin=(space.real(drazin.inverse), k))
                if report.result is not None:
                    self.assertEqual(report.result.value, expected, msg=f"l={l}: {A}")


class TestAbsorption(unittest.TestCase):
    def setUp(self) -> None:
        self.ring = DualMatrixRing(2)
        self.a = self.ring.real(E11)
        self.j = self.ring.eps(SWAP)

    def test_holds(self) -> None:
        report = absorption_equivalences(self.a, self.j, self.a, self.a)
        self.assertTrue(report.holds)
        self.assertEqual(report.conditions, (True,) * 6)

    def test_fails_for_moore_penrose_pair(self) -> None:
        y = self.ring.elem(DualMatrix(E11, SWAP))
        report = absorption_equivalences(self.a, self.j, self.a, y)
        self.assertFalse(report.holds)
        self.assertEqual(report.conditions, (False,) * 6)

    def test_rejects_non_outer(self) -> None:
        with self.assertRaises(InputError):
            absorption_equivalences(self.a, self.j, self.ring.one, self.a)

    def test_scan_over_finite_ring(self) -> None:
        ring = ZnRing(4)
        report = absorption_equivalences(ring.one, ring.elem(2), ring.one, ring.elem(3))
        self.assertTrue(report.holds)

    def test_random_perturbed_outer_inverses(self) -> None:
        rng = np.random.default_rng(13)
        space = DualMatrixRing(2)
        for _ in range(500):
            A = random_dual(rng, 2, 2)
            a, j = space.real(A.real), space.eps(A.dual)
            x = space.real(mx.reflexive_inverse(A.real))
            self.assertTrue(absorption_equivalences(a, j, x, phi(x, j)).holds)
            if not x.is_zero():
                self.assertFalse(absorption_equivalences(a, j, x, space.zero).holds)


class TestIdempotence(unittest.TestCase):
    def test_projection(self) -> None:
        ring = MatrixRing(2)
        e = ring.elem(E11)
        report = idempotence_check(ring.one, e, e, ring.zero)
        self.assertEqual(report.inverse, e)
        self.assertEqual(report.perturbed_inverse, e)
        self.assertEqual(report.sum_conditions, (True, True, True))
        self.assertTrue(report.joint)
        self.assertTrue(report.structural)
        self.assertTrue(report.trace_product)

    def test_requires_inverse(self) -> None:
        ring = MatrixRing(2)
        e = ring.elem(E11)
        with self.assertRaises(InputError):
            idempotence_check(ring.zero, e, e, ring.zero)
        report = idempotence_check(ring.zero, e, e, ring.zero, require_inverse=False)
        self.assertIsNone(report.inverse)
        self.assertIsNone(report.sum_conditions)
        self.assertFalse(report.joint)


class TestCleanTransfer(unittest.TestCase):
    def test_unit_modulo_four(self) -> None:
        ring = ZnRing(4)
        candidate = CleanDecomposition(ring.zero, ring.one, strongly=True)
        report = clean_transfer(ring.one, ring.elem(2), candidate)
        self.assertTrue(report.strongly_clean)
        self.assertEqual(report.along_e, ring.one)
        self.assertEqual(report.witness.idempotent, ring.zero)
        self.assertEqual(report.witness.unit, ring.elem(3))

    def test_validate_rejects_bad_decompositions(self) -> None:
        ring = ZnRing(4)
        with self.assertRaises(InputError):
            CleanDecomposition(ring.elem(3), ring.one).validate(ring.zero)
        with self.assertRaises(InputError):
            CleanDecomposition(ring.zero, ring.elem(2)).validate(ring.elem(2))
        with self.assertRaises(InputError):
            CleanDecomposition(ring.zero, ring.one).validate(ring.elem(3))


class TestSpecialCleanTransfer(unittest.TestCase):
    def test_modulo_four(self) -> None:
        ring = ZnRing(4)
        report = special_clean_transfer(ring.one, ring.elem(2), ring.one)
        self.assertTrue(report.special_clean)
        self.assertEqual(report.reflexive_inverse, ring.elem(3))
        self.assertTrue(report.bijection_checked)

    def test_dual_idempotent(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        report = special_clean_transfer(a, ring.eps(SWAP), a)
        self.assertTrue(report.special_clean)
        self.assertEqual(report.reflexive_inverse, a)
        self.assertFalse(report.bijection_checked)

    def test_not_regular(self) -> None:
        ring = DualMatrixRing(2)
        a = ring.real(E11)
        report = special_clean_transfer(a, ring.eps(E22), a)
        self.assertFalse(report.special_clean)
        self.assertEqual(report.residual, ring.eps(E22))


if __name__ == "__main__":
    unittest.main()
