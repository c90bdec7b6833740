import unittest

from radinv.errors import InputError
from radinv.finite_ring import ZnRing
from radinv.matrices import Matrix
from radinv.perturb import CleanDecomposition, clean_transfer
from radinv.triangular import T2Integers, extended_gcd, structured_clean_search


class TestExtendedGcd(unittest.TestCase):
    def test_bezout(self) -> None:
        self.assertEqual(extended_gcd(240, 46), (2, -9, 47))

    def test_signs_and_zero(self) -> None:
        g, s, t = extended_gcd(-4, 6)
        self.assertEqual(g, 2)
        self.assertEqual(s * -4 + t * 6, 2)
        self.assertEqual(extended_gcd(0, 0)[0], 0)
        self.assertEqual(extended_gcd(0, 5)[0], 5)


class TestT2Integers(unittest.TestCase):
    def setUp(self) -> None:
        self.ring = T2Integers()

    def test_product(self) -> None:
        x = self.ring.matrix(1, 2, 3)
        y = self.ring.matrix(4, 5, 6)
        self.assertEqual(x * y, self.ring.matrix(4, 17, 18))
        self.assertEqual(self.ring.to_matrix(x * y), self.ring.to_matrix(x) @ self.ring.to_matrix(y))

    def test_from_matrix(self) -> None:
        self.assertEqual(self.ring.from_matrix(Matrix.from_rows([[1, 2], [0, 3]])), self.ring.matrix(1, 2, 3))
        with self.assertRaises(InputError):
            self.ring.from_matrix(Matrix.from_rows([[1, 0], [1, 1]]))
        with self.assertRaises(InputError):
            self.ring.from_matrix(Matrix.from_rows([["1/2", 0], [0, 1]]))

    def test_units(self) -> None:
        u = self.ring.matrix(1, 1, -1)
        self.assertEqual(u * self.ring.unit_inverse(u), self.ring.one)
        self.assertIsNone(self.ring.unit_inverse(self.ring.matrix(2, 0, 1)))

    def test_radical(self) -> None:
        self.assertTrue(self.ring.is_radical(self.ring.matrix(0, 7, 0)))
        self.assertFalse(self.ring.is_radical(self.ring.matrix(0, 7, 1)))

    def test_right_witness_uses_gcd(self) -> None:
        b = self.ring.matrix(0, 2, 0)
        r = self.ring.right_witness(self.ring.matrix(0, 2, 0), b)
        self.assertIsNotNone(r)
        self.assertEqual(b * r, self.ring.matrix(0, 2, 0))
        self.assertIsNone(self.ring.right_witness(self.ring.matrix(0, 1, 0), b))

    def test_left_witness(self) -> None:
        c = self.ring.matrix(2, 1, 3)
        y = self.ring.matrix(4, 5, 9)
        s = self.ring.left_witness(y, c)
        self.assertEqual(s * c, y)
        self.assertIsNone(self.ring.left_witness(self.ring.matrix(1, 0, 0), c))

    def test_bc_inverse_must_be_integral(self) -> None:
        one = self.ring.one
        self.assertIsNone(self.ring.bc_inverse(self.ring.matrix(2, 0, 2), one, one))
        u = self.ring.matrix(1, 1, -1)
        self.assertEqual(self.ring.bc_inverse(u, one, one), self.ring.unit_inverse(u))

    def test_along_idempotent(self) -> None:
        a = self.ring.matrix(2, 2, -1)
        e = self.ring.matrix(0, -1, 1)
        self.assertEqual(self.ring.bc_inverse(a, e, e), self.ring.matrix(0, 1, -1))

    def test_idempotent_families(self) -> None:
        for e in self.ring.idempotents(2):
            self.assertEqual(e * e, e)
        self.assertEqual(len(list(self.ring.idempotents(1))), 8)
        self.assertEqual(self.ring.idempotent("upper", 3), self.ring.matrix(1, 3, 0))
        with self.assertRaises(InputError):
            self.ring.idempotent("diagonal")


class TestStructuredCleanSearch(unittest.TestCase):
    def setUp(self) -> None:
        self.ring = T2Integers()

    def test_no_strongly_clean_decomposition(self) -> None:
        result = structured_clean_search(self.ring.matrix(2, 2, -1))
        self.assertIsNone(result.decomposition)
        self.assertTrue(any("x·3 = 2" in note for note in result.notes))

    def test_strongly_clean_after_perturbation(self) -> None:
        result = structured_clean_search(self.ring.matrix(2, 3, -1))
        self.assertEqual(result.decomposition.idempotent, self.ring.matrix(1, 1, 0))
        self.assertEqual(result.decomposition.unit, self.ring.matrix(1, 2, -1))

    def test_clean_without_commuting(self) -> None:
        result = structured_clean_search(self.ring.matrix(2, 2, -1), strongly=False)
        self.assertEqual(result.decomposition.idempotent, self.ring.matrix(1, 0, 0))
        self.assertFalse(result.decomposition.strongly)

    def test_unit_is_clean_with_zero(self) -> None:
        result = structured_clean_search(self.ring.matrix(1, 5, -1))
        self.assertEqual(result.decomposition.idempotent, self.ring.zero)

    def test_needs_t2z(self) -> None:
        with self.assertRaises(InputError):
            structured_clean_search(ZnRing(4).one)


class TestCleanTransferOverT2Z(unittest.TestCase):
    def setUp(self) -> None:
        self.ring = T2Integers()
        self.a = self.ring.matrix(2, 2, -1)
        self.candidate = CleanDecomposition(self.ring.matrix(1, 1, 0), self.ring.matrix(1, 1, -1))

    def test_perturbation_makes_it_strongly_clean(self) -> None:
        report = clean_transfer(self.a, self.ring.matrix(0, 1, 0), self.candidate)
        self.assertEqual(report.along_e, self.ring.matrix(0, 1, -1))
        self.assertTrue(report.annihilation)
        self.assertTrue(report.conjugated)
        self.assertTrue(report.strongly_clean)
        self.assertEqual(report.witness.idempotent, self.ring.matrix(1, 1, 0))
        self.assertEqual(report.witness.unit, self.ring.matrix(1, 2, -1))

    def test_without_perturbation(self) -> None:
        report = clean_transfer(self.a, self.ring.zero, self.candidate)
        self.assertFalse(report.strongly_clean)
        self.assertFalse(report.annihilation)


if __name__ == "__main__":
    unittest.main()
