"""Truncated power series R[x]/(x^N) over a base ring space."""

from __future__ import annotations

import itertools
import logging
from typing import Iterator, Optional, Sequence, Tuple

from . import config
from . import matrices as mx
from .errors import BudgetError, InputError, NonexistenceError
from .matrices import Matrix, MatrixRing
from .perturb import PerturbationInput, regular_perturb, theorem33
from .rings import Elem, RingSpace, Value

logger = logging.getLogger(__name__)

Coefficients = Tuple[Value, ...]


class TruncatedSeriesRing(RingSpace):
    """Series a_0 + a_1 x + ... + a_{N-1} x^{N-1} with x^N = 0.

    Values are tuples of N base values. The working radical is J(base) + (x),
    so for a matrix base over a field it is the ideal (x).
    """

    def __init__(self, base: RingSpace, order: int) -> None:
        if order < 1:
            raise InputError("series order must be at least 1")
        super().__init__(f"{base.name}[x]/(x^{order})")
        self.base = base
        self.order = order
        self.is_finite = base.is_finite

    @property
    def key(self) -> Tuple[object, ...]:
        return ("TruncatedSeriesRing", self.base.key, self.order)

    # -- arithmetic -----------------------------------------------------------
    def add_values(self, x: Coefficients, y: Coefficients) -> Coefficients:  # type: ignore[override]
        return tuple(self.base.add_values(a, b) for a, b in zip(x, y))

    def neg_value(self, x: Coefficients) -> Coefficients:  # type: ignore[override]
        return tuple(self.base.neg_value(a) for a in x)

    def mul_values(self, x: Coefficients, y: Coefficients) -> Coefficients:  # type: ignore[override]
        base = self.base
        out = []
        for k in range(self.order):
            acc = base.zero_value()
            for i in range(k + 1):
                acc = base.add_values(acc, base.mul_values(x[i], y[k - i]))
            out.append(acc)
        return tuple(out)

    def zero_value(self) -> Coefficients:
        return (self.base.zero_value(),) * self.order

    def one_value(self) -> Coefficients:
        return (self.base.one_value(),) + (self.base.zero_value(),) * (self.order - 1)

    def format_value(self, x: Coefficients) -> str:  # type: ignore[override]
        terms = [
            self.base.format_value(c) + ("" if i == 0 else f"·x^{i}")
            for i, c in enumerate(x)
            if c != self.base.zero_value()
        ]
        return " + ".join(terms) or "0"

    # -- construction ---------------------------------------------------------
    def series(self, coefficients: Sequence[Value]) -> Elem:
        if len(coefficients) > self.order:
            raise InputError(f"{len(coefficients)} coefficients exceed order {self.order}")
        padded = tuple(coefficients) + (self.base.zero_value(),) * (self.order - len(coefficients))
        return self.elem(padded)

    def constant(self, value: Value) -> Elem:
        return self.series([value])

    def split(self, a: Elem) -> Tuple[Elem, Elem, Elem]:
        """(a_0 in the base, a_0 as a constant series, the tail a - a_0)."""
        a0 = self.base.elem(a.value[0])
        const = self.constant(a.value[0])
        return a0, const, a - const

    # -- capabilities ----------------------------------------------------------
    def values(self) -> Iterator[Coefficients]:
        self._require_finite("values")
        if self.size > config.RING_BUDGET:
            raise BudgetError(f"{self.name} has {self.size} elements, above the budget")
        return itertools.product(list(self.base.values()), repeat=self.order)

    @property
    def size(self) -> int:
        return self.base.size ** self.order

    @property
    def has_involution(self) -> bool:
        return self.base.has_involution

    def star(self, x: Elem) -> Elem:
        return self.elem(tuple(self.base.star(self.base.elem(c)).value for c in x.value))

    def is_radical(self, x: Elem) -> bool:
        return self.base.is_radical(self.base.elem(x.value[0]))

    @property
    def nilpotency_bound(self) -> int:
        return self.order * self.base.nilpotency_bound

    def _matrix_base(self) -> Optional[MatrixRing]:
        base = self.base
        if isinstance(base, MatrixRing) and (base.modulus is None or mx._is_prime(base.modulus)):
            return base
        return None

    def _toeplitz(self, coefficients: Coefficients) -> Matrix:
        """Block lower-triangular Toeplitz matrix of multiplication on the left."""
        base = self._matrix_base()
        zero = Matrix.zeros(base.n, base.n, base.modulus)  # type: ignore[union-attr]
        rows = None
        for k in range(self.order):
            row = None
            for j in range(self.order):
                block = coefficients[k - j] if j <= k else zero
                row = block if row is None else Matrix.hstack(row, block)
            rows = row if rows is None else Matrix.vstack(rows, row)
        return rows  # type: ignore[return-value]

    def _stack(self, coefficients: Coefficients) -> Matrix:
        out = coefficients[0]
        for c in coefficients[1:]:
            out = Matrix.vstack(out, c)
        return out

    def _unstack(self, stacked: Matrix) -> Coefficients:
        n = self.base.n  # type: ignore[attr-defined]
        return tuple(stacked.select_rows(range(k * n, (k + 1) * n)) for k in range(self.order))

    def right_witness(self, y: Elem, b: Elem) -> Optional[Elem]:
        if self._matrix_base() is None:
            return super().right_witness(y, b)
        solution = mx.solve(self._toeplitz(b.value), self._stack(y.value))
        return None if solution is None else self.elem(self._unstack(solution))

    def left_witness(self, y: Elem, c: Elem) -> Optional[Elem]:
        if self._matrix_base() is None:
            return super().left_witness(y, c)
        transposed = tuple(m.T for m in c.value)
        solution = mx.solve(self._toeplitz(transposed), self._stack(tuple(m.T for m in y.value)))
        if solution is None:
            return None
        return self.elem(tuple(m.T for m in self._unstack(solution)))

    def unit_inverse(self, x: Elem) -> Optional[Elem]:
        inv0 = self.base.unit_inverse(self.base.elem(x.value[0]))
        if inv0 is None:
            return None
        base = self.base
        coeffs = [inv0.value]
        for k in range(1, self.order):
            acc = base.zero_value()
            for i in range(1, k + 1):
                acc = base.add_values(acc, base.mul_values(x.value[i], coeffs[k - i]))
            coeffs.append(base.neg_value(base.mul_values(inv0.value, acc)))
        return self.elem(tuple(coeffs))

    def reflexive_inverse(self, x: Elem) -> Optional[Elem]:
        a0, const, tail = self.split(x)
        plus0 = self.base.reflexive_inverse(a0)
        if plus0 is None:
            return None
        try:
            return regular_perturb(const, self.constant(plus0.value), tail)
        except NonexistenceError:
            return None

    def bc_inverse(self, a: Elem, b: Elem, c: Elem) -> Optional[Elem]:
        try:
            return series_bc_inverse(a, b, c)
        except NonexistenceError:
            return None


def series_bc_inverse(a: Elem, b: Elem, c: Elem) -> Elem:
    """The (b,c)-inverse of a truncated series from its constant terms.

    a^{||(b,c)} exists iff a_0^{||(b_0,c_0)} exists and the tails of b and c
    pass the regularity residual test against reflexive inverses of b_0, c_0.

    Raises:
        NonexistenceError: The constant-term inverse is missing or a tail
            condition fails.
    """
    space = a.space
    if not isinstance(space, TruncatedSeriesRing):
        raise InputError("series_bc_inverse needs elements of a truncated series ring")
    base = space.base
    a0, a_const, j_a = space.split(a)
    b0, b_const, j_b = space.split(b)
    c0, c_const, j_c = space.split(c)
    y0 = base.bc_inverse(a0, b0, c0)
    if y0 is None:
        raise NonexistenceError("constant term has no (b0,c0)-inverse")
    b0_plus = base.reflexive_inverse(b0)
    c0_plus = base.reflexive_inverse(c0)
    if b0_plus is None or c0_plus is None:
        raise NonexistenceError("constant prescriptions are not regular")
    report = theorem33(
        PerturbationInput(
            a_const,
            b_const,
            c_const,
            space.constant(y0.value),
            space.constant(b0_plus.value),
            space.constant(c0_plus.value),
            j_a,
            j_b,
            j_c,
        )
    )
    return report.inverse()


def scalar_series_ring(order: int, modulus: Optional[int] = None) -> TruncatedSeriesRing:
    """Series with scalar coefficients, realised as 1×1 matrices."""
    return TruncatedSeriesRing(MatrixRing(1, modulus), order)


def scalar_series(space: TruncatedSeriesRing, coefficients: Sequence[object]) -> Elem:
    return space.series([Matrix.from_rows([[c]], modulus=space.base.modulus) for c in coefficients])  # type: ignore[attr-defined]
