"""Upper triangular 2×2 integer matrices, T2(Z).

The ring is infinite, so nothing here enumerates it. Membership witnesses come
from the shape of triangular products and extended gcd, units are the
matrices with diagonal entries ±1, and (b,c)-inverses are computed over the
rationals and accepted only when they are integral, triangular and witnessed
inside T2(Z). Idempotents fall into four one-parameter families, which makes
strongly clean decompositions decidable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from . import matrices as mx
from .errors import InputError, NonexistenceError
from .matrices import Matrix
from .perturb import CleanDecomposition
from .rings import Elem, RingSpace

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, s, t) with s·a + t·b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _exact_div(num: int, den: int) -> Optional[int]:
    if den == 0:
        return 0 if num == 0 else None
    q, rem = divmod(num, den)
    return q if rem == 0 else None


def _solve_linear(p: int, q: int, rhs: int) -> Optional[Tuple[int, int]]:
    """Integers (x, y) with p·x + q·y = rhs, or None."""
    g, s, t = extended_gcd(p, q)
    if g == 0:
        return (0, 0) if rhs == 0 else None
    if rhs % g:
        return None
    k = rhs // g
    return s * k, t * k


class T2Integers(RingSpace):
    """Values are triples (a, b, d) standing for [[a, b], [0, d]]."""

    def __init__(self) -> None:
        super().__init__("T2(Z)")

    def add_values(self, x: Triple, y: Triple) -> Triple:  # type: ignore[override]
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2])

    def mul_values(self, x: Triple, y: Triple) -> Triple:  # type: ignore[override]
        return (x[0] * y[0], x[0] * y[1] + x[1] * y[2], x[2] * y[2])

    def neg_value(self, x: Triple) -> Triple:  # type: ignore[override]
        return (-x[0], -x[1], -x[2])

    def zero_value(self) -> Triple:
        return (0, 0, 0)

    def one_value(self) -> Triple:
        return (1, 0, 1)

    def format_value(self, x: Triple) -> str:  # type: ignore[override]
        return f"[[{x[0]}, {x[1]}], [0, {x[2]}]]"

    def matrix(self, a: int, b: int, d: int) -> Elem:
        return self.elem((a, b, d))

    def from_matrix(self, M: Matrix) -> Elem:
        if M.shape != (2, 2) or M[1, 0] != 0 or any(v.denominator != 1 for row in M.data for v in row):
            raise InputError(f"{M} is not an integral upper triangular matrix")
        return self.matrix(int(M[0, 0]), int(M[0, 1]), int(M[1, 1]))

    @staticmethod
    def to_matrix(x: Elem) -> Matrix:
        a, b, d = x.value
        return Matrix.from_rows([[a, b], [0, d]])

    # -- capabilities ----------------------------------------------------------
    def is_radical(self, x: Elem) -> bool:
        return x.value[0] == 0 and x.value[2] == 0

    @property
    def nilpotency_bound(self) -> int:
        return 2

    def right_witness(self, y: Elem, b: Elem) -> Optional[Elem]:
        """r with y = b·r: y1 = b1 r1, y2 = b1 r2 + b2 r3, y3 = b3 r3."""
        y1, y2, y3 = y.value
        b1, b2, b3 = b.value
        r1 = _exact_div(y1, b1)
        if r1 is None:
            return None
        if b3 != 0:
            r3 = _exact_div(y3, b3)
            if r3 is None:
                return None
            r2 = _exact_div(y2 - b2 * r3, b1)
            return None if r2 is None else self.matrix(r1, r2, r3)
        if y3 != 0:
            return None
        pair = _solve_linear(b1, b2, y2)
        return None if pair is None else self.matrix(r1, pair[0], pair[1])

    def left_witness(self, y: Elem, c: Elem) -> Optional[Elem]:
        """s with y = s·c: y1 = s1 c1, y2 = s1 c2 + s2 c3, y3 = s3 c3."""
        y1, y2, y3 = y.value
        c1, c2, c3 = c.value
        s3 = _exact_div(y3, c3)
        if s3 is None:
            return None
        if c1 != 0:
            s1 = _exact_div(y1, c1)
            if s1 is None:
                return None
            s2 = _exact_div(y2 - s1 * c2, c3)
            return None if s2 is None else self.matrix(s1, s2, s3)
        if y1 != 0:
            return None
        pair = _solve_linear(c2, c3, y2)
        return None if pair is None else self.matrix(pair[0], pair[1], s3)

    def unit_inverse(self, x: Elem) -> Optional[Elem]:
        a, b, d = x.value
        if abs(a) != 1 or abs(d) != 1:
            return None
        return self.matrix(a, -a * b * d, d)

    def bc_inverse(self, a: Elem, b: Elem, c: Elem) -> Optional[Elem]:
        try:
            X = mx.bc_inverse(self.to_matrix(a), self.to_matrix(b), self.to_matrix(c))
        except NonexistenceError:
            return None
        try:
            y = self.from_matrix(X)
        except InputError:
            logger.debug(f"rational (b,c)-inverse {X} is not in T2(Z)")
            return None
        if self.right_witness(y, b) is None or self.left_witness(y, c) is None:
            return None
        return y

    # -- idempotents and clean decompositions ------------------------------------
    def idempotent_families(self) -> Tuple[str, ...]:
        return ("zero", "one", "upper", "lower")

    def idempotent(self, family: str, x: int = 0) -> Elem:
        """The idempotents 0, 1, [[1, x], [0, 0]] and [[0, x], [0, 1]]."""
        if family == "zero":
            return self.zero
        if family == "one":
            return self.one
        if family == "upper":
            return self.matrix(1, x, 0)
        if family == "lower":
            return self.matrix(0, x, 1)
        raise InputError(f"unknown idempotent family {family!r}")

    def idempotents(self, bound: int) -> Iterator[Elem]:
        yield self.zero
        yield self.one
        for x in range(-bound, bound + 1):
            yield self.matrix(1, x, 0)
            yield self.matrix(0, x, 1)


@dataclass(frozen=True)
class StructuredCleanResult:
    """Outcome of the structured clean search, with the reason per family."""

    decomposition: Optional[CleanDecomposition]
    notes: Tuple[str, ...]


def structured_clean_search(a: Elem, strongly: bool = True) -> StructuredCleanResult:
    """Search every idempotent family of T2(Z) for a (strongly) clean decomposition of ``a``.

    In the families [[1, x], [0, 0]] and [[0, x], [0, 1]] the unit condition
    fixes the diagonal and commuting with a = [[p, q], [0, r]] reduces to the
    linear equation x(p - r) = q (resp. x(r - p) = q), solved over Z.
    """
    space = a.space
    if not isinstance(space, T2Integers):
        raise InputError("structured clean search runs on T2(Z)")
    p, q, r = a.value
    notes: List[str] = []

    def accept(e: Elem) -> Optional[CleanDecomposition]:
        u = a - e
        if space.unit_inverse(u) is None:
            return None
        if strongly and e * a != a * e:
            return None
        decomposition = CleanDecomposition(e, u, strongly=strongly)
        decomposition.validate(a)
        return decomposition

    for family in ("zero", "one"):
        found = accept(space.idempotent(family))
        if found is not None:
            return StructuredCleanResult(found, tuple(notes))
        notes.append(f"{family}: a - e is not a unit" if family == "one" else "zero: a is not a unit")

    for family, diag_ok, slope in (
        ("upper", abs(p - 1) == 1 and abs(r) == 1, p - r),
        ("lower", abs(p) == 1 and abs(r - 1) == 1, r - p),
    ):
        if not diag_ok:
            notes.append(f"{family}: diagonal of a - e is not ±1")
            continue
        if not strongly:
            return StructuredCleanResult(accept(space.idempotent(family, 0)), tuple(notes))
        x = _exact_div(q, slope)
        if x is None:
            notes.append(f"{family}: x·{slope} = {q} has no integer solution")
            continue
        found = accept(space.idempotent(family, x))
        if found is not None:
            return StructuredCleanResult(found, tuple(notes))
        notes.append(f"{family}: x = {x} does not give a decomposition")
    return StructuredCleanResult(None, tuple(notes))
