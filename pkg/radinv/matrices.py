"""Exact dense linear algebra over the rationals and prime fields.

Entries are :class:`fractions.Fraction` for rational matrices and plain
integers reduced modulo ``modulus`` for modular ones. Every routine is exact;
there is no tolerance anywhere.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from . import config
from .errors import BudgetError, InputError, NonexistenceError
from .rings import Elem, RingSpace

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, int]
ScalarLike = Union[Fraction, int, str]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _coerce(value: ScalarLike, modulus: Optional[int]) -> Scalar:
    q = Fraction(value)
    if modulus is None:
        return q
    try:
        return q.numerator * pow(q.denominator, -1, modulus) % modulus
    except ValueError as exc:
        raise InputError(f"{value} has no meaning modulo {modulus}") from exc


def _zero(modulus: Optional[int]) -> Scalar:
    return Fraction(0) if modulus is None else 0


def _one(modulus: Optional[int]) -> Scalar:
    return Fraction(1) if modulus is None else 1 % modulus


def _inv(value: Scalar, modulus: Optional[int]) -> Scalar:
    if modulus is None:
        return 1 / Fraction(value)
    return pow(int(value), -1, modulus)


def _format(value: Scalar) -> str:
    return str(value)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix with an explicit shape.

    ``modulus`` is ``None`` for rational entries, otherwise entries live in
    the integers modulo ``modulus``.
    """

    rows: int
    cols: int
    data: Tuple[Tuple[Scalar, ...], ...]
    modulus: Optional[int] = None

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise InputError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise InputError(f"entries do not match the declared shape {self.rows}x{self.cols}")
        if self.modulus is not None and self.modulus < 2:
            raise InputError("modulus must be at least 2")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[ScalarLike]],
        modulus: Optional[int] = None,
        cols: Optional[int] = None,
    ) -> "Matrix":
        data = tuple(tuple(_coerce(v, modulus) for v in row) for row in rows)
        width = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), width, data, modulus)

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: Optional[int] = None) -> "Matrix":
        z = _zero(modulus)
        return cls(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)), modulus)

    @classmethod
    def identity(cls, n: int, modulus: Optional[int] = None) -> "Matrix":
        z, o = _zero(modulus), _one(modulus)
        return cls(n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), modulus)

    @classmethod
    def diag(cls, *values: ScalarLike, modulus: Optional[int] = None) -> "Matrix":
        n = len(values)
        return cls.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)], modulus=modulus, cols=n
        )

    # -- basic accessors --------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.data[i][j]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.data for v in row)

    def column(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, tuple((row[j],) for row in self.data), self.modulus)

    def select_columns(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(indices), tuple(tuple(row[j] for j in indices) for row in self.data), self.modulus)

    def select_rows(self, indices: Sequence[int]) -> "Matrix":
        return Matrix(len(indices), self.cols, tuple(self.data[i] for i in indices), self.modulus)

    @property
    def T(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(tuple(self.data[i][j] for i in range(self.rows)) for j in range(self.cols)),
            self.modulus,
        )

    def pad(self, rows: int, cols: int) -> "Matrix":
        """Embed into the top-left corner of a larger zero matrix."""
        if rows < self.rows or cols < self.cols:
            raise InputError("padding cannot shrink a matrix")
        z = _zero(self.modulus)
        data = [list(row) + [z] * (cols - self.cols) for row in self.data]
        data.extend([z] * cols for _ in range(rows - self.rows))
        return Matrix(rows, cols, tuple(tuple(row) for row in data), self.modulus)

    def crop(self, rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, tuple(tuple(row[:cols]) for row in self.data[:rows]), self.modulus)

    @staticmethod
    def hstack(left: "Matrix", right: "Matrix") -> "Matrix":
        if left.rows != right.rows:
            raise InputError("hstack needs equal row counts")
        left._check_domain(right)
        return Matrix(
            left.rows,
            left.cols + right.cols,
            tuple(a + b for a, b in zip(left.data, right.data)),
            left.modulus,
        )

    @staticmethod
    def vstack(top: "Matrix", bottom: "Matrix") -> "Matrix":
        if top.cols != bottom.cols:
            raise InputError("vstack needs equal column counts")
        top._check_domain(bottom)
        return Matrix(top.rows + bottom.rows, top.cols, top.data + bottom.data, top.modulus)

    # -- arithmetic -------------------------------------------------------
    def _check_domain(self, other: "Matrix") -> None:
        if self.modulus != other.modulus:
            raise InputError("cannot mix rational and modular matrices (or different moduli)")

    def _reduce(self, value: Scalar) -> Scalar:
        return value if self.modulus is None else value % self.modulus

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_domain(other)
        if self.shape != other.shape:
            raise InputError(f"shape mismatch in addition: {self.shape} vs {other.shape}")
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(self._reduce(a + b) for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)),
            self.modulus,
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(tuple(self._reduce(-a) for a in row) for row in self.data), self.modulus)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_domain(other)
        if self.cols != other.rows:
            raise InputError(f"shape mismatch in product: {self.shape} @ {other.shape}")
        columns = list(zip(*other.data)) if other.rows else [() for _ in range(other.cols)]
        z = _zero(self.modulus)
        return Matrix(
            self.rows,
            other.cols,
            tuple(
                tuple(self._reduce(sum((a * b for a, b in zip(row, col)), z)) for col in columns)
                for row in self.data
            ),
            self.modulus,
        )

    def __mul__(self, scalar: ScalarLike) -> "Matrix":
        if isinstance(scalar, Matrix):
            raise TypeError("use @ for matrix products")
        s = _coerce(scalar, self.modulus)
        return Matrix(self.rows, self.cols, tuple(tuple(self._reduce(a * s) for a in row) for row in self.data), self.modulus)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(_format(v) for v in row) + "]" for row in self.data) + "]"

    def to_lists(self) -> List[List[str]]:
        return [[_format(v) for v in row] for row in self.data]


# ---------------------------------------------------------------------------
# Row reduction and solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RrefResult:
    """Reduced row echelon form with the transform that produced it."""

    reduced: Matrix
    pivots: Tuple[int, ...]
    rank: int
    transform: Matrix


@dataclass(frozen=True)
class FullRankFactorization:
    """A = G·H with G of full column rank and H of full row rank."""

    G: Matrix
    H: Matrix
    rank: int


@dataclass(frozen=True)
class DrazinResult:
    inverse: Matrix
    index: int


@dataclass(frozen=True)
class FactorWitness:
    """Witnesses for Y ∈ B·R ∩ R·C.

    ``r`` satisfies Y = B·r ("left" side, B multiplies on the left) and ``s``
    satisfies Y = s·C ("right" side). A missing witness is ``None``.
    """

    r: Optional[Matrix]
    s: Optional[Matrix]

    @property
    def failures(self) -> Tuple[str, ...]:
        sides = []
        if self.r is None:
            sides.append("left")
        if self.s is None:
            sides.append("right")
        return tuple(sides)

    @property
    def ok(self) -> bool:
        return not self.failures


def _require_field(A: Matrix) -> None:
    if A.modulus is not None and not _is_prime(A.modulus):
        raise InputError(f"row reduction needs a field; modulus {A.modulus} is composite")


def rref(A: Matrix) -> RrefResult:
    """Gauss-Jordan elimination; ``transform @ A == reduced``."""
    _require_field(A)
    m, n, mod = A.rows, A.cols, A.modulus
    reduce = (lambda v: v) if mod is None else (lambda v: v % mod)
    rows = [list(r) for r in A.data]
    trans = [list(r) for r in Matrix.identity(m, mod).data]
    pivots: List[int] = []
    pivot_row = 0
    for col in range(n):
        if pivot_row == m:
            break
        found = next((i for i in range(pivot_row, m) if rows[i][col] != 0), None)
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        trans[pivot_row], trans[found] = trans[found], trans[pivot_row]
        inv = _inv(rows[pivot_row][col], mod)
        rows[pivot_row] = [reduce(v * inv) for v in rows[pivot_row]]
        trans[pivot_row] = [reduce(v * inv) for v in trans[pivot_row]]
        for i in range(m):
            factor = rows[i][col]
            if i == pivot_row or factor == 0:
                continue
            rows[i] = [reduce(a - factor * b) for a, b in zip(rows[i], rows[pivot_row])]
            trans[i] = [reduce(a - factor * b) for a, b in zip(trans[i], trans[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    reduced = Matrix(m, n, tuple(tuple(r) for r in rows), mod)
    transform = Matrix(m, m, tuple(tuple(r) for r in trans), mod)
    return RrefResult(reduced, tuple(pivots), len(pivots), transform)


def rank(A: Matrix) -> int:
    return rref(A).rank


def solve(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Return one X with A·X = B (free variables set to zero), or None."""
    if A.rows != B.rows:
        raise InputError(f"cannot solve {A.shape} X = {B.shape}")
    A._check_domain(B)
    result = rref(A)
    rhs = result.transform @ B
    for i in range(result.rank, A.rows):
        if any(v != 0 for v in rhs.data[i]):
            return None
    z = _zero(A.modulus)
    solution = [[z] * B.cols for _ in range(A.cols)]
    for i, col in enumerate(result.pivots):
        solution[col] = list(rhs.data[i])
    return Matrix(A.cols, B.cols, tuple(tuple(r) for r in solution), A.modulus)


def left_solve(C: Matrix, Y: Matrix) -> Optional[Matrix]:
    """Return one S with S·C = Y, or None."""
    transposed = solve(C.T, Y.T)
    return None if transposed is None else transposed.T


def inverse(A: Matrix) -> Matrix:
    if not A.is_square:
        raise InputError(f"only square matrices are invertible, got {A.shape}")
    result = rref(A)
    if result.rank != A.rows:
        raise NonexistenceError("matrix is singular", residual=A, details={"rank": result.rank})
    return result.transform


def is_invertible(A: Matrix) -> bool:
    return A.is_square and rank(A) == A.rows


def matrix_power(A: Matrix, k: int) -> Matrix:
    if not A.is_square:
        raise InputError("powers need a square matrix")
    if k < 0:
        raise InputError("negative matrix powers are not supported")
    result = Matrix.identity(A.rows, A.modulus)
    base = A
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


def nullspace_basis(A: Matrix) -> Matrix:
    """Columns spanning N(A), one per free variable."""
    result = rref(A)
    free = [j for j in range(A.cols) if j not in result.pivots]
    z, o = _zero(A.modulus), _one(A.modulus)
    columns = []
    for f in free:
        vec = [z] * A.cols
        vec[f] = o
        for i, p in enumerate(result.pivots):
            vec[p] = -result.reduced.data[i][f] if A.modulus is None else (-result.reduced.data[i][f]) % A.modulus
        columns.append(vec)
    if not columns:
        return Matrix.zeros(A.cols, 0, A.modulus)
    return Matrix.from_rows(columns, modulus=A.modulus).T


# ---------------------------------------------------------------------------
# Factorizations and generalized inverses
# ---------------------------------------------------------------------------


def full_rank_factorize(A: Matrix) -> FullRankFactorization:
    """Pivot columns of A times the nonzero rows of its RREF."""
    result = rref(A)
    G = A.select_columns(result.pivots)
    H = result.reduced.select_rows(range(result.rank))
    return FullRankFactorization(G, H, result.rank)


def _left_inverse(G: Matrix) -> Matrix:
    """Some L with L·G = I for G of full column rank."""
    result = rref(G)
    if result.rank != G.cols:
        raise InputError("left inverse needs full column rank")
    return result.transform.select_rows(range(result.rank))


def _right_inverse(H: Matrix) -> Matrix:
    return _left_inverse(H.T).T


def mp_inverse(A: Matrix) -> Matrix:
    """Moore-Penrose inverse H^T (H H^T)^{-1} (G^T G)^{-1} G^T with transpose as involution."""
    frf = full_rank_factorize(A)
    G, H = frf.G, frf.H
    try:
        return H.T @ inverse(H @ H.T) @ inverse(G.T @ G) @ G.T
    except NonexistenceError as exc:
        raise NonexistenceError(
            "Moore-Penrose inverse does not exist for the transpose involution", residual=exc.residual
        ) from exc


def _enumerate_matrices(rows: int, cols: int, modulus: int) -> Iterator[Matrix]:
    total = modulus ** (rows * cols)
    if total > config.RING_BUDGET:
        raise BudgetError(f"{total} candidate {rows}x{cols} matrices mod {modulus} exceed the budget")
    for flat in itertools.product(range(modulus), repeat=rows * cols):
        yield Matrix(rows, cols, tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows)), modulus)


def reflexive_inverse(A: Matrix) -> Matrix:
    """A canonical {1,2}-inverse.

    Over the rationals this is the Moore-Penrose inverse. Over a prime field it
    is H_R·G_L built from the full rank factorization. Over a composite modulus
    the candidates are enumerated.
    """
    if A.modulus is None:
        return mp_inverse(A)
    if _is_prime(A.modulus):
        frf = full_rank_factorize(A)
        return _right_inverse(frf.H) @ _left_inverse(frf.G)
    for X in _enumerate_matrices(A.cols, A.rows, A.modulus):
        if A @ X @ A == A and X @ A @ X == X:
            return X
    raise NonexistenceError(f"no reflexive inverse modulo {A.modulus}: the element is not regular", residual=A)


def one_inverse(A: Matrix) -> Matrix:
    """A {1}-inverse; the canonical reflexive inverse is one."""
    if A.modulus is not None and not _is_prime(A.modulus):
        for X in _enumerate_matrices(A.cols, A.rows, A.modulus):
            if A @ X @ A == A:
                return X
        raise NonexistenceError(f"no {{1}}-inverse modulo {A.modulus}: the element is not regular", residual=A)
    return reflexive_inverse(A)


def group_inverse(A: Matrix) -> Matrix:
    """A^# = G (HG)^{-2} H; exists iff HG is invertible."""
    if not A.is_square:
        raise InputError(f"group inverse needs a square matrix, got {A.shape}")
    frf = full_rank_factorize(A)
    HG = frf.H @ frf.G
    if rank(HG) != frf.rank:
        raise NonexistenceError("group inverse does not exist: HG is singular", residual=HG, details={"det_HG": 0})
    Z = inverse(HG)
    return frf.G @ Z @ Z @ frf.H


def core_inverse(A: Matrix) -> Matrix:
    """G (HG)^{-1} (G^T G)^{-1} G^T; exists iff the group inverse does."""
    if not A.is_square:
        raise InputError(f"core inverse needs a square matrix, got {A.shape}")
    frf = full_rank_factorize(A)
    HG = frf.H @ frf.G
    if rank(HG) != frf.rank:
        raise NonexistenceError("core inverse does not exist: HG is singular", residual=HG, details={"det_HG": 0})
    return frf.G @ inverse(HG) @ inverse(frf.G.T @ frf.G) @ frf.G.T


def drazin_index(A: Matrix) -> int:
    """Least k with rank(A^k) = rank(A^{k+1})."""
    if not A.is_square:
        raise InputError("Drazin index needs a square matrix")
    power = Matrix.identity(A.rows, A.modulus)
    current = A.rows
    for k in range(A.rows + 1):
        nxt = power @ A
        next_rank = rank(nxt)
        if next_rank == current:
            return k
        power, current = nxt, next_rank
    raise AssertionError("rank sequence failed to stabilise")  # pragma: no cover


def drazin_inverse(A: Matrix) -> DrazinResult:
    """A^D = A^k (A^{2k+1})^# A^k with k the Drazin index."""
    k = drazin_index(A)
    Ak = matrix_power(A, k)
    core = group_inverse(matrix_power(A, 2 * k + 1))
    return DrazinResult(Ak @ core @ Ak, k)


def bc_inverse(A: Matrix, B: Matrix, C: Matrix) -> Matrix:
    """The (B,C)-inverse B (CAB)^- C; exists iff rank(CAB) = rank(B) = rank(C)."""
    if C.cols != A.rows or A.cols != B.rows:
        raise InputError(f"shapes do not compose: C {C.shape}, A {A.shape}, B {B.shape}")
    if A.modulus is not None and not _is_prime(A.modulus):
        raise InputError(
            f"the rank criterion needs a field; modulus {A.modulus} is composite, "
            f"use MatrixRing(n, {A.modulus}).bc_inverse for the brute-force search"
        )
    CAB = C @ A @ B
    ranks = {"rank_CAB": rank(CAB), "rank_B": rank(B), "rank_C": rank(C)}
    if not ranks["rank_CAB"] == ranks["rank_B"] == ranks["rank_C"]:
        raise NonexistenceError("(B,C)-inverse does not exist: rank condition fails", details=ranks)
    return B @ one_inverse(CAB) @ C


def factor_through(Y: Matrix, B: Matrix, C: Matrix) -> FactorWitness:
    """Find R, S with Y = B·R and Y = S·C."""
    if B.rows != Y.rows or C.cols != Y.cols:
        raise InputError(f"shapes do not compose: Y {Y.shape}, B {B.shape}, C {C.shape}")
    return FactorWitness(r=solve(B, Y), s=left_solve(C, Y))


def group_invertible_reflexive_inverse(A: Matrix) -> Matrix:
    """A reflexive inverse of the square matrix A that is itself group invertible.

    Right inverses of H are H_R = H0 + K·W with K spanning N(H). X = H_R·G_L is
    group invertible iff G_L·H_R is invertible, a nonzero polynomial condition
    of degree r in W, so a grid with r+1 values per entry contains a solution.
    """
    if not A.is_square:
        raise InputError("special-clean inverses need a square matrix")
    frf = full_rank_factorize(A)
    r, n = frf.rank, A.rows
    if r == 0:
        return Matrix.zeros(n, n, A.modulus)
    G_L = _left_inverse(frf.G)
    H0 = _right_inverse(frf.H)
    K = nullspace_basis(frf.H)
    grid = range(r + 1) if A.modulus is None else range(A.modulus)
    cells = K.cols * r
    for flat in itertools.product(grid, repeat=cells):
        W = Matrix.from_rows([flat[i * r:(i + 1) * r] for i in range(K.cols)], modulus=A.modulus, cols=r)
        H_R = H0 + K @ W if K.cols else H0
        if rank(G_L @ H_R) == r:
            return H_R @ G_L
    raise NonexistenceError("no group invertible reflexive inverse found")


# ---------------------------------------------------------------------------
# Ring space of square matrices
# ---------------------------------------------------------------------------


class MatrixRing(RingSpace):
    """Square n×n matrices over the rationals or the integers modulo ``modulus``."""

    def __init__(self, n: int, modulus: Optional[int] = None) -> None:
        field = "Q" if modulus is None else f"Z{modulus}"
        super().__init__(f"M{n}({field})")
        self.n = n
        self.modulus = modulus
        self.is_finite = modulus is not None
        self._zero = Matrix.zeros(n, n, modulus)
        self._one = Matrix.identity(n, modulus)

    @property
    def key(self) -> Tuple[object, ...]:
        return ("MatrixRing", self.n, self.modulus)

    @property
    def _field(self) -> bool:
        return self.modulus is None or _is_prime(self.modulus)

    def add_values(self, x: Matrix, y: Matrix) -> Matrix:  # type: ignore[override]
        return x + y

    def mul_values(self, x: Matrix, y: Matrix) -> Matrix:  # type: ignore[override]
        return x @ y

    def neg_value(self, x: Matrix) -> Matrix:  # type: ignore[override]
        return -x

    def zero_value(self) -> Matrix:
        return self._zero

    def one_value(self) -> Matrix:
        return self._one

    def format_value(self, x: Matrix) -> str:  # type: ignore[override]
        return str(x)

    def values(self) -> Iterator[Matrix]:
        self._require_finite("values")
        return _enumerate_matrices(self.n, self.n, self.modulus)  # type: ignore[arg-type]

    @property
    def size(self) -> int:
        self._require_finite("size")
        return self.modulus ** (self.n * self.n)  # type: ignore[operator]

    @property
    def has_involution(self) -> bool:
        return True

    def star(self, x: Elem) -> Elem:
        return self.elem(x.value.T)

    def is_radical(self, x: Elem) -> bool:
        if self._field:
            return x.value.is_zero()
        return super().is_radical(x)

    @property
    def nilpotency_bound(self) -> int:
        if self.modulus is None:
            return self.n
        return self.n * self.modulus.bit_length()

    def right_witness(self, y: Elem, b: Elem) -> Optional[Elem]:
        if not self._field:
            return super().right_witness(y, b)
        r = solve(b.value, y.value)
        return None if r is None else self.elem(r)

    def left_witness(self, y: Elem, c: Elem) -> Optional[Elem]:
        if not self._field:
            return super().left_witness(y, c)
        s = left_solve(c.value, y.value)
        return None if s is None else self.elem(s)

    def unit_inverse(self, x: Elem) -> Optional[Elem]:
        if not self._field:
            return super().unit_inverse(x)
        return self.elem(inverse(x.value)) if is_invertible(x.value) else None

    def reflexive_inverse(self, x: Elem) -> Optional[Elem]:
        try:
            return self.elem(reflexive_inverse(x.value))
        except NonexistenceError:
            return None

    def bc_inverse(self, a: Elem, b: Elem, c: Elem) -> Optional[Elem]:
        if not self._field:
            return super().bc_inverse(a, b, c)
        try:
            return self.elem(bc_inverse(a.value, b.value, c.value))
        except NonexistenceError:
            return None

    def drazin(self, a: Elem) -> Optional[Tuple[Elem, int]]:
        if not self._field:
            return super().drazin(a)
        result = drazin_inverse(a.value)
        return self.elem(result.inverse), result.index
