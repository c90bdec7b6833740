"""Dual matrices A + εA0 with ε² = 0 and their generalized inverses.

Every inverse is computed twice: once through the ring-agnostic perturbation
engine in :mod:`radinv.perturb` with ``j = εA0``, and once through explicit
full-rank-factorization formulas. The two paths must agree entrywise.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

from . import config
from . import matrices as mx
from .core import InverseKind, VerdictReport, verify_inverse
from .errors import BudgetError, EquivalenceError, InputError, NonexistenceError
from .matrices import Matrix
from .perturb import CleanDecomposition, PerturbationInput, drazin_perturb, mgc_perturb, theorem33
from .rings import Elem, RingSpace

logger = logging.getLogger(__name__)

KINDS = ("mp", "group", "core", "drazin", "bc", "along", "outer")


@dataclass(frozen=True)
class DualMatrix:
    """A + εA0; ``real`` is A and ``dual`` is A0."""

    real: Matrix
    dual: Matrix

    def __post_init__(self) -> None:
        if self.real.shape != self.dual.shape:
            raise InputError(f"real part {self.real.shape} and dual part {self.dual.shape} differ in shape")
        if self.real.modulus != self.dual.modulus:
            raise InputError("real and dual parts use different scalars")

    @classmethod
    def from_real(cls, A: Matrix) -> "DualMatrix":
        return cls(A, Matrix.zeros(A.rows, A.cols, A.modulus))

    @classmethod
    def epsilon(cls, A0: Matrix) -> "DualMatrix":
        return cls(Matrix.zeros(A0.rows, A0.cols, A0.modulus), A0)

    @classmethod
    def identity(cls, n: int, modulus: Optional[int] = None) -> "DualMatrix":
        return cls.from_real(Matrix.identity(n, modulus))

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: Optional[int] = None) -> "DualMatrix":
        return cls.from_real(Matrix.zeros(rows, cols, modulus))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.real.shape

    @property
    def modulus(self) -> Optional[int]:
        return self.real.modulus

    @property
    def is_square(self) -> bool:
        return self.real.is_square

    @property
    def T(self) -> "DualMatrix":
        return DualMatrix(self.real.T, self.dual.T)

    def is_zero(self) -> bool:
        return self.real.is_zero() and self.dual.is_zero()

    def __add__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.real + other.real, self.dual + other.dual)

    def __sub__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.real - other.real, self.dual - other.dual)

    def __neg__(self) -> "DualMatrix":
        return DualMatrix(-self.real, -self.dual)

    def __matmul__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.real @ other.real, self.dual @ other.real + self.real @ other.dual)

    def __mul__(self, scalar: object) -> "DualMatrix":
        return DualMatrix(self.real * scalar, self.dual * scalar)

    __rmul__ = __mul__

    def pad(self, rows: int, cols: int) -> "DualMatrix":
        return DualMatrix(self.real.pad(rows, cols), self.dual.pad(rows, cols))

    def crop(self, rows: int, cols: int) -> "DualMatrix":
        return DualMatrix(self.real.crop(rows, cols), self.dual.crop(rows, cols))

    def __str__(self) -> str:
        return f"{self.real} + ε{self.dual}"


def dual_mul(x: DualMatrix, y: DualMatrix) -> DualMatrix:
    """(A + εA0)(B + εB0) = AB + ε(A0B + AB0)."""
    return x @ y


def dual_add(x: DualMatrix, y: DualMatrix) -> DualMatrix:
    return x + y


def dual_transpose(x: DualMatrix) -> DualMatrix:
    return x.T


def dual_unit_inverse(M: DualMatrix) -> DualMatrix:
    """M^{-1} - εM^{-1}M0M^{-1}; exists iff the real part is invertible."""
    inv = mx.inverse(M.real)
    return DualMatrix(inv, -(inv @ M.dual @ inv))


def _block(A: DualMatrix) -> Matrix:
    top = Matrix.hstack(A.real, Matrix.zeros(A.real.rows, A.real.cols, A.modulus))
    return Matrix.vstack(top, Matrix.hstack(A.dual, A.real))


def dual_solve(A: DualMatrix, B: DualMatrix) -> Optional[DualMatrix]:
    """Solve Â X̂ = B̂ through the real block system [[A, 0], [A0, A]]."""
    if A.shape[0] != B.shape[0]:
        raise InputError(f"cannot solve {A.shape} X = {B.shape}")
    stacked = mx.solve(_block(A), Matrix.vstack(B.real, B.dual))
    if stacked is None:
        return None
    n = A.shape[1]
    top = stacked.select_rows(range(n))
    bottom = stacked.select_rows(range(n, 2 * n))
    return DualMatrix(top, bottom)


def dual_left_solve(C: DualMatrix, Y: DualMatrix) -> Optional[DualMatrix]:
    """Solve Ŝ Ĉ = Ŷ."""
    transposed = dual_solve(C.T, Y.T)
    return None if transposed is None else transposed.T


def dual_power(A: DualMatrix, s: int) -> DualMatrix:
    """Â^s = A^s + ε Σ A^i A0 A^{s-1-i}."""
    if not A.is_square:
        raise InputError("powers need a square dual matrix")
    if s < 0:
        raise InputError("negative powers are not supported")
    n, mod = A.shape[0], A.modulus
    powers = [Matrix.identity(n, mod)]
    for _ in range(s):
        powers.append(powers[-1] @ A.real)
    dual = Matrix.zeros(n, n, mod)
    for i in range(s):
        dual = dual + powers[i] @ A.dual @ powers[s - 1 - i]
    return DualMatrix(powers[s], dual)


# ---------------------------------------------------------------------------
# Regularity and the canonical split
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RegularityCertificate:
    regular: bool
    residual: Matrix
    a_plus: Matrix
    reflexive_inverse: Optional[DualMatrix] = None


def _check_reflexive(A: Matrix, X: Matrix, name: str) -> None:
    if X.shape != (A.cols, A.rows) or A @ X @ A != A or X @ A @ X != X:
        raise InputError(f"{name} is not a reflexive inverse of the real part")


def regularity_certificate(A: DualMatrix, a_plus: Optional[Matrix] = None) -> RegularityCertificate:
    """Â is regular iff (I - AA+)A0(I - A+A) = 0; then (I - εA+A0)A+ is reflexive."""
    if a_plus is None:
        a_plus = mx.reflexive_inverse(A.real)
    else:
        _check_reflexive(A.real, a_plus, "A+")
    m, n = A.shape
    left = Matrix.identity(m, A.modulus) - A.real @ a_plus
    right = Matrix.identity(n, A.modulus) - a_plus @ A.real
    residual = left @ A.dual @ right
    if not residual.is_zero():
        return RegularityCertificate(False, residual, a_plus)
    X = DualMatrix(a_plus, -(a_plus @ A.dual @ a_plus))
    if A @ X @ A != A or X @ A @ X != X:
        raise EquivalenceError("(I - εA+A0)A+ failed the reflexive equations")
    return RegularityCertificate(True, residual, a_plus, X)


@dataclass(frozen=True)
class RadicalSplit:
    """Â = (I + εA1) A (I + εA2)."""

    left: Matrix
    core: Matrix
    right: Matrix

    def compose(self) -> DualMatrix:
        m, n = self.core.shape
        mod = self.core.modulus
        return (
            DualMatrix(Matrix.identity(m, mod), self.left)
            @ DualMatrix.from_real(self.core)
            @ DualMatrix(Matrix.identity(n, mod), self.right)
        )


def radical_split(A: DualMatrix, a_plus: Optional[Matrix] = None) -> RadicalSplit:
    """Canonical A1 = (I - AA+)A0A+ and A2 = A+A0 for a regular Â."""
    cert = regularity_certificate(A, a_plus)
    if not cert.regular:
        raise NonexistenceError("dual matrix is not regular", residual=cert.residual)
    P = cert.a_plus
    m = A.shape[0]
    A1 = (Matrix.identity(m, A.modulus) - A.real @ P) @ A.dual @ P
    A2 = P @ A.dual
    if A1 @ A.real + A.real @ A2 != A.dual:
        raise EquivalenceError("radical split does not reproduce the dual part")
    return RadicalSplit(A1, A.real, A2)


def _dual_factors(A: DualMatrix) -> Tuple[DualMatrix, DualMatrix]:
    """Ĝ = (I + εA1)G and Ĥ = H(I + εA2), so that Â = ĜĤ."""
    split = radical_split(A)
    frf = mx.full_rank_factorize(A.real)
    G_hat = DualMatrix(frf.G, split.left @ frf.G)
    H_hat = DualMatrix(frf.H, frf.H @ split.right)
    return G_hat, H_hat


# ---------------------------------------------------------------------------
# Dual matrices as a ring space
# ---------------------------------------------------------------------------


class DualMatrixRing(RingSpace):
    """n×n dual matrices over the rationals or the integers modulo ``modulus``."""

    def __init__(self, n: int, modulus: Optional[int] = None) -> None:
        field = "Q" if modulus is None else f"Z{modulus}"
        super().__init__(f"D{n}({field})")
        self.n = n
        self.modulus = modulus
        self.is_finite = modulus is not None
        self._zero = DualMatrix.zeros(n, n, modulus)
        self._one = DualMatrix.identity(n, modulus)

    @property
    def key(self) -> Tuple[object, ...]:
        return ("DualMatrixRing", self.n, self.modulus)

    @property
    def _field(self) -> bool:
        return self.modulus is None or mx._is_prime(self.modulus)

    def add_values(self, x: DualMatrix, y: DualMatrix) -> DualMatrix:  # type: ignore[override]
        return x + y

    def mul_values(self, x: DualMatrix, y: DualMatrix) -> DualMatrix:  # type: ignore[override]
        return x @ y

    def neg_value(self, x: DualMatrix) -> DualMatrix:  # type: ignore[override]
        return -x

    def zero_value(self) -> DualMatrix:
        return self._zero

    def one_value(self) -> DualMatrix:
        return self._one

    def format_value(self, x: DualMatrix) -> str:  # type: ignore[override]
        return str(x)

    def real(self, A: Matrix) -> Elem:
        return self.elem(DualMatrix.from_real(A))

    def eps(self, A0: Matrix) -> Elem:
        return self.elem(DualMatrix.epsilon(A0))

    def values(self) -> Iterator[DualMatrix]:
        self._require_finite("values")
        cells = self.n * self.n
        if self.size > config.RING_BUDGET:
            raise BudgetError(f"{self.name} has {self.size} elements, above the budget")
        for flat in itertools.product(range(self.modulus), repeat=2 * cells):  # type: ignore[arg-type]
            rows = [flat[i * self.n:(i + 1) * self.n] for i in range(2 * self.n)]
            yield DualMatrix(
                Matrix.from_rows(rows[: self.n], modulus=self.modulus, cols=self.n),
                Matrix.from_rows(rows[self.n:], modulus=self.modulus, cols=self.n),
            )

    @property
    def size(self) -> int:
        self._require_finite("size")
        return self.modulus ** (2 * self.n * self.n)  # type: ignore[operator]

    @property
    def has_involution(self) -> bool:
        return True

    def star(self, x: Elem) -> Elem:
        return self.elem(x.value.T)

    def is_radical(self, x: Elem) -> bool:
        if self._field:
            return x.value.real.is_zero()
        return super().is_radical(x)

    @property
    def nilpotency_bound(self) -> int:
        if self._field:
            return 2
        return 2 * self.n * self.modulus.bit_length()  # type: ignore[union-attr]

    def right_witness(self, y: Elem, b: Elem) -> Optional[Elem]:
        if not self._field:
            return super().right_witness(y, b)
        r = dual_solve(b.value, y.value)
        return None if r is None else self.elem(r)

    def left_witness(self, y: Elem, c: Elem) -> Optional[Elem]:
        if not self._field:
            return super().left_witness(y, c)
        s = dual_left_solve(c.value, y.value)
        return None if s is None else self.elem(s)

    def unit_inverse(self, x: Elem) -> Optional[Elem]:
        if not self._field:
            return super().unit_inverse(x)
        try:
            return self.elem(dual_unit_inverse(x.value))
        except NonexistenceError:
            return None

    def reflexive_inverse(self, x: Elem) -> Optional[Elem]:
        if not self._field:
            return super().reflexive_inverse(x)
        cert = regularity_certificate(x.value)
        return None if cert.reflexive_inverse is None else self.elem(cert.reflexive_inverse)

    def bc_inverse(self, a: Elem, b: Elem, c: Elem) -> Optional[Elem]:
        if not self._field:
            return super().bc_inverse(a, b, c)
        try:
            return self.elem(dual_bc_inverse(a.value, b.value, c.value))
        except NonexistenceError:
            return None

    def drazin(self, a: Elem) -> Optional[Tuple[Elem, int]]:
        if not self._field:
            return super().drazin(a)
        cert = dual_generalized_inverse("drazin", a.value, closed_form=False)
        return self.elem(cert.witness), cert.index  # type: ignore[arg-type, return-value]


# ---------------------------------------------------------------------------
# Engine route
# ---------------------------------------------------------------------------


def _square_size(*shapes: Tuple[int, int]) -> int:
    return max(max(shape) for shape in shapes) or 1


def _as_reflexive(B: Matrix, candidate: Optional[Matrix]) -> Matrix:
    """Turn any {1}-inverse into a reflexive one (g B g)."""
    if candidate is None:
        return mx.reflexive_inverse(B)
    if candidate.shape != (B.cols, B.rows) or B @ candidate @ B != B:
        raise InputError("supplied inverse is not a {1}-inverse of the real part")
    return candidate @ B @ candidate


def dual_bc_inverse(
    A: DualMatrix,
    B: DualMatrix,
    C: DualMatrix,
    b_plus: Optional[Matrix] = None,
    c_plus: Optional[Matrix] = None,
) -> DualMatrix:
    """The (B̂,Ĉ)-inverse of Â through the perturbation engine.

    ``b_plus`` / ``c_plus`` may be any {1}-inverses of the real parts of B̂ and
    Ĉ; the verdict and the value do not depend on the choice.

    Raises:
        NonexistenceError: The real (B,C)-inverse is missing, or B̂ or Ĉ is
            not regular (the residual is attached).
    """
    (m, n), (n2, s), (t, m2) = A.shape, B.shape, C.shape
    if n2 != n or m2 != m:
        raise InputError(f"shapes do not compose: C {C.shape}, A {A.shape}, B {B.shape}")
    Y = mx.bc_inverse(A.real, B.real, C.real)
    bp = _as_reflexive(B.real, b_plus)
    cp = _as_reflexive(C.real, c_plus)

    N = _square_size(A.shape, B.shape, C.shape)
    space = DualMatrixRing(N, A.modulus)
    Ap, Bp, Cp = A.pad(N, N), B.pad(N, N), C.pad(N, N)
    inp = PerturbationInput(
        a=space.real(Ap.real),
        b=space.real(Bp.real),
        c=space.real(Cp.real),
        a_bc_inverse=space.real(Y.pad(N, N)),
        b_plus=space.real(bp.pad(N, N)),
        c_plus=space.real(cp.pad(N, N)),
        j_a=space.eps(Ap.dual),
        j_b=space.eps(Bp.dual),
        j_c=space.eps(Cp.dual),
    )
    report = theorem33(inp)
    if not report.exists:
        cond_b, cond_c = report.conditions
        if not cond_b.is_zero():
            raise NonexistenceError("B̂ is not regular", residual=cond_b.value.crop(n, s), details={"side": "b"})
        raise NonexistenceError("Ĉ is not regular", residual=cond_c.value.crop(t, m), details={"side": "c"})
    return report.perturbed_inverse.value.crop(n, m)  # type: ignore[union-attr]


def dual_drazin_index(A: DualMatrix) -> int:
    """Least t >= i(A) with Â^t regular; never above 2 i(A)."""
    k = mx.drazin_index(A.real)
    for t in range(k, 2 * k + 1):
        if regularity_certificate(dual_power(A, t)).regular:
            return t
    raise EquivalenceError(f"no regular power of the dual matrix up to exponent {2 * k}")


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def closed_form_along(A: DualMatrix, D: DualMatrix) -> DualMatrix:
    """Â^{||D̂} = (I + εD1) G Ẑ^{-1} H (I + εD2) with Ẑ = H(I + εD2)Â(I + εD1)G."""
    G_hat, H_hat = _dual_factors(D)
    Z = H_hat @ A @ G_hat
    try:
        Z_inv = dual_unit_inverse(Z)
    except NonexistenceError as exc:
        raise NonexistenceError("Ẑ is singular", residual=Z) from exc
    return G_hat @ Z_inv @ H_hat


def closed_form_mp(A: DualMatrix) -> DualMatrix:
    G_hat, H_hat = _dual_factors(A)
    return H_hat.T @ dual_unit_inverse(H_hat @ H_hat.T) @ dual_unit_inverse(G_hat.T @ G_hat) @ G_hat.T


def closed_form_group(A: DualMatrix) -> DualMatrix:
    G_hat, H_hat = _dual_factors(A)
    try:
        Z_inv = dual_unit_inverse(H_hat @ G_hat)
    except NonexistenceError as exc:
        raise NonexistenceError("Ẑ = Ĥ Ĝ is singular", residual=H_hat @ G_hat) from exc
    return G_hat @ Z_inv @ Z_inv @ H_hat


def closed_form_core(A: DualMatrix) -> DualMatrix:
    G_hat, H_hat = _dual_factors(A)
    try:
        Z_inv = dual_unit_inverse(H_hat @ G_hat)
    except NonexistenceError as exc:
        raise NonexistenceError("Ẑ = Ĥ Ĝ is singular", residual=H_hat @ G_hat) from exc
    return G_hat @ Z_inv @ dual_unit_inverse(G_hat.T @ G_hat) @ G_hat.T


def closed_form_bc(
    A: DualMatrix,
    B: DualMatrix,
    C: DualMatrix,
    b_plus: Optional[Matrix] = None,
    c_plus: Optional[Matrix] = None,
) -> DualMatrix:
    """X - εXA0X + ε(I - XA)B0B+X + εXC+C0(I - AX) with X = A^{||(B,C)}.

    The middle term is asserted to equal (I - XA)B1X for the canonical split
    B1 of B̂.
    """
    X = mx.bc_inverse(A.real, B.real, C.real)
    bp = _as_reflexive(B.real, b_plus)
    cp = _as_reflexive(C.real, c_plus)
    for name, M, P in (("B̂", B, bp), ("Ĉ", C, cp)):
        cert = regularity_certificate(M, P)
        if not cert.regular:
            raise NonexistenceError(f"{name} is not regular", residual=cert.residual)
    m, n = A.shape
    mod = A.modulus
    I_n, I_m = Matrix.identity(n, mod), Matrix.identity(m, mod)
    left_term = (I_n - X @ A.real) @ B.dual @ bp @ X
    B1 = radical_split(B).left
    if left_term != (I_n - X @ A.real) @ B1 @ X:
        raise EquivalenceError("(I - XA)B0B+X differs from (I - XA)B1X")
    right_term = X @ cp @ C.dual @ (I_m - A.real @ X)
    return DualMatrix(X, -(X @ A.dual @ X) + left_term + right_term)


def closed_form_drazin(A: DualMatrix) -> DualMatrix:
    return closed_form_along(A, dual_power(A, dual_drazin_index(A)))


def closed_form_inverse(
    kind: str,
    A: DualMatrix,
    B: Optional[DualMatrix] = None,
    C: Optional[DualMatrix] = None,
    D: Optional[DualMatrix] = None,
) -> DualMatrix:
    """Dispatch to the closed form for ``kind``; non-square inputs are padded for square-only kinds."""
    if kind == "mp":
        return closed_form_mp(A)
    if kind in ("group", "core", "drazin"):
        m, n = A.shape
        N = max(m, n)
        fn = {"group": closed_form_group, "core": closed_form_core, "drazin": closed_form_drazin}[kind]
        return fn(A.pad(N, N)).crop(n, m)
    if kind == "along":
        D = D if D is not None else B
        if D is None:
            raise InputError("inverse along D̂ needs D̂")
        return closed_form_along(A, D)
    if kind in ("bc", "outer"):
        if B is None or C is None:
            raise InputError(f"{kind} inverse needs both B̂ and Ĉ")
        return closed_form_bc(A, B, C)
    raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualInverseCertificate:
    """Existence verdict for one dual generalized inverse.

    ``witness`` is set when the inverse exists; otherwise ``reason`` and
    ``residual`` certify the negative outcome. ``padding`` is the square size
    the inputs were embedded into; for square-only kinds ``padded_witness``
    is the inverse of the padded input, which ``witness`` crops. ``a_plus``,
    ``b_plus`` and ``c_plus`` are the reflexive-inverse overrides the
    residual was computed with.
    """

    kind: str
    input: DualMatrix
    b: Optional[DualMatrix] = None
    c: Optional[DualMatrix] = None
    witness: Optional[DualMatrix] = None
    reason: Optional[str] = None
    residual: Optional[DualMatrix] = None
    engine_path: Optional[DualMatrix] = None
    closed_form_path: Optional[DualMatrix] = None
    report: Optional[VerdictReport] = None
    padding: Optional[int] = None
    padded_witness: Optional[DualMatrix] = None
    index: Optional[int] = None
    l: Optional[int] = None
    a_plus: Optional[Matrix] = None
    b_plus: Optional[Matrix] = None
    c_plus: Optional[Matrix] = None

    @property
    def exists(self) -> bool:
        return self.witness is not None


def _classical(kind: str, A: Matrix, B: Optional[Matrix], C: Optional[Matrix]) -> Matrix:
    if kind == "mp":
        return mx.mp_inverse(A)
    if kind == "group":
        return mx.group_inverse(A)
    if kind == "core":
        return mx.core_inverse(A)
    if kind == "drazin":
        return mx.drazin_inverse(A).inverse
    return mx.bc_inverse(A, B, C)  # type: ignore[arg-type]


def _as_dual_residual(residual: object, shape: Tuple[int, int]) -> Optional[DualMatrix]:
    if isinstance(residual, Elem):
        residual = residual.value
    if isinstance(residual, DualMatrix):
        return residual.crop(*shape) if residual.shape != shape else residual
    if isinstance(residual, Matrix):
        return DualMatrix.epsilon(residual) if residual.shape == shape else DualMatrix.from_real(residual)
    return None


def _engine(
    kind: str,
    A: DualMatrix,
    B: Optional[DualMatrix],
    C: Optional[DualMatrix],
    l: Optional[int],
    a_plus: Optional[Matrix],
    b_plus: Optional[Matrix],
    c_plus: Optional[Matrix],
) -> Tuple[DualMatrix, Optional[int]]:
    """Engine witness; mp, group, core and Drazin come back at the padded square size."""
    m, n = A.shape
    if kind == "outer":
        return outer_inverse_prescribed(A, B, C).witness, None  # type: ignore[arg-type]
    if kind == "bc":
        return dual_bc_inverse(A, B, C, b_plus, c_plus), None  # type: ignore[arg-type]
    N = max(m, n)
    space = DualMatrixRing(N, A.modulus)
    Ap = A.pad(N, N)
    a = space.real(Ap.real)
    j_a = space.eps(Ap.dual)
    if kind == "drazin":
        k = mx.drazin_index(Ap.real)
        a_d = space.real(mx.drazin_inverse(Ap.real).inverse)
        start = k if l is None else l
        for exponent in range(start, max(start, 2 * k + 1) + 1):
            report = drazin_perturb(a, j_a, exponent, a_drazin=(a_d, k))
            if report.result is not None:
                return report.result.value, exponent
        raise NonexistenceError(f"Drazin condition fails for every exponent from {start}")
    classical = _classical(kind, Ap.real, None, None)
    plus = _as_reflexive(Ap.real, a_plus.pad(N, N) if a_plus is not None else None)
    result = mgc_perturb(kind, a, space.real(plus), j_a, involution=space.star, a_inverse=space.real(classical))
    return result.value, None


def verify_dual_inverse(
    kind: str,
    A: DualMatrix,
    X: DualMatrix,
    B: Optional[DualMatrix] = None,
    C: Optional[DualMatrix] = None,
    index: Optional[int] = None,
) -> Tuple[VerdictReport, int]:
    """Run verify_inverse for a dual certificate after padding everything to one square size."""
    shapes = [A.shape] + [M.shape for M in (B, C) if M is not None]
    N = _square_size(*shapes)
    space = DualMatrixRing(N, A.modulus)
    a = space.elem(A.pad(N, N))
    x = space.elem(X.pad(N, N))
    if kind in ("bc", "outer"):
        kind_obj = InverseKind.bc(space.elem(B.pad(N, N)), space.elem(C.pad(N, N)))  # type: ignore[union-attr]
    elif kind == "drazin":
        kind_obj = InverseKind.drazin(index or 0)
    else:
        kind_obj = InverseKind({"mp": "moore-penrose", "group": "group", "core": "core"}[kind])
    return verify_inverse(kind_obj, a, x, space.star), N


def dual_generalized_inverse(
    kind: str,
    A: DualMatrix,
    B: Optional[DualMatrix] = None,
    C: Optional[DualMatrix] = None,
    D: Optional[DualMatrix] = None,
    l: Optional[int] = None,
    a_plus: Optional[Matrix] = None,
    b_plus: Optional[Matrix] = None,
    c_plus: Optional[Matrix] = None,
    closed_form: bool = True,
) -> DualInverseCertificate:
    """Decide and compute a generalized inverse of Â, certified.

    Args:
        kind: One of ``mp``, ``group``, ``core``, ``drazin``, ``bc``,
            ``along`` and ``outer``.
        A: The dual matrix Â.
        B, C: Prescriptions for ``bc`` and ``outer``.
        D: Prescription for ``along`` (falls back to ``B``).
        l: Starting exponent for the Drazin route.
        a_plus, b_plus, c_plus: Overrides for the real reflexive inverses.
        closed_form: Also evaluate the closed form and require equality.

    Returns:
        A :class:`DualInverseCertificate`; nonexistence is recorded in it
        rather than raised.
    """
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    closed_kind = kind
    if kind == "along":
        D = D if D is not None else B
        if D is None:
            raise InputError("inverse along D̂ needs D̂")
        kind, B, C = "bc", D, D
    if kind in ("bc", "outer") and (B is None or C is None):
        raise InputError(f"{kind} inverse needs both B̂ and Ĉ")
    m, n = A.shape
    N = max(m, n)
    square_only = kind in ("group", "core", "drazin")
    padding = N if (square_only or kind == "mp") and m != n else None
    keep_padded = square_only and m != n
    result_shape = (n, m)
    overrides = {"a_plus": a_plus, "b_plus": b_plus, "c_plus": c_plus}

    try:
        full, exponent = _engine(kind, A, B, C, l, a_plus, b_plus, c_plus)
    except NonexistenceError as exc:
        logger.debug(f"{kind} inverse does not exist: {exc.reason}")
        residual_shape = A.shape
        if exc.details.get("side") == "b" and B is not None:
            residual_shape = B.shape
        elif exc.details.get("side") == "c" and C is not None:
            residual_shape = C.shape
        if closed_form:
            try:
                if keep_padded:
                    closed_form_inverse(closed_kind, A.pad(N, N))
                else:
                    closed_form_inverse(closed_kind, A, B, C, D)
            except NonexistenceError:
                pass
            else:
                raise EquivalenceError(f"closed form finds a {kind} inverse the engine rules out")
        return DualInverseCertificate(
            kind,
            A,
            B,
            C,
            reason=f"{exc.reason} {exc.details}" if exc.details else exc.reason,
            residual=_as_dual_residual(exc.residual, residual_shape),
            padding=padding,
            **overrides,
        )

    witness = full if full.shape == result_shape else full.crop(n, m)
    padded = full if keep_padded else None
    index = dual_drazin_index(A.pad(N, N)) if kind == "drazin" else None
    if witness.shape != result_shape or (padded is not None and padded.shape != (N, N)):
        raise EquivalenceError(f"engine returned shape {full.shape}, expected {result_shape}")
    classical = _classical(kind, A.real, B.real if B else None, C.real if C else None) if not keep_padded else None
    if classical is not None and witness.real != classical:
        raise EquivalenceError(f"real part of the dual {kind} inverse is not the classical one")

    closed = None
    if closed_form:
        try:
            if keep_padded:
                closed_full = closed_form_inverse(closed_kind, A.pad(N, N))
            else:
                closed_full = closed_form_inverse(closed_kind, A, B, C, D)
        except NonexistenceError as exc:
            raise EquivalenceError(f"closed form rules out a {kind} inverse the engine found: {exc.reason}") from exc
        if closed_full != (padded if keep_padded else witness):
            raise EquivalenceError(f"engine and closed form disagree for the {kind} inverse")
        closed = closed_full.crop(n, m) if keep_padded else closed_full

    report, _ = verify_dual_inverse(kind, A, padded if padded is not None else witness, B, C, index)
    if not report.passed:
        raise EquivalenceError(f"{kind} witness fails verification: {report.first_failure}")
    return DualInverseCertificate(
        kind,
        A,
        B,
        C,
        witness=witness,
        engine_path=witness,
        closed_form_path=closed,
        report=report,
        padding=padding,
        padded_witness=padded,
        index=index,
        l=exponent,
        **overrides,
    )


# ---------------------------------------------------------------------------
# Prescribed range and null space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OuterInverseCertificate:
    witness: DualMatrix
    range_matches: bool
    null_space_matches: bool


def outer_inverse_prescribed(A: DualMatrix, B: DualMatrix, C: DualMatrix) -> OuterInverseCertificate:
    """X̂ with X̂ÂX̂ = X̂, R(X̂) = R(B̂) and N(X̂) = N(Ĉ), as the (B̂,Ĉ)-inverse."""
    X = dual_bc_inverse(A, B, C)
    if X @ A @ X != X:
        raise EquivalenceError("(B̂,Ĉ)-inverse is not an outer inverse")
    range_matches = dual_solve(B, X) is not None and dual_solve(X, B) is not None
    null_matches = dual_solve(C.T, X.T) is not None and dual_solve(X.T, C.T) is not None
    if not (range_matches and null_matches):
        raise EquivalenceError("range or null space of the outer inverse differs from the prescription")
    return OuterInverseCertificate(X, range_matches, null_matches)


def mp_first_order(A: DualMatrix) -> Optional[DualMatrix]:
    """Solve the four Moore-Penrose equations to first order in ε directly.

    With X = A† fixed, every equation is linear in the dual part X0; the
    system is assembled column by column and solved exactly. Returns None when
    it is inconsistent (Â has no Moore-Penrose inverse).
    """
    X = mx.mp_inverse(A.real)
    m, n = A.shape
    mod = A.modulus
    if m * n == 0:
        return DualMatrix(X, Matrix.zeros(n, m, mod))
    A_, A0 = A.real, A.dual

    def linear(X0: Matrix) -> Matrix:
        AX0 = A_ @ X0
        X0A = X0 @ A_
        parts = (A_ @ X0 @ A_, X0 - X0 @ A_ @ X - X @ A_ @ X0, AX0 - AX0.T, X0A - X0A.T)
        return _flatten(parts)

    constant = _flatten(
        (
            A0 - A0 @ X @ A_ - A_ @ X @ A0,
            X @ A0 @ X,
            (A0 @ X).T - A0 @ X,
            (X @ A0).T - X @ A0,
        )
    )
    columns = []
    for i in range(n):
        for j in range(m):
            E = Matrix.from_rows([[1 if (r, c) == (i, j) else 0 for c in range(m)] for r in range(n)], modulus=mod, cols=m)
            columns.append(linear(E))
    system = columns[0]
    for col in columns[1:]:
        system = Matrix.hstack(system, col)
    solution = mx.solve(system, constant)
    if solution is None:
        return None
    X0 = Matrix.from_rows([[solution[i * m + j, 0] for j in range(m)] for i in range(n)], modulus=mod, cols=m)
    return DualMatrix(X, X0)


def _flatten(parts: Tuple[Matrix, ...]) -> Matrix:
    entries = [[v] for part in parts for row in part.data for v in row]
    return Matrix.from_rows(entries, modulus=parts[0].modulus, cols=1)


# ---------------------------------------------------------------------------
# Clean decompositions of square dual matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CleanFacts:
    """Strongly clean decomposition (always present) and the special clean verdict."""

    strongly: CleanDecomposition
    regular: bool
    special: Optional[CleanDecomposition] = None
    special_inverse: Optional[DualMatrix] = None


def clean_facts(A: DualMatrix) -> CleanFacts:
    """Decompose a square Â.

    The strongly clean decomposition is e = I - ÂÂ^D, u = Â - e. Â is special
    clean exactly when it is regular; then ẑ = (I - εA+A0)A+ built from a group
    invertible real reflexive inverse A+ is itself group invertible and
    e = I - ẑẑ^# gives Â = e + u with Âẑe = 0.
    """
    if not A.is_square:
        raise InputError("clean decompositions need a square dual matrix")
    n = A.shape[0]
    space = DualMatrixRing(n, A.modulus)
    a = space.elem(A)
    drazin = dual_generalized_inverse("drazin", A, closed_form=False).witness
    e = space.one - a * space.elem(drazin)  # type: ignore[arg-type]
    strongly = CleanDecomposition(e, a - e, strongly=True)
    strongly.validate(a)

    cert = regularity_certificate(A)
    if not cert.regular:
        return CleanFacts(strongly, False)
    a_plus = mx.group_invertible_reflexive_inverse(A.real)
    z_matrix = regularity_certificate(A, a_plus).reflexive_inverse
    z = space.elem(z_matrix)
    z_group = space.bc_inverse(z, z, z)
    if z_group is None:
        raise EquivalenceError("perturbed reflexive inverse is not group invertible")
    e_special = space.one - z * z_group
    special = CleanDecomposition(e_special, a - e_special, special=True)
    special.validate(a)
    if not (a * z * e_special).is_zero():
        raise EquivalenceError("special clean idempotent does not annihilate Âẑ")
    return CleanFacts(strongly, True, special, z_matrix)
