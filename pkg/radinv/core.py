"""Generalized inverses as checkable equation systems.

Every kind of inverse is described by an :class:`InverseKind`;
:func:`verify_inverse` evaluates its defining equations exactly and reports
each residual as a ring element so failures can be inspected.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from .errors import EquivalenceError, InputError, NonNilpotentError
from .rings import Elem, same_space

logger = logging.getLogger(__name__)

Involution = Callable[[Elem], Elem]

TAGS = ("regular", "reflexive", "outer", "moore-penrose", "group", "core", "drazin", "bc")


@dataclass(frozen=True)
class InverseKind:
    """Which generalized inverse is meant.

    ``drazin`` carries the exponent ``k`` of ``x a^{k+1} = a^k``; ``bc`` carries
    both prescription elements. The inverse along ``d`` is ``bc(d, d)``.
    """

    tag: str
    k: Optional[int] = None
    b: Optional[Elem] = None
    c: Optional[Elem] = None

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise InputError(f"unknown inverse kind {self.tag!r}")
        if self.tag == "drazin" and (self.k is None or self.k < 0):
            raise InputError("drazin kind needs a non-negative index candidate k")
        if self.tag == "bc" and (self.b is None or self.c is None):
            raise InputError("bc kind needs both prescription elements")

    @classmethod
    def drazin(cls, k: int) -> "InverseKind":
        return cls("drazin", k=k)

    @classmethod
    def bc(cls, b: Elem, c: Elem) -> "InverseKind":
        return cls("bc", b=b, c=c)

    @classmethod
    def along(cls, d: Elem) -> "InverseKind":
        return cls("bc", b=d, c=d)

    @property
    def needs_involution(self) -> bool:
        return self.tag in ("moore-penrose", "core")

    @property
    def label(self) -> str:
        if self.tag == "drazin":
            return f"drazin({self.k})"
        return self.tag

    def __str__(self) -> str:
        return self.label


InverseKind.REGULAR = InverseKind("regular")  # type: ignore[attr-defined]
InverseKind.REFLEXIVE = InverseKind("reflexive")  # type: ignore[attr-defined]
InverseKind.OUTER = InverseKind("outer")  # type: ignore[attr-defined]
InverseKind.MOORE_PENROSE = InverseKind("moore-penrose")  # type: ignore[attr-defined]
InverseKind.GROUP = InverseKind("group")  # type: ignore[attr-defined]
InverseKind.CORE = InverseKind("core")  # type: ignore[attr-defined]


@dataclass(frozen=True)
class VerdictReport:
    """Outcome of :func:`verify_inverse`.

    ``passed`` is true iff every residual is zero and, for bc kinds, both
    membership witnesses were found.
    """

    kind: InverseKind
    passed: bool
    residuals: Tuple[Tuple[str, Elem], ...]
    witnesses: Optional[Tuple[Optional[Elem], Optional[Elem]]] = None
    failures: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def first_failure(self) -> Optional[str]:
        for label, value in self.residuals:
            if not value.is_zero():
                return f"{label} = {value!r}"
        return self.failures[0] if self.failures else None


def space_involution(x: Elem) -> Elem:
    """The involution a ring space carries natively."""
    return x.star()


def _equations(kind: InverseKind, a: Elem, x: Elem, star: Optional[Involution]) -> List[Tuple[str, Elem]]:
    ax, xa = a * x, x * a
    axa_a = ("axa-a", ax * a - a)
    xax_x = ("xax-x", xa * x - x)
    tag = kind.tag
    if tag == "regular":
        return [axa_a]
    if tag == "reflexive":
        return [axa_a, xax_x]
    if tag == "outer":
        return [xax_x]
    if tag == "moore-penrose":
        return [axa_a, xax_x, ("(ax)*-ax", star(ax) - ax), ("(xa)*-xa", star(xa) - xa)]
    if tag == "group":
        return [axa_a, xax_x, ("ax-xa", ax - xa)]
    if tag == "core":
        return [("xa^2-a", xa * a - a), ("ax^2-x", ax * x - x), ("(ax)*-ax", star(ax) - ax)]
    if tag == "drazin":
        k = kind.k or 0
        return [(f"xa^{k + 1}-a^{k}", x * a ** (k + 1) - a ** k), xax_x, ("ax-xa", ax - xa)]
    b, c = kind.b, kind.c
    return [("cay-c", c * a * x - c), ("yab-b", xa * b - b)]


def verify_inverse(
    kind: InverseKind,
    a: Elem,
    x: Elem,
    involution: Optional[Involution] = None,
) -> VerdictReport:
    """Evaluate the defining equations of ``kind`` for the candidate ``x``.

    Args:
        kind: The inverse being checked.
        a: The element being inverted.
        x: The candidate inverse.
        involution: Required for Moore-Penrose and core kinds.

    Returns:
        A :class:`VerdictReport` listing every residual exactly.

    Raises:
        InputError: Mixed ring spaces or a missing involution.
    """
    extra = (kind.b, kind.c) if kind.tag == "bc" else ()
    space = same_space(a, x, *extra)
    if kind.needs_involution and involution is None:
        raise InputError(f"{kind.label} inverse needs an involution")
    residuals = _equations(kind, a, x, involution)
    witnesses = None
    failures: List[str] = []
    if kind.tag == "bc":
        r = space.right_witness(x, kind.b)
        s = space.left_witness(x, kind.c)
        witnesses = (r, s)
        if r is None:
            failures.append("y not in bR")
        if s is None:
            failures.append("y not in Rc")
    passed = all(value.is_zero() for _, value in residuals) and not failures
    return VerdictReport(kind, passed, tuple(residuals), witnesses, tuple(failures))


def geometric_inverse(n: Elem, bound: Optional[int] = None) -> Elem:
    """Invert 1 + n for nilpotent n as the finite sum of (-n)^i.

    Args:
        n: Element with n^m = 0 for some m <= bound.
        bound: Nilpotency bound; defaults to the space's own bound.

    Raises:
        NonNilpotentError: n^bound is not zero.
    """
    space = n.space
    limit = space.nilpotency_bound if bound is None else bound
    if limit < 1:
        raise InputError("nilpotency bound must be positive")
    total = space.zero
    term = space.one
    minus_n = -n
    for _ in range(limit + 1):
        if term.is_zero():
            break
        total = total + term
        term = term * minus_n
    else:
        raise NonNilpotentError(f"{n!r} is not nilpotent within {limit} steps")
    unit = space.one + n
    if not (total * unit == space.one and unit * total == space.one):
        raise EquivalenceError(f"geometric series failed to invert 1 + {n!r}")
    return total


def phi(x: Elem, j: Elem) -> Elem:
    """x -> (1 + x j)^{-1} x."""
    same_space(x, j)
    return geometric_inverse(x * j) * x


def phi_inv(y: Elem, j: Elem) -> Elem:
    """y -> (1 - y j)^{-1} y."""
    same_space(y, j)
    return geometric_inverse(-(y * j)) * y
