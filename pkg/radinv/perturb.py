"""Generalized inverses under perturbation by radical elements.

All routines are ring agnostic: they take :class:`~radinv.rings.Elem` handles
and only rely on the capabilities of their :class:`~radinv.rings.RingSpace`.
Every ``(1 + n)^{-1}`` with ``n`` radical goes through
:func:`~radinv.core.geometric_inverse`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from .core import InverseKind, Involution, geometric_inverse, phi, verify_inverse
from .errors import EquivalenceError, InputError, NonexistenceError
from .rings import Elem, RingSpace, same_space

logger = logging.getLogger(__name__)


def _require_radical(space: RingSpace, j: Elem, name: str) -> None:
    if not space.is_radical(j):
        raise InputError(f"{name} = {j!r} is not in the radical of {space.name}")


def _require_reflexive(a: Elem, a_plus: Elem, name: str) -> None:
    if not verify_inverse(InverseKind.REFLEXIVE, a, a_plus).passed:
        raise InputError(f"{name} = {a_plus!r} is not a reflexive inverse of {a!r}")


def _canonical_reflexive(space: RingSpace, a: Elem) -> Optional[Elem]:
    """The space's own reflexive inverse, or None when the space cannot tell."""
    try:
        return space.reflexive_inverse(a)
    except NotImplementedError:
        return None


def _can_decide_regularity(space: RingSpace) -> bool:
    try:
        space.reflexive_inverse(space.one)
    except NotImplementedError:
        return False
    return True


def lemma31_residual(a: Elem, a_plus: Elem, j: Elem) -> Elem:
    """(1 - a a+) j (1 + a+ j)^{-1} (1 - a+ a); zero iff a + j is regular."""
    return (1 - a * a_plus) * j * geometric_inverse(a_plus * j) * (1 - a_plus * a)


def regular_perturb(a: Elem, a_plus: Elem, j: Elem) -> Elem:
    """Reflexive inverse (1 + a+ j)^{-1} a+ of a + j.

    Raises:
        InputError: a+ is not reflexive for a, or j is not radical.
        NonexistenceError: a + j is not regular; carries the residual.
    """
    space = same_space(a, a_plus, j)
    _require_reflexive(a, a_plus, "a+")
    _require_radical(space, j, "j")
    residual = lemma31_residual(a, a_plus, j)
    if not residual.is_zero():
        raise NonexistenceError("a + j is not regular", residual=residual)
    x = geometric_inverse(a_plus * j) * a_plus
    if not verify_inverse(InverseKind.REFLEXIVE, a + j, x).passed:
        raise EquivalenceError(f"(1 + a+ j)^-1 a+ is not reflexive for {a + j!r}")
    return x


# ---------------------------------------------------------------------------
# Perturbing a, b and c simultaneously
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PerturbationInput:
    a: Elem
    b: Elem
    c: Elem
    a_bc_inverse: Elem
    b_plus: Elem
    c_plus: Elem
    j_a: Elem
    j_b: Elem
    j_c: Elem

    @property
    def space(self) -> RingSpace:
        return same_space(
            self.a, self.b, self.c, self.a_bc_inverse, self.b_plus, self.c_plus, self.j_a, self.j_b, self.j_c
        )

    def validate(self) -> RingSpace:
        space = self.space
        if not verify_inverse(InverseKind.bc(self.b, self.c), self.a, self.a_bc_inverse).passed:
            raise InputError(f"{self.a_bc_inverse!r} is not the (b,c)-inverse of {self.a!r}")
        _require_reflexive(self.b, self.b_plus, "b+")
        _require_reflexive(self.c, self.c_plus, "c+")
        for name in ("j_a", "j_b", "j_c"):
            _require_radical(space, getattr(self, name), name)
        return space


@dataclass(frozen=True)
class Theorem33Report:
    """Verdict for the (b + j_b, c + j_c)-inverse of a + j_a.

    ``perturbed_inverse`` is present iff both conditions vanish;
    ``unperturbed_a_inverse`` is the (b + j_b, c + j_c)-inverse of a itself.
    """

    conditions: Tuple[Elem, Elem]
    composite_j: Elem
    perturbed_inverse: Optional[Elem] = None
    unperturbed_a_inverse: Optional[Elem] = None

    @property
    def exists(self) -> bool:
        return self.perturbed_inverse is not None

    def inverse(self) -> Elem:
        """The perturbed inverse, or NonexistenceError with the failing condition."""
        if self.perturbed_inverse is None:
            side, residual = next(
                (side, value) for side, value in zip(("b", "c"), self.conditions) if not value.is_zero()
            )
            raise NonexistenceError(f"{side} + j_{side} is not regular", residual=residual)
        return self.perturbed_inverse


def composite_radical(a: Elem, j_a: Elem, j_b: Elem, j_c: Elem, b_plus: Elem, c_plus: Elem) -> Elem:
    """The single radical element that absorbs all three perturbations."""
    jbb = j_b * b_plus
    cjc = c_plus * j_c
    return j_a + a * jbb + cjc * a + j_a * jbb + cjc * j_a + cjc * a * jbb + cjc * j_a * jbb


def theorem33(inp: PerturbationInput, check_canonical: bool = True) -> Theorem33Report:
    """Decide and compute (a + j_a)^{||(b + j_b, c + j_c)} from a^{||(b,c)}.

    Existence holds iff b + j_b and c + j_c are regular, which is tested by the
    two reflexive-inverse residuals. When the space provides canonical
    reflexive inverses the verdict is recomputed with them and must agree.

    Raises:
        InputError: The supplied inverses or radical elements are invalid.
        EquivalenceError: The two formulas, the verdicts or the final
            verification disagree.
    """
    space = inp.validate()
    a, b, c, y = inp.a, inp.b, inp.c, inp.a_bc_inverse
    cond_b = lemma31_residual(b, inp.b_plus, inp.j_b)
    cond_c = lemma31_residual(c, inp.c_plus, inp.j_c)
    holds = cond_b.is_zero() and cond_c.is_zero()

    if check_canonical:
        for elem, plus, j, cond in ((b, inp.b_plus, inp.j_b, cond_b), (c, inp.c_plus, inp.j_c, cond_c)):
            canonical = _canonical_reflexive(space, elem)
            if canonical is None or canonical == plus:
                continue
            if lemma31_residual(elem, canonical, j).is_zero() != cond.is_zero():
                raise EquivalenceError(f"regularity verdict for {elem!r} depends on the reflexive inverse")

    j = composite_radical(a, inp.j_a, inp.j_b, inp.j_c, inp.b_plus, inp.c_plus)
    if not holds:
        logger.debug(f"perturbed (b,c)-inverse does not exist in {space.name}")
        return Theorem33Report((cond_b, cond_c), j)

    left = 1 + inp.j_b * inp.b_plus
    right = 1 + inp.c_plus * inp.j_c
    perturbed = left * y * geometric_inverse(j * y) * right

    cross = a * inp.j_b * inp.b_plus + inp.c_plus * inp.j_c * a + inp.c_plus * inp.j_c * a * inp.j_b * inp.b_plus
    unperturbed = left * geometric_inverse(y * cross) * y * right

    if phi(unperturbed, inp.j_a) != perturbed:
        raise EquivalenceError("perturbed inverse differs from phi of the unperturbed one")
    b_new, c_new = b + inp.j_b, c + inp.j_c
    if not verify_inverse(InverseKind.bc(b_new, c_new), a + inp.j_a, perturbed).passed:
        raise EquivalenceError(f"formula value {perturbed!r} fails the (b,c)-inverse equations")
    if not verify_inverse(InverseKind.bc(b_new, c_new), a, unperturbed).passed:
        raise EquivalenceError(f"formula value {unperturbed!r} fails the (b,c)-inverse equations for a")
    return Theorem33Report((cond_b, cond_c), j, perturbed, unperturbed)


# ---------------------------------------------------------------------------
# Moore-Penrose, group and core inverses
# ---------------------------------------------------------------------------

_KIND_TAGS = {"mp": "moore-penrose", "moore-penrose": "moore-penrose", "group": "group", "core": "core"}


def _printed_radical(tag: str, a: Elem, a_plus: Elem, j_a: Elem, star: Optional[Involution]) -> Elem:
    if tag == "group":
        return (
            j_a + a * j_a * a_plus + a_plus * j_a * a + j_a * j_a * a_plus + a_plus * j_a * j_a
            + a_plus * j_a * a * j_a * a_plus + a_plus * j_a ** 3 * a_plus
        )
    ps = star(a_plus)
    js = star(j_a)
    if tag == "moore-penrose":
        return (
            j_a + a * js * ps + ps * js * a + j_a * js * ps + ps * js * j_a
            + ps * js * a * js * ps + ps * js * j_a * js * ps
        )
    return (
        j_a + a * j_a * a_plus + ps * js * a + j_a * j_a * a_plus + ps * js * j_a
        + ps * js * a * j_a * a_plus + ps * js * j_a * j_a * a_plus
    )


def mgc_perturb(
    kind: str,
    a: Elem,
    a_plus: Elem,
    j_a: Elem,
    involution: Optional[Involution] = None,
    a_inverse: Optional[Elem] = None,
) -> Elem:
    """Moore-Penrose, group or core inverse of a + j_a from that of a.

    Args:
        kind: ``"mp"``, ``"group"`` or ``"core"``.
        a: Element whose inverse of that kind exists.
        a_plus: Any reflexive inverse of ``a``.
        j_a: Radical perturbation.
        involution: Defaults to the space's own involution for mp and core.
        a_inverse: The kind-inverse of ``a``; found through the space's
            (b,c)-inverse hook when omitted.

    Returns:
        The inverse of ``a + j_a``, verified against its defining equations.

    Raises:
        NonexistenceError: a + j_a is not regular; carries the residual.
    """
    tag = _KIND_TAGS.get(kind)
    if tag is None:
        raise InputError(f"mgc_perturb handles mp, group and core, not {kind!r}")
    space = same_space(a, a_plus, j_a)
    star = involution
    if tag != "group" and star is None:
        if not space.has_involution:
            raise InputError(f"{tag} inverse needs an involution")
        star = space.star
    if tag == "moore-penrose":
        b = c = star(a)
    elif tag == "group":
        b = c = a
    else:
        b, c = a, star(a)

    if a_inverse is None:
        a_inverse = space.bc_inverse(a, b, c)
        if a_inverse is None:
            raise InputError(f"{a!r} has no {tag} inverse")
    kind_obj = InverseKind(tag)
    if not verify_inverse(kind_obj, a, a_inverse, star).passed:
        raise InputError(f"{a_inverse!r} is not the {tag} inverse of {a!r}")
    _require_reflexive(a, a_plus, "a+")
    _require_radical(space, j_a, "j_a")

    residual = lemma31_residual(a, a_plus, j_a)
    exists = residual.is_zero()

    if tag == "moore-penrose":
        b_plus = c_plus = star(a_plus)
        j_b = j_c = star(j_a)
    elif tag == "group":
        b_plus = c_plus = a_plus
        j_b = j_c = j_a
    else:
        b_plus, c_plus = a_plus, star(a_plus)
        j_b, j_c = j_a, star(j_a)
    report = theorem33(PerturbationInput(a, b, c, a_inverse, b_plus, c_plus, j_a, j_b, j_c))

    regular: Optional[bool] = None
    if _can_decide_regularity(space):
        regular = space.reflexive_inverse(a + j_a) is not None
    if report.exists != exists or (regular is not None and regular != exists):
        raise EquivalenceError(
            f"{tag} existence verdicts disagree: residual={exists}, theorem={report.exists}, regular={regular}"
        )
    if not exists:
        raise NonexistenceError(f"a + j_a has no {tag} inverse: it is not regular", residual=residual)

    j = _printed_radical(tag, a, a_plus, j_a, star)
    if j != report.composite_j:
        raise EquivalenceError(f"printed radical for the {tag} inverse differs from the composite one")
    result = (1 + j_b * b_plus) * a_inverse * geometric_inverse(j * a_inverse) * (1 + c_plus * j_c)
    if result != report.perturbed_inverse:
        raise EquivalenceError(f"{tag} formula differs from the (b,c) route")
    if not verify_inverse(kind_obj, a + j_a, result, star).passed:
        raise EquivalenceError(f"{tag} formula value fails its defining equations")
    return result


# ---------------------------------------------------------------------------
# Drazin inverse
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DrazinPerturbReport:
    l: int
    j1: Elem
    condition_residual: Elem
    result: Optional[Elem] = None
    index: int = 0


def drazin_perturb(
    a: Elem,
    j_a: Elem,
    l: Optional[int] = None,
    a_drazin: Optional[Tuple[Elem, int]] = None,
) -> DrazinPerturbReport:
    """Drazin inverse of a + j_a from a^D, tested at exponent ``l``.

    ``l`` defaults to the index k of a and must be at least k. A failing
    condition at one ``l`` does not rule out success at a larger one.
    """
    space = same_space(a, j_a)
    _require_radical(space, j_a, "j_a")
    if a_drazin is None:
        a_drazin = space.drazin(a)
        if a_drazin is None:
            raise InputError(f"{a!r} is not Drazin invertible")
    a_d, k = a_drazin
    if not verify_inverse(InverseKind.drazin(k), a, a_d).passed:
        raise InputError(f"{a_d!r} is not a Drazin inverse of {a!r} with index {k}")
    l = k if l is None else l
    if l < k:
        raise InputError(f"exponent l={l} is below the Drazin index {k}")

    a_l = a ** l
    a_d_l = a_d ** l
    j1 = (a + j_a) ** l - a_l
    residual = lemma31_residual(a_l, a_d_l, j1)
    if not residual.is_zero():
        logger.debug(f"Drazin condition fails at l={l}")
        return DrazinPerturbReport(l, j1, residual, None, k)

    report = theorem33(PerturbationInput(a, a_l, a_l, a_d, a_d_l, a_d_l, j_a, j1, j1))
    result = report.inverse()
    if not verify_inverse(InverseKind.drazin(l), a + j_a, result).passed:
        raise EquivalenceError(f"Drazin formula value fails the equations with exponent {l}")
    return DrazinPerturbReport(l, j1, residual, result, k)


# ---------------------------------------------------------------------------
# Absorption law for outer inverses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbsorptionReport:
    """The six equivalent conditions, in order."""

    conditions: Tuple[bool, bool, bool, bool, bool, bool]

    @property
    def holds(self) -> bool:
        return all(self.conditions)


def absorption_equivalences(a: Elem, j_a: Elem, x: Elem, y: Elem, scan_limit: int = 256) -> AbsorptionReport:
    """Evaluate the absorption conditions for outer inverses x of a and y of a + j_a.

    Condition (6) asks for b, c with x = a^{||(b,c)} and y = (a + j_a)^{||(b,c)};
    since x is the inverse of a along x, it reduces to y being the inverse of
    a + j_a along x. Finite spaces with at most ``scan_limit`` elements also
    scan every pair (b, c) and must reach the same answer.
    """
    space = same_space(a, j_a, x, y)
    _require_radical(space, j_a, "j_a")
    s = a + j_a
    if not verify_inverse(InverseKind.OUTER, a, x).passed:
        raise InputError(f"{x!r} is not a {{2}}-inverse of {a!r}")
    if not verify_inverse(InverseKind.OUTER, s, y).passed:
        raise InputError(f"{y!r} is not a {{2}}-inverse of {s!r}")

    c2 = x * (a + s) * y == x + y
    c1 = c2 and y * (a + s) * x == x + y
    c3 = x * j_a * y == x - y
    c4 = all(
        w is not None
        for w in (
            space.right_witness(x, y),
            space.right_witness(y, x),
            space.left_witness(x, y),
            space.left_witness(y, x),
        )
    )
    c5 = y == phi(x, j_a)
    along = space.bc_inverse(s, x, x)
    c6 = along is not None and along == y

    if space.is_finite and space.size <= scan_limit:
        scanned = any(
            space.bc_inverse(a, b, c) == x and space.bc_inverse(s, b, c) == y
            for b in space.elements()
            for c in space.elements()
        )
        if scanned != c6:
            raise EquivalenceError("exhaustive (b,c) scan disagrees with the inverse along x")

    conditions = (c1, c2, c3, c4, c5, c6)
    if len(set(conditions)) != 1:
        raise EquivalenceError(f"absorption conditions disagree: {conditions}")
    return AbsorptionReport(conditions)


# ---------------------------------------------------------------------------
# Idempotence of (b,c)-inverses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdempotenceReport:
    """Idempotence verdicts.

    ``sum_conditions`` are the three equivalent conditions for the perturbed
    inverse to be idempotent (None when a^{||(b,c)} does not exist);
    ``joint`` / ``structural`` are the two sides of the joint idempotence
    equivalence; ``trace_product`` records whether cb is a trace product.
    """

    inverse: Optional[Elem]
    perturbed_inverse: Optional[Elem]
    sum_conditions: Optional[Tuple[bool, bool, bool]]
    joint: bool
    structural: bool
    trace_product: bool


def is_trace_product(b: Elem, c: Elem) -> bool:
    """cb is a trace product: cbR = cR and Rcb = Rb."""
    space = same_space(b, c)
    cb = c * b
    return space.right_witness(c, cb) is not None and space.left_witness(b, cb) is not None


def idempotence_check(
    a: Elem,
    b: Elem,
    c: Elem,
    j_a: Elem,
    b_plus: Optional[Elem] = None,
    c_plus: Optional[Elem] = None,
    require_inverse: bool = True,
) -> IdempotenceReport:
    """Check when a^{||(b,c)} and (a + j_a)^{||(b,c)} are idempotent.

    Raises:
        InputError: a^{||(b,c)} does not exist and ``require_inverse`` is set.
        EquivalenceError: Conditions that must agree do not.
    """
    space = same_space(a, b, c, j_a)
    _require_radical(space, j_a, "j_a")
    x = space.bc_inverse(a, b, c)
    if x is None and require_inverse:
        raise InputError(f"{a!r} has no (b,c)-inverse")
    b_plus = b_plus if b_plus is not None else _canonical_reflexive(space, b)
    c_plus = c_plus if c_plus is not None else _canonical_reflexive(space, c)
    s = a + j_a

    sum_conditions = None
    y = None
    if x is not None:
        if b_plus is None or c_plus is None:
            raise EquivalenceError("b and c must be regular when a^{||(b,c)} exists")
        y = phi(x, j_a)
        d1 = y * y == y
        d2 = x * x == x * s * x
        bb, cc = b * b_plus, c_plus * c
        d3 = s == cc * b * b_plus + (1 - cc) * s + cc * s * (1 - bb)
        sum_conditions = (d1, d2, d3)
        if len(set(sum_conditions)) != 1:
            raise EquivalenceError(f"idempotence conditions disagree: {sum_conditions}")

    trace = is_trace_product(b, c)
    one_bc = space.bc_inverse(space.one, b, c)
    if trace != (one_bc is not None):
        raise EquivalenceError("trace product verdict disagrees with existence of 1^{||(b,c)}")

    joint = x is not None and x * x == x and y * y == y  # type: ignore[operator]
    structural = False
    if trace and b_plus is not None and c_plus is not None:
        bb, cc = b * b_plus, c_plus * c
        structural = (
            a == cc * b * b_plus + (1 - cc) * a + cc * a * (1 - bb)
            and j_a == (1 - cc) * j_a + cc * j_a * (1 - bb)
        )
    if joint != structural:
        raise EquivalenceError(f"joint idempotence ({joint}) disagrees with the structural conditions ({structural})")
    if joint and not (x == y == one_bc):
        raise EquivalenceError("idempotent (b,c)-inverses differ from 1^{||(b,c)}")
    return IdempotenceReport(x, y, sum_conditions, joint, structural, trace)


# ---------------------------------------------------------------------------
# Clean decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CleanDecomposition:
    """a = idempotent + unit, optionally commuting (strongly) or special."""

    idempotent: Elem
    unit: Elem
    strongly: bool = False
    special: bool = False

    def validate(self, a: Elem) -> Elem:
        """Check the decomposition of ``a`` and return the inverse of the unit."""
        space = same_space(a, self.idempotent, self.unit)
        e, u = self.idempotent, self.unit
        if e * e != e:
            raise InputError(f"{e!r} is not idempotent")
        u_inv = space.unit_inverse(u)
        if u_inv is None:
            raise InputError(f"{u!r} is not a unit")
        if e + u != a:
            raise InputError("idempotent + unit does not add up to the element")
        if self.strongly and e * a != a * e:
            raise InputError("strongly clean decomposition must commute")
        return u_inv


@dataclass(frozen=True)
class CleanTransferReport:
    """Strongly clean transfer verdict for a + j_a from a clean decomposition of a."""

    along_e: Optional[Elem]
    annihilation: bool
    conjugated: bool
    witness: Optional[CleanDecomposition]

    @property
    def strongly_clean(self) -> bool:
        return self.witness is not None


def clean_transfer(a: Elem, j_a: Elem, candidate: CleanDecomposition) -> CleanTransferReport:
    """Decide whether a + j_a is strongly clean through the decomposition a = ebar + u.

    With e = 1 - ebar both the annihilation identities for a^{||e} and their
    u-conjugated form through 1^{||(u e u^-1, e)} are evaluated and must agree.
    On success ebar + (u + j_a) is returned as a verified strongly clean
    decomposition of a + j_a.
    """
    space = same_space(a, j_a, candidate.idempotent, candidate.unit)
    _require_radical(space, j_a, "j_a")
    u_inv = candidate.validate(a)
    e_bar, u = candidate.idempotent, candidate.unit
    e = 1 - e_bar
    s = a + j_a

    along_e = space.bc_inverse(a, e, e)
    annihilation = False
    if along_e is not None:
        p, q = a * along_e, along_e * a
        annihilation = (p * s * (1 - p)).is_zero() and ((1 - q) * s * q).is_zero()

    f = space.bc_inverse(space.one, u * e * u_inv, e)
    conjugated = False
    if f is not None:
        conjugated = (f * s * (1 - f)).is_zero() and ((1 - f) * u * s * u_inv * f).is_zero()
    if annihilation != conjugated:
        raise EquivalenceError(f"clean transfer conditions disagree: {annihilation} vs {conjugated}")

    witness = None
    if annihilation:
        witness = CleanDecomposition(e_bar, u + j_a, strongly=True)
        try:
            witness.validate(s)
        except InputError as exc:
            raise EquivalenceError(f"constructed decomposition of a + j_a is not strongly clean: {exc}") from exc
    return CleanTransferReport(along_e, annihilation, conjugated, witness)


@dataclass(frozen=True)
class SpecialCleanReport:
    residual: Elem
    reflexive_inverse: Optional[Elem]
    bijection_checked: bool = False

    @property
    def special_clean(self) -> bool:
        return self.reflexive_inverse is not None


def _is_group_invertible(space: RingSpace, z: Elem) -> bool:
    return space.bc_inverse(z, z, z) is not None


def special_clean_transfer(a: Elem, j_a: Elem, a_plus: Elem, scan_limit: int = 256) -> SpecialCleanReport:
    """Special clean transfer through a group invertible reflexive inverse a+.

    On small finite spaces the map phi is also checked to carry the group
    invertible reflexive inverses of a onto those of a + j_a.
    """
    space = same_space(a, j_a, a_plus)
    _require_reflexive(a, a_plus, "a+")
    if not _is_group_invertible(space, a_plus):
        raise InputError(f"{a_plus!r} is not group invertible")
    _require_radical(space, j_a, "j_a")
    s = a + j_a
    residual = lemma31_residual(a, a_plus, j_a)

    if _can_decide_regularity(space):
        regular = space.reflexive_inverse(s) is not None
        if regular != residual.is_zero():
            raise EquivalenceError("special clean residual disagrees with regularity of a + j_a")
    if not residual.is_zero():
        return SpecialCleanReport(residual, None)

    z = regular_perturb(a, a_plus, j_a)
    if not _is_group_invertible(space, z):
        raise EquivalenceError(f"perturbed reflexive inverse {z!r} is not group invertible")

    checked = False
    if space.is_finite and space.size <= scan_limit:
        before = _group_invertible_reflexive_inverses(space, a)
        after = _group_invertible_reflexive_inverses(space, s)
        if {phi(x, j_a) for x in before} != after:
            raise EquivalenceError("phi is not a bijection on group invertible reflexive inverses")
        checked = True
    return SpecialCleanReport(residual, z, checked)


def _group_invertible_reflexive_inverses(space: RingSpace, a: Elem) -> set:
    return {
        x
        for x in space.elements()
        if verify_inverse(InverseKind.REFLEXIVE, a, x).passed and _is_group_invertible(space, x)
    }

