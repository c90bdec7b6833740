"""Small finite rings and brute-force ground truth.

Every question asked here is answered by exhaustion over the elements of a
ring: radicals, units, idempotents, reflexive inverses, (b,c)-inverses and
clean decompositions. :func:`campaign` compares the perturbation engine
against these answers on every admissible tuple of a theorem (or a seeded
sample of them when the tuple space is too large).
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Tuple

import numpy as np

from . import config
from .core import phi
from .dualmat import DualMatrixRing
from .errors import BudgetError, EquivalenceError, InputError, NonexistenceError, RadinvError
from .matrices import MatrixRing
from .perturb import (
    CleanDecomposition,
    PerturbationInput,
    absorption_equivalences,
    clean_transfer,
    drazin_perturb,
    idempotence_check,
    lemma31_residual,
    regular_perturb,
    theorem33,
)
from .rings import Elem, RingSpace
from .series import TruncatedSeriesRing

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Ring families
# ---------------------------------------------------------------------------


class ZnRing(RingSpace):
    """Integers modulo n; the identity map is its involution."""

    is_finite = True

    def __init__(self, n: int) -> None:
        if n < 2:
            raise InputError(f"modulus must be at least 2, got {n}")
        super().__init__(f"Z{n}")
        self.n = n

    @property
    def key(self) -> Tuple[object, ...]:
        return ("ZnRing", self.n)

    def add_values(self, x: int, y: int) -> int:  # type: ignore[override]
        return (x + y) % self.n

    def mul_values(self, x: int, y: int) -> int:  # type: ignore[override]
        return (x * y) % self.n

    def neg_value(self, x: int) -> int:  # type: ignore[override]
        return (-x) % self.n

    def zero_value(self) -> int:
        return 0

    def one_value(self) -> int:
        return 1 % self.n

    def format_value(self, x: int) -> str:  # type: ignore[override]
        return str(x)

    def values(self) -> Iterator[int]:
        return iter(range(self.n))

    @property
    def size(self) -> int:
        return self.n

    @property
    def has_involution(self) -> bool:
        return True

    def star(self, x: Elem) -> Elem:
        return x


class T2ZnRing(RingSpace):
    """Upper triangular 2×2 matrices over Z_n, values (a, b, d) for [[a, b], [0, d]]."""

    is_finite = True

    def __init__(self, n: int) -> None:
        if n < 2:
            raise InputError(f"modulus must be at least 2, got {n}")
        super().__init__(f"T2(Z{n})")
        self.n = n

    @property
    def key(self) -> Tuple[object, ...]:
        return ("T2ZnRing", self.n)

    def add_values(self, x, y):  # type: ignore[no-untyped-def]
        n = self.n
        return ((x[0] + y[0]) % n, (x[1] + y[1]) % n, (x[2] + y[2]) % n)

    def mul_values(self, x, y):  # type: ignore[no-untyped-def]
        n = self.n
        return ((x[0] * y[0]) % n, (x[0] * y[1] + x[1] * y[2]) % n, (x[2] * y[2]) % n)

    def neg_value(self, x):  # type: ignore[no-untyped-def]
        n = self.n
        return ((-x[0]) % n, (-x[1]) % n, (-x[2]) % n)

    def zero_value(self) -> Tuple[int, int, int]:
        return (0, 0, 0)

    def one_value(self) -> Tuple[int, int, int]:
        return (1 % self.n, 0, 1 % self.n)

    def format_value(self, x) -> str:  # type: ignore[no-untyped-def]
        return f"[[{x[0]}, {x[1]}], [0, {x[2]}]]"

    def matrix(self, a: int, b: int, d: int) -> Elem:
        return self.elem((a % self.n, b % self.n, d % self.n))

    def values(self) -> Iterator[Tuple[int, int, int]]:
        return itertools.product(range(self.n), repeat=3)

    @property
    def size(self) -> int:
        return self.n ** 3


FAMILIES = ("zn", "t2z", "m2z", "dual", "series")


@dataclass(frozen=True)
class RingSpec:
    """A shipped finite ring: ``family`` with modulus ``n`` (and series ``order``)."""

    family: str
    n: int
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InputError(f"unknown ring family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.n < 2:
            raise InputError(f"modulus must be at least 2, got {self.n}")
        if (self.family == "series") != (self.order is not None):
            raise InputError("only the series family takes an order")
        if self.order is not None and self.order < 1:
            raise InputError("series order must be at least 1")

    @classmethod
    def parse(cls, text: str) -> "RingSpec":
        """Parse ``zn:4``, ``t2z:2``, ``m2z:3``, ``dual:3`` or ``series:2:3``."""
        parts = text.strip().lower().split(":")
        try:
            numbers = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise InputError(f"malformed ring spec {text!r}") from exc
        if parts[0] == "series" and len(numbers) == 2:
            return cls("series", numbers[0], numbers[1])
        if len(numbers) != 1:
            raise InputError(f"malformed ring spec {text!r}")
        return cls(parts[0], numbers[0])

    @property
    def label(self) -> str:
        if self.order is not None:
            return f"{self.family}:{self.n}:{self.order}"
        return f"{self.family}:{self.n}"

    @property
    def size(self) -> int:
        if self.family == "zn":
            return self.n
        if self.family == "t2z":
            return self.n ** 3
        if self.family == "m2z":
            return self.n ** 4
        if self.family == "dual":
            return self.n ** 2
        return self.n ** self.order  # type: ignore[operator]

    def build(self) -> RingSpace:
        if self.family == "zn":
            return ZnRing(self.n)
        if self.family == "t2z":
            return T2ZnRing(self.n)
        if self.family == "m2z":
            return MatrixRing(2, self.n)
        if self.family == "dual":
            return DualMatrixRing(1, self.n)
        return TruncatedSeriesRing(ZnRing(self.n), self.order)  # type: ignore[arg-type]

    def __str__(self) -> str:
        return self.label


def enumerate_ring(spec: RingSpec, budget: Optional[int] = None) -> RingSpace:
    """Build the ring of ``spec``, refusing anything above ``budget`` elements."""
    budget = config.RING_BUDGET if budget is None else budget
    if spec.size > budget:
        raise BudgetError(f"{spec.label} has {spec.size} elements, budget is {budget}")
    return spec.build()


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


class BruteForce:
    """Exhaustive answers for one finite ring, with memoized ideals and tables.

    Nothing here calls the ring's capability hooks, only its arithmetic.
    """

    def __init__(self, ring: RingSpace) -> None:
        if not ring.is_finite:
            raise InputError(f"{ring.name} is not finite")
        self.ring = ring
        self.elements: Tuple[Elem, ...] = tuple(ring.elements())
        self._right: Dict[Elem, FrozenSet[Elem]] = {}
        self._left: Dict[Elem, FrozenSet[Elem]] = {}
        self._bc: Dict[Tuple[Elem, Elem, Elem], Optional[Elem]] = {}
        self._reflexive: Dict[Elem, Tuple[Elem, ...]] = {}
        self._pairs: Dict[Elem, Dict[Elem, FrozenSet[Tuple[Elem, Elem]]]] = {}
        self._units: Optional[Dict[Elem, Elem]] = None
        self._radical: Optional[Tuple[Elem, ...]] = None
        self._idempotents: Optional[Tuple[Elem, ...]] = None

    def right_ideal(self, b: Elem) -> FrozenSet[Elem]:
        if b not in self._right:
            self._right[b] = frozenset(b * r for r in self.elements)
        return self._right[b]

    def left_ideal(self, c: Elem) -> FrozenSet[Elem]:
        if c not in self._left:
            self._left[c] = frozenset(s * c for s in self.elements)
        return self._left[c]

    def units(self) -> Dict[Elem, Elem]:
        if self._units is None:
            one = self.ring.one
            table: Dict[Elem, Elem] = {}
            for x in self.elements:
                for y in self.elements:
                    if x * y == one and y * x == one:
                        table[x] = y
                        break
            self._units = table
        return self._units

    def radical(self) -> Tuple[Elem, ...]:
        if self._radical is None:
            units = self.units()
            self._radical = tuple(
                x for x in self.elements if all(1 - r * x in units for r in self.elements)
            )
        return self._radical

    def idempotents(self) -> Tuple[Elem, ...]:
        if self._idempotents is None:
            self._idempotents = tuple(e for e in self.elements if e * e == e)
        return self._idempotents

    def reflexive_inverses(self, a: Elem) -> Tuple[Elem, ...]:
        if a not in self._reflexive:
            self._reflexive[a] = tuple(x for x in self.elements if a * x * a == a and x * a * x == x)
        return self._reflexive[a]

    def is_regular(self, a: Elem) -> bool:
        return bool(self.reflexive_inverses(a))

    def bc_inverse(self, a: Elem, b: Elem, c: Elem) -> Optional[Elem]:
        key = (a, b, c)
        if key not in self._bc:
            candidates = self.right_ideal(b) & self.left_ideal(c)
            solutions = [y for y in candidates if c * a * y == c and y * a * b == b]
            if len(solutions) > 1:
                raise EquivalenceError(f"two (b,c)-inverses of {a!r}: {solutions[0]!r} and {solutions[1]!r}")
            self._bc[key] = solutions[0] if solutions else None
        return self._bc[key]

    def drazin(self, a: Elem) -> Optional[Tuple[Elem, int]]:
        power = self.ring.one
        for k in range(len(self.elements) + 1):
            found = self.bc_inverse(a, power, power)
            if found is not None:
                return found, k
            power = power * a
        return None

    def bc_pairs(self, a: Elem) -> Dict[Elem, FrozenSet[Tuple[Elem, Elem]]]:
        """For each x, the prescriptions (b, c) with x = a^{||(b,c)}."""
        if a not in self._pairs:
            table: Dict[Elem, set] = {}
            for b in self.elements:
                for c in self.elements:
                    x = self.bc_inverse(a, b, c)
                    if x is not None:
                        table.setdefault(x, set()).add((b, c))
            self._pairs[a] = {x: frozenset(pairs) for x, pairs in table.items()}
        return self._pairs[a]

    def clean_decompositions(self, a: Elem) -> Iterator[CleanDecomposition]:
        units = self.units()
        for e in self.idempotents():
            u = a - e
            if u in units:
                yield CleanDecomposition(e, u, strongly=e * a == a * e)


@functools.lru_cache(maxsize=None)
def oracle(ring: RingSpace) -> BruteForce:
    return BruteForce(ring)


def jacobson_radical(ring: RingSpace) -> Tuple[Elem, ...]:
    """{x : 1 - r·x is a unit for every r}."""
    return oracle(ring).radical()


def units(ring: RingSpace) -> Dict[Elem, Elem]:
    return dict(oracle(ring).units())


def idempotents(ring: RingSpace) -> Tuple[Elem, ...]:
    return oracle(ring).idempotents()


def reflexive_inverses(ring: RingSpace, a: Elem) -> Tuple[Elem, ...]:
    return oracle(ring).reflexive_inverses(a)


def brute_bc_inverse(ring: RingSpace, a: Elem, b: Elem, c: Elem) -> Elem:
    """The unique y with cay = c, yab = b and y in bR ∩ Rc, found by scanning.

    Raises:
        NonexistenceError: No element satisfies the conditions.
        EquivalenceError: Two elements do.
    """
    found = oracle(ring).bc_inverse(a, b, c)
    if found is None:
        raise NonexistenceError(f"{a!r} has no ({b!r}, {c!r})-inverse in {ring.name}")
    return found


CLEAN_KINDS = ("clean", "strongly-clean", "special-clean")


def clean_search(ring: RingSpace, a: Elem, kind: str = "clean") -> CleanDecomposition:
    """First decomposition a = e + u of the requested kind in enumeration order.

    Raises:
        NonexistenceError: ``a`` has no decomposition of that kind.
    """
    if kind not in CLEAN_KINDS:
        raise InputError(f"unknown clean kind {kind!r}; expected one of {', '.join(CLEAN_KINDS)}")
    brute = oracle(ring)
    zero = frozenset([ring.zero])
    for candidate in brute.clean_decompositions(a):
        if kind == "strongly-clean" and not candidate.strongly:
            continue
        if kind == "special-clean":
            if brute.right_ideal(a) & brute.right_ideal(candidate.idempotent) != zero:
                continue
            return CleanDecomposition(candidate.idempotent, candidate.unit, candidate.strongly, special=True)
        return candidate
    raise NonexistenceError(f"{a!r} is not {kind} in {ring.name}")


# ---------------------------------------------------------------------------
# Campaigns
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Counterexample:
    elements: Tuple[str, ...]
    reason: str


@dataclass(frozen=True)
class CampaignReport:
    theorem_id: str
    ring: RingSpec
    mode: str
    tuples_tested: int
    skipped: int = 0
    seed: Optional[int] = None
    trials: Optional[int] = None
    counterexamples: Tuple[Counterexample, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


@dataclass(frozen=True)
class _Plan:
    axes: Tuple[Tuple[Elem, ...], ...]
    admissible: Callable[..., bool]
    check: Callable[..., Optional[str]]


def _plan_lemma31(brute: BruteForce) -> _Plan:
    def check(a: Elem, j: Elem) -> Optional[str]:
        s = a + j
        regular = brute.is_regular(s)
        for a_plus in brute.reflexive_inverses(a):
            vanishes = lemma31_residual(a, a_plus, j).is_zero()
            if vanishes != regular:
                return f"residual vanishes={vanishes} but a + j regular={regular} with a+ = {a_plus!r}"
            if regular:
                x = regular_perturb(a, a_plus, j)
                if x not in brute.reflexive_inverses(s):
                    return f"(1 + a+ j)^-1 a+ = {x!r} is not a reflexive inverse of a + j"
            else:
                try:
                    regular_perturb(a, a_plus, j)
                except NonexistenceError:
                    continue
                return "regular_perturb returned a value for a non-regular a + j"
        return None

    return _Plan((brute.elements, brute.radical()), lambda a, j: brute.is_regular(a), check)


def _plan_thm33(brute: BruteForce) -> _Plan:
    def check(a: Elem, b: Elem, c: Elem, j_a: Elem, j_b: Elem, j_c: Elem) -> Optional[str]:
        y = brute.bc_inverse(a, b, c)
        b_plus = brute.reflexive_inverses(b)
        c_plus = brute.reflexive_inverses(c)
        if not b_plus or not c_plus:
            return "a^{||(b,c)} exists but b or c is not regular"
        report = theorem33(PerturbationInput(a, b, c, y, b_plus[0], c_plus[0], j_a, j_b, j_c))  # type: ignore[arg-type]
        b_new, c_new = b + j_b, c + j_c
        truth = brute.bc_inverse(a + j_a, b_new, c_new)
        regular = brute.is_regular(b_new) and brute.is_regular(c_new)
        if report.exists != (truth is not None) or regular != (truth is not None):
            return f"formula exists={report.exists}, brute exists={truth is not None}, regular={regular}"
        if truth is None:
            return None
        if report.perturbed_inverse != truth:
            return f"formula gives {report.perturbed_inverse!r}, brute force gives {truth!r}"
        if report.unperturbed_a_inverse != brute.bc_inverse(a, b_new, c_new):
            return "j_a = 0 specialization differs from the brute-force inverse of a"
        if j_b.is_zero() and j_c.is_zero() and report.perturbed_inverse != phi(y, j_a):  # type: ignore[arg-type]
            return "unperturbed prescriptions but result differs from phi(a^{||(b,c)}, j_a)"
        return None

    elements, radical = brute.elements, brute.radical()
    return _Plan(
        (elements, elements, elements, radical, radical, radical),
        lambda a, b, c, *_: brute.bc_inverse(a, b, c) is not None,
        check,
    )


def _plan_absorption(brute: BruteForce) -> _Plan:
    def admissible(a: Elem, j: Elem, x: Elem, y: Elem) -> bool:
        s = a + j
        return x * a * x == x and y * s * y == y

    def check(a: Elem, j: Elem, x: Elem, y: Elem) -> Optional[str]:
        report = absorption_equivalences(a, j, x, y, scan_limit=0)
        truth = bool(brute.bc_pairs(a).get(x, frozenset()) & brute.bc_pairs(a + j).get(y, frozenset()))
        if report.holds != truth:
            return f"conditions give {report.holds}, shared (b,c) scan gives {truth}"
        return None

    elements = brute.elements
    return _Plan((elements, brute.radical(), elements, elements), admissible, check)


def _plan_idempotence_sum(brute: BruteForce) -> _Plan:
    def check(a: Elem, b: Elem, c: Elem, j: Elem) -> Optional[str]:
        report = idempotence_check(a, b, c, j, *_plus_pair(brute, b, c))
        truth = brute.bc_inverse(a + j, b, c)
        if truth is None or truth != report.perturbed_inverse:
            return f"phi transfer gives {report.perturbed_inverse!r}, brute force gives {truth!r}"
        if report.sum_conditions[0] != (truth * truth == truth):  # type: ignore[index]
            return f"conditions {report.sum_conditions} but idempotent={truth * truth == truth}"
        return None

    elements = brute.elements
    return _Plan(
        (elements, elements, elements, brute.radical()),
        lambda a, b, c, j: brute.bc_inverse(a, b, c) is not None,
        check,
    )


def _plan_idempotence_joint(brute: BruteForce) -> _Plan:
    one = brute.ring.one

    def check(a: Elem, b: Elem, c: Elem, j: Elem) -> Optional[str]:
        report = idempotence_check(a, b, c, j, *_plus_pair(brute, b, c), require_inverse=False)
        x, y = brute.bc_inverse(a, b, c), brute.bc_inverse(a + j, b, c)
        joint = x is not None and y is not None and x * x == x and y * y == y
        trace = brute.bc_inverse(one, b, c) is not None
        if report.joint != joint or report.trace_product != trace:
            return f"joint={report.joint}/{joint}, trace product={report.trace_product}/{trace}"
        return None

    elements = brute.elements
    return _Plan((elements, elements, elements, brute.radical()), lambda *_: True, check)


def _plan_drazin(brute: BruteForce) -> _Plan:
    def check(a: Elem, j: Elem) -> Optional[str]:
        a_d, k = brute.drazin(a)  # type: ignore[misc]
        s = a + j
        for l in (k, k + 1):
            report = drazin_perturb(a, j, l=l, a_drazin=(a_d, k))
            s_l = s ** l
            truth = brute.bc_inverse(s, s_l, s_l)
            if report.result != truth:
                return f"l={l}: formula gives {report.result!r}, brute force gives {truth!r}"
        return None

    return _Plan((brute.elements, brute.radical()), lambda a, j: brute.drazin(a) is not None, check)


def _plan_clean(brute: BruteForce) -> _Plan:
    def check(a: Elem, j: Elem) -> Optional[str]:
        s = a + j
        any_transfer = False
        for candidate in brute.clean_decompositions(a):
            report = clean_transfer(a, j, CleanDecomposition(candidate.idempotent, candidate.unit))
            commutes = candidate.idempotent * s == s * candidate.idempotent
            if report.strongly_clean != commutes:
                return f"e = {candidate.idempotent!r}: transfer says {report.strongly_clean}, commuting {commutes}"
            any_transfer = any_transfer or report.strongly_clean
        truth = any(d.strongly for d in brute.clean_decompositions(s))
        if any_transfer != truth:
            return f"transfer over all clean decompositions gives {any_transfer}, brute force gives {truth}"
        return None

    return _Plan((brute.elements, brute.radical()), lambda a, j: True, check)


def _plus_pair(brute: BruteForce, b: Elem, c: Elem) -> Tuple[Optional[Elem], Optional[Elem]]:
    b_plus, c_plus = brute.reflexive_inverses(b), brute.reflexive_inverses(c)
    return (b_plus[0] if b_plus else None, c_plus[0] if c_plus else None)


THEOREMS: Dict[str, Callable[[BruteForce], _Plan]] = {
    "thm33": _plan_thm33,
    "absorption": _plan_absorption,
    "idempotence-3.9": _plan_idempotence_sum,
    "idempotence-3.10": _plan_idempotence_joint,
    "lemma31": _plan_lemma31,
    "cor36": _plan_drazin,
    "cor38": _plan_clean,
}


def _space_size(plan: _Plan) -> int:
    size = 1
    for axis in plan.axes:
        size *= len(axis)
    return size


def tuple_space_size(theorem_id: str, spec: RingSpec) -> int:
    """Number of unfiltered tuples a campaign of ``theorem_id`` on ``spec`` would walk."""
    if theorem_id not in THEOREMS:
        raise InputError(f"unknown theorem id {theorem_id!r}")
    return _space_size(THEOREMS[theorem_id](oracle(enumerate_ring(spec))))


def _tuples(plan: _Plan, mode: str, rng: Optional[np.random.Generator], trials: int) -> Iterator[Tuple[Elem, ...]]:
    if mode == "exhaustive":
        yield from itertools.product(*plan.axes)
        return
    sizes = np.array([len(axis) for axis in plan.axes])
    draws = rng.integers(0, sizes, size=(trials, len(sizes)))  # type: ignore[union-attr]
    for row in draws:
        yield tuple(axis[int(i)] for axis, i in zip(plan.axes, row))


def campaign(
    theorem_id: str,
    spec: RingSpec,
    budget: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
) -> CampaignReport:
    """Check a theorem against brute force on every admissible tuple of ``spec``.

    Tuple spaces of at most ``budget`` tuples (default
    ``config.EXHAUSTIVE_LIMIT``) are run exhaustively; larger ones are sampled
    with ``trials`` draws from ``numpy.random.default_rng(seed)``. Passing
    ``trials`` explicitly asks for sampling.
    """
    if theorem_id not in THEOREMS:
        raise InputError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREMS)}")
    budget = config.EXHAUSTIVE_LIMIT if budget is None else budget
    ring = enumerate_ring(spec)
    plan = THEOREMS[theorem_id](oracle(ring))
    space_size = _space_size(plan)

    mode = "exhaustive" if trials is None and space_size <= budget else "sampled"
    rng = None
    if mode == "sampled":
        if trials is None:
            logger.warning(
                f"{theorem_id} on {spec.label}: {space_size} tuples exceed the exhaustive limit {budget}, sampling"
            )
        trials = config.DEFAULT_TRIALS if trials is None else trials
        seed = config.DEFAULT_SEED if seed is None else seed
        rng = np.random.default_rng(seed)
    else:
        seed = None
    logger.info(f"campaign {theorem_id} on {spec.label}: {mode}, {space_size} tuples in scope")

    tested = skipped = 0
    found: List[Counterexample] = []
    for values in _tuples(plan, mode, rng, trials or 0):
        if not plan.admissible(*values):
            skipped += 1
            continue
        tested += 1
        try:
            reason = plan.check(*values)
        except RadinvError as exc:
            reason = f"{type(exc).__name__}: {exc}"
        if reason is not None:
            example = Counterexample(tuple(repr(v) for v in values), reason)
            logger.warning(f"counterexample for {theorem_id}: {example.elements} ({reason})")
            found.append(example)

    logger.info(f"campaign {theorem_id} on {spec.label}: {tested} tuples tested, {len(found)} counterexamples")
    return CampaignReport(
        theorem_id=theorem_id,
        ring=spec,
        mode=mode,
        tuples_tested=tested,
        skipped=skipped,
        seed=seed,
        trials=trials if mode == "sampled" else None,
        counterexamples=tuple(sorted(set(found))),
    )

