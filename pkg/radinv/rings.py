"""Ring spaces and element handles.

A :class:`RingSpace` owns the arithmetic of one ring; elements travel as
:class:`Elem` handles that remember which space they belong to. Finite spaces
only have to enumerate their values: witness search, unit inversion, the
Jacobson radical, reflexive inverses and (b,c)-inverses then fall back to
exhaustive scans.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Dict, FrozenSet, Hashable, Iterator, List, Optional, Tuple

from .errors import EquivalenceError, InputError

Value = Hashable


class RingSpace(ABC):
    """An associative unital ring with optional capabilities."""

    #: Whether :meth:`values` enumerates the whole ring.
    is_finite: bool = False

    def __init__(self, name: str) -> None:
        self.name = name
        self._right_ideals: Dict[Value, FrozenSet[Value]] = {}
        self._left_ideals: Dict[Value, FrozenSet[Value]] = {}
        self._units: Dict[Value, Value] | None = None
        self._radical: FrozenSet[Value] | None = None
        self._bc_cache: Dict[Tuple[Value, Value, Value], Optional[Value]] = {}
        self._reflexive_cache: Dict[Value, Optional[Value]] = {}

    # -- identity -----------------------------------------------------------
    @property
    def key(self) -> Tuple[Any, ...]:
        """Identifier used to decide whether two handles may be combined."""
        return (type(self).__name__, self.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RingSpace) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"

    # -- raw arithmetic -------------------------------------------------------
    @abstractmethod
    def add_values(self, x: Value, y: Value) -> Value: ...

    @abstractmethod
    def mul_values(self, x: Value, y: Value) -> Value: ...

    @abstractmethod
    def neg_value(self, x: Value) -> Value: ...

    @abstractmethod
    def zero_value(self) -> Value: ...

    @abstractmethod
    def one_value(self) -> Value: ...

    def format_value(self, x: Value) -> str:
        return repr(x)

    # -- handles --------------------------------------------------------------
    def elem(self, value: Value) -> "Elem":
        return Elem(self, value)

    @property
    def zero(self) -> "Elem":
        return Elem(self, self.zero_value())

    @property
    def one(self) -> "Elem":
        return Elem(self, self.one_value())

    def from_int(self, n: int) -> "Elem":
        """Return n·1 by double-and-add."""
        result = self.zero_value()
        step = self.one_value() if n >= 0 else self.neg_value(self.one_value())
        n = abs(n)
        while n:
            if n & 1:
                result = self.add_values(result, step)
            step = self.add_values(step, step)
            n >>= 1
        return Elem(self, result)

    # -- optional capabilities ------------------------------------------------
    @property
    def has_involution(self) -> bool:
        return False

    def star(self, x: "Elem") -> "Elem":
        raise InputError(f"{self.name} has no involution")

    def is_radical(self, x: "Elem") -> bool:
        """Membership in the working radical of this space."""
        if self.is_finite:
            return x.value in self.radical()
        raise NotImplementedError(f"{self.name} has no radical membership test")

    @property
    def nilpotency_bound(self) -> int:
        if self.is_finite:
            return self.size
        raise NotImplementedError(f"{self.name} has no nilpotency bound")

    def values(self) -> Iterator[Value]:
        raise NotImplementedError(f"{self.name} is not enumerable")

    def elements(self) -> Iterator["Elem"]:
        for value in self.values():
            yield Elem(self, value)

    @property
    def size(self) -> int:
        self._require_finite("size")
        return sum(1 for _ in self.values())

    def right_witness(self, y: "Elem", b: "Elem") -> Optional["Elem"]:
        """Return r with y = b·r, or None."""
        self._require_finite("right_witness")
        if y.value not in self.right_ideal(b.value):
            return None
        for r in self.values():
            if self.mul_values(b.value, r) == y.value:
                return Elem(self, r)
        return None  # pragma: no cover - ideal membership guarantees a hit

    def left_witness(self, y: "Elem", c: "Elem") -> Optional["Elem"]:
        """Return s with y = s·c, or None."""
        self._require_finite("left_witness")
        if y.value not in self.left_ideal(c.value):
            return None
        for s in self.values():
            if self.mul_values(s, c.value) == y.value:
                return Elem(self, s)
        return None  # pragma: no cover

    def unit_inverse(self, x: "Elem") -> Optional["Elem"]:
        self._require_finite("unit_inverse")
        inverse = self.unit_table().get(x.value)
        return None if inverse is None else Elem(self, inverse)

    def reflexive_inverse(self, x: "Elem") -> Optional["Elem"]:
        """Canonical {1,2}-inverse: the first one in enumeration order."""
        self._require_finite("reflexive_inverse")
        if x.value not in self._reflexive_cache:
            a = x.value
            found = None
            for candidate in self.values():
                if self._mul3(a, candidate, a) == a and self._mul3(candidate, a, candidate) == candidate:
                    found = candidate
                    break
            self._reflexive_cache[a] = found
        found = self._reflexive_cache[x.value]
        return None if found is None else Elem(self, found)

    def bc_inverse(self, a: "Elem", b: "Elem", c: "Elem") -> Optional["Elem"]:
        """Return a^{||(b,c)} or None when it does not exist."""
        self._require_finite("bc_inverse")
        key = (a.value, b.value, c.value)
        if key not in self._bc_cache:
            self._bc_cache[key] = self._scan_bc_inverse(*key)
        found = self._bc_cache[key]
        return None if found is None else Elem(self, found)

    def drazin(self, a: "Elem") -> Optional[Tuple["Elem", int]]:
        """Return (a^D, i(a)) or None, via the inverse along a^k."""
        power = self.one
        for k in range(self.nilpotency_bound + 1):
            found = self.bc_inverse(a, power, power)
            if found is not None:
                return found, k
            power = power * a
        return None

    # -- finite-ring machinery ----------------------------------------------
    def right_ideal(self, b: Value) -> FrozenSet[Value]:
        """The principal right ideal bR as a set of values."""
        if b not in self._right_ideals:
            self._right_ideals[b] = frozenset(self.mul_values(b, r) for r in self.values())
        return self._right_ideals[b]

    def left_ideal(self, c: Value) -> FrozenSet[Value]:
        """The principal left ideal Rc as a set of values."""
        if c not in self._left_ideals:
            self._left_ideals[c] = frozenset(self.mul_values(s, c) for s in self.values())
        return self._left_ideals[c]

    def unit_table(self) -> Dict[Value, Value]:
        """Map every unit to its two-sided inverse."""
        self._require_finite("unit_table")
        if self._units is None:
            one = self.one_value()
            values: List[Value] = list(self.values())
            table: Dict[Value, Value] = {}
            for x in values:
                for y in values:
                    if self.mul_values(x, y) == one and self.mul_values(y, x) == one:
                        table[x] = y
                        break
            self._units = table
        return self._units

    def radical(self) -> FrozenSet[Value]:
        """Jacobson radical by quasi-regularity: x with 1 - r·x a unit for all r."""
        self._require_finite("radical")
        if self._radical is None:
            units = self.unit_table()
            one = self.one_value()
            values = list(self.values())
            self._radical = frozenset(
                x
                for x in values
                if all(self.add_values(one, self.neg_value(self.mul_values(r, x))) in units for r in values)
            )
        return self._radical

    def _scan_bc_inverse(self, a: Value, b: Value, c: Value) -> Optional[Value]:
        candidates = self.right_ideal(b) & self.left_ideal(c)
        solutions = [
            y for y in candidates if self._mul3(c, a, y) == c and self._mul3(y, a, b) == b
        ]
        if len(solutions) > 1:
            raise EquivalenceError(
                f"(b,c)-inverse not unique in {self.name}: {sorted(map(self.format_value, solutions))}"
            )
        return solutions[0] if solutions else None

    def _mul3(self, x: Value, y: Value, z: Value) -> Value:
        return self.mul_values(self.mul_values(x, y), z)

    def _require_finite(self, what: str) -> None:
        if not self.is_finite:
            raise NotImplementedError(f"{what} needs an enumerable ring, {self.name} is not")


class Elem:
    """Immutable handle on a value of a :class:`RingSpace`.

    Integers are accepted on either side of ``+``, ``-`` and ``*`` and stand
    for multiples of the identity, so ``1 + x * j`` reads like the algebra.
    """

    __slots__ = ("space", "value")

    space: RingSpace
    value: Value

    def __init__(self, space: RingSpace, value: Value) -> None:
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("Elem is immutable")

    def _coerce(self, other: object) -> "Elem":
        if isinstance(other, Elem):
            if other.space.key != self.space.key:
                raise InputError(f"cannot combine elements of {self.space.name} and {other.space.name}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.space.from_int(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Elem":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return Elem(self.space, self.space.add_values(self.value, rhs.value))

    def __radd__(self, other: object) -> "Elem":
        return self.__add__(other)

    def __neg__(self) -> "Elem":
        return Elem(self.space, self.space.neg_value(self.value))

    def __sub__(self, other: object) -> "Elem":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Elem":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "Elem":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return Elem(self.space, self.space.mul_values(self.value, rhs.value))

    def __rmul__(self, other: object) -> "Elem":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs * self

    def __pow__(self, exponent: int) -> "Elem":
        if exponent < 0:
            raise InputError("negative powers are not defined for ring elements")
        result = self.space.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def star(self) -> "Elem":
        return self.space.star(self)

    def is_zero(self) -> bool:
        return self.value == self.space.zero_value()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Elem):
            return NotImplemented
        return self.space.key == other.space.key and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.space.key, self.value))

    def __repr__(self) -> str:
        return f"{self.space.name}:{self.space.format_value(self.value)}"


def same_space(*elements: Elem) -> RingSpace:
    """Return the common space of the given handles or raise InputError."""
    if not elements:
        raise InputError("no elements given")
    space = elements[0].space
    for element in elements[1:]:
        if element.space.key != space.key:
            raise InputError(f"mixed ring spaces: {space.name} and {element.space.name}")
    return space
