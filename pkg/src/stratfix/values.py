"""The chain of graded truth values and its stratified lattice.

Values form a single chain

    F0 < F1 < F2 < ... < 0 < ... < T2 < T1 < T0

of falsity levels, an undefined middle value, and truth levels.  A lower
level index is a stronger (more classical) value; negation bumps the
level by one and flips the side, so iterated negation drifts toward the
undefined middle.  The *order* of a value is its level index, with the
undefined value at order +infinity.

:class:`TruthLattice` truncates the chain at a level cap and equips it
with one stage per level.  At stage alpha, values of order below alpha
compare only by equality, values of order above alpha are all
equivalent, and F_alpha / T_alpha act as the stage's extremes.
"""

from __future__ import annotations

import math
from typing import Collection, Iterable, Iterator

from .errors import (
    InputError,
    LatticeConstructionError,
    PreconditionError,
    TruncationError,
)
from .lattice import StratifiedLattice


class TruthValue:
    """One element of the chain; immutable and interned."""

    __slots__ = ("sign", "level")

    def __init__(self, sign: int, level: int):
        object.__setattr__(self, "sign", sign)
        object.__setattr__(self, "level", level)

    def __setattr__(self, name, value):
        raise AttributeError("TruthValue is immutable")

    @property
    def order(self) -> float:
        """Level index, +infinity for the undefined value."""
        return math.inf if self.sign == 0 else self.level

    def _key(self):
        # F levels ascend, T levels descend, undefined in the middle.
        return (self.sign, self.level if self.sign <= 0 else -self.level)

    def __lt__(self, other: "TruthValue") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "TruthValue") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "TruthValue") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "TruthValue") -> bool:
        return self._key() >= other._key()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruthValue)
            and self.sign == other.sign
            and self.level == other.level
        )

    def __hash__(self) -> int:
        return hash((self.sign, self.level))

    def __repr__(self) -> str:
        return render_value(self)


UNDEFINED = TruthValue(0, 0)

_FALSE_CACHE: dict[int, TruthValue] = {}
_TRUE_CACHE: dict[int, TruthValue] = {}


def false_at(level: int) -> TruthValue:
    """The falsity value at the given level (F0 is classical false)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    v = _FALSE_CACHE.get(level)
    if v is None:
        v = _FALSE_CACHE[level] = TruthValue(-1, level)
    return v


def true_at(level: int) -> TruthValue:
    """The truth value at the given level (T0 is classical true)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    v = _TRUE_CACHE.get(level)
    if v is None:
        v = _TRUE_CACHE[level] = TruthValue(1, level)
    return v


def render_value(v: TruthValue) -> str:
    if v.sign == 0:
        return "0"
    return ("T" if v.sign > 0 else "F") + str(v.level)


def parse_value(text: str) -> TruthValue:
    """Inverse of :func:`render_value`."""
    if text == "0":
        return UNDEFINED
    if len(text) >= 2 and text[0] in "FT" and text[1:].isdigit():
        level = int(text[1:])
        return true_at(level) if text[0] == "T" else false_at(level)
    raise InputError(f"not a truth value: {text!r}")


def negate(v: TruthValue) -> TruthValue:
    """Level-bumping negation, total on the unbounded chain."""
    if v.sign == 0:
        return UNDEFINED
    return true_at(v.level + 1) if v.sign < 0 else false_at(v.level + 1)


def negate_within(v: TruthValue, levels: int) -> TruthValue:
    """Negation that refuses to leave the first ``levels`` levels."""
    if v.sign != 0 and v.level + 1 >= levels:
        raise TruncationError(
            f"negating {v} needs level {v.level + 1}, beyond cap {levels}")
    return negate(v)


def clip(v: TruthValue, levels: int) -> TruthValue:
    """Collapse values of order >= ``levels`` to the undefined middle.

    Inside a ``levels``-capped lattice this is invisible to every stage
    relation: any value of order at or beyond the cap is stage-equivalent
    to the undefined value at every stage the lattice has.
    """
    if v.sign != 0 and v.level >= levels:
        return UNDEFINED
    return v


def conj(a: TruthValue, b: TruthValue) -> TruthValue:
    return a if a <= b else b


def disj(a: TruthValue, b: TruthValue) -> TruthValue:
    return a if a >= b else b


def sup(values: Iterable[TruthValue]) -> TruthValue:
    """Supremum of finitely many values; empty yields classical false."""
    return max(values, default=false_at(0))


class TruthLattice(StratifiedLattice):
    """The chain truncated at ``levels``, with one stage per level.

    Carrier: F0..F(levels-1), the undefined value, T(levels-1)..T0.
    The stage-alpha supremum keeps a decided anchor, returns F_alpha or
    T_alpha when the plain supremum already lands there, and otherwise
    falls to the stage default: F_(alpha+1), except at the last stage,
    where the undefined value is the least element of the whole
    beyond-the-cap region and plays that role.
    """

    def __init__(self, levels: int):
        if levels < 1:
            raise LatticeConstructionError("level cap must be at least 1")
        self.levels = levels

    def __repr__(self) -> str:
        return f"TruthLattice(levels={self.levels})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TruthLattice) and self.levels == other.levels

    def __hash__(self) -> int:
        return hash(("TruthLattice", self.levels))

    def carrier_size(self) -> int:
        return 2 * self.levels + 1

    def iter_carrier(self) -> Iterator[TruthValue]:
        for i in range(self.levels):
            yield false_at(i)
        yield UNDEFINED
        for i in reversed(range(self.levels)):
            yield true_at(i)

    def le(self, x: TruthValue, y: TruthValue) -> bool:
        return x <= y

    def lub(self, xs: Iterable[TruthValue]) -> TruthValue:
        return sup(xs)

    def stage_count(self) -> int:
        return self.levels

    def stage_le(self, alpha: int, x: TruthValue, y: TruthValue) -> bool:
        self.check_stage(alpha)
        if x == y:
            return True
        ox, oy = x.order, y.order
        if ox < alpha or oy < alpha:
            return False
        if ox > alpha and oy > alpha:
            return True
        return x == false_at(alpha) or y == true_at(alpha)

    def stage_eq(self, alpha: int, x: TruthValue, y: TruthValue) -> bool:
        self.check_stage(alpha)
        return x == y or (x.order > alpha and y.order > alpha)

    def stage_lub(self, alpha: int, anchor: TruthValue,
                  xs: Collection[TruthValue]) -> TruthValue:
        self.check_stage(alpha)
        if anchor.order < alpha:
            for x in xs:
                if x != anchor:
                    raise PreconditionError(
                        f"{x} escapes the class of decided anchor {anchor} at stage {alpha}")
            return anchor
        for x in xs:
            if x.order < alpha:
                raise PreconditionError(
                    f"{x} escapes the order>={alpha} class at stage {alpha}")
        if xs:
            s = max(xs)
            if s == true_at(alpha) or s == false_at(alpha):
                return s
        else:
            return false_at(alpha)
        if alpha + 1 < self.levels:
            return false_at(alpha + 1)
        return UNDEFINED

    def sort_key(self, x: TruthValue):
        return x._key()
