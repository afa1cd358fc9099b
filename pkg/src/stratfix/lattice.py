"""Stratified complete lattices and the relations derived from them.

A stratified lattice is a complete lattice (L, <=) together with a stage
count kappa and one preorder per stage alpha < kappa, written here as
``stage_le(alpha, x, y)``.  Stages behave like components compared in
order: ``stage_le(alpha, x, y)`` says x and y agree strictly below stage
alpha and x sits at or below y at stage alpha.  Four structural axioms
(checked exhaustively in :mod:`stratfix.axioms`) make the induced
stage-by-stage comparison ``lex_le`` a complete lattice order, and give
every element a canonical decomposition into per-stage slices.

Concrete carriers live in :mod:`stratfix.values` (the truth-value chain)
and :mod:`stratfix.models` (interpretation spaces, products, and the
stagewise product construction).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Collection, Iterable, Iterator, Sequence

from .errors import PreconditionError, SizeLimitError, StageRangeError

Element = Any

#: Ceiling for materialising a full carrier in memory.
CARRIER_MATERIALIZE_LIMIT = 2_000_000


class StratifiedLattice(ABC):
    """Interface contract plus the operations derivable from it.

    Subclasses provide the primitives: the carrier, the base order
    ``le`` with its suprema ``lub``, the stage count, the per-stage
    preorders ``stage_le``, and the per-stage suprema ``stage_lub``.
    Everything else here (stage equivalence, the lexicographic order,
    slices, compatible sequences, ``lex_lub``) is derived and shared.

    All operations are pure; elements are immutable values.
    """

    # -- primitives -----------------------------------------------------

    @abstractmethod
    def carrier_size(self) -> int:
        """Number of elements, computed without enumerating them."""

    @abstractmethod
    def iter_carrier(self) -> Iterator[Element]:
        """Yield every element once, in a fixed canonical order."""

    @abstractmethod
    def le(self, x: Element, y: Element) -> bool:
        """The base lattice order."""

    @abstractmethod
    def lub(self, xs: Iterable[Element]) -> Element:
        """Least upper bound in the base order; ``lub(()) `` is bottom."""

    @abstractmethod
    def stage_count(self) -> int:
        """Number of stages (kappa); stage indices run 0..kappa-1."""

    @abstractmethod
    def stage_le(self, alpha: int, x: Element, y: Element) -> bool:
        """The stage-alpha preorder."""

    @abstractmethod
    def stage_lub(self, alpha: int, anchor: Element, xs: Collection[Element]) -> Element:
        """Stage-alpha supremum of ``xs`` taken inside the anchor's class.

        ``xs`` must agree with ``anchor`` at every stage below ``alpha``;
        violating that raises :class:`PreconditionError`.  The anchor only
        matters when ``xs`` is empty, where the result is the least
        element of the anchor's below-alpha agreement class; for nonempty
        ``xs`` implementations must still validate consistency.
        """

    # -- small helpers ---------------------------------------------------

    def check_stage(self, alpha: int) -> None:
        if not 0 <= alpha < self.stage_count():
            raise StageRangeError(
                f"stage {alpha} out of range for {self.stage_count()} stages")

    def carrier(self) -> tuple[Element, ...]:
        if self.carrier_size() > CARRIER_MATERIALIZE_LIMIT:
            raise SizeLimitError(
                f"carrier of size {self.carrier_size()} is too large to materialise")
        return tuple(self.iter_carrier())

    def bottom(self) -> Element:
        return self.lub(())

    def sort_key(self, x: Element):
        """Canonical sort key; elements of one lattice must be comparable."""
        return x

    def default_step_budget(self) -> int:
        """Successor steps between forced limit steps in stage iteration."""
        size = self.carrier_size()
        if size <= 10_000:
            return size + 1
        return 2 * self.stage_count() + 2

    def default_step_guard(self) -> int:
        """Per-stage divergence guard for fixed-point iteration."""
        return 10 * min(self.carrier_size(), 1_000_000)

    # -- derived relations ----------------------------------------------

    def stage_eq(self, alpha: int, x: Element, y: Element) -> bool:
        """Stage-alpha equivalence: both directions of ``stage_le``."""
        return self.stage_le(alpha, x, y) and self.stage_le(alpha, y, x)

    def stage_lt(self, alpha: int, x: Element, y: Element) -> bool:
        """Strict stage-alpha comparison."""
        return self.stage_le(alpha, x, y) and not self.stage_le(alpha, y, x)

    def lex_lt(self, x: Element, y: Element) -> bool:
        """x sits strictly below y at some stage."""
        return any(self.stage_lt(a, x, y) for a in range(self.stage_count()))

    def lex_le(self, x: Element, y: Element) -> bool:
        """The global stagewise order: equality or strict at some stage."""
        return x == y or self.lex_lt(x, y)

    # -- slices and compatible sequences ---------------------------------

    def slice(self, x: Element, alpha: int) -> Element:
        """The least element agreeing with x at every stage up to alpha.

        Always equal to ``stage_lub(alpha, x, {x})``.
        """
        return self.stage_lub(alpha, x, (x,))

    def decompose(self, x: Element) -> tuple[Element, ...]:
        """All slices of x, one per stage; a compatible sequence."""
        return tuple(self.slice(x, a) for a in range(self.stage_count()))

    def is_compatible(self, entries: Sequence[Element]) -> bool:
        """Whether ``entries`` is a compatible sequence.

        Entry alpha must be slice-normal at its own stage (the least
        element of its agreement class) and all later entries must agree
        with it at stage alpha.
        """
        kappa = self.stage_count()
        if len(entries) != kappa:
            return False
        for a, e in enumerate(entries):
            if self.slice(e, a) != e:
                return False
        for a in range(kappa):
            for b in range(a + 1, kappa):
                if not self.stage_eq(a, entries[a], entries[b]):
                    return False
        return True

    def recompose(self, entries: Sequence[Element]) -> Element:
        """Inverse of :meth:`decompose`; rejects incompatible sequences."""
        if not self.is_compatible(entries):
            raise PreconditionError("not a compatible sequence")
        return self.lub(entries)

    # -- suprema in the stagewise order -----------------------------------

    def lex_lub(self, xs: Iterable[Element]) -> Element:
        """Least upper bound of ``xs`` in the ``lex_le`` order.

        Built stage by stage: at each stage take the stage supremum of
        the members still tied with the approximation so far, and drop
        the rest; once nobody is tied, the approximation is frozen.  The
        supremum of the per-stage approximations is the answer.  An empty
        ``xs`` yields bottom, the least element of ``lex_le``.
        """
        pool = sorted(set(xs), key=self.sort_key)
        if not pool:
            return self.bottom()
        chosen: list[Element] = []
        for alpha in range(self.stage_count()):
            if pool:
                stage_sup = self.stage_lub(alpha, pool[0], pool)
                pool = [y for y in pool if self.stage_eq(alpha, y, stage_sup)]
            else:
                stage_sup = self.lub(chosen)
            chosen.append(stage_sup)
        return self.lub(chosen)
