"""Concrete stratified lattices beyond the plain truth chain.

* :class:`ProductLattice` — coordinatewise products of lattices that
  share a stage count; all four structural axioms lift coordinatewise,
  and so do the optional ones when every factor has them.
* :class:`InterpretationLattice` — the space of total assignments from
  a finite atom universe into a truth chain; a labelled product of
  truth-chain factors.  Elements are tuples of truth values, positions
  following the sorted universe.
* :class:`StagewiseProduct` — one factor lattice *per stage*, each
  carrying a separate stage order.  Yields models of the four structural
  axioms whenever the base order extends the stage order, and is the
  standard source of counterexamples to the optional fifth axiom.

``model_from_spec`` exposes a small named catalogue for the CLI.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Collection, Iterable, Iterator, Mapping, Sequence

from .errors import (
    LatticeConstructionError,
    ModelSpecError,
    PreconditionError,
)
from .lattice import StratifiedLattice
from .values import TruthLattice, TruthValue, parse_value, render_value


class ProductLattice(StratifiedLattice):
    """Coordinatewise product of stratified lattices with equal stage counts."""

    def __init__(self, factors: Sequence[StratifiedLattice]):
        factors = tuple(factors)
        if not factors:
            raise LatticeConstructionError("a product needs at least one factor")
        counts = {f.stage_count() for f in factors}
        if len(counts) != 1:
            raise LatticeConstructionError(
                f"factors disagree on stage count: {sorted(counts)}")
        self.factors = factors

    def __repr__(self) -> str:
        return f"ProductLattice({list(self.factors)!r})"

    def carrier_size(self) -> int:
        size = 1
        for f in self.factors:
            size *= f.carrier_size()
        return size

    def iter_carrier(self) -> Iterator[tuple]:
        yield from itertools.product(*(f.iter_carrier() for f in self.factors))

    def le(self, x: tuple, y: tuple) -> bool:
        return all(f.le(a, b) for f, a, b in zip(self.factors, x, y))

    def lub(self, xs: Iterable[tuple]) -> tuple:
        xs = list(xs)
        return tuple(
            f.lub([x[i] for x in xs]) for i, f in enumerate(self.factors))

    def stage_count(self) -> int:
        return self.factors[0].stage_count()

    def stage_le(self, alpha: int, x: tuple, y: tuple) -> bool:
        return all(
            f.stage_le(alpha, a, b) for f, a, b in zip(self.factors, x, y))

    def stage_eq(self, alpha: int, x: tuple, y: tuple) -> bool:
        return all(
            f.stage_eq(alpha, a, b) for f, a, b in zip(self.factors, x, y))

    def stage_lub(self, alpha: int, anchor: tuple, xs: Collection[tuple]) -> tuple:
        xs = list(xs)
        return tuple(
            f.stage_lub(alpha, anchor[i], [x[i] for x in xs])
            for i, f in enumerate(self.factors))

    def sort_key(self, x: tuple):
        return tuple(f.sort_key(c) for f, c in zip(self.factors, x))


def make_product(factors: Sequence[StratifiedLattice]) -> ProductLattice:
    return ProductLattice(factors)


class InterpretationLattice(ProductLattice):
    """Assignments of truth values to a finite, nonempty atom universe.

    An element is a tuple of truth values aligned with ``self.universe``,
    which is kept sorted so that renderings are deterministic.
    """

    def __init__(self, universe: Iterable[str], levels: int):
        atoms = tuple(sorted(universe))
        if not atoms:
            raise LatticeConstructionError("universe must be nonempty")
        if len(set(atoms)) != len(atoms):
            raise LatticeConstructionError("universe has duplicate atoms")
        super().__init__([TruthLattice(levels) for _ in atoms])
        self.universe = atoms
        self.levels = levels
        self.atom_index = {a: i for i, a in enumerate(atoms)}

    def __repr__(self) -> str:
        return f"InterpretationLattice(universe={self.universe!r}, levels={self.levels})"

    def from_dict(self, assignment: Mapping[str, TruthValue]) -> tuple:
        return tuple(assignment[a] for a in self.universe)

    def to_dict(self, element: tuple) -> dict[str, TruthValue]:
        return dict(zip(self.universe, element))

    def render_element(self, element: tuple) -> dict[str, str]:
        return {a: render_value(v) for a, v in zip(self.universe, element)}

    def parse_element(self, rendered: Mapping[str, str]) -> tuple:
        return tuple(parse_value(rendered[a]) for a in self.universe)

    def default_step_guard(self) -> int:
        return 10 * self.levels * len(self.universe)


def make_interpretation_model(universe: Iterable[str], levels: int) -> InterpretationLattice:
    return InterpretationLattice(universe, levels)


# -- stagewise products ------------------------------------------------


@dataclass(frozen=True)
class StageFactor:
    """A finite carrier with two lattice orders: a base one and a stage one.

    Orders are given as sets of (lower, upper) pairs; the constructor
    closes nothing, so pass the full reflexive-transitive relations.
    Suprema are found by scanning, which also validates that the carrier
    really is a lattice for each order.
    """

    name: str
    elements: tuple
    base_pairs: frozenset = field(repr=False)
    stage_pairs: frozenset = field(repr=False)

    def __post_init__(self):
        for label, pairs in (("base", self.base_pairs), ("stage", self.stage_pairs)):
            self._validate_order(label, pairs)
        # Every pair of elements must have a least upper bound in both orders.
        for label in ("base", "stage"):
            for a in self.elements:
                for b in self.elements:
                    self._lub(label, (a, b))
            self._lub(label, ())

    def _validate_order(self, label: str, pairs: frozenset) -> None:
        elems = set(self.elements)
        for a, b in pairs:
            if a not in elems or b not in elems:
                raise LatticeConstructionError(
                    f"{self.name}: {label} order mentions unknown element {(a, b)!r}")
        for a in self.elements:
            if (a, a) not in pairs:
                raise LatticeConstructionError(
                    f"{self.name}: {label} order is not reflexive at {a!r}")
        for a, b in pairs:
            if (b, a) in pairs and a != b:
                raise LatticeConstructionError(
                    f"{self.name}: {label} order is not antisymmetric on {a!r},{b!r}")
            for c in self.elements:
                if (b, c) in pairs and (a, c) not in pairs:
                    raise LatticeConstructionError(
                        f"{self.name}: {label} order is not transitive via {b!r}")

    def _pairs(self, label: str) -> frozenset:
        return self.base_pairs if label == "base" else self.stage_pairs

    def _lub(self, label: str, xs: Collection) -> Any:
        pairs = self._pairs(label)
        uppers = [c for c in self.elements
                  if all((x, c) in pairs for x in xs)]
        least = [u for u in uppers
                 if all((u, v) in pairs for v in uppers)]
        if len(least) != 1:
            raise LatticeConstructionError(
                f"{self.name}: no unique {label} supremum for {sorted(map(str, xs))}")
        return least[0]

    def base_le(self, a, b) -> bool:
        return (a, b) in self.base_pairs

    def base_lub(self, xs: Collection) -> Any:
        return self._lub("base", xs)

    def stage_le(self, a, b) -> bool:
        return (a, b) in self.stage_pairs

    def stage_lub(self, xs: Collection) -> Any:
        return self._lub("stage", xs)


def factor_from_orders(name: str, elements: Sequence,
                       base_le, stage_le=None) -> StageFactor:
    """Build a :class:`StageFactor` from comparison callables."""
    stage_le = stage_le or base_le
    elems = tuple(elements)
    base = frozenset((a, b) for a in elems for b in elems if base_le(a, b))
    stage = frozenset((a, b) for a in elems for b in elems if stage_le(a, b))
    return StageFactor(name, elems, base, stage)


def chain_diamond_factor() -> StageFactor:
    """Four elements, a chain as base order and a diamond as stage order.

    Base: 0 < a < b < 1.  Stage: 0 below a and b, both below 1, with a
    and b incomparable.  The base order extends the stage order, so
    stagewise products built from this factor satisfy the four
    structural axioms while violating the order-compatibility axiom.
    """
    chain = ["0", "a", "b", "1"]
    rank = {e: i for i, e in enumerate(chain)}
    diamond = {(x, x) for x in chain}
    diamond |= {("0", "a"), ("0", "b"), ("0", "1"), ("a", "1"), ("b", "1")}
    return StageFactor("chain4-diamond4", tuple(chain),
                       frozenset((x, y) for x in chain for y in chain
                                 if rank[x] <= rank[y]),
                       frozenset(diamond))


def unit_factor() -> StageFactor:
    return factor_from_orders("unit", ("*",), lambda a, b: True)


def powerset_factor(n: int) -> StageFactor:
    """Subsets of an n-element set ordered by inclusion, both orders alike."""
    elems = tuple(range(1 << n))
    return factor_from_orders(
        f"powerset{n}", elems, lambda a, b: a & b == a)


class StagewiseProduct(StratifiedLattice):
    """Product with one factor per stage and stage orders read off factors.

    Elements are tuples with one coordinate per stage.  The base order
    and its suprema are coordinatewise in the factors' base orders.  At
    stage alpha, two elements compare iff they agree on every coordinate
    below alpha and the alpha coordinates compare in that factor's stage
    order.  Construction requires each factor's base order to extend its
    stage order; otherwise the stage suprema demanded by the structural
    axioms do not exist, and the constructor reports a witness pair.
    """

    def __init__(self, factors: Sequence[StageFactor]):
        factors = tuple(factors)
        if not factors:
            raise LatticeConstructionError("need at least one stage factor")
        for i, f in enumerate(factors):
            for a, b in f.stage_pairs:
                if not f.base_le(a, b):
                    raise LatticeConstructionError(
                        f"stage {i} ({f.name}): base order does not extend "
                        f"stage order at witness pair ({a!r}, {b!r})")
        self.factors = factors

    def __repr__(self) -> str:
        return f"StagewiseProduct({[f.name for f in self.factors]!r})"

    def carrier_size(self) -> int:
        size = 1
        for f in self.factors:
            size *= len(f.elements)
        return size

    def iter_carrier(self) -> Iterator[tuple]:
        yield from itertools.product(*(f.elements for f in self.factors))

    def le(self, x: tuple, y: tuple) -> bool:
        return all(f.base_le(a, b) for f, a, b in zip(self.factors, x, y))

    def lub(self, xs: Iterable[tuple]) -> tuple:
        xs = list(xs)
        return tuple(
            f.base_lub([x[i] for x in xs]) for i, f in enumerate(self.factors))

    def stage_count(self) -> int:
        return len(self.factors)

    def stage_le(self, alpha: int, x: tuple, y: tuple) -> bool:
        self.check_stage(alpha)
        if any(x[b] != y[b] for b in range(alpha)):
            return False
        return self.factors[alpha].stage_le(x[alpha], y[alpha])

    def stage_lub(self, alpha: int, anchor: tuple, xs: Collection[tuple]) -> tuple:
        self.check_stage(alpha)
        for x in xs:
            if any(x[b] != anchor[b] for b in range(alpha)):
                raise PreconditionError(
                    f"{x!r} escapes the anchor's class below stage {alpha}")
        coords = list(anchor[:alpha])
        coords.append(self.factors[alpha].stage_lub([x[alpha] for x in xs]))
        for beta in range(alpha + 1, len(self.factors)):
            coords.append(self.factors[beta].base_lub(()))
        return tuple(coords)


def make_nonstandard_product(factors: Sequence[StageFactor]) -> StagewiseProduct:
    return StagewiseProduct(factors)


# -- named catalogue ----------------------------------------------------

CATALOGUE = (
    "V:<levels>",
    "VZ:<levels>:<atoms>",
    "PROD:<spec>,<spec>,...",
    "NSP:chain4-diamond4:<stages>",
)


def _positive_int(text: str, what: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise ModelSpecError(f"{what} must be an integer, got {text!r}") from None
    if n < 1:
        raise ModelSpecError(f"{what} must be at least 1, got {n}")
    return n


def model_from_spec(spec: str) -> StratifiedLattice:
    """Build a lattice from a catalogue spec string.

    Known forms: ``V:k`` (truth chain with k levels), ``VZ:k:n``
    (interpretations of n atoms over k levels), ``PROD:a,b,...``
    (product; parts may not nest further products), and
    ``NSP:chain4-diamond4:k`` (k chain/diamond stage factors).
    """
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    if head == "V":
        return TruthLattice(_positive_int(rest, "level cap"))
    if head == "VZ":
        k, _, n = rest.partition(":")
        levels = _positive_int(k, "level cap")
        atoms = _positive_int(n, "atom count")
        return InterpretationLattice([f"p{i}" for i in range(atoms)], levels)
    if head == "PROD":
        parts = [p for p in rest.split(",") if p.strip()]
        if not parts:
            raise ModelSpecError("PROD needs at least one factor spec")
        if any(p.strip().startswith("PROD:") for p in parts):
            raise ModelSpecError("nested PROD specs are not supported")
        return ProductLattice([model_from_spec(p) for p in parts])
    if head == "NSP":
        kind, _, k = rest.partition(":")
        if kind != "chain4-diamond4":
            raise ModelSpecError(
                f"unknown stagewise preset {kind!r}; known: chain4-diamond4")
        stages = _positive_int(k, "stage count")
        return StagewiseProduct([chain_diamond_factor()] * stages)
    raise ModelSpecError(
        f"unknown model spec {spec!r}; catalogue: {', '.join(CATALOGUE)}")
