"""Exhaustive checkers for the structural axioms and their consequences.

Seven axioms are checkable on any finite stratified lattice:

1. a later stage order is contained in every earlier stage equivalence;
2. the stage equivalences jointly separate points;
3. stage suprema exist inside every agreement class: ``stage_lub`` must
   return the unique element that bounds its input in the stage order
   and sits base-below every other such bound;
4. base suprema respect stage equivalence: anything stage-equal to all
   of a nonempty set is stage-equal to its base supremum;
5. (optional) the base order refines into the stage orders: base-below
   plus agreement below a stage implies stage-below at that stage;
6. (optional) base suprema of stagewise-comparable families compare;
7. (optional) stage suprema of rising chains commute with base suprema
   of chain families.

Element variables are always quantified exhaustively.  Set and family
variables are quantified exhaustively while the relevant base set is
small (``subset_limit``) and by seeded sampling above that; every
report records which regime ran.  Rising chains, which stand in for
infinite ones, are enumerated as stagewise-nondecreasing sequences up
to a length cap; on a finite carrier every infinite rising chain is
eventually constant up to stage equivalence, so this loses nothing.

``check_structure_theorems`` verifies the derived laws the rest of the
package leans on: composition and disjointness of the strict stage
relations, the lexicographic order being a partial order, slice
algebra, and the bijection between elements and compatible sequences.
"""

from __future__ import annotations

import itertools
import random
import zlib
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError, SizeLimitError, StratfixError
from .lattice import StratifiedLattice

AXIOM_SUMMARIES = {
    1: "later stage orders refine earlier stage equivalences",
    2: "stage equivalences jointly separate points",
    3: "stage suprema are least stage bounds, base-least among them",
    4: "base suprema respect stage equivalence",
    5: "base order plus agreement implies stage order",
    6: "base suprema preserve stagewise comparison of families",
    7: "stage suprema of chains commute with base suprema of families",
}


def derive_seed(seed: int, *parts: Any) -> int:
    """Stable sub-seed derivation (process-independent, unlike ``hash``)."""
    return zlib.crc32(repr((seed,) + parts).encode()) & 0xFFFFFFFF


@dataclass
class CheckResult:
    """Outcome of one exhaustive-or-sampled check."""

    name: str
    passed: bool
    regime: str = "exhaustive"
    witness: dict | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def describe(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{self.name}: {status} [{self.regime}]"
        if self.witness:
            parts = ", ".join(f"{k}={v!r}" for k, v in self.witness.items())
            text += f" witness: {parts}"
        if self.detail:
            text += f" ({self.detail})"
        return text


class FiniteView:
    """Bitmask tables for the relations of a small finite lattice.

    Row masks: bit j of ``le_rows[i]`` says element i is base-below
    element j, and likewise per stage for the stage relations.  Columns
    are the transposes.  Tables are built lazily and cached.
    """

    def __init__(self, model: StratifiedLattice, max_carrier: int = 4096):
        if model.carrier_size() > max_carrier:
            raise SizeLimitError(
                f"carrier of size {model.carrier_size()} exceeds the "
                f"checkable limit {max_carrier}")
        self.model = model
        self.elements = model.carrier()
        self.n = len(self.elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.full_mask = (1 << self.n) - 1
        self._le_rows: list[int] | None = None
        self._stage_le_rows: dict[int, list[int]] = {}
        self._stage_eq_rows: dict[int, list[int]] = {}
        self._stage_lt_rows: dict[int, list[int]] = {}
        self._stage_le_cols: dict[int, list[int]] = {}
        self._lex_rows: list[int] | None = None
        self._slices: dict[int, list[int]] = {}

    # -- table builders ---------------------------------------------------

    def le_rows(self) -> list[int]:
        if self._le_rows is None:
            le = self.model.le
            es = self.elements
            self._le_rows = [
                sum(1 << j for j, y in enumerate(es) if le(x, y))
                for x in es
            ]
        return self._le_rows

    def stage_le_rows(self, alpha: int) -> list[int]:
        rows = self._stage_le_rows.get(alpha)
        if rows is None:
            sle = self.model.stage_le
            es = self.elements
            rows = [
                sum(1 << j for j, y in enumerate(es) if sle(alpha, x, y))
                for x in es
            ]
            self._stage_le_rows[alpha] = rows
        return rows

    def stage_le_cols(self, alpha: int) -> list[int]:
        cols = self._stage_le_cols.get(alpha)
        if cols is None:
            rows = self.stage_le_rows(alpha)
            cols = [0] * self.n
            for i, row in enumerate(rows):
                bit = 1 << i
                m = row
                while m:
                    j = (m & -m).bit_length() - 1
                    cols[j] |= bit
                    m &= m - 1
            self._stage_le_cols[alpha] = cols
        return cols

    def stage_eq_rows(self, alpha: int) -> list[int]:
        rows = self._stage_eq_rows.get(alpha)
        if rows is None:
            le = self.stage_le_rows(alpha)
            cols = self.stage_le_cols(alpha)
            rows = [le[i] & cols[i] for i in range(self.n)]
            self._stage_eq_rows[alpha] = rows
        return rows

    def stage_lt_rows(self, alpha: int) -> list[int]:
        rows = self._stage_lt_rows.get(alpha)
        if rows is None:
            le = self.stage_le_rows(alpha)
            eq = self.stage_eq_rows(alpha)
            rows = [le[i] & ~eq[i] for i in range(self.n)]
            self._stage_lt_rows[alpha] = rows
        return rows

    def lex_rows(self) -> list[int]:
        if self._lex_rows is None:
            kappa = self.model.stage_count()
            rows = [1 << i for i in range(self.n)]
            for alpha in range(kappa):
                lt = self.stage_lt_rows(alpha)
                for i in range(self.n):
                    rows[i] |= lt[i]
            self._lex_rows = rows
        return self._lex_rows

    def slice_indices(self, alpha: int) -> list[int]:
        """Index of each element's slice at ``alpha``."""
        cached = self._slices.get(alpha)
        if cached is None:
            m = self.model
            cached = [self.index[m.slice(x, alpha)] for x in self.elements]
            self._slices[alpha] = cached
        return cached

    # -- helpers ----------------------------------------------------------

    def bits(self, mask: int) -> Iterator[int]:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def agreement_class(self, i: int, alpha: int) -> int:
        """Mask of elements agreeing with element i strictly below alpha."""
        mask = self.full_mask
        for beta in range(alpha):
            mask &= self.stage_eq_rows(beta)[i]
        return mask


# -- quantification regimes ---------------------------------------------


def _iter_subsets(members: Sequence[int], subset_limit: int, samples: int,
                  rng: random.Random) -> tuple[str, list[tuple[int, ...]]]:
    """Subsets of ``members`` (index lists), exhaustively or sampled."""
    members = list(members)
    if len(members) <= subset_limit:
        out = []
        for size in range(len(members) + 1):
            out.extend(itertools.combinations(members, size))
        return "exhaustive", out
    picked: list[tuple[int, ...]] = [()]
    picked.extend((m,) for m in members)
    picked.append(tuple(members))
    seen = {tuple(s) for s in picked}
    for _ in range(samples):
        size = rng.randint(2, min(len(members), 8))
        subset = tuple(sorted(rng.sample(members, size)))
        if subset not in seen:
            seen.add(subset)
            picked.append(subset)
    regime = (f"sampled({len(picked)} subsets of a {len(members)}-member set)")
    return regime, picked


def iter_stage_chains(model: StratifiedLattice, alpha: int,
                      elements: Sequence[Any], max_len: int,
                      max_chains: int | None = None,
                      rng: random.Random | None = None,
                      ) -> tuple[str, list[tuple[Any, ...]]]:
    """Stagewise-nondecreasing sequences over ``elements`` up to ``max_len``.

    Used wherever a rising chain stands in for an infinite one: the
    sequence is read as repeating its last entry forever.  Enumerates
    depth-first in carrier order; if the enumeration would exceed
    ``max_chains``, falls back to seeded random walks and says so.
    """
    succ: dict[Any, list[Any]] = {}
    for x in elements:
        succ[x] = [y for y in elements if model.stage_le(alpha, x, y)]
    chains: list[tuple[Any, ...]] = []
    budget = max_chains if max_chains is not None else None

    def extend(prefix: tuple) -> bool:
        chains.append(prefix)
        if budget is not None and len(chains) > budget:
            return False
        if len(prefix) < max_len:
            for y in succ[prefix[-1]]:
                if not extend(prefix + (y,)):
                    return False
        return True

    complete = True
    for x in elements:
        if not extend((x,)):
            complete = False
            break
    if complete:
        return "exhaustive", chains
    assert budget is not None
    rng = rng or random.Random(0)
    walks: list[tuple[Any, ...]] = []
    for _ in range(budget):
        x = rng.choice(list(elements))
        walk = [x]
        for _ in range(rng.randint(0, max_len - 1)):
            walk.append(rng.choice(succ[walk[-1]]))
        walks.append(tuple(walk))
    return f"sampled({len(walks)} random walks)", walks


# -- the axiom checks ----------------------------------------------------


def _axiom1(view: FiniteView, **_: Any) -> CheckResult:
    kappa = view.model.stage_count()
    for alpha in range(kappa):
        eq = view.stage_eq_rows(alpha)
        for beta in range(alpha + 1, kappa):
            le = view.stage_le_rows(beta)
            for i in range(view.n):
                bad = le[i] & ~eq[i]
                if bad:
                    j = next(view.bits(bad))
                    return CheckResult(
                        "axiom 1", False,
                        witness={"alpha": alpha, "beta": beta,
                                 "x": view.elements[i], "y": view.elements[j]})
    return CheckResult("axiom 1", True)


def _axiom2(view: FiniteView, **_: Any) -> CheckResult:
    kappa = view.model.stage_count()
    for i in range(view.n):
        mask = view.full_mask
        for alpha in range(kappa):
            mask &= view.stage_eq_rows(alpha)[i]
        if mask != 1 << i:
            extra = mask & ~(1 << i)
            if extra:
                j = next(view.bits(extra))
                return CheckResult(
                    "axiom 2", False,
                    witness={"x": view.elements[i], "y": view.elements[j]},
                    detail="distinct elements equivalent at every stage")
            return CheckResult(
                "axiom 2", False, witness={"x": view.elements[i]},
                detail="element not equivalent to itself at some stage")
    return CheckResult("axiom 2", True)


def _check_stage_lub_instance(view: FiniteView, alpha: int, anchor_i: int,
                              subset: tuple[int, ...]) -> dict | None:
    """One Axiom-3 instance; returns a witness dict or None."""
    m = view.model
    anchor = view.elements[anchor_i]
    xs = [view.elements[i] for i in subset]
    try:
        y = m.stage_lub(alpha, anchor, xs)
    except StratfixError as exc:
        return {"alpha": alpha, "anchor": anchor, "subset": xs,
                "error": str(exc)}
    yi = view.index.get(y)
    if yi is None:
        return {"alpha": alpha, "anchor": anchor, "subset": xs, "result": y,
                "error": "stage supremum left the carrier"}
    region = view.agreement_class(anchor_i, alpha)
    if not (region >> yi) & 1:
        return {"alpha": alpha, "anchor": anchor, "subset": xs, "result": y,
                "error": "stage supremum left the agreement class"}
    xmask = 0
    for i in subset:
        xmask |= 1 << i
    cols = view.stage_le_cols(alpha)
    if xmask & ~cols[yi]:
        return {"alpha": alpha, "anchor": anchor, "subset": xs, "result": y,
                "error": "stage supremum does not bound the set"}
    le_rows = view.le_rows()
    sle_rows = view.stage_le_rows(alpha)
    for zi in view.bits(region):
        if xmask & ~cols[zi]:
            continue
        if not (sle_rows[yi] >> zi) & 1 or not (le_rows[yi] >> zi) & 1:
            return {"alpha": alpha, "anchor": anchor, "subset": xs,
                    "result": y, "other_bound": view.elements[zi],
                    "error": "a competing bound beats the stage supremum"}
    return None


def _axiom3(view: FiniteView, *, subset_limit: int, samples: int,
            seed: int, **_: Any) -> CheckResult:
    kappa = view.model.stage_count()
    regimes = set()
    for anchor_i in range(view.n):
        for alpha in range(kappa):
            region = view.agreement_class(anchor_i, alpha)
            members = list(view.bits(region))
            rng = random.Random(derive_seed(seed, 3, anchor_i, alpha))
            regime, subsets = _iter_subsets(members, subset_limit, samples, rng)
            regimes.add(regime.split("(")[0])
            for subset in subsets:
                witness = _check_stage_lub_instance(view, alpha, anchor_i, subset)
                if witness is not None:
                    return CheckResult("axiom 3", False, regime=regime,
                                       witness=witness)
    return CheckResult("axiom 3", True, regime="/".join(sorted(regimes)))


def _axiom4(view: FiniteView, *, subset_limit: int, samples: int,
            seed: int, **_: Any) -> CheckResult:
    m = view.model
    kappa = m.stage_count()
    rng = random.Random(derive_seed(seed, 4))
    regime, subsets = _iter_subsets(list(range(view.n)), subset_limit,
                                    samples, rng)
    for subset in subsets:
        if not subset:
            continue
        xs = [view.elements[i] for i in subset]
        v = m.lub(xs)
        vi = view.index.get(v)
        if vi is None:
            return CheckResult(
                "axiom 4", False, regime=regime,
                witness={"subset": xs, "lub": v,
                         "error": "base supremum left the carrier"})
        for alpha in range(kappa):
            eq = view.stage_eq_rows(alpha)
            agree = view.full_mask
            for i in subset:
                agree &= eq[i]
            bad = agree & ~eq[vi]
            if bad:
                j = next(view.bits(bad))
                return CheckResult(
                    "axiom 4", False, regime=regime,
                    witness={"alpha": alpha, "subset": xs,
                             "y": view.elements[j], "lub": v})
    return CheckResult("axiom 4", True, regime=regime)


def _axiom5(view: FiniteView, **_: Any) -> CheckResult:
    kappa = view.model.stage_count()
    le = view.le_rows()
    for i in range(view.n):
        agree = view.full_mask
        for alpha in range(kappa):
            sle = view.stage_le_rows(alpha)
            bad = le[i] & agree & ~sle[i]
            if bad:
                j = next(view.bits(bad))
                return CheckResult(
                    "axiom 5", False,
                    witness={"alpha": alpha, "x": view.elements[i],
                             "y": view.elements[j]})
            agree &= view.stage_eq_rows(alpha)[i]
    return CheckResult("axiom 5", True)


def _stage_pairs(view: FiniteView, alpha: int) -> list[tuple[int, int]]:
    rows = view.stage_le_rows(alpha)
    return [(i, j) for i in range(view.n) for j in view.bits(rows[i])]


def _axiom6(view: FiniteView, *, subset_limit: int, samples: int,
            seed: int, pair_limit: int = 200_000, **_: Any) -> CheckResult:
    m = view.model
    regimes = set()
    for alpha in range(m.stage_count()):
        pairs = _stage_pairs(view, alpha)
        rng = random.Random(derive_seed(seed, 6, alpha))
        families: Iterable[tuple[tuple[int, int], ...]]
        if len(pairs) <= subset_limit:
            regime = "exhaustive"
            families = itertools.chain.from_iterable(
                itertools.combinations(pairs, size)
                for size in range(1, len(pairs) + 1))
        elif len(pairs) ** 2 <= pair_limit:
            regime = (f"pairs exhaustive to size 2, "
                      f"{samples} sampled larger families")
            families = itertools.chain(
                ((p,) for p in pairs),
                itertools.combinations(pairs, 2),
                (tuple(rng.sample(pairs, rng.randint(3, min(6, len(pairs)))))
                 for _ in range(samples)))
        else:
            regime = f"sampled({samples} families of {len(pairs)} pairs)"
            families = (
                tuple(rng.sample(pairs, rng.randint(1, min(6, len(pairs)))))
                for _ in range(samples))
        regimes.add(regime)
        sle = view.stage_le_rows(alpha)
        for family in families:
            lx = m.lub([view.elements[i] for i, _ in family])
            ly = m.lub([view.elements[j] for _, j in family])
            li, lj = view.index.get(lx), view.index.get(ly)
            ok = (li is not None and lj is not None
                  and (sle[li] >> lj) & 1)
            if not ok:
                return CheckResult(
                    "axiom 6", False, regime=regime,
                    witness={"alpha": alpha,
                             "family": [(view.elements[i], view.elements[j])
                                        for i, j in family],
                             "lub_x": lx, "lub_y": ly})
    return CheckResult("axiom 6", True, regime="; ".join(sorted(regimes)))


def _axiom7(view: FiniteView, *, subset_limit: int, samples: int, seed: int,
            chain_length: int = 3, chain_cap: int = 1200,
            **kwargs: Any) -> CheckResult:
    ax6 = _axiom6(view, subset_limit=subset_limit, samples=samples, seed=seed,
                  **kwargs)
    if not ax6.passed:
        ax6.detail = "axiom 7 presupposes axiom 6"
        ax6.name = "axiom 7"
        return ax6
    m = view.model
    regimes = set()
    for alpha in range(m.stage_count()):
        rng = random.Random(derive_seed(seed, 7, alpha))
        chain_regime, chains = iter_stage_chains(
            m, alpha, view.elements, chain_length, max_chains=chain_cap,
            rng=rng)
        if len(chains) <= 200:
            fam_regime = "all chain pairs"
            fams: Iterable[tuple] = itertools.combinations_with_replacement(
                chains, 2)
        else:
            fam_regime = f"{samples} sampled chain pairs"
            fams = ((rng.choice(chains), rng.choice(chains))
                    for _ in range(samples))
        regimes.add(f"chains {chain_regime}; {fam_regime}")
        for family in fams:
            length = max(len(c) for c in family)
            padded = [c + (c[-1],) * (length - len(c)) for c in family]
            zs = [m.lub([c[k] for c in padded]) for k in range(length)]
            for k in range(length - 1):
                if not m.stage_le(alpha, zs[k], zs[k + 1]):
                    return CheckResult(
                        "axiom 7", False, regime=fam_regime,
                        witness={"alpha": alpha, "chains": family,
                                 "error": "family suprema fail to rise "
                                          "(axiom 6 violation)"})
            try:
                lhs = m.stage_lub(alpha, zs[0], set(zs))
                rhs = m.lub([m.stage_lub(alpha, c[0], set(c)) for c in padded])
            except StratfixError as exc:
                return CheckResult(
                    "axiom 7", False, regime=fam_regime,
                    witness={"alpha": alpha, "chains": family,
                             "error": str(exc)})
            if not m.stage_eq(alpha, lhs, rhs):
                return CheckResult(
                    "axiom 7", False, regime=fam_regime,
                    witness={"alpha": alpha, "chains": family,
                             "lhs": lhs, "rhs": rhs})
    return CheckResult("axiom 7", True, regime="; ".join(sorted(regimes)))


_AXIOM_CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: _axiom1, 2: _axiom2, 3: _axiom3, 4: _axiom4,
    5: _axiom5, 6: _axiom6, 7: _axiom7,
}


def check_axiom(model: StratifiedLattice, number: int, *,
                subset_limit: int = 8, samples: int = 256, seed: int = 0,
                max_carrier: int = 4096,
                view: FiniteView | None = None) -> CheckResult:
    """Check one axiom on a finite lattice; see the module docstring."""
    if number not in _AXIOM_CHECKS:
        raise ValueError(f"axiom number must be 1..7, got {number}")
    view = view or FiniteView(model, max_carrier=max_carrier)
    result = _AXIOM_CHECKS[number](
        view, subset_limit=subset_limit, samples=samples, seed=seed)
    result.detail = result.detail or AXIOM_SUMMARIES[number]
    return result


def check_axioms(model: StratifiedLattice, numbers: Iterable[int] = range(1, 8),
                 **options: Any) -> dict[int, CheckResult]:
    view = FiniteView(model, max_carrier=options.pop("max_carrier", 4096))
    return {n: check_axiom(model, n, view=view, **options) for n in numbers}


def stage_lub_is_valid(model: StratifiedLattice, alpha: int, anchor: Any,
                       xs: Iterable[Any]) -> bool:
    """Directly verify the Axiom-3 contract of one ``stage_lub`` call.

    Enumerates the anchor's agreement class, so only for small carriers.
    Raises :class:`PreconditionError` if ``xs`` escapes the class.
    """
    model.check_stage(alpha)
    xs = list(xs)
    region = [z for z in model.iter_carrier()
              if all(model.stage_eq(b, z, anchor) for b in range(alpha))]
    for x in xs:
        if x not in region:
            raise PreconditionError(
                f"{x!r} escapes the anchor's agreement class at stage {alpha}")
    y = model.stage_lub(alpha, anchor, xs)
    if y not in region:
        return False
    if not all(model.stage_le(alpha, x, y) for x in xs):
        return False
    for z in region:
        if all(model.stage_le(alpha, x, z) for x in xs):
            if not (model.stage_le(alpha, y, z) and model.le(y, z)):
                return False
    return True


# -- derived structure theorems ------------------------------------------


def _compose_rows(rows_a: list[int], rows_b: list[int], n: int) -> list[int]:
    out = [0] * n
    for i in range(n):
        acc = 0
        m = rows_a[i]
        while m:
            j = (m & -m).bit_length() - 1
            acc |= rows_b[j]
            m &= m - 1
        out[i] = acc
    return out


def check_structure_theorems(model: StratifiedLattice, *,
                             max_carrier: int = 4096,
                             seed: int = 0) -> list[CheckResult]:
    """Exhaustively verify the derived laws on one finite lattice."""
    view = FiniteView(model, max_carrier=max_carrier)
    n, kappa = view.n, model.stage_count()
    results: list[CheckResult] = []

    def record(name: str, witness: dict | None, detail: str = "") -> None:
        results.append(CheckResult(name, witness is None, witness=witness,
                                   detail=detail))

    # Later stage equivalences refine earlier ones.
    witness = None
    for a in range(kappa):
        for b in range(a + 1, kappa):
            for i in range(n):
                bad = view.stage_eq_rows(b)[i] & ~view.stage_eq_rows(a)[i]
                if bad and witness is None:
                    witness = {"alpha": a, "beta": b, "x": view.elements[i]}
    record("stage equivalences refine downward", witness)

    # Holding stagewise in both directions collapses to equality.  (With
    # unboundedly many stages the one-directional intersection is already
    # equality; a finite stage count cuts that argument off at the top
    # stage, and only the two-directional version survives truncation.)
    witness = None
    forward = []
    for i in range(n):
        mask = view.full_mask
        for a in range(kappa):
            mask &= view.stage_le_rows(a)[i]
        forward.append(mask)
    for i in range(n):
        for j in view.bits(forward[i]):
            if j != i and (forward[j] >> i) & 1:
                witness = {"x": view.elements[i], "y": view.elements[j]}
                break
        if witness:
            break
    record("all-stage stage order is antisymmetric", witness)

    # Strict steps compose at the smaller stage.
    witness = None
    for a in range(kappa):
        for b in range(kappa):
            lo = min(a, b)
            comp = _compose_rows(view.stage_lt_rows(a), view.stage_lt_rows(b), n)
            for i in range(n):
                bad = comp[i] & ~view.stage_lt_rows(lo)[i]
                if bad and witness is None:
                    witness = {"alpha": a, "beta": b, "x": view.elements[i],
                               "z": view.elements[next(view.bits(bad))]}
    record("strict stage steps compose at the minimum stage", witness)

    # Strict relations at different stages are disjoint.
    witness = None
    for a in range(kappa):
        for b in range(a + 1, kappa):
            for i in range(n):
                bad = view.stage_lt_rows(a)[i] & view.stage_lt_rows(b)[i]
                if bad and witness is None:
                    witness = {"alpha": a, "beta": b, "x": view.elements[i],
                               "y": view.elements[next(view.bits(bad))]}
    record("strict stage relations are pairwise disjoint", witness)

    # Stage equivalence absorbs later stage order, both ways.
    witness = None
    for a in range(kappa):
        for b in range(a + 1, kappa):
            eq, sle = view.stage_eq_rows(a), view.stage_le_rows(b)
            left = _compose_rows(eq, sle, n)
            right = _compose_rows(sle, eq, n)
            for i in range(n):
                if (left[i] != eq[i] or right[i] != eq[i]) and witness is None:
                    witness = {"alpha": a, "beta": b, "x": view.elements[i]}
    record("stage equivalence absorbs later stage order", witness)

    # The lexicographic order is a partial order.
    witness = None
    lex = view.lex_rows()
    comp = _compose_rows(lex, lex, n)
    for i in range(n):
        if not (lex[i] >> i) & 1 or comp[i] & ~lex[i]:
            witness = {"x": view.elements[i], "law": "reflexive/transitive"}
            break
        for j in view.bits(lex[i]):
            if j != i and (lex[j] >> i) & 1:
                witness = {"x": view.elements[i], "y": view.elements[j],
                           "law": "antisymmetric"}
                break
        if witness:
            break
    record("lexicographic order is a partial order", witness)

    # The lexicographic order refines into stage 0.
    witness = None
    stage0 = view.stage_le_rows(0)
    for i in range(n):
        bad = lex[i] & ~stage0[i]
        if bad:
            witness = {"x": view.elements[i],
                       "y": view.elements[next(view.bits(bad))]}
            break
    record("lexicographic order contained in stage 0 order", witness)

    # Slice algebra.
    witness = None
    le = view.le_rows()
    for a in range(kappa):
        slices = view.slice_indices(a)
        eq = view.stage_eq_rows(a)
        for i in range(n):
            si = slices[i]
            cls = eq[i]
            ok = (
                (eq[si] >> i) & 1                       # agrees with original
                and cls & ~le[si] == 0                  # base-least in class
                and slices[si] == si                    # idempotent
            )
            if ok and a + 1 < kappa:
                ok = cls & ~view.stage_le_rows(a + 1)[si] == 0
            if not ok and witness is None:
                witness = {"alpha": a, "x": view.elements[i],
                           "slice": view.elements[si]}
    record("slices are least stage representatives", witness)

    # Stage relations factor through slices.
    witness = None
    for a in range(kappa):
        slices = view.slice_indices(a)
        eq, sle = view.stage_eq_rows(a), view.stage_le_rows(a)
        for i in range(n):
            for j in range(n):
                same = slices[i] == slices[j]
                if ((eq[i] >> j) & 1) != same and witness is None:
                    witness = {"alpha": a, "x": view.elements[i],
                               "y": view.elements[j], "law": "equivalence"}
                if ((sle[i] >> j) & 1) != bool(
                        (sle[slices[i]] >> slices[j]) & 1) and witness is None:
                    witness = {"alpha": a, "x": view.elements[i],
                               "y": view.elements[j], "law": "order"}
    record("stage relations factor through slices", witness)

    # Slices grow along stages.
    witness = None
    for a in range(kappa):
        for b in range(a + 1, kappa):
            sa, sb = view.slice_indices(a), view.slice_indices(b)
            for i in range(n):
                ok = ((le[sa[i]] >> sb[i]) & 1
                      and (view.stage_eq_rows(a)[sa[i]] >> sb[i]) & 1)
                if not ok and witness is None:
                    witness = {"alpha": a, "beta": b, "x": view.elements[i]}
    record("slices grow along stages", witness)

    # Every element is the base supremum of its slices.
    witness = None
    for i, x in enumerate(view.elements):
        seq = model.decompose(x)
        if model.lub(seq) != x or not model.is_compatible(seq):
            witness = {"x": x}
            break
    record("elements recompose from their slices", witness)

    # Base order is determined by slices against the other element.
    witness = None
    for i in range(n):
        for j in range(n):
            via_slices = all(
                (le[view.slice_indices(a)[i]] >> j) & 1 for a in range(kappa))
            if ((le[i] >> j) & 1) != via_slices:
                witness = {"x": view.elements[i], "y": view.elements[j]}
                break
        if witness:
            break
    record("base order tested through slices", witness)

    # Compatible sequences are exactly the slice decompositions.
    witness = None
    normal = [
        sum(1 << i for i in range(n) if view.slice_indices(a)[i] == i)
        for a in range(kappa)
    ]

    found = 0
    ok = True

    def extend(prefix: list[int], allowed: int, depth: int) -> None:
        nonlocal found, ok, witness
        if not ok:
            return
        if depth == kappa:
            found += 1
            seq = tuple(view.elements[i] for i in prefix)
            x = model.lub(seq)
            if model.decompose(x) != seq:
                ok = False
                witness = {"sequence": seq}
            return
        for i in view.bits(allowed & normal[depth]):
            nxt = allowed & view.stage_eq_rows(depth)[i] if depth + 1 <= kappa else 0
            extend(prefix + [i], nxt, depth + 1)

    extend([], view.full_mask, 0)
    if ok and found != n:
        witness = {"compatible_sequences": found, "carrier": n}
    record("compatible sequences biject with elements", witness)

    # Conditional consequences of axiom 5.
    ax5 = _axiom5(view)
    if ax5.passed:
        witness = None
        for i in range(n):
            bad = le[i] & ~lex[i]
            if bad:
                witness = {"x": view.elements[i],
                           "y": view.elements[next(view.bits(bad))]}
                break
        record("base order implies lexicographic order (axiom 5 holds)",
               witness)

        # Slice-image elements: stage order at alpha matches base order,
        # given agreement below alpha.
        witness = None
        for a in range(kappa):
            slices = view.slice_indices(a)
            sle = view.stage_le_rows(a)
            for i in range(n):
                if slices[i] != i:
                    continue
                agree = view.agreement_class(i, a)
                if sle[i] & ~le[i]:
                    witness = witness or {
                        "alpha": a, "x": view.elements[i],
                        "law": "stage order implies base order on slices"}
                bad = le[i] & agree & ~sle[i]
                if bad:
                    witness = witness or {
                        "alpha": a, "x": view.elements[i],
                        "y": view.elements[next(view.bits(bad))],
                        "law": "base order implies stage order on slices"}
        record("slice elements compare alike in both orders (axiom 5 holds)",
               witness)

        # Base suprema of stage-normal agreeing families are stage suprema.
        witness = None
        rng = random.Random(derive_seed(seed, 51))
        for a in range(kappa):
            members_all = list(view.bits(normal[a]))
            groups: dict[int, list[int]] = {}
            for i in members_all:
                key = view.agreement_class(i, a)
                groups.setdefault(key, []).append(i)
            for members in groups.values():
                _, subsets = _iter_subsets(members, 8, 64, rng)
                for subset in subsets:
                    if not subset:
                        continue
                    xs = [view.elements[i] for i in subset]
                    v = model.lub(xs)
                    vi = view.index.get(v)
                    anchor = xs[0]
                    want = model.stage_lub(a, anchor, xs)
                    if vi is None or not (normal[a] >> vi) & 1 or v != want:
                        witness = {"alpha": a, "subset": xs, "lub": v,
                                   "stage_lub": want}
                        break
                if witness:
                    break
            if witness:
                break
        record("base suprema of agreeing slice families are stage suprema "
               "(axiom 5 holds)", witness)

    return results
