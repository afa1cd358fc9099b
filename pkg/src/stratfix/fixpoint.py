"""Stagewise least fixed points of stage-monotonic functions.

A function f on a stratified lattice is *stage-monotonic at alpha* when
it preserves the stage-alpha preorder, and *stage-continuous at alpha*
when it additionally commutes (up to stage equivalence) with stage
suprema of rising chains.  Functions that are stage-monotonic at every
stage need not be monotonic in the lexicographic order, yet they have a
least fixed point in it, built stage by stage:

    start_0   = bottom
    result_a  = stage_iterate(f, a, start_a)
    start_a+1 = lub of the results so far

``stage_iterate`` runs the inner loop at one stage: apply f repeatedly,
fold the accumulated chain with a stage supremum (a "limit step") when
it goes stage-stationary or a step budget runs out, and stop once the
folded value y satisfies f(y) =_a y.  The stage results form a
compatible sequence whose base supremum is the least pre-fixed point of
f in the lexicographic order, which is also its least fixed point.

With two stages and the stage-0 order equal to the base order this
collapses to the classical least-fixed-point constructions: the result
is the Knaster-Tarski least fixed point, and for continuous f the
stage-0 step count equals the classical chain length (both count f
evaluations up to and including the one that reveals stabilisation;
compare :func:`kleene_iterate`).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable

from .axioms import CheckResult, derive_seed, iter_stage_chains
from .errors import DivergenceError, IntegrityError, PreconditionError
from .lattice import Element, StratifiedLattice

StageFunction = Callable[[Element], Element]


@dataclass(frozen=True)
class StageRecord:
    """One stage of a least-fixed-point run."""

    stage: int
    start: Element
    result: Element
    steps: int


@dataclass(frozen=True)
class FixpointTrace:
    """Per-stage record of a least-fixed-point computation."""

    stages: tuple[StageRecord, ...]
    result: Element

    def as_jsonable(self, render: Callable[[Element], Any] = repr) -> list[dict]:
        return [
            {"stage": rec.stage, "start": render(rec.start),
             "result": render(rec.result), "steps": rec.steps}
            for rec in self.stages
        ]


def stage_iterate(model: StratifiedLattice, f: StageFunction, alpha: int,
                  start: Element, *, budget: int | None = None,
                  guard: int | None = None) -> tuple[Element, int]:
    """Iterate f at one stage from ``start``; needs start stage-below f(start).

    Returns ``(y, steps)`` where y satisfies: start is stage-below y,
    f(y) is stage-equivalent to y, y is stage-below every z with start
    stage-below z and f(z) stage-below z, and y is the base-least element
    of its stage-equivalence class.  ``steps`` counts f evaluations.

    Raises :class:`PreconditionError` if the entry condition fails (when
    reached at an outer stage this signals f is not stage-monotonic
    there) and :class:`DivergenceError` if ``guard`` evaluations pass
    without stabilising.
    """
    model.check_stage(alpha)
    budget = budget if budget is not None else model.default_step_budget()
    guard = guard if guard is not None else model.default_step_guard()

    cur = start
    fcur = f(cur)
    steps = 1
    if not model.stage_le(alpha, cur, fcur):
        raise PreconditionError(
            f"stage {alpha}: start is not stage-below its image")
    chain = [cur]
    while True:
        since_limit = 0
        while since_limit < budget and not model.stage_eq(alpha, fcur, cur):
            cur = fcur
            chain.append(cur)
            fcur = f(cur)
            steps += 1
            since_limit += 1
            if steps > guard:
                raise DivergenceError(
                    f"stage {alpha}: no stabilisation within {guard} steps")
        chain.append(fcur)
        limit = model.stage_lub(alpha, start, frozenset(chain))
        if limit == cur and model.stage_eq(alpha, fcur, cur):
            flimit = fcur
        else:
            flimit = f(limit)
            steps += 1
            if steps > guard:
                raise DivergenceError(
                    f"stage {alpha}: no stabilisation within {guard} steps")
        if model.stage_eq(alpha, flimit, limit):
            return limit, steps
        cur, fcur = limit, flimit
        chain = [cur]


def least_fixpoint(model: StratifiedLattice, f: StageFunction, *,
                   budget: int | None = None,
                   guard: int | None = None) -> FixpointTrace:
    """Least fixed point of f in the lexicographic order, with its trace.

    f must be stage-monotonic at every stage; that hypothesis is the
    caller's contract (verify with :func:`check_stage_monotonic` on
    finite carriers).  A violation surfaces either as a
    :class:`PreconditionError` naming the stage or as an
    :class:`IntegrityError` if the final value fails to be fixed.
    """
    records: list[StageRecord] = []
    results: list[Element] = []
    for alpha in range(model.stage_count()):
        start = model.lub(results)
        try:
            result, steps = stage_iterate(
                model, f, alpha, start, budget=budget, guard=guard)
        except PreconditionError as exc:
            raise PreconditionError(
                f"stage {alpha} rejected its start value; "
                f"is the function stage-monotonic there? ({exc})") from exc
        records.append(StageRecord(alpha, start, result, steps))
        results.append(result)
    final = model.lub(results)
    if f(final) != final:
        raise IntegrityError(
            "stagewise construction converged to a non-fixed point; "
            "the function is not stage-monotonic at every stage")
    return FixpointTrace(tuple(records), final)


def kleene_iterate(f: StageFunction, bottom: Element,
                   guard: int = 100_000) -> tuple[Element, int]:
    """Naive oracle: iterate f from bottom until the value repeats.

    Returns the fixed point and the number of f evaluations, including
    the one that reveals the repeat.  Independent of all lattice code.
    """
    cur = bottom
    for steps in range(1, guard + 1):
        nxt = f(cur)
        if nxt == cur:
            return cur, steps
        cur = nxt
    raise DivergenceError(f"no fixed point within {guard} iterations")


# -- verification --------------------------------------------------------


def check_stage_monotonic(model: StratifiedLattice, f: StageFunction,
                          alpha: int, *,
                          codomain: StratifiedLattice | None = None,
                          sample: int | None = None,
                          seed: int = 0) -> CheckResult:
    """Does f preserve the stage-alpha preorder?  Pair-exhaustive.

    ``codomain`` supports functions between different lattices (it
    defaults to the domain).  With ``sample`` set, that many random
    pairs are tested instead of all pairs; the report says which.
    """
    model.check_stage(alpha)
    codomain = codomain or model
    name = f"stage-{alpha} monotonicity"
    elements = model.carrier()
    if sample is None:
        pairs = ((x, y) for x in elements for y in elements)
        regime = "exhaustive"
    else:
        rng = random.Random(derive_seed(seed, "mono", alpha))
        pairs = ((rng.choice(elements), rng.choice(elements))
                 for _ in range(sample))
        regime = f"sampled({sample} pairs)"
    for x, y in pairs:
        if model.stage_le(alpha, x, y):
            if not codomain.stage_le(alpha, f(x), f(y)):
                return CheckResult(name, False, regime=regime,
                                   witness={"x": x, "y": y,
                                            "fx": f(x), "fy": f(y)})
    return CheckResult(name, True, regime=regime)


def check_stage_continuous(model: StratifiedLattice, f: StageFunction,
                           alpha: int, *,
                           codomain: StratifiedLattice | None = None,
                           max_chain: int = 4, chain_cap: int = 3000,
                           samples: int = 300,
                           seed: int = 0) -> CheckResult:
    """Does f commute with stage suprema of rising chains at ``alpha``?

    Checks stage monotonicity first (continuity presupposes it), then
    the commuting equation over rising chains enumerated up to
    ``max_chain`` steps, or over seeded random walks when full
    enumeration would exceed ``chain_cap``.  A finite carrier makes
    every infinite rising chain eventually constant up to stage
    equivalence, so bounded chains cover the general case.
    """
    codomain = codomain or model
    mono = check_stage_monotonic(model, f, alpha, codomain=codomain)
    if not mono.passed:
        mono.detail = "stage continuity presupposes stage monotonicity"
        return mono
    name = f"stage-{alpha} continuity"
    rng = random.Random(derive_seed(seed, "cont", alpha))
    regime, chains = iter_stage_chains(
        model, alpha, model.carrier(), max_chain,
        max_chains=chain_cap, rng=rng)
    if regime != "exhaustive":
        _, longer = iter_stage_chains(
            model, alpha, model.carrier(), max_chain + 2,
            max_chains=samples, rng=rng)
        chains = list(chains) + list(longer)
        regime = f"{regime}; plus {len(longer)} longer walks"
    for chain in chains:
        points = set(chain)
        lhs = f(model.stage_lub(alpha, chain[0], points))
        images = [f(x) for x in chain]
        rhs = codomain.stage_lub(alpha, images[0], set(images))
        if not codomain.stage_eq(alpha, lhs, rhs):
            return CheckResult(name, False, regime=regime,
                               witness={"chain": chain, "lhs": lhs,
                                        "rhs": rhs})
    return CheckResult(name, True, regime=regime)


def check_least_prefixpoint(model: StratifiedLattice, f: StageFunction,
                            candidate: Element) -> CheckResult:
    """Is ``candidate`` fixed and lex-below every pre-fixed point of f?

    Enumerates the carrier, so finite lattices only.
    """
    name = "least pre-fixed point"
    if f(candidate) != candidate:
        return CheckResult(name, False,
                           witness={"candidate": candidate,
                                    "image": f(candidate)},
                           detail="candidate is not a fixed point")
    for z in model.iter_carrier():
        if model.lex_le(f(z), z) and not model.lex_le(candidate, z):
            return CheckResult(name, False,
                               witness={"candidate": candidate, "z": z})
    return CheckResult(name, True)
