"""Models of normal logic programs over the graded truth chain.

The one-step consequence operator maps an assignment of truth values to
atoms to a new assignment: each atom receives the supremum of its rule
bodies, where conjunction is minimum, disjunction is maximum, and
negation bumps the truth level (see :mod:`stratfix.values`).  On the
interpretation lattice this operator respects every stage order, so the
stagewise engine delivers its least fixed point in the lexicographic
order: the program's canonical graded model, whose collapse onto
true/false/undefined is the classical well-founded model.

Two independent oracles guard that route.  ``well_founded_model``
computes the well-founded model by the classical alternating fixpoint
over plain atom sets and shares no lattice code.
``minimum_model_by_enumeration`` finds the least fixed point by brute
force over all assignments within a level window, evaluating bodies
with unbounded levels so the window limits only the searched carrier,
never the arithmetic.

Level caps: the solver starts from ``atom count + 2`` levels, collapses
any transient value that overflows the window to the undefined middle
(invisible to every stage the window has), and re-solves one level
higher, insisting on the identical model.  Direct users of
:func:`eval_formula` / :func:`tp_apply` get the strict behaviour
instead: crossing a given cap raises :class:`TruncationError`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import (
    InputError,
    IntegrityError,
    ProgramError,
    SizeLimitError,
    TruncationError,
)
from .fixpoint import FixpointTrace, least_fixpoint
from .models import InterpretationLattice
from .programs import FALSE, TRUE, And, Atom, Formula, Neg, Or, Program
from .values import (
    TruthValue,
    clip,
    false_at,
    negate,
    negate_within,
    render_value,
    true_at,
)


class Trivalent(enum.Enum):
    """Classical three-valued verdicts, rendered as ``true``/``false``/``0``."""

    TRUE = "true"
    FALSE = "false"
    UNDEFINED = "0"

    def __repr__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Interpretation:
    """Total assignment of truth values to a sorted atom universe."""

    universe: tuple[str, ...]
    values: tuple[TruthValue, ...]

    def __post_init__(self):
        if len(self.universe) != len(self.values):
            raise ValueError("universe and values lengths differ")

    @classmethod
    def from_dict(cls, assignment: Mapping[str, TruthValue]) -> "Interpretation":
        atoms = tuple(sorted(assignment))
        return cls(atoms, tuple(assignment[a] for a in atoms))

    def __getitem__(self, atom: str) -> TruthValue:
        return self.values[self.universe.index(atom)]

    def as_dict(self) -> dict[str, TruthValue]:
        return dict(zip(self.universe, self.values))

    def render(self) -> dict[str, str]:
        return {a: render_value(v) for a, v in zip(self.universe, self.values)}


@dataclass(frozen=True)
class Solution:
    """A solved program: graded model, stage trace, level cap used."""

    interpretation: Interpretation
    trace: FixpointTrace
    levels: int
    lattice: InterpretationLattice = field(compare=False, repr=False)

    @property
    def well_founded(self) -> dict[str, Trivalent]:
        return collapse(self.interpretation)


def _require_normalized(program: Program) -> None:
    if not program.is_normalized():
        raise ProgramError(
            "expected a ground program in which every atom heads a rule; "
            "run ground_program and normalize first")


# -- formula evaluation ----------------------------------------------------


def _negation_for(levels: int | None) -> Callable[[TruthValue], TruthValue]:
    if levels is None:
        return negate
    return lambda v: negate_within(v, levels)


def eval_formula(assignment: Mapping[str, TruthValue], formula: Formula,
                 levels: int | None = None) -> TruthValue:
    """Evaluate a ground body under an assignment.

    Conjunction is minimum, disjunction maximum, negation a level bump;
    ``true``/``false`` read as T0/F0.  With ``levels`` set, negating a
    value at the last level raises :class:`TruncationError`; callers
    recover by enlarging the cap.  Without it, levels are unbounded.
    """
    neg = _negation_for(levels)

    def walk(f: Formula) -> TruthValue:
        if f is TRUE:
            return true_at(0)
        if f is FALSE:
            return false_at(0)
        if isinstance(f, Atom):
            return assignment[f.key]
        if isinstance(f, Neg):
            return neg(walk(f.sub))
        if isinstance(f, And):
            return min(walk(p) for p in f.parts)
        if isinstance(f, Or):
            return max(walk(p) for p in f.parts)
        raise TypeError(f"not a ground formula: {f!r}")

    return walk(formula)


def tp_apply(program: Program, assignment: Mapping[str, TruthValue],
             levels: int | None = None) -> dict[str, TruthValue]:
    """One step of the consequence operator: per-atom supremum of bodies."""
    _require_normalized(program)
    out: dict[str, TruthValue] = {}
    for atom in program.atoms():
        out[atom] = false_at(0)
    for rule in program.rules:
        value = eval_formula(assignment, rule.body, levels)
        key = rule.head.key
        if value > out[key]:
            out[key] = value
    return out


# -- compiled positional evaluation for the solver ---------------------------


def _compile_body(formula: Formula, index: Mapping[str, int],
                  neg: Callable[[TruthValue], TruthValue]):
    if formula is TRUE:
        t0 = true_at(0)
        return lambda values: t0
    if formula is FALSE:
        f0 = false_at(0)
        return lambda values: f0
    if isinstance(formula, Atom):
        i = index[formula.key]
        return lambda values: values[i]
    if isinstance(formula, Neg):
        sub = _compile_body(formula.sub, index, neg)
        return lambda values: neg(sub(values))
    if isinstance(formula, And):
        parts = [_compile_body(p, index, neg) for p in formula.parts]
        return lambda values: min(p(values) for p in parts)
    if isinstance(formula, Or):
        parts = [_compile_body(p, index, neg) for p in formula.parts]
        return lambda values: max(p(values) for p in parts)
    raise TypeError(f"not a ground formula: {formula!r}")


def _compile_operator(program: Program, lattice: InterpretationLattice,
                      neg: Callable[[TruthValue], TruthValue]):
    index = lattice.atom_index
    by_atom: list[list] = [[] for _ in lattice.universe]
    for rule in program.rules:
        by_atom[index[rule.head.key]].append(
            _compile_body(rule.body, index, neg))
    f0 = false_at(0)

    def step(values: tuple) -> tuple:
        return tuple(
            max((body(values) for body in bodies), default=f0)
            for bodies in by_atom)

    return step


# -- the solver --------------------------------------------------------------


def consequence_step(program: Program, lattice: InterpretationLattice):
    """The solver's step function on ``lattice`` elements (value tuples).

    Negation results that would overflow the lattice's level window
    collapse to the undefined middle, which every stage order of the
    window already identifies with them; the stability re-solve in
    :func:`minimum_model` guards the window being wide enough.
    """
    _require_normalized(program)
    return _compile_operator(
        program, lattice, lambda v: clip(negate(v), lattice.levels))


def _solve_at(program: Program, levels: int):
    lattice = InterpretationLattice(program.atoms(), levels)
    trace = least_fixpoint(lattice, consequence_step(program, lattice))
    return lattice, trace


def minimum_model(program: Program, *, levels: int | None = None,
                  stability_check: bool = True) -> Solution:
    """The least model of the program in the lexicographic order.

    Runs the stagewise engine on the interpretation lattice.  The level
    cap defaults to ``atom count + 2`` and, as a standing soundness
    assertion, the program is re-solved with one more level and the two
    models must agree exactly; disagreement with an explicit ``levels``
    reports bad input (raise the cap), disagreement under the default
    cap would be a bug and raises :class:`IntegrityError`.
    """
    _require_normalized(program)
    universe = program.atoms()
    start = levels if levels is not None else len(universe) + 2
    if start < 1:
        raise InputError("level cap must be at least 1")
    lattice, trace = _solve_at(program, start)
    model = dict(zip(lattice.universe, trace.result))
    if stability_check:
        lattice2, trace2 = _solve_at(program, start + 1)
        model2 = dict(zip(lattice2.universe, trace2.result))
        if model != model2:
            if levels is not None:
                raise InputError(
                    f"the model changed when the level cap was raised from "
                    f"{start} to {start + 1}; pass a larger cap")
            raise IntegrityError(
                "adaptive level cap produced an unstable model")
    try:
        if tp_apply(program, model, start) != model:
            raise IntegrityError(
                "converged value is not a fixed point of the strict operator")
    except TruncationError as exc:
        if levels is not None:
            raise InputError(
                f"level cap {start} is too tight for this program: {exc}"
            ) from exc
        raise IntegrityError(
            f"adaptive level cap left the model unverifiable: {exc}") from exc
    return Solution(Interpretation(lattice.universe, trace.result),
                    trace, start, lattice)


def collapse(model: Interpretation | Mapping[str, TruthValue],
             ) -> dict[str, Trivalent]:
    """Collapse graded values: every T level to true, every F level to false."""
    items = model.as_dict() if isinstance(model, Interpretation) else model
    out: dict[str, Trivalent] = {}
    for atom in sorted(items):
        v = items[atom]
        if v.sign > 0:
            out[atom] = Trivalent.TRUE
        elif v.sign < 0:
            out[atom] = Trivalent.FALSE
        else:
            out[atom] = Trivalent.UNDEFINED
    return out


# -- independent oracles ------------------------------------------------------


def _check_oracle_bodies(program: Program) -> None:
    def walk(f: Formula) -> None:
        if f is TRUE or f is FALSE or isinstance(f, Atom):
            return
        if isinstance(f, Neg):
            if not isinstance(f.sub, Atom):
                raise ProgramError(
                    "the alternating-fixpoint oracle handles negation on "
                    f"atoms only, got: not ({f.sub!r})")
            return
        if isinstance(f, (And, Or)):
            for p in f.parts:
                walk(p)
            return
        raise TypeError(f"not a formula: {f!r}")

    for rule in program.rules:
        walk(rule.body)


def _holds(formula: Formula, derived: set[str], assumed: set[str]) -> bool:
    """Two-valued body check: ``not a`` reads as ``a not in assumed``."""
    if formula is TRUE:
        return True
    if formula is FALSE:
        return False
    if isinstance(formula, Atom):
        return formula.key in derived
    if isinstance(formula, Neg):
        return formula.sub.key not in assumed
    if isinstance(formula, And):
        return all(_holds(p, derived, assumed) for p in formula.parts)
    if isinstance(formula, Or):
        return any(_holds(p, derived, assumed) for p in formula.parts)
    raise TypeError(f"not a formula: {formula!r}")


def well_founded_model(program: Program) -> dict[str, Trivalent]:
    """The classical well-founded model via the alternating fixpoint.

    Deliberately independent of the lattice machinery: works on plain
    atom sets.  ``reduce(S)`` is the least set of atoms derivable when
    ``not a`` is read as ``a not in S``; it is antitone, its square is
    monotone, and iterating the square from the empty set yields the
    definitely-true atoms, whose reduct bounds the possibly-true ones.
    """
    _require_normalized(program)
    _check_oracle_bodies(program)
    atoms = program.atoms()
    rules = [(r.head.key, r.body) for r in program.rules]

    def reduce(assumed: set[str]) -> set[str]:
        derived: set[str] = set()
        changed = True
        while changed:
            changed = False
            for head, body in rules:
                if head not in derived and _holds(body, derived, assumed):
                    derived.add(head)
                    changed = True
        return derived

    certain: set[str] = set()
    for _ in range(len(atoms) + 2):
        possible = reduce(certain)
        nxt = reduce(possible)
        if nxt == certain:
            break
        certain = nxt
    else:
        raise IntegrityError("alternating fixpoint failed to converge")
    out: dict[str, Trivalent] = {}
    for atom in atoms:
        if atom in certain:
            out[atom] = Trivalent.TRUE
        elif atom in possible:
            out[atom] = Trivalent.UNDEFINED
        else:
            out[atom] = Trivalent.FALSE
    return out


def minimum_model_by_enumeration(program: Program, levels: int, *,
                                 limit: int = 1_000_000) -> Interpretation:
    """Brute-force oracle for the least fixed point within a level window.

    Enumerates every assignment with values below the cap, evaluating
    bodies with unbounded levels, and returns the unique fixed point
    that is lex-below all others, after verifying it is a model that is
    lex-below every enumerated model.  Raises :class:`SizeLimitError`
    when the window holds more than ``limit`` assignments and
    :class:`IntegrityError` if any verification fails (a bug signal).
    """
    _require_normalized(program)
    lattice = InterpretationLattice(program.atoms(), levels)
    size = lattice.carrier_size()
    if size > limit:
        raise SizeLimitError(
            f"{size} assignments exceed the enumeration limit {limit}")
    index = lattice.atom_index
    compiled = [
        (index[r.head.key], _compile_body(r.body, index, negate))
        for r in program.rules
    ]
    n = len(lattice.universe)
    f0 = false_at(0)

    fixed: list[tuple] = []
    model_flags: list[bool] = []
    for candidate in lattice.iter_carrier():
        image = [f0] * n
        is_model = True
        for head_i, body in compiled:
            value = body(candidate)
            if value > image[head_i]:
                image[head_i] = value
            if is_model and not candidate[head_i] >= value:
                is_model = False
        model_flags.append(is_model)
        if tuple(image) == candidate:
            fixed.append(candidate)
    if not fixed:
        raise IntegrityError("no fixed point inside the level window")
    least = [m for m in fixed if all(lattice.lex_le(m, o) for o in fixed)]
    if len(least) != 1:
        raise IntegrityError(
            f"{len(least)} lex-least fixed points; expected exactly one")
    winner = least[0]
    winner_is_model = False
    for flag, candidate in zip(model_flags, lattice.iter_carrier()):
        if candidate == winner:
            winner_is_model = flag
        if flag and not lattice.lex_le(winner, candidate):
            raise IntegrityError(
                "least fixed point is not lex-below some model: "
                f"{lattice.render_element(candidate)}")
    if not winner_is_model:
        raise IntegrityError("least fixed point fails to be a model")
    return Interpretation(lattice.universe, winner)
