"""Shared helpers for the test suite: oracles and seeded generators."""

import random
import string

from stratfix import check_stage_monotonic
from stratfix.values import TruthLattice


def brute_lex_lub(model, xs):
    """Least upper bound in the lexicographic order by full enumeration."""
    xs = list(xs)
    uppers = [z for z in model.iter_carrier()
              if all(model.lex_le(x, z) for x in xs)]
    least = [u for u in uppers if all(model.lex_le(u, v) for v in uppers)]
    assert len(least) == 1, f"expected one least upper bound, got {least}"
    return least[0]


def is_lex_upper_bound_minimal(model, xs, candidate):
    """Candidate bounds xs and sits lex-below every enumerated bound."""
    if not all(model.lex_le(x, candidate) for x in xs):
        return False
    for z in model.iter_carrier():
        if all(model.lex_le(x, z) for x in xs):
            if not model.lex_le(candidate, z):
                return False
    return True


def random_program_text(rng: random.Random, max_atoms=6, max_rules=12,
                        max_body=3) -> str:
    """A seeded normal program: conjunctive bodies of at most 3 literals."""
    n = rng.randint(1, max_atoms)
    atoms = list(string.ascii_lowercase[:n])
    lines = []
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(atoms)
        body_atoms = rng.sample(atoms, rng.randint(1, min(max_body, n)))
        literals = [
            f"not {a}" if rng.random() < 0.5 else a for a in body_atoms]
        lines.append(f"{head} :- {', '.join(literals)}.")
    for a in atoms:
        if rng.random() < 0.15:
            lines.append(f"{a}.")
    return "\n".join(lines) + "\n"


def function_from_table(table: dict):
    return lambda x: table[x]


def all_monotone_tables_v2():
    """Every stage-monotonic endofunction of the 2-level truth chain.

    Enumerates all carrier-to-carrier tables and keeps those that pass
    the exhaustive stage-monotonicity check at every stage.
    """
    import itertools

    lattice = TruthLattice(2)
    carrier = lattice.carrier()
    kept = []
    for images in itertools.product(carrier, repeat=len(carrier)):
        table = dict(zip(carrier, images))
        fn = function_from_table(table)
        if all(check_stage_monotonic(lattice, fn, alpha).passed
               for alpha in range(lattice.stage_count())):
            kept.append(table)
    return lattice, kept
