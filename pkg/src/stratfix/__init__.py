"""Stagewise fixed points on stratified lattices.

A stratified lattice is a complete lattice with a family of per-stage
preorders; functions that respect every stage order have least fixed
points in the induced stage-by-stage comparison even when they are not
monotonic in it.  This package provides the lattice interface, a zoo of
finite models with exhaustive axiom checkers, the fixed-point engine,
and an application: infinite-valued and well-founded models of normal
logic programs.
"""

from .errors import (
    DivergenceError,
    InputError,
    IntegrityError,
    LatticeConstructionError,
    ModelSpecError,
    ParseError,
    PreconditionError,
    ProgramError,
    SafetyError,
    SizeLimitError,
    StageRangeError,
    StratfixError,
    TruncationError,
)
from .lattice import StratifiedLattice
from .values import (
    UNDEFINED,
    TruthLattice,
    TruthValue,
    clip,
    conj,
    disj,
    false_at,
    negate,
    negate_within,
    parse_value,
    render_value,
    sup,
    true_at,
)
from .models import (
    InterpretationLattice,
    ProductLattice,
    StageFactor,
    StagewiseProduct,
    chain_diamond_factor,
    factor_from_orders,
    make_interpretation_model,
    make_nonstandard_product,
    make_product,
    model_from_spec,
    powerset_factor,
    unit_factor,
)
from .axioms import (
    CheckResult,
    check_axiom,
    check_axioms,
    check_structure_theorems,
    stage_lub_is_valid,
)
from .fixpoint import (
    FixpointTrace,
    StageRecord,
    check_least_prefixpoint,
    check_stage_continuous,
    check_stage_monotonic,
    kleene_iterate,
    least_fixpoint,
    stage_iterate,
)
from .programs import (
    And,
    Atom,
    Const,
    Formula,
    Or,
    Neg,
    Program,
    Rule,
    Term,
    Var,
    FALSE,
    TRUE,
    ground_program,
    normalize,
    parse_program,
    render_program,
)
from .semantics import (
    Interpretation,
    Solution,
    Trivalent,
    collapse,
    eval_formula,
    minimum_model,
    minimum_model_by_enumeration,
    tp_apply,
    well_founded_model,
)

__version__ = "0.1.0"
