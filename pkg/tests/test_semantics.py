import pytest

from stratfix.errors import (
    InputError,
    ProgramError,
    SizeLimitError,
    TruncationError,
)
from stratfix.fixpoint import check_stage_continuous, check_stage_monotonic
from stratfix.models import InterpretationLattice
from stratfix.programs import (
    Atom,
    Neg,
    Program,
    Rule,
    ground_program,
    normalize,
    parse_program,
)
from stratfix.semantics import (
    Interpretation,
    Trivalent,
    collapse,
    consequence_step,
    eval_formula,
    minimum_model,
    minimum_model_by_enumeration,
    tp_apply,
    well_founded_model,
)
from stratfix.values import UNDEFINED, false_at, true_at

F0, F1, F2 = (false_at(i) for i in range(3))
T0, T1, T2 = (true_at(i) for i in range(3))

EXAMPLE = """
p :- not q.
q :- not r.
s :- p.
s :- not s.
r :- false.
"""


def prepare(text):
    return normalize(ground_program(parse_program(text)))


class TestEvalFormula:
    def test_negation_bumps_level(self):
        body = parse_program("x :- not q.").rules[0].body
        assert eval_formula({"q": T1}, body) == F2

    def test_constants(self):
        t = parse_program("x :- true.").rules[0].body
        f = parse_program("x :- false.").rules[0].body
        assert eval_formula({}, t) == T0
        assert eval_formula({}, f) == F0

    def test_conjunction_is_minimum(self):
        body = parse_program("x :- a, b.").rules[0].body
        assert eval_formula({"a": T0, "b": F1}, body) == F1

    def test_disjunction_is_maximum(self):
        body = parse_program("x :- a; b.").rules[0].body
        assert eval_formula({"a": F1, "b": UNDEFINED}, body) == UNDEFINED

    def test_truncation_propagates_with_cap(self):
        body = parse_program("x :- not q.").rules[0].body
        assert eval_formula({"q": F0}, body, levels=2) == T1
        with pytest.raises(TruncationError):
            eval_formula({"q": F1}, body, levels=2)


class TestConsequenceOperator:
    def test_one_step_from_bottom_on_example(self):
        program = prepare(EXAMPLE)
        bottom = {a: F0 for a in program.atoms()}
        assert tp_apply(program, bottom) == {
            "p": T1, "q": T1, "r": F0, "s": T1}

    def test_single_fact(self):
        program = prepare("p :- true.")
        assert tp_apply(program, {"p": UNDEFINED}) == {"p": T0}

    def test_supremum_over_rules(self):
        program = prepare("p :- q.\np :- false.\nq :- false.")
        assert tp_apply(program, {"p": F0, "q": F1})["p"] == F1

    def test_requires_normal_form(self):
        with pytest.raises(ProgramError):
            tp_apply(parse_program("p :- not q."), {"p": F0, "q": F0})


class TestMinimumModel:
    def test_worked_example(self):
        solution = minimum_model(prepare(EXAMPLE))
        assert solution.interpretation.render() == {
            "p": "F2", "q": "T1", "r": "F0", "s": "0"}
        assert solution.levels == 6

    def test_negative_self_loop_is_undefined(self):
        solution = minimum_model(prepare("p :- not p."))
        assert solution.interpretation.as_dict() == {"p": UNDEFINED}

    def test_plain_fact(self):
        solution = minimum_model(prepare("p :- true."))
        assert solution.interpretation.as_dict() == {"p": T0}

    def test_definite_chain(self):
        solution = minimum_model(prepare("p :- q.\nq :- true."))
        assert solution.interpretation.as_dict() == {"p": T0, "q": T0}

    def test_negation_chain_levels(self):
        solution = minimum_model(prepare("p :- not q.\nq :- not r.\nr."))
        assert solution.interpretation.as_dict() == {
            "p": T2, "q": F1, "r": T0}

    def test_disjunctive_body_matches_split_rules(self):
        joined = minimum_model(prepare("p :- q; not r.\nq :- false."))
        split = minimum_model(prepare("p :- q.\np :- not r.\nq :- false."))
        assert joined.interpretation == split.interpretation

    def test_explicit_cap_too_small_is_an_input_error(self):
        program = prepare("p :- not q.\nq :- false.")
        with pytest.raises(InputError):
            minimum_model(program, levels=1)

    def test_explicit_adequate_cap_is_accepted(self):
        program = prepare("p :- not q.\nq :- false.")
        solution = minimum_model(program, levels=3)
        assert solution.interpretation.as_dict() == {"p": T1, "q": F0}

    def test_stability_reruns_reproduce_the_model(self):
        program = prepare(EXAMPLE)
        base = minimum_model(program)
        higher = minimum_model(program, levels=base.levels + 1)
        assert higher.interpretation.as_dict() == \
            base.interpretation.as_dict()

    def test_fixed_point_property(self):
        program = prepare(EXAMPLE)
        solution = minimum_model(program)
        model = solution.interpretation.as_dict()
        assert tp_apply(program, model, solution.levels) == model


class TestModelProperty:
    def test_minimum_model_satisfies_every_rule(self):
        texts = [EXAMPLE, "p :- not p.", "a :- not b.\nb :- not c.\nc."]
        for text in texts:
            program = prepare(text)
            model = minimum_model(program).interpretation.as_dict()
            for rule in program.rules:
                assert model[rule.head.key] >= eval_formula(model, rule.body)

    def test_stage_zero_iterate_from_bottom(self):
        program = prepare(EXAMPLE)
        lattice = InterpretationLattice(program.atoms(), 6)
        step = consequence_step(program, lattice)
        from stratfix.fixpoint import stage_iterate
        value, _ = stage_iterate(lattice, step, 0, lattice.bottom())
        assert lattice.to_dict(value) == {
            "p": F1, "q": F1, "r": F0, "s": F1}

    def test_ground_then_normalize_matches_normalize_when_ground(self):
        program = parse_program("p :- not q.\nq.")
        assert normalize(ground_program(program)) == normalize(program)


class TestCollapse:
    def test_worked_example(self):
        solution = minimum_model(prepare(EXAMPLE))
        assert solution.well_founded == {
            "p": Trivalent.FALSE, "q": Trivalent.TRUE,
            "r": Trivalent.FALSE, "s": Trivalent.UNDEFINED}

    def test_every_level_collapses(self):
        model = {"a": true_at(5), "b": false_at(9), "c": UNDEFINED}
        assert collapse(model) == {
            "a": Trivalent.TRUE, "b": Trivalent.FALSE,
            "c": Trivalent.UNDEFINED}

    def test_accepts_interpretation_objects(self):
        interp = Interpretation(("a",), (T0,))
        assert collapse(interp) == {"a": Trivalent.TRUE}


class TestWellFoundedOracle:
    def test_worked_example(self):
        program = prepare(EXAMPLE)
        assert well_founded_model(program) == \
            minimum_model(program).well_founded

    def test_negative_loop(self):
        assert well_founded_model(prepare("p :- not p.")) == {
            "p": Trivalent.UNDEFINED}

    def test_even_negative_loop_is_undefined(self):
        wf = well_founded_model(prepare("a :- not b.\nb :- not a."))
        assert wf == {"a": Trivalent.UNDEFINED, "b": Trivalent.UNDEFINED}

    def test_definite_program_is_two_valued(self):
        wf = well_founded_model(prepare("p :- q.\nq :- true.\nr :- s, q."))
        assert wf == {"p": Trivalent.TRUE, "q": Trivalent.TRUE,
                      "r": Trivalent.FALSE, "s": Trivalent.FALSE}

    def test_disjunction_supported(self):
        wf = well_founded_model(prepare("p :- q; not r.\nq :- false."))
        assert wf["p"] is Trivalent.TRUE

    def test_nested_negation_rejected(self):
        program = Program((
            Rule(Atom("p"), Neg(Neg(Atom("p")))),
        ))
        with pytest.raises(ProgramError):
            well_founded_model(normalize(program))


class TestEnumerationOracle:
    def test_worked_example_at_four_levels(self):
        program = prepare(EXAMPLE)
        reference = minimum_model_by_enumeration(program, 4)
        assert reference.as_dict() == \
            minimum_model(program).interpretation.as_dict()

    def test_negative_self_loop_window(self):
        reference = minimum_model_by_enumeration(prepare("p :- not p."), 2)
        assert reference.as_dict() == {"p": UNDEFINED}

    def test_size_refusal(self):
        program = prepare("p :- not q.\nq :- not r.\nr :- not p.")
        with pytest.raises(SizeLimitError):
            minimum_model_by_enumeration(program, 4, limit=100)


class TestOperatorShape:
    def test_consequence_step_is_stagewise_monotone_on_small_windows(self):
        program = prepare("p :- not q.\nq :- not p.")
        lattice = InterpretationLattice(program.atoms(), 2)
        step = consequence_step(program, lattice)
        for alpha in range(2):
            assert check_stage_monotonic(lattice, step, alpha).passed
            assert check_stage_continuous(lattice, step, alpha).passed

    def test_consequence_step_is_not_lex_monotone(self):
        """The operator respects every stage order yet breaks the global
        lexicographic order; a witness exists already on one atom."""
        program = prepare("p :- not p.")
        lattice = InterpretationLattice(program.atoms(), 2)
        step = consequence_step(program, lattice)
        witnesses = [
            (x, y)
            for x in lattice.iter_carrier()
            for y in lattice.iter_carrier()
            if lattice.lex_le(x, y) and not lattice.lex_le(step(x), step(y))
        ]
        assert witnesses, "expected the lexicographic order to be broken"
