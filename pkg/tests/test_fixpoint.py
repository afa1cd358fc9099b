import random

import pytest

from _support import all_monotone_tables_v2, function_from_table
from stratfix.errors import PreconditionError
from stratfix.fixpoint import (
    check_least_prefixpoint,
    check_stage_continuous,
    check_stage_monotonic,
    kleene_iterate,
    least_fixpoint,
    stage_iterate,
)
from stratfix.models import (
    StagewiseProduct,
    make_product,
    model_from_spec,
    powerset_factor,
    unit_factor,
)
from stratfix.values import (
    UNDEFINED,
    TruthLattice,
    clip,
    conj,
    disj,
    false_at,
    negate,
    true_at,
)

F0, F1 = false_at(0), false_at(1)
T0, T1 = true_at(0), true_at(1)


def lifted_negation(levels):
    """Negation on the truth chain, collapsed into a level window."""
    return lambda v: clip(negate(v), levels)


class TestMonotonicityCheck:
    def test_identity_passes_all_stages(self):
        V3 = TruthLattice(3)
        for alpha in range(3):
            assert check_stage_monotonic(V3, lambda x: x, alpha).passed

    def test_swap_fails_with_witness(self):
        V1 = TruthLattice(1)
        table = {F0: T0, T0: F0, UNDEFINED: UNDEFINED}
        result = check_stage_monotonic(V1, function_from_table(table), 0)
        assert not result.passed
        x, y = result.witness["x"], result.witness["y"]
        assert V1.stage_le(0, x, y)
        assert not V1.stage_le(0, table[x], table[y])

    def test_lifted_negation_passes(self):
        V3 = TruthLattice(3)
        neg = lifted_negation(3)
        for alpha in range(3):
            assert check_stage_monotonic(V3, neg, alpha).passed

    def test_sampled_regime_reported(self):
        V3 = TruthLattice(3)
        result = check_stage_monotonic(V3, lambda x: x, 0, sample=50)
        assert result.passed
        assert "sampled" in result.regime


class TestContinuityCheck:
    def test_identity(self):
        V3 = TruthLattice(3)
        for alpha in range(3):
            assert check_stage_continuous(V3, lambda x: x, alpha).passed

    def test_lifted_negation_all_stages(self):
        V3 = TruthLattice(3)
        neg = lifted_negation(3)
        for alpha in range(3):
            assert check_stage_continuous(V3, neg, alpha).passed

    def test_conjunction_and_disjunction_from_pairs(self):
        V2 = TruthLattice(2)
        pairs = make_product([V2, V2])
        for alpha in range(2):
            for fn in (lambda t: conj(t[0], t[1]),
                       lambda t: disj(t[0], t[1])):
                assert check_stage_continuous(
                    pairs, fn, alpha, codomain=V2).passed

    def test_monotonicity_failure_short_circuits(self):
        V1 = TruthLattice(1)
        table = {F0: T0, T0: F0, UNDEFINED: UNDEFINED}
        result = check_stage_continuous(V1, function_from_table(table), 0)
        assert not result.passed
        assert "monotonic" in result.name


class TestStageIterate:
    def test_identity_yields_slice(self):
        V3 = TruthLattice(3)
        for alpha in range(3):
            for x in V3.iter_carrier():
                value, steps = stage_iterate(V3, lambda v: v, alpha, x)
                assert value == V3.slice(x, alpha)
                assert steps >= 1

    def test_rejects_bad_start(self):
        V2 = TruthLattice(2)
        with pytest.raises(PreconditionError):
            stage_iterate(V2, lambda v: F0, 0, T0)

    def test_result_is_least_compatible_bound(self):
        V2 = TruthLattice(2)
        neg = lifted_negation(2)
        value, _ = stage_iterate(V2, neg, 0, F0)
        assert value == F1
        for z in V2.iter_carrier():
            if V2.stage_le(0, F0, z) and V2.stage_le(0, neg(z), z):
                assert V2.stage_le(0, value, z)


class TestLeastFixpoint:
    def test_identity_gives_bottom(self):
        for spec in ("V:3", "VZ:2:2"):
            model = model_from_spec(spec)
            trace = least_fixpoint(model, lambda x: x)
            assert trace.result == model.bottom()

    def test_constant_functions_converge_to_their_value(self):
        V2 = TruthLattice(2)
        for c in V2.iter_carrier():
            trace = least_fixpoint(V2, lambda x, c=c: c)
            assert trace.result == c

    def test_trace_entries_form_a_compatible_sequence(self):
        model = model_from_spec("VZ:2:2")
        neg = lifted_negation(2)
        swap = lambda t: (neg(t[1]), neg(t[0]))
        trace = least_fixpoint(model, swap)
        entries = [rec.result for rec in trace.stages]
        assert model.is_compatible(entries)
        assert model.lub(entries) == trace.result
        assert swap(trace.result) == trace.result

    def test_least_prefix_check_accepts_engine_output(self):
        V2 = TruthLattice(2)
        neg = lifted_negation(2)
        trace = least_fixpoint(V2, neg)
        assert trace.result == UNDEFINED
        assert check_least_prefixpoint(V2, neg, trace.result).passed

    def test_least_prefix_check_rejects_top_for_identity(self):
        V2 = TruthLattice(2)
        result = check_least_prefixpoint(V2, lambda x: x, T0)
        assert not result.passed
        assert result.witness["z"] == V2.bottom()


class TestClassicalReductions:
    """Two stages with the stage-0 order equal to the base order."""

    @staticmethod
    def powerset_model():
        return StagewiseProduct([powerset_factor(4), unit_factor()])

    @staticmethod
    def lift(fn):
        return lambda element: (fn(element[0]), "*")

    MONOTONE_FUNCTIONS = [
        lambda s: s | 1,
        lambda s: s | (4 if s & 2 else 0) | 1,
        lambda s: s | ((s << 1) & 15) | 1,
        lambda s: s,
        lambda s: 15,
    ]

    def test_stage_structure(self):
        model = self.powerset_model()
        for x in model.iter_carrier():
            for y in model.iter_carrier():
                assert model.stage_le(0, x, y) == model.le(x, y)
                assert model.stage_le(1, x, y) == (x == y)

    @pytest.mark.parametrize("fn", MONOTONE_FUNCTIONS)
    def test_matches_naive_iteration(self, fn):
        model = self.powerset_model()
        lifted = self.lift(fn)
        trace = least_fixpoint(model, lifted)
        fix, applications = kleene_iterate(lifted, model.bottom())
        assert trace.result == fix
        assert trace.stages[0].steps == applications

    @pytest.mark.parametrize("fn", MONOTONE_FUNCTIONS)
    def test_matches_enumerated_least_fixed_point(self, fn):
        model = self.powerset_model()
        lifted = self.lift(fn)
        trace = least_fixpoint(model, lifted)
        fixed = [x for x in model.iter_carrier() if lifted(x) == x]
        least = [x for x in fixed if all(model.le(x, o) for o in fixed)]
        assert least == [trace.result]


class TestStageIterateContract:
    def test_postconditions_across_sampled_functions(self):
        """For every valid start, the stage iterate must bound the start,
        be stage-fixed, sit stage-below every post-fixed bound, be the
        base-least element of its stage class, and already be below its
        image at the next stage."""
        lattice, tables = all_monotone_tables_v2()
        rng = random.Random(11)
        kappa = lattice.stage_count()
        for table in rng.sample(tables, 30):
            fn = function_from_table(table)
            for alpha in range(kappa):
                for start in lattice.iter_carrier():
                    if not lattice.stage_le(alpha, start, fn(start)):
                        continue
                    value, _ = stage_iterate(lattice, fn, alpha, start)
                    assert lattice.stage_le(alpha, start, value)
                    assert lattice.stage_eq(alpha, fn(value), value)
                    for z in lattice.iter_carrier():
                        if lattice.stage_le(alpha, start, z) and \
                                lattice.stage_le(alpha, fn(z), z):
                            assert lattice.stage_le(alpha, value, z)
                    cls = [y for y in lattice.iter_carrier()
                           if lattice.stage_eq(alpha, value, y)]
                    assert all(lattice.le(value, y) for y in cls)
                    if alpha + 1 < kappa:
                        assert lattice.stage_le(alpha + 1, value, fn(value))


class TestGeneratedFamily:
    def test_sampled_monotone_tables_have_least_fixpoints(self):
        lattice, tables = all_monotone_tables_v2()
        rng = random.Random(7)
        for table in rng.sample(tables, 40):
            fn = function_from_table(table)
            trace = least_fixpoint(lattice, fn)
            assert fn(trace.result) == trace.result
            assert check_least_prefixpoint(lattice, fn, trace.result).passed

    def test_family_is_reasonably_large(self):
        _, tables = all_monotone_tables_v2()
        assert len(tables) >= 100
