import pytest
from hypothesis import given, settings, strategies as st

from ltlearn.benchgen import BenchmarkSpec, generate_sample
from ltlearn.errors import ContradictorySampleError, SizeBudgetExhausted, StructuralConstraintError
from ltlearn.exact import (LabelUnused, LearnerConfig, NodeLabelIn, RawClause, RootLabelIn,
                           learn_distinct, learn_minimal)
from ltlearn.formula import formula_size, render
from ltlearn.oracle import EnumerationBudget, oracle_minimal
from ltlearn.semantics import is_consistent
from ltlearn.solver import SAT, UNSAT
from ltlearn.words import LassoWord, Sample

from oracles import random_word, rng

XP_FP = Sample([LassoWord([set()], [{"p"}])], [LassoWord([], [set()])], ["p"])


def test_p_versus_empty():
    result = learn_minimal(Sample([LassoWord([], [{"p"}])], [LassoWord([], [set()])], ["p"]))
    assert render(result.formula) == "p"
    assert result.size == 1


def test_q_separates():
    sample = Sample([LassoWord([], [{"p", "q"}])], [LassoWord([], [{"p"}])], ["p", "q"])
    result = learn_minimal(sample)
    assert render(result.formula) == "q"


def test_next_or_eventually():
    result = learn_minimal(XP_FP)
    assert result.size == 2
    assert render(result.formula) in {"(X p)", "(F p)"}
    assert [s.verdict for s in result.stats] == [UNSAT, SAT]


def test_distinct_formulas():
    two = learn_distinct(XP_FP, count=2)
    assert sorted(map(render, two.formulas)) == ["(F p)", "(X p)"]
    five = learn_distinct(XP_FP, count=5)
    assert len(five.formulas) == 2
    one = learn_distinct(XP_FP, count=1)
    assert len(one.formulas) == 1


def test_contradictory_sample_rejected():
    sample = Sample([LassoWord([], [{"p"}])], [LassoWord([{"p"}], [{"p"}])], ["p"])
    with pytest.raises(ContradictorySampleError):
        learn_minimal(sample)


def test_budget_exhausted_reports_stats():
    with pytest.raises(SizeBudgetExhausted) as info:
        learn_minimal(XP_FP, LearnerConfig(max_size=1))
    assert [s.n for s in info.value.stats] == [1]


@pytest.fixture(scope="module")
def absence_sample():
    return generate_sample(BenchmarkSpec("G (! p0)", size=20, seed=3))


def test_root_constraint_forces_shape(absence_sample):
    result = learn_minimal(absence_sample, LearnerConfig(constraints=(RootLabelIn(("G",)),)))
    assert result.formula.node(result.formula.root).label == "G"
    assert is_consistent(result.formula, absence_sample)


def test_unused_label(absence_sample):
    result = learn_minimal(absence_sample, LearnerConfig(constraints=(LabelUnused("!"),)))
    assert "!" not in result.formula.labels()
    assert is_consistent(result.formula, absence_sample)


def test_contradictory_constraints_exhaust_budget(absence_sample):
    config = LearnerConfig(max_size=4, constraints=(RootLabelIn(("G",)), LabelUnused("G")))
    with pytest.raises(SizeBudgetExhausted):
        learn_minimal(absence_sample, config)


def test_out_of_range_constraint():
    config = LearnerConfig(max_size=2, constraints=(RawClause(((True, ("l", 2, 5)),)),))
    with pytest.raises(StructuralConstraintError):
        learn_minimal(XP_FP, config)


def test_node_constraint_raises_starting_size():
    result = learn_minimal(XP_FP, LearnerConfig(constraints=(NodeLabelIn(3, ("|", "&")),)))
    assert result.size == 3
    assert result.stats[0].n == 3


def test_operator_subset_changes_answer():
    result = learn_minimal(XP_FP, LearnerConfig(ops=["!", "F"]))
    assert render(result.formula) == "(F p)"


def test_stats_records_are_machine_readable():
    record = learn_minimal(XP_FP).stats[-1].as_dict()
    assert set(record) >= {"n", "variables", "clauses", "verdict", "solve_seconds"}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_minimality_matches_oracle(seed):
    r = rng(seed)
    props = ["p", "q"][: r.randint(1, 2)]
    words = []
    target = r.randint(2, 6)
    while len(words) < target:
        w = random_word(r, props, 5)
        if all(not w.same_omega_word(o) for o in words):
            words.append(w)
    cut = r.randint(1, len(words) - 1)
    sample = Sample(words[:cut], words[cut:], props)
    found = oracle_minimal(sample, EnumerationBudget(3))
    if found is None:
        return
    result = learn_distinct(sample, count=50)
    assert result.size == found[0]
    assert {render(f) for f in result.formulas} <= {render(f) for f in found[1]}
    assert all(is_consistent(f, sample) and formula_size(f) == found[0] for f in result.formulas)
