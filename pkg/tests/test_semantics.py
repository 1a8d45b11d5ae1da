import pytest
from hypothesis import given, settings, strategies as st

from ltlearn.errors import AlphabetMismatchError, ContradictorySampleError
from ltlearn.formula import Formula, parse
from ltlearn.semantics import evaluate, is_consistent
from ltlearn.words import LassoWord, Sample, normalize_position

from oracles import lasso_value, random_formula, random_word, rng


@pytest.mark.parametrize("t, prefix, period, expected", [
    (3, 2, 3, 3),
    (7, 2, 3, 4),
    (2, 2, 1, 2),
    (9, 2, 1, 2),
    (0, 0, 4, 0),
])
def test_normalize_position(t, prefix, period, expected):
    assert normalize_position(t, prefix, period) == expected


def test_evaluate_examples():
    assert evaluate(parse("p"), LassoWord([], [{"p"}]), 0) is True
    assert evaluate(parse("X p"), LassoWord([{"p"}], [set()]), 0) is False
    assert evaluate(parse("(p U (G q)) | (F (G q))"), LassoWord([{"p"}], [{"q"}]), 0) is True


def test_evaluate_periodic_wraparound():
    w = LassoWord([], [{"q"}, set()])
    assert evaluate(parse("F q"), w, 1) is True
    assert evaluate(parse("G q"), w, 0) is False
    assert evaluate(parse("X X q"), w, 0) is True
    # positions past |uv| are normalized
    assert evaluate(parse("q"), w, 6) is True


def test_until_witness_at_start_needs_nothing_else():
    w = LassoWord([], [{"q"}, set()])
    assert evaluate(parse("p U q"), w, 0) is True
    assert evaluate(parse("p U q"), w, 1) is False


def test_is_consistent_examples():
    pos, neg = LassoWord([], [{"p"}]), LassoWord([], [set()])
    assert is_consistent(parse("p"), Sample([pos], [neg], ["p"]))
    assert not is_consistent(parse("p"), Sample([neg], [], ["p"]))
    s = Sample([LassoWord([], [set()])], [LassoWord([], [{"p0"}])], ["p0"])
    assert is_consistent(parse("G (! p0)"), s)


def test_alphabet_mismatch():
    s = Sample([LassoWord([], [{"p"}])], [], ["p"])
    with pytest.raises(AlphabetMismatchError):
        is_consistent(parse("q"), s)
    with pytest.raises(AlphabetMismatchError):
        Sample([LassoWord([], [{"q"}])], [], ["p"])
    with pytest.raises(AlphabetMismatchError):
        evaluate(parse("q"), LassoWord([], [{"p"}]), alphabet=["p"])


def test_contradiction_detected_after_unrolling():
    a = LassoWord([{"p"}], [{"p"}])
    b = LassoWord([], [{"p"}, {"p"}])
    c = LassoWord([set(), {"p"}], [set(), {"p"}])
    d = LassoWord([], [set(), {"p"}])
    assert a.same_omega_word(b)
    assert c.same_omega_word(d)
    assert a.canonical() == b.canonical() == LassoWord([], [{"p"}])
    assert Sample([a], [b], ["p"]).contradictions() == [(0, 0)]
    with pytest.raises(ContradictorySampleError):
        Sample([c], [d], ["p"]).check()
    assert not LassoWord([], [{"p"}, set()]).same_omega_word(LassoWord([], [set(), {"p"}]))


def test_sample_size():
    s = Sample([LassoWord([{"p"}, {"q"}], [{"p", "q"}])], [LassoWord([set()], [set()])], ["p", "q"])
    assert s.size == 5


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**9))
def test_evaluator_matches_unrolled_oracle(seed):
    r = rng(seed)
    f = random_formula(r, ["p", "q"], r.randint(1, 6))
    w = random_word(r, ["p", "q"], 8)
    k = r.randint(0, 20)
    at = normalize_position(len(w.prefix) + k, len(w.prefix), len(w.period))
    assert evaluate(f, w, at) == lasso_value(f, w, len(w.prefix) + k)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_dualities(seed):
    r = rng(seed)
    f = random_formula(r, ["p", "q"], r.randint(1, 5))
    w = random_word(r, ["p", "q"], 7)
    t = r.randrange(len(w))
    assert evaluate(Formula("!", f), w, t) == (not evaluate(f, w, t))
    assert evaluate(Formula("G", f), w, t) == evaluate(Formula("!", Formula("F", Formula("!", f))), w, t)
    assert evaluate(Formula("F", f), w, t) == evaluate(Formula("U", Formula("true"), f), w, t)
