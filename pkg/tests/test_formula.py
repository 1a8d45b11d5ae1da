import pytest
from hypothesis import given, settings, strategies as st

from ltlearn.errors import FormulaParseError
from ltlearn.formula import (ALL_OPERATORS, DagNode, OperatorSet, PropositionAlphabet,
                             SyntaxDag, formula_size, parse, parse_formula, render)

from oracles import random_formula, rng

SHARED_G = "(p U (G q)) | (F (G q))"


def test_shared_globally_subformula_counts_once():
    dag = parse(SHARED_G)
    assert formula_size(dag) == 6
    assert render(dag) == "((p U (G q)) | (F (G q)))"
    # the same formula as a tree has eight nodes
    tree = parse_formula(SHARED_G)
    def tree_nodes(f):
        return 1 + sum(tree_nodes(c) for c in (f.left, f.right) if c is not None)
    assert tree_nodes(tree) == 8


def test_single_proposition():
    dag = parse("p")
    assert dag.size == 1
    assert render(dag) == "p"


def test_negation_rendering():
    assert render(parse("!p")) == "(! p)"


@pytest.mark.parametrize("text", ["p U", "(p", "p q", "U p", "p & & q", ""])
def test_syntax_errors(text):
    with pytest.raises(FormulaParseError):
        parse(text)


def test_parse_error_has_position():
    with pytest.raises(FormulaParseError) as info:
        parse("p & ~q")
    assert info.value.position == 4


def test_unknown_proposition_rejected_with_alphabet():
    with pytest.raises(FormulaParseError):
        parse("p & r", alphabet=["p", "q"])


def test_precedence_and_associativity():
    assert render(parse("!p U q & r | s -> t -> u")) == \
        "(((((! p) U q) & r) | s) -> (t -> u))"
    assert render(parse("a U b U c")) == "(a U (b U c))"
    assert render(parse("a & b & c")) == "((a & b) & c)"
    assert render(parse("X F G !p")) == "(X (F (G (! p))))"


def test_identifier_scheme_on_parse():
    dag = parse(SHARED_G)
    assert dag.node(1).label in ("p", "q")
    for i, node in enumerate(dag.nodes, start=1):
        for child in (node.left, node.right):
            if child is not None:
                assert child < i
    assert dag.root == dag.size


def test_constants_parse():
    dag = parse("true | false")
    assert render(dag) == "(true | false)"
    assert dag.size == 3


def test_dag_validation():
    with pytest.raises(ValueError):
        SyntaxDag((DagNode("!", 1),))
    with pytest.raises(ValueError):
        SyntaxDag((DagNode("p"), DagNode("U", 1)))
    with pytest.raises(ValueError):
        SyntaxDag((DagNode("p"), DagNode("X", 2)))
    with pytest.raises(ValueError):
        SyntaxDag((DagNode("p"), DagNode("!", 1, 1)))


def test_alphabet_and_operator_sets():
    with pytest.raises(ValueError):
        PropositionAlphabet([])
    with pytest.raises(ValueError):
        PropositionAlphabet(["p", "p"])
    with pytest.raises(ValueError):
        PropositionAlphabet(["X"])
    ops = OperatorSet.parse("!,|,&,->,X,U,F,G")
    assert ops == ALL_OPERATORS
    assert str(ops) == "!,|,&,->,X,U,F,G"
    with pytest.raises(ValueError):
        OperatorSet.parse("!,W")


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 9))
def test_render_parse_round_trip(seed, size):
    f = random_formula(rng(seed), ["p", "q", "r"], size)
    dag = SyntaxDag.from_formula(f)
    again = parse(render(dag))
    assert again == dag
    assert again.size == dag.size == f.size


def test_canonical_prunes_unreachable_and_duplicates():
    dag = SyntaxDag((DagNode("p"), DagNode("q"), DagNode("p"), DagNode("|", 1, 3)))
    canon = dag.canonical()
    assert render(canon) == "(p | p)"
    assert canon.size == 2
