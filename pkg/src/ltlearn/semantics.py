"""Valuation of LTL formulas on lasso words.

Every node of a :class:`SyntaxDag` gets a row of truth values over the
positions ``0 .. |uv|-1``; rows are filled in identifier order, so children
are always ready.  Temporal operators look only as far as
:meth:`LassoWord.scan_order`, i.e. one turn around the loop.
"""

from __future__ import annotations

from .errors import AlphabetMismatchError
from .formula import (AND, FALSE, FINALLY, GLOBALLY, IMPLIES, NEXT, NOT, OR, TRUE, UNTIL,
                      as_dag)
from .words import normalize_position


def apply_operator(label, left, right, word):
    """Row for ``label`` given the rows of its children on ``word``."""
    n = len(word)
    if label == NOT:
        return [not a for a in left]
    if label == OR:
        return [a or b for a, b in zip(left, right)]
    if label == AND:
        return [a and b for a, b in zip(left, right)]
    if label == IMPLIES:
        return [(not a) or b for a, b in zip(left, right)]
    if label == NEXT:
        return [left[word.successor(t)] for t in range(n)]
    if label == TRUE:
        return [True] * n
    if label == FALSE:
        return [False] * n
    if label == FINALLY:
        return [any(left[s] for s in word.scan_order(t)) for t in range(n)]
    if label == GLOBALLY:
        return [all(left[s] for s in word.scan_order(t)) for t in range(n)]
    if label == UNTIL:
        row = []
        for t in range(n):
            holds = False
            for s in word.scan_order(t):
                if right[s]:
                    holds = True
                    break
                if not left[s]:
                    break
            row.append(holds)
        return row
    # atomic proposition
    return [label in a for a in word.letters]


def valuation_table(formula, word, alphabet=None) -> list:
    """Rows ``table[i - 1][t]`` = value of the subformula at node ``i`` from position ``t``."""
    dag = as_dag(formula)
    if alphabet is not None:
        missing = dag.propositions() - set(alphabet)
        if missing:
            raise AlphabetMismatchError(f"unknown proposition(s) {sorted(missing)}")
    table = []
    for node in dag.nodes:
        left = table[node.left - 1] if node.left is not None else None
        right = table[node.right - 1] if node.right is not None else None
        table.append(apply_operator(node.label, left, right, word))
    return table


def evaluate(formula, word, at: int = 0, alphabet=None) -> bool:
    """Truth value of ``formula`` on the suffix of ``word`` starting at ``at``."""
    if at < 0:
        raise ValueError("position must be nonnegative")
    at = normalize_position(at, word.prefix_len, word.period_len)
    return valuation_table(formula, word, alphabet)[-1][at]


def check_alphabet(formula, sample):
    dag = as_dag(formula)
    missing = dag.propositions() - set(sample.alphabet.names)
    if missing:
        raise AlphabetMismatchError(
            f"formula uses {sorted(missing)} not in alphabet {list(sample.alphabet.names)}")
    return dag


def is_consistent(formula, sample) -> bool:
    """True iff every positive satisfies ``formula`` and every negative violates it."""
    dag = check_alphabet(formula, sample)
    return (all(valuation_table(dag, w)[-1][0] for w in sample.positives)
            and not any(valuation_table(dag, w)[-1][0] for w in sample.negatives))


def classify(formula, words) -> list:
    dag = as_dag(formula)
    return [valuation_table(dag, w)[-1][0] for w in words]
