"""Brute-force enumeration of small formulas; ground truth for the SAT learner.

Formulas are generated bottom-up by DAG size (number of distinct
subformulas).  Practical up to size 4 or 5 on two propositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .formula import BINARY, UNARY, Formula, OperatorSet, PropositionAlphabet, SyntaxDag, render
from .semantics import apply_operator


@dataclass(frozen=True)
class EnumerationBudget:
    max_size: int
    ops: OperatorSet = OperatorSet()
    alphabet: Optional[PropositionAlphabet] = None

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("enumeration budget needs max_size >= 1")


def _strata(budget, alphabet):
    """Lists ``by_size[s]`` of ``(formula, subformula set)`` for ``s = 1..max_size``."""
    ops = budget.ops
    unary = [op for op in ops.ordered() if op in UNARY]
    binary = [op for op in ops.ordered() if op in BINARY]
    leaves = list(alphabet) + [c for c in ops.ordered() if c not in UNARY and c not in BINARY]
    by_size = {1: [(Formula(a), frozenset({Formula(a)})) for a in leaves]}
    yield 1, by_size[1]
    pool = list(by_size[1])
    for s in range(2, budget.max_size + 1):
        layer = {}
        for f, subs in by_size[s - 1]:
            for op in unary:
                g = Formula(op, f)
                layer.setdefault(g, subs | {g})
        for a, subs_a in pool:
            for b, subs_b in pool:
                subs = subs_a | subs_b
                if len(subs) != s - 1:
                    continue
                for op in binary:
                    g = Formula(op, a, b)
                    layer.setdefault(g, subs | {g})
        by_size[s] = sorted(layer.items(), key=lambda item: render(item[0]))
        pool.extend(by_size[s])
        yield s, by_size[s]


def enumerate_formulas(budget: EnumerationBudget, alphabet=None) -> Iterator[SyntaxDag]:
    """Every syntax DAG of size ``<= budget.max_size`` once, in nondecreasing size."""
    alphabet = alphabet or budget.alphabet
    if alphabet is None:
        raise ValueError("enumeration needs an alphabet")
    for _, layer in _strata(budget, alphabet):
        for f, _ in layer:
            yield SyntaxDag.from_formula(f)


def _rows(formula, word, memo):
    key = formula
    if key not in memo:
        left = _rows(formula.left, word, memo) if formula.left is not None else None
        right = _rows(formula.right, word, memo) if formula.right is not None else None
        memo[key] = apply_operator(formula.label, left, right, word)
    return memo[key]


def oracle_minimal(sample, budget: EnumerationBudget):
    """``(n, [consistent formulas of size n])`` for the least such ``n``, or ``None``."""
    memos = [{} for _ in sample.words]
    pos = [(w, m) for w, m in zip(sample.positives, memos)]
    neg = [(w, m) for w, m in zip(sample.negatives, memos[len(sample.positives):])]
    for size, layer in _strata(budget, sample.alphabet):
        found = []
        for f, _ in layer:
            if all(_rows(f, w, m)[0] for w, m in pos) and not any(_rows(f, w, m)[0] for w, m in neg):
                found.append(SyntaxDag.from_formula(f))
        if found:
            return size, found
    return None
