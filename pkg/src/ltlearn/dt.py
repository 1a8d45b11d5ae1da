"""Decision trees over LTL primitives.

Phase one learns small formulas ("primitives") from subsets of the sample
with the exact learner until every (positive, negative) pair is separated
by at least one of them.  Phase two evaluates the primitives on every word,
grows an unpruned Gini tree over those Boolean features, and turns the tree
back into a formula: the disjunction, over paths that end in an accepting
leaf, of the conjunction of the tests along the path.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import InvariantError
from .exact import LearnerConfig, learn_minimal
from .formula import (AND, FALSE, NOT, OR, TRUE, Formula, OperatorSet, SyntaxDag, as_formula, render)
from .semantics import classify, is_consistent

log = logging.getLogger(__name__)

ALPHA = "alpha"
BETA = "beta"


@dataclass
class SamplingConfig:
    strategy: str = ALPHA
    k: int = 3
    boost: float = 2.0
    restart: int = 32
    seed: int = 0
    max_rounds: int = 100_000

    def __post_init__(self):
        if self.strategy not in (ALPHA, BETA):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.k < 1:
            raise ValueError("subset size k must be at least 1")
        if self.boost <= 1:
            raise ValueError("boost factor must exceed 1")
        if self.restart < 1:
            raise ValueError("restart threshold must be at least 1")


@dataclass
class PrimitiveSet:
    """Primitives plus their truth values on the sample's positives and negatives."""

    primitives: list
    positive_values: np.ndarray
    negative_values: np.ndarray
    rounds: list = field(default_factory=list)

    @classmethod
    def empty(cls, sample):
        return cls([], np.zeros((len(sample.positives), 0), bool),
                   np.zeros((len(sample.negatives), 0), bool))

    def add(self, formula, sample) -> bool:
        """Append ``formula`` unless an identical one is present; True if it was new."""
        text = render(formula)
        if any(render(p) == text for p in self.primitives):
            return False
        self.primitives.append(formula)
        pos = np.array(classify(formula, sample.positives), bool).reshape(-1, 1)
        neg = np.array(classify(formula, sample.negatives), bool).reshape(-1, 1)
        self.positive_values = np.hstack([self.positive_values, pos])
        self.negative_values = np.hstack([self.negative_values, neg])
        return True

    def separated(self) -> np.ndarray:
        """``sep[i, j]``: some primitive holds on positive ``i`` and fails on negative ``j``."""
        p, q = len(self.positive_values), len(self.negative_values)
        if not self.primitives:
            return np.zeros((p, q), bool)
        return (self.positive_values[:, None, :] & ~self.negative_values[None, :, :]).any(axis=2)

    def complete(self) -> bool:
        return bool(self.separated().all())

    def __len__(self):
        return len(self.primitives)


def _weighted_pick(rng, weights, k):
    """``k`` distinct indices drawn proportionally to ``weights``."""
    idx = list(range(len(weights)))
    w = list(weights)
    chosen = []
    for _ in range(min(k, len(idx))):
        r = rng.random() * sum(w)
        acc = 0.0
        for pos, wi in enumerate(w):
            acc += wi
            if r < acc:
                break
        chosen.append(idx.pop(pos))
        w.pop(pos)
    return sorted(chosen)


def strategy_alpha(sample, learner: Optional[LearnerConfig] = None,
                   config: Optional[SamplingConfig] = None) -> PrimitiveSet:
    """Weighted random subsets of ``k`` positives and ``k`` negatives per round.

    After each round the weight of every word that still takes part in an
    unseparated pair is multiplied by ``config.boost``; weights fall back to
    uniform after ``config.restart`` rounds without new separated pairs.
    """
    config = config or SamplingConfig()
    learner = learner or LearnerConfig()
    rng = random.Random(config.seed)
    prims = PrimitiveSet.empty(sample)
    n_pos, n_neg = len(sample.positives), len(sample.negatives)
    if n_pos == 0 or n_neg == 0:
        return prims
    k = min(config.k, n_pos, n_neg)
    w_pos = [1.0] * n_pos
    w_neg = [1.0] * n_neg
    separated = prims.separated()
    stale = 0
    for rnd in range(config.max_rounds):
        if separated.all():
            return prims
        pi = _weighted_pick(rng, w_pos, k)
        ni = _weighted_pick(rng, w_neg, k)
        result = learn_minimal(sample.restrict(pi, ni), learner)
        formula = result.formula.canonical()
        new = prims.add(formula, sample)
        before = int(separated.sum())
        separated = prims.separated()
        gained = int(separated.sum()) - before
        prims.rounds.append({"round": rnd, "strategy": ALPHA, "positives": pi, "negatives": ni,
                             "primitive": render(formula), "size": result.size, "new": new,
                             "separated": int(separated.sum()), "pairs": separated.size})
        log.debug("alpha round %d: %s (+%d pairs)", rnd, render(formula), gained)
        unresolved_pos = ~separated.all(axis=1)
        unresolved_neg = ~separated.all(axis=0)
        for i in np.flatnonzero(unresolved_pos):
            w_pos[i] *= config.boost
        for j in np.flatnonzero(unresolved_neg):
            w_neg[j] *= config.boost
        stale = 0 if gained > 0 else stale + 1
        if stale >= config.restart:
            w_pos = [1.0] * n_pos
            w_neg = [1.0] * n_neg
            stale = 0
        # keep weights finite on long runs
        top = max(max(w_pos), max(w_neg))
        if top > 1e100:
            w_pos = [w / top for w in w_pos]
            w_neg = [w / top for w in w_neg]
    if separated.all():
        return prims
    raise InvariantError(f"strategy alpha did not separate all pairs within {config.max_rounds} rounds")


def strategy_beta(sample, learner: Optional[LearnerConfig] = None,
                  config: Optional[SamplingConfig] = None) -> PrimitiveSet:
    """Uniform batches of ``k`` still-unseparated pairs until none remain."""
    config = config or SamplingConfig(strategy=BETA)
    learner = learner or LearnerConfig()
    rng = random.Random(config.seed)
    prims = PrimitiveSet.empty(sample)
    remaining = [(i, j) for i in range(len(sample.positives)) for j in range(len(sample.negatives))]
    rnd = 0
    while remaining:
        batch = rng.sample(remaining, min(config.k, len(remaining)))
        pi = sorted({i for i, _ in batch})
        ni = sorted({j for _, j in batch})
        result = learn_minimal(sample.restrict(pi, ni), learner)
        formula = result.formula.canonical()
        new = prims.add(formula, sample)
        pos_vals = prims.positive_values[:, -1] if new else np.array(classify(formula, sample.positives))
        neg_vals = prims.negative_values[:, -1] if new else np.array(classify(formula, sample.negatives))
        remaining = [(i, j) for i, j in remaining if not (pos_vals[i] and not neg_vals[j])]
        prims.rounds.append({"round": rnd, "strategy": BETA, "positives": pi, "negatives": ni,
                             "primitive": render(formula), "size": result.size, "new": new,
                             "remaining": len(remaining)})
        rnd += 1
    return prims


# -- tree induction ------------------------------------------------------------

@dataclass(frozen=True)
class TreeNode:
    feature: Optional[int] = None
    if_true: Optional["TreeNode"] = None
    if_false: Optional["TreeNode"] = None
    accept: Optional[bool] = None

    @property
    def is_leaf(self):
        return self.feature is None

    @classmethod
    def leaf(cls, accept):
        return cls(accept=bool(accept))


@dataclass(frozen=True)
class DecisionTree:
    root: TreeNode

    def classify(self, vector) -> bool:
        node = self.root
        while not node.is_leaf:
            node = node.if_true if vector[node.feature] else node.if_false
        return node.accept

    def inner_nodes(self) -> int:
        def count(node):
            return 0 if node.is_leaf else 1 + count(node.if_true) + count(node.if_false)
        return count(self.root)

    def depth(self) -> int:
        def d(node):
            return 0 if node.is_leaf else 1 + max(d(node.if_true), d(node.if_false))
        return d(self.root)

    def accepting_paths(self) -> list:
        """Each path as a list of ``(feature, polarity)`` tests, root first."""
        paths = []

        def walk(node, path):
            if node.is_leaf:
                if node.accept:
                    paths.append(path)
                return
            walk(node.if_true, path + [(node.feature, True)])
            walk(node.if_false, path + [(node.feature, False)])

        walk(self.root, [])
        return paths


def featurize(sample, primitives) -> list:
    """Rows ``(feature tuple, label)``: positives first, then negatives."""
    if isinstance(primitives, PrimitiveSet):
        if len(primitives) and not primitives.complete():
            raise InvariantError("primitives do not separate every positive/negative pair")
        pos = [tuple(bool(v) for v in row) for row in primitives.positive_values]
        neg = [tuple(bool(v) for v in row) for row in primitives.negative_values]
    else:
        cols_p = [classify(p, sample.positives) for p in primitives]
        cols_n = [classify(p, sample.negatives) for p in primitives]
        pos = [tuple(col[i] for col in cols_p) for i in range(len(sample.positives))]
        neg = [tuple(col[i] for col in cols_n) for i in range(len(sample.negatives))]
    rows = [(v, True) for v in pos] + [(v, False) for v in neg]
    labels = {}
    for vec, label in rows:
        if labels.setdefault(vec, label) != label:
            raise InvariantError("a positive and a negative word have identical feature vectors")
    return rows


def gini(labels) -> Fraction:
    n = len(labels)
    if n == 0:
        return Fraction(0)
    acc = sum(1 for lab in labels if lab)
    p = Fraction(acc, n)
    return 1 - p * p - (1 - p) * (1 - p)


def gini_split(rows, feature) -> Fraction:
    """Branch-weighted Gini impurity after splitting ``rows`` on ``feature``."""
    if not rows:
        raise ValueError("cannot split an empty row set")
    yes = [label for vec, label in rows if vec[feature]]
    no = [label for vec, label in rows if not vec[feature]]
    n = len(rows)
    return Fraction(len(yes), n) * gini(yes) + Fraction(len(no), n) * gini(no)


def learn_tree(rows) -> DecisionTree:
    """Grow a Gini tree until every leaf is pure; ties go to the lowest feature index."""
    if not rows:
        return DecisionTree(TreeNode.leaf(True))
    width = len(rows[0][0])

    def grow(subset):
        labels = {label for _, label in subset}
        if len(labels) == 1:
            return TreeNode.leaf(labels.pop())
        best = None
        for f in range(width):
            values = {vec[f] for vec, _ in subset}
            if len(values) < 2:
                continue
            score = gini_split(subset, f)
            if best is None or score < best[0]:
                best = (score, f)
        if best is None:
            raise InvariantError("rows with identical features carry different labels")
        f = best[1]
        return TreeNode(f, grow([r for r in subset if r[0][f]]), grow([r for r in subset if not r[0][f]]))

    return DecisionTree(grow(list(rows)))


# -- tree to formula ------------------------------------------------------------

def _constant(value, alphabet, ops):
    if ops is not None and (TRUE if value else FALSE) in ops:
        return Formula(TRUE if value else FALSE)
    p = Formula(alphabet.names[0] if hasattr(alphabet, "names") else list(alphabet)[0])
    true = Formula(OR, p, Formula(NOT, p))
    return true if value else Formula(NOT, true)


def tree_to_formula(tree: DecisionTree, primitives, alphabet, ops: Optional[OperatorSet] = None) -> SyntaxDag:
    """Disjunction over accepting paths of the conjunction of path literals."""
    prims = [as_formula(p) for p in (primitives.primitives if isinstance(primitives, PrimitiveSet)
                                     else primitives)]
    paths = tree.accepting_paths()
    if not paths:
        return SyntaxDag.from_formula(_constant(False, alphabet, ops))
    disjuncts = []
    for path in paths:
        if not path:
            return SyntaxDag.from_formula(_constant(True, alphabet, ops))
        conj = None
        for feature, polarity in path:
            lit = prims[feature] if polarity else Formula(NOT, prims[feature])
            conj = lit if conj is None else Formula(AND, conj, lit)
        disjuncts.append(conj)
    result = disjuncts[0]
    for d in disjuncts[1:]:
        result = Formula(OR, result, d)
    return SyntaxDag.from_formula(result)


@dataclass
class DTResult:
    tree: DecisionTree
    formula: SyntaxDag
    primitives: PrimitiveSet

    @property
    def size(self):
        return self.formula.size


def learn_dt(sample, sampling: Optional[SamplingConfig] = None,
             learner: Optional[LearnerConfig] = None) -> DTResult:
    """Primitives by the chosen strategy, then a tree, then its formula (checked consistent)."""
    sampling = sampling or SamplingConfig()
    sample.check()
    strategy = strategy_alpha if sampling.strategy == ALPHA else strategy_beta
    prims = strategy(sample, learner, sampling)
    if not prims.complete():
        raise InvariantError("primitive set does not separate every pair")
    rows = featurize(sample, prims)
    tree = learn_tree(rows)
    ops = (learner.ops if learner and learner.ops else None) or sample.operators
    formula = tree_to_formula(tree, prims, sample.alphabet, ops)
    if not is_consistent(formula, sample):
        raise InvariantError(f"tree formula {render(formula)} is not consistent with the sample")
    return DTResult(tree, formula, prims)
