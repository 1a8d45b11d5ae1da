"""Propositional encoding of "there is an LTL formula of size n consistent with S".

Variable families (identifiers are 1-based DAG nodes):

* ``x[i, lab]``  node ``i`` carries label ``lab`` (a proposition or an operator),
* ``l[i, j]`` / ``r[i, j]``  node ``j < i`` is the left / right child of ``i``,
* ``y[w, i, t]``  the subformula at node ``i`` holds on word ``w`` from position ``t``.

The structural part forces a well-formed DAG; each word contributes
guarded equivalences that make the ``y`` rows follow the LTL semantics on
the lasso.  The rows of a node's chosen children are first copied into
per-node auxiliary rows, and the operator semantics refer to those copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import AlphabetMismatchError, MalformedModelError
from .formula import (AND, FALSE, FINALLY, IMPLIES, NEXT, NOT, OR, TRUE,
                      UNTIL, DagNode, OperatorSet, PropositionAlphabet, SyntaxDag, arity)
from .solver import CnfInstance


class VariablePool:
    """Dense integer ids for the x/l/r/y families plus anonymous auxiliaries."""

    def __init__(self):
        self.ids = {}
        self.names = {}
        self.top = 0
        self.primary = 0
        self.auxiliary = 0
        self.words = 0

    def _new(self, key):
        self.top += 1
        if key is None:
            self.auxiliary += 1
        else:
            self.primary += 1
            self.ids[key] = self.top
            self.names[self.top] = key
        return self.top

    def get(self, key):
        var = self.ids.get(key)
        return self._new(key) if var is None else var

    def x(self, i, label):
        return self.get(("x", i, label))

    def l(self, i, j):
        return self.get(("l", i, j))

    def r(self, i, j):
        return self.get(("r", i, j))

    def y(self, w, i, t):
        return self.get(("y", w, i, t))

    def aux(self):
        return self._new(None)

    def lookup(self, key) -> Optional[int]:
        return self.ids.get(key)

    def new_word(self) -> int:
        self.words += 1
        return self.words - 1


def expected_primary_count(n: int, num_labels: int, word_lengths) -> int:
    """Closed form ``n·|labels| + 2·sum_{i=2..n}(i-1) + n·sum |uv|``."""
    return n * num_labels + 2 * sum(i - 1 for i in range(2, n + 1)) + n * sum(word_lengths)


def label_list(alphabet, ops) -> list:
    return list(alphabet) + list(OperatorSet(ops).ordered())


def between_positions(t: int, t2: int, prefix_len: int, total_len: int) -> set:
    """Periodic positions passed when moving from ``t`` to ``t2`` (exclusive of ``t2``).

    For ``t >= t2`` the walk wraps around the loop; ``t == t2`` yields the
    whole loop.
    """
    if not (prefix_len <= t < total_len and prefix_len <= t2 < total_len):
        raise ValueError(f"positions {t}, {t2} are not both inside the loop [{prefix_len}, {total_len})")
    if t < t2:
        return set(range(t, t2))
    return set(range(prefix_len, t2)) | set(range(t, total_len))


def witness_guard_positions(t: int, t2: int, prefix_len: int, total_len: int) -> set:
    """Positions the left operand of ``U`` must cover when ``t2`` is the witness for ``t``.

    Same as :func:`between_positions` except that a witness at ``t`` itself
    needs no covering at all.
    """
    if t < prefix_len:
        return set(range(t, t2))
    if t == t2:
        return set()
    return between_positions(t, t2, prefix_len, total_len)


def encode_structure(n: int, alphabet, ops, pool: VariablePool) -> list:
    """Clauses making the x/l/r variables describe a syntax DAG with ``n`` nodes."""
    labels = label_list(alphabet, ops)
    clauses = []
    for i in range(1, n + 1):
        xs = [pool.x(i, lab) for lab in labels]
        clauses.append(tuple(xs))
        for a in range(len(xs)):
            for b in range(a + 1, len(xs)):
                clauses.append((-xs[a], -xs[b]))
    for family in (pool.l, pool.r):
        for i in range(2, n + 1):
            vs = [family(i, j) for j in range(1, i)]
            clauses.append(tuple(vs))
            for a in range(len(vs)):
                for b in range(a + 1, len(vs)):
                    clauses.append((-vs[a], -vs[b]))
    # node 1 is a leaf
    leaves = [lab for lab in labels if arity(lab) == 0]
    clauses.append(tuple(pool.x(1, lab) for lab in leaves))
    return clauses


class _WordEncoder:
    """Clauses for one word.

    Every inner node ``i`` gets two auxiliary rows ``L[i, t]`` and ``R[i, t]``
    that copy the rows of its chosen children.  The operator semantics are
    then stated once per node over those rows instead of once per pair of
    candidate children, which keeps the clause count quadratic in ``n``.
    """

    def __init__(self, n, word, w, labels, pool):
        self.n = n
        self.word = word
        self.w = w
        self.labels = labels
        self.pool = pool
        self.size = len(word)
        self.clauses = []

    def y(self, i, t):
        return self.pool.y(self.w, i, t)

    def define_or(self, lits):
        """Fresh variable equivalent to the disjunction of ``lits``."""
        v = self.pool.aux()
        self.clauses.append((-v, *lits))
        for lit in lits:
            self.clauses.append((v, -lit))
        return v

    def define_and(self, lits):
        v = self.pool.aux()
        self.clauses.append((v, *(-lit for lit in lits)))
        for lit in lits:
            self.clauses.append((-v, lit))
        return v

    def _tail_row(self, row, define):
        # every loop position sees the whole loop; a prefix position adds itself to its successor's value
        lp = self.word.prefix_len
        out = [None] * self.size
        loop = define(row[lp:])
        for t in range(lp, self.size):
            out[t] = loop
        for t in range(lp - 1, -1, -1):
            out[t] = define([row[t], out[t + 1]])
        return out

    def eventually(self, row):
        """Per-position literals for ``F`` over the literal row ``row``."""
        return self._tail_row(row, self.define_or)

    def globally(self, row):
        return self._tail_row(row, self.define_and)

    def until(self, left, right):
        """Per-position literals for ``left U right``.

        Position ``t`` holds iff some witness ``t2`` has ``right`` and
        ``left`` on every position in :func:`witness_guard_positions`.  The
        disjunction over ``t2`` is factored along the scan order of ``t``:
        ``D_m = right[o_m] or (left[o_m] and D_{m+1})``.
        """
        row = [None] * self.size
        lp = self.word.prefix_len
        for t in range(lp, self.size):
            later = None
            for s in reversed(self.word.scan_order(t)):
                later = self._until_step(left[s], right[s], later)
            row[t] = later
        for t in range(lp - 1, -1, -1):
            # prefix scan order of t is t followed by the scan order of t+1
            row[t] = self._until_step(left[t], right[t], row[t + 1])
        return row

    def _until_step(self, now_left, now_right, later):
        d = self.pool.aux()
        if later is None:
            self.clauses.append((-d, now_right))
            self.clauses.append((d, -now_right))
            return d
        self.clauses.append((-d, now_right, now_left))
        self.clauses.append((-d, now_right, later))
        self.clauses.append((d, -now_right))
        self.clauses.append((d, -now_left, -later))
        return d

    def _child_row(self, i, family):
        row = [self.pool.aux() for _ in range(self.size)]
        for j in range(1, i):
            guard = (-family(i, j),)
            for t in range(self.size):
                self._equiv(guard, row[t], self.y(j, t))
        return row

    def encode(self):
        n, pool, size = self.n, self.pool, self.size
        letters = self.word.letters
        # allocate the y rows up front so the primary count is exact
        for i in range(1, n + 1):
            for t in range(size):
                self.y(i, t)
        has_unary = any(arity(lab) == 1 for lab in self.labels)
        has_binary = any(arity(lab) == 2 for lab in self.labels)
        for i in range(1, n + 1):
            for lab in self.labels:
                if arity(lab) != 0:
                    continue
                x = pool.x(i, lab)
                for t in range(size):
                    if lab == TRUE:
                        holds = True
                    elif lab == FALSE:
                        holds = False
                    else:
                        holds = lab in letters[t]
                    self.clauses.append((-x, self.y(i, t) if holds else -self.y(i, t)))
            if i == 1 or not (has_unary or has_binary):
                continue
            left = self._child_row(i, pool.l)
            right = self._child_row(i, pool.r) if has_binary else None
            for lab in self.labels:
                k = arity(lab)
                if k == 1:
                    self._unary(i, lab, (-pool.x(i, lab),), left)
                elif k == 2:
                    self._binary(i, lab, (-pool.x(i, lab),), left, right)
        return self.clauses

    def _equiv(self, guard, a, b):
        self.clauses.append((*guard, -a, b))
        self.clauses.append((*guard, a, -b))

    def _unary(self, i, lab, guard, left):
        size = self.size
        if lab == NOT:
            target = [-lit for lit in left]
        elif lab == NEXT:
            target = [left[self.word.successor(t)] for t in range(size)]
        elif lab == FINALLY:
            target = self.eventually(left)
        else:
            target = self.globally(left)
        for t in range(size):
            self._equiv(guard, self.y(i, t), target[t])

    def _binary(self, i, lab, guard, left, right):
        cl = self.clauses
        if lab == UNTIL:
            row = self.until(left, right)
            for t in range(self.size):
                self._equiv(guard, self.y(i, t), row[t])
            return
        for t in range(self.size):
            yi, a, b = self.y(i, t), left[t], right[t]
            if lab == OR:
                cl.append((*guard, -yi, a, b))
                cl.append((*guard, yi, -a))
                cl.append((*guard, yi, -b))
            elif lab == AND:
                cl.append((*guard, yi, -a, -b))
                cl.append((*guard, -yi, a))
                cl.append((*guard, -yi, b))
            elif lab == IMPLIES:
                cl.append((*guard, -yi, -a, b))
                cl.append((*guard, yi, a))
                cl.append((*guard, yi, -b))


def encode_word(n: int, word, ops, pool: VariablePool, alphabet=None, word_id: Optional[int] = None) -> list:
    """Clauses tying ``y[w, ., .]`` to the semantics of the encoded DAG on ``word``."""
    if alphabet is None:
        alphabet = sorted(word.propositions()) or ["p"]
    extra = word.propositions() - set(alphabet)
    if extra:
        raise AlphabetMismatchError(f"word uses {sorted(extra)} outside the encoder alphabet")
    if word_id is None:
        word_id = pool.new_word()
    return _WordEncoder(n, word, word_id, label_list(alphabet, ops), pool).encode()


@dataclass
class Encoding:
    """The formula for one size bound, kept in its named parts."""

    n: int
    alphabet: PropositionAlphabet
    ops: OperatorSet
    pool: VariablePool
    structure: list
    words: list
    roots: list
    extra: list = field(default_factory=list)

    @property
    def labels(self) -> list:
        return label_list(self.alphabet, self.ops)

    @property
    def primary_variables(self) -> int:
        return self.pool.primary

    @property
    def num_vars(self) -> int:
        return self.pool.top

    def clauses(self):
        yield from self.structure
        for part in self.words:
            yield from part
        yield from self.roots
        yield from self.extra

    @property
    def num_clauses(self) -> int:
        return len(self.structure) + sum(map(len, self.words)) + len(self.roots) + len(self.extra)

    def to_cnf(self, names=True) -> CnfInstance:
        cnf = CnfInstance(self.pool.top, list(self.clauses()))
        if names:
            cnf.names = dict(self.pool.names)
        return cnf

    def structure_literals(self, model) -> list:
        """The x/l/r literals that determine the decoded DAG (used for blocking)."""
        value = lambda v: model[v - 1] > 0
        lits = []
        dag = decode_model(model, self.n, self.pool, self.labels)
        for i, node in enumerate(dag.nodes, start=1):
            lits.append(self.pool.x(i, node.label))
            if node.left is not None:
                lits.append(self.pool.l(i, node.left))
            if node.right is not None:
                lits.append(self.pool.r(i, node.right))
        assert all(value(v) for v in lits)
        return lits


def encode_sample(n: int, sample, ops=None, pool: Optional[VariablePool] = None) -> Encoding:
    """Full encoding for size bound ``n``: structure, every word, root polarity per label."""
    if ops is None:
        ops = sample.operators or OperatorSet()
    if not isinstance(ops, OperatorSet):
        ops = OperatorSet(ops)
    pool = pool or VariablePool()
    alphabet = sample.alphabet
    structure = encode_structure(n, alphabet, ops, pool)
    words = []
    roots = []
    for word, polarity in [(w, True) for w in sample.positives] + [(w, False) for w in sample.negatives]:
        w = pool.new_word()
        words.append(encode_word(n, word, ops, pool, alphabet=alphabet.names, word_id=w))
        root = pool.y(w, n, 0)
        roots.append((root,) if polarity else (-root,))
    return Encoding(n, alphabet, ops, pool, structure, words, roots)


def decode_model(model, n: int, pool: VariablePool, labels) -> SyntaxDag:
    """Read the DAG described by the x/l/r part of ``model``.

    ``model`` is a sequence of signed literals indexed by ``var - 1`` (as in
    :class:`SolverVerdict`) or a set of true variables.
    """
    if isinstance(model, (set, frozenset)):
        value = model.__contains__
    else:
        value = lambda v: model[v - 1] > 0

    def unique(kind, cands):
        chosen = [c for c, var in cands if var is not None and value(var)]
        if len(chosen) != 1:
            raise MalformedModelError(f"{kind}: expected exactly one true variable, got {chosen}")
        return chosen[0]

    nodes = []
    for i in range(1, n + 1):
        label = unique(f"label of node {i}", [(lab, pool.lookup(("x", i, lab))) for lab in labels])
        k = arity(label)
        left = right = None
        if k >= 1:
            if i == 1:
                raise MalformedModelError("node 1 carries an operator")
            left = unique(f"left child of node {i}", [(j, pool.lookup(("l", i, j))) for j in range(1, i)])
        if k == 2:
            right = unique(f"right child of node {i}", [(j, pool.lookup(("r", i, j))) for j in range(1, i)])
        nodes.append(DagNode(label, left, right))
    return SyntaxDag(tuple(nodes))


def export_dimacs(encoding: Encoding) -> str:
    return encoding.to_cnf().to_dimacs()
