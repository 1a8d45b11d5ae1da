"""LTL formulas: operator tables, tree form, syntax DAGs, parsing and rendering.

Two representations live here.  :class:`Formula` is a plain hashable tree
(used for building formulas programmatically and for enumeration), while
:class:`SyntaxDag` is the numbered DAG the SAT encoding talks about: nodes
``1..n``, children strictly below their parent, root ``n``.  Converting a
tree into a DAG hash-conses identical subtrees, so the node count equals the
number of distinct subformulas.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .errors import FormulaParseError

NOT = "!"
OR = "|"
AND = "&"
IMPLIES = "->"
NEXT = "X"
UNTIL = "U"
FINALLY = "F"
GLOBALLY = "G"
TRUE = "true"
FALSE = "false"

UNARY = frozenset({NOT, NEXT, FINALLY, GLOBALLY})
BINARY = frozenset({OR, AND, IMPLIES, UNTIL})
CONSTANTS = frozenset({TRUE, FALSE})
OPERATORS = UNARY | BINARY
# display/encoding order of operator labels
OPERATOR_ORDER = (NOT, OR, AND, IMPLIES, NEXT, UNTIL, FINALLY, GLOBALLY, TRUE, FALSE)
KEYWORDS = frozenset({NEXT, UNTIL, FINALLY, GLOBALLY, TRUE, FALSE})

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def arity(label: str) -> int:
    if label in BINARY:
        return 2
    if label in UNARY:
        return 1
    return 0


def is_proposition(label: str) -> bool:
    return label not in OPERATORS and label not in CONSTANTS


@dataclass(frozen=True)
class PropositionAlphabet:
    """Ordered, duplicate-free list of proposition names."""

    names: tuple

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValueError("proposition alphabet must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate proposition in alphabet {names!r}")
        for name in names:
            if not isinstance(name, str) or not _IDENT.match(name) or name in KEYWORDS:
                raise ValueError(f"invalid proposition name {name!r}")
        object.__setattr__(self, "names", names)

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.names

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class OperatorSet:
    """The operators (and optionally the constants) a learner may use."""

    enabled: frozenset

    def __init__(self, enabled: Iterable[str] = OPERATORS):
        enabled = frozenset(enabled)
        unknown = enabled - OPERATORS - CONSTANTS
        if unknown:
            raise ValueError(f"unknown operator(s): {', '.join(sorted(unknown))}")
        if not enabled:
            raise ValueError("operator set must be nonempty")
        object.__setattr__(self, "enabled", enabled)

    @classmethod
    def parse(cls, text: str) -> "OperatorSet":
        """Parse a comma-separated list such as ``"!,|,&,->,X,U,F,G"``."""
        tokens = [tok.strip() for tok in text.split(",") if tok.strip()]
        return cls(tokens)

    def ordered(self) -> tuple:
        return tuple(op for op in OPERATOR_ORDER if op in self.enabled)

    def __contains__(self, op):
        return op in self.enabled

    def __iter__(self):
        return iter(self.ordered())

    def __len__(self):
        return len(self.enabled)

    def __str__(self):
        return ",".join(self.ordered())

    @property
    def has_constants(self) -> bool:
        return bool(self.enabled & CONSTANTS)


ALL_OPERATORS = OperatorSet(OPERATORS)


class Formula(NamedTuple):
    """Tree form of an LTL formula; ``left``/``right`` are ``None`` when unused."""

    label: str
    left: Optional["Formula"] = None
    right: Optional["Formula"] = None

    def __str__(self):
        return render(self)

    def subformulas(self) -> set:
        seen = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if f in seen:
                continue
            seen.add(f)
            if f.left is not None:
                stack.append(f.left)
            if f.right is not None:
                stack.append(f.right)
        return seen

    def propositions(self) -> set:
        return {f.label for f in self.subformulas() if is_proposition(f.label)}

    @property
    def size(self) -> int:
        return len(self.subformulas())


def prop(name: str) -> Formula:
    return Formula(name)


def Not(a):
    return Formula(NOT, a)


def Next(a):
    return Formula(NEXT, a)


def Eventually(a):
    return Formula(FINALLY, a)


def Always(a):
    return Formula(GLOBALLY, a)


def Or(a, b):
    return Formula(OR, a, b)


def And(a, b):
    return Formula(AND, a, b)


def Implies(a, b):
    return Formula(IMPLIES, a, b)


def Until(a, b):
    return Formula(UNTIL, a, b)


class DagNode(NamedTuple):
    label: str
    left: Optional[int] = None
    right: Optional[int] = None


@dataclass(frozen=True)
class SyntaxDag:
    """Syntax DAG with identifiers ``1..n``; node ``n`` is the root.

    ``nodes[i - 1]`` holds node ``i``.  Children always carry smaller
    identifiers than their parent and node 1 is a leaf.
    """

    nodes: tuple

    def __post_init__(self):
        nodes = tuple(DagNode(*node) for node in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if not nodes:
            raise ValueError("a syntax DAG has at least one node")
        for ident, node in enumerate(nodes, start=1):
            k = arity(node.label)
            if k == 0 and (node.left is not None or node.right is not None):
                raise ValueError(f"leaf node {ident} ({node.label}) has children")
            if k >= 1 and node.left is None:
                raise ValueError(f"node {ident} ({node.label}) lacks a left child")
            if k == 1 and node.right is not None:
                raise ValueError(f"unary node {ident} ({node.label}) has a right child")
            if k == 2 and node.right is None:
                raise ValueError(f"binary node {ident} ({node.label}) lacks a right child")
            for child in (node.left, node.right):
                if child is not None and not 1 <= child < ident:
                    raise ValueError(f"child {child} of node {ident} is not below it")
        if arity(nodes[0].label) != 0:
            raise ValueError("node 1 must be a proposition or constant")

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> int:
        return len(self.nodes)

    def node(self, ident: int) -> DagNode:
        return self.nodes[ident - 1]

    def propositions(self) -> set:
        return {n.label for n in self.nodes if is_proposition(n.label)}

    def labels(self) -> set:
        return {n.label for n in self.nodes}

    def to_formula(self, ident: Optional[int] = None) -> Formula:
        built = {}
        for i, node in enumerate(self.nodes, start=1):
            left = built[node.left] if node.left is not None else None
            right = built[node.right] if node.right is not None else None
            built[i] = Formula(node.label, left, right)
            if ident == i:
                break
        return built[self.root if ident is None else ident]

    @classmethod
    def from_formula(cls, formula: Formula) -> "SyntaxDag":
        """Number a tree bottom-up (left before right), sharing equal subtrees."""
        ids = {}
        nodes = []

        def visit(f):
            # iterative post-order to survive deep formulas
            stack = [(f, False)]
            while stack:
                g, expanded = stack.pop()
                if g in ids:
                    continue
                if not expanded:
                    stack.append((g, True))
                    if g.right is not None:
                        stack.append((g.right, False))
                    if g.left is not None:
                        stack.append((g.left, False))
                    continue
                left = ids[g.left] if g.left is not None else None
                right = ids[g.right] if g.right is not None else None
                nodes.append(DagNode(g.label, left, right))
                ids[g] = len(nodes)

        visit(formula)
        return cls(tuple(nodes))

    def canonical(self) -> "SyntaxDag":
        """Maximally shared, reachable-only renumbering of this DAG."""
        return SyntaxDag.from_formula(self.to_formula())

    def __str__(self):
        return render(self)


def formula_size(formula) -> int:
    """Number of nodes of the DAG (distinct subformulas for a tree)."""
    if isinstance(formula, SyntaxDag):
        return formula.size
    return formula.size


def render(formula) -> str:
    """Fully parenthesized infix text, e.g. ``((p U (G q)) | (F (G q)))``."""
    if isinstance(formula, SyntaxDag):
        formula = formula.to_formula()
    cache = {}
    stack = [(formula, False)]
    while stack:
        f, expanded = stack.pop()
        if f in cache:
            continue
        k = arity(f.label)
        if k == 0:
            cache[f] = f.label
            continue
        if not expanded:
            stack.append((f, True))
            stack.append((f.left, False))
            if k == 2:
                stack.append((f.right, False))
            continue
        if k == 1:
            cache[f] = f"({f.label} {cache[f.left]})"
        else:
            cache[f] = f"({cache[f.left]} {f.label} {cache[f.right]})"
    return cache[formula]


_TOKEN = re.compile(r"\s*(?:(->)|([()!&|])|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(4) is not None:
            raise FormulaParseError(f"unknown operator {m.group(4)!r}", start)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, alphabet):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        f = self.implication()
        if self.peek() is not None:
            raise FormulaParseError(f"unexpected {self.peek()!r}", self.pos())
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek() == IMPLIES:
            self.take()
            return Formula(IMPLIES, left, self.implication())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == OR:
            self.take()
            left = Formula(OR, left, self.conjunction())
        return left

    def conjunction(self):
        left = self.until()
        while self.peek() == AND:
            self.take()
            left = Formula(AND, left, self.until())
        return left

    def until(self):
        left = self.unary()
        if self.peek() == UNTIL:
            self.take()
            return Formula(UNTIL, left, self.until())
        return left

    def unary(self):
        tok = self.peek()
        if tok in UNARY:
            self.take()
            return Formula(tok, self.unary())
        return self.atom()

    def atom(self):
        tok, pos = self.take()
        if tok is None:
            raise FormulaParseError("unexpected end of formula", pos)
        if tok == "(":
            f = self.implication()
            if self.peek() != ")":
                raise FormulaParseError("expected ')'", self.pos())
            self.take()
            return f
        if tok in CONSTANTS:
            return Formula(tok)
        if tok in KEYWORDS or not _IDENT.match(tok):
            raise FormulaParseError(f"unexpected {tok!r}", pos)
        if self.alphabet is not None and tok not in self.alphabet:
            raise FormulaParseError(f"unknown proposition {tok!r}", pos)
        return Formula(tok)


def parse_formula(text: str, alphabet=None) -> Formula:
    """Parse formula text into tree form.

    Precedence from tightest: unary operators, ``U`` (right-associative),
    ``&``, ``|``, ``->`` (right-associative).  When ``alphabet`` is given,
    propositions outside it are rejected.
    """
    return _Parser(text, alphabet).parse()


def parse(text: str, alphabet=None) -> SyntaxDag:
    """Parse formula text into a maximally shared :class:`SyntaxDag`."""
    return SyntaxDag.from_formula(parse_formula(text, alphabet))


def as_dag(formula) -> SyntaxDag:
    if isinstance(formula, SyntaxDag):
        return formula
    if isinstance(formula, Formula):
        return SyntaxDag.from_formula(formula)
    if isinstance(formula, str):
        return parse(formula)
    raise TypeError(f"cannot interpret {type(formula).__name__} as a formula")


def as_formula(formula) -> Formula:
    if isinstance(formula, Formula):
        return formula
    if isinstance(formula, SyntaxDag):
        return formula.to_formula()
    if isinstance(formula, str):
        return parse_formula(formula)
    raise TypeError(f"cannot interpret {type(formula).__name__} as a formula")
