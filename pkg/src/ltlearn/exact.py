"""Minimal consistent formulas by iterative deepening over the size bound."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from .encoding import Encoding, decode_model, encode_sample
from .errors import (InvariantError, LearnTimeout, SizeBudgetExhausted, StructuralConstraintError)
from .formula import OperatorSet, SyntaxDag, render
from .semantics import is_consistent
from .solver import SAT, TIMEOUT, make_solver

log = logging.getLogger(__name__)


# -- structural constraints -------------------------------------------------

@dataclass(frozen=True)
class RootLabelIn:
    """The root carries one of ``labels``."""

    labels: tuple

    min_nodes = 1

    def clauses(self, enc: Encoding):
        return [tuple(enc.pool.x(enc.n, lab) for lab in self.labels if lab in enc.labels)]


@dataclass(frozen=True)
class LabelUnused:
    """No node carries ``label``."""

    label: str

    min_nodes = 1

    def clauses(self, enc: Encoding):
        if self.label not in enc.labels:
            return []
        return [(-enc.pool.x(i, self.label),) for i in range(1, enc.n + 1)]


@dataclass(frozen=True)
class NodeLabelIn:
    """Node ``node`` (an absolute identifier) carries one of ``labels``."""

    node: int
    labels: tuple

    @property
    def min_nodes(self):
        return self.node

    def clauses(self, enc: Encoding):
        if not 1 <= self.node <= enc.n:
            raise StructuralConstraintError(f"node {self.node} is outside 1..{enc.n}")
        return [tuple(enc.pool.x(self.node, lab) for lab in self.labels if lab in enc.labels)]


@dataclass(frozen=True)
class RawClause:
    """A clause over named x/l/r literals, e.g. ``((False, ("x", 2, "!")), (True, ("l", 3, 1)))``."""

    literals: tuple

    @property
    def min_nodes(self):
        return max((key[1] for _, key in self.literals), default=1)

    def clauses(self, enc: Encoding):
        out = []
        for positive, key in self.literals:
            kind, i, arg = key
            if kind not in ("x", "l", "r"):
                raise StructuralConstraintError(f"constraints may only mention x/l/r variables, not {kind}")
            if not 1 <= i <= enc.n or (kind != "x" and not (i >= 2 and 1 <= arg < i)):
                raise StructuralConstraintError(f"{key} is out of range for size {enc.n}")
            if kind == "x" and arg not in enc.labels:
                continue
            var = enc.pool.get(key)
            out.append(var if positive else -var)
        return [tuple(out)]


def apply_structural_constraints(encoding: Encoding, constraints) -> Encoding:
    """Conjoin user constraints over x/l/r to ``encoding`` (in place; returned for chaining)."""
    for constraint in constraints:
        for clause in constraint.clauses(encoding):
            if not clause:
                # unsatisfiable constraint
                v = encoding.pool.x(1, encoding.labels[0])
                encoding.extra.extend([(v,), (-v,)])
            else:
                encoding.extra.append(tuple(clause))
    return encoding


# -- learner ------------------------------------------------------------------

@dataclass
class LearnerConfig:
    max_size: int = 30
    solver_timeout: Optional[float] = None
    total_timeout: Optional[float] = None
    ops: Optional[OperatorSet] = None
    count: int = 1
    constraints: tuple = ()
    solver: str = "embedded"
    max_enumeration: int = 10_000

    def __post_init__(self):
        if self.max_size < 1:
            raise ValueError("max_size must be at least 1")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.ops is not None and not isinstance(self.ops, OperatorSet):
            self.ops = OperatorSet(self.ops)


@dataclass
class SizeStats:
    n: int
    variables: int
    auxiliary: int
    clauses: int
    encode_seconds: float
    solve_seconds: float
    verdict: str
    models: int = 0

    def as_dict(self):
        return {"n": self.n, "variables": self.variables, "auxiliary": self.auxiliary,
                "clauses": self.clauses, "encode_seconds": round(self.encode_seconds, 6),
                "solve_seconds": round(self.solve_seconds, 6), "verdict": self.verdict,
                "models": self.models}


@dataclass
class LearnResult:
    formulas: list
    size: int
    stats: list = field(default_factory=list)

    @property
    def formula(self) -> SyntaxDag:
        return self.formulas[0]


def _remaining(deadline):
    return None if deadline is None else deadline - time.monotonic()


def _budget(config, deadline):
    left = _remaining(deadline)
    if config.solver_timeout is None:
        return left
    if left is None:
        return config.solver_timeout
    return min(left, config.solver_timeout)


def learn_minimal(sample, config: Optional[LearnerConfig] = None) -> LearnResult:
    """Smallest ``n`` for which a consistent formula exists, with up to ``config.count`` witnesses.

    Raises :class:`SizeBudgetExhausted` when every ``n <= max_size`` is
    unsatisfiable and :class:`LearnTimeout` when a solver call or the total
    budget runs out.
    """
    config = config or LearnerConfig()
    sample.check()
    ops = config.ops or sample.operators or OperatorSet()
    deadline = None if config.total_timeout is None else time.monotonic() + config.total_timeout
    start_n = max([1] + [c.min_nodes for c in config.constraints])
    stats = []
    for n in range(start_n, config.max_size + 1):
        t0 = time.monotonic()
        enc = apply_structural_constraints(encode_sample(n, sample, ops), config.constraints)
        cnf = enc.to_cnf(names=False)
        encode_seconds = time.monotonic() - t0
        record = SizeStats(n, enc.primary_variables, enc.pool.auxiliary, enc.num_clauses,
                           encode_seconds, 0.0, "")
        stats.append(record)
        with make_solver(config.solver, cnf) as backend:
            verdict = backend.solve(_budget(config, deadline))
            record.solve_seconds += verdict.elapsed
            record.verdict = verdict.status
            log.debug("n=%d vars=%d clauses=%d -> %s (%.3fs)", n, record.variables,
                      record.clauses, verdict.status, verdict.elapsed)
            if verdict.status == TIMEOUT:
                raise LearnTimeout(n - 1, stats)
            if verdict.status != SAT:
                continue
            formulas = _collect(enc, sample, backend, verdict, config, deadline, record)
        return LearnResult(formulas, n, stats)
    raise SizeBudgetExhausted(config.max_size, stats)


def _decode_checked(enc, model, sample):
    dag = decode_model(model, enc.n, enc.pool, enc.labels)
    if not is_consistent(dag, sample):
        raise InvariantError(f"decoded formula {render(dag)} is not consistent with the sample")
    return dag


def _collect(enc, sample, backend, verdict, config, deadline, record):
    formulas = []
    seen = set()
    for _ in range(config.max_enumeration):
        record.models += 1
        dag = _decode_checked(enc, verdict.model, sample)
        text = render(dag)
        if text not in seen:
            seen.add(text)
            formulas.append(dag)
            if len(formulas) >= config.count:
                break
        backend.add_clause([-lit for lit in enc.structure_literals(verdict.model)])
        verdict = backend.solve(_budget(config, deadline))
        record.solve_seconds += verdict.elapsed
        if verdict.status != SAT:
            # TIMEOUT here keeps what was found; the minimal size is already settled
            break
    return formulas


def learn_distinct(sample, config: Optional[LearnerConfig] = None, count: Optional[int] = None) -> LearnResult:
    """Up to ``count`` syntactically distinct formulas of the minimal size."""
    config = config or LearnerConfig()
    if count is not None:
        config = LearnerConfig(**{**config.__dict__, "count": count})
    return learn_minimal(sample, config)
