"""CNF instances and the SAT backends that decide them.

The embedded backend drives Glucose 4 through ``python-sat``; the external
backend writes DIMACS to a solver binary and parses the usual ``s``/``v``
lines.  Whatever the backend, a SAT answer is re-checked clause by clause
before it leaves this module.
"""

from __future__ import annotations

import os
import subprocess
import tempfile
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import InvariantError, SolverError

SAT = "SAT"
UNSAT = "UNSAT"
TIMEOUT = "TIMEOUT"


@dataclass
class CnfInstance:
    """Clauses over variables ``1..num_vars``; ``names`` maps variables to readable keys."""

    num_vars: int
    clauses: list = field(default_factory=list)
    names: dict = field(default_factory=dict)

    def __post_init__(self):
        for clause in self.clauses:
            self._check(clause)

    def _check(self, clause):
        for lit in clause:
            if lit == 0 or abs(lit) > self.num_vars:
                raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    def add_clause(self, clause):
        clause = tuple(clause)
        self._check(clause)
        self.clauses.append(clause)

    def to_dimacs(self, comments=True) -> str:
        lines = []
        if comments:
            for var in sorted(self.names):
                key = self.names[var]
                lines.append("c " + " ".join(str(k) for k in key) + f" {var}")
        lines.append(f"p cnf {self.num_vars} {len(self.clauses)}")
        lines.extend(" ".join(map(str, clause)) + " 0" for clause in self.clauses)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dimacs(cls, text: str) -> "CnfInstance":
        num_vars = None
        clauses = []
        current = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c") or line.startswith("%"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"bad DIMACS header {line!r}")
                num_vars = int(parts[2])
                continue
            for tok in line.split():
                lit = int(tok)
                if lit == 0:
                    clauses.append(tuple(current))
                    current = []
                else:
                    current.append(lit)
        if current:
            clauses.append(tuple(current))
        if num_vars is None:
            num_vars = max((abs(l) for c in clauses for l in c), default=0)
        return cls(num_vars, clauses)


@dataclass(frozen=True)
class SolverVerdict:
    status: str
    model: Optional[tuple] = None
    elapsed: float = 0.0

    @property
    def is_sat(self):
        return self.status == SAT

    def value(self, var: int) -> bool:
        """Truth value of ``var`` in the model (SAT verdicts only)."""
        return self.model[var - 1] > 0

    def true_vars(self) -> set:
        return {lit for lit in self.model if lit > 0}


def check_model(clauses, model) -> bool:
    """``model`` is a tuple of signed literals, position ``v-1`` for variable ``v``."""
    for clause in clauses:
        if not any(model[abs(lit) - 1] == lit for lit in clause):
            return False
    return True


def _complete_model(raw, num_vars):
    values = [-(v + 1) for v in range(num_vars)]
    for lit in raw:
        if lit != 0 and abs(lit) <= num_vars:
            values[abs(lit) - 1] = lit
    return tuple(values)


def _certified(instance, status, raw, elapsed):
    if status != SAT:
        return SolverVerdict(status, None, elapsed)
    model = _complete_model(raw, instance.num_vars)
    if not check_model(instance.clauses, model):
        raise InvariantError("solver returned an assignment that violates the instance")
    return SolverVerdict(SAT, model, elapsed)


class EmbeddedSolver:
    """In-process solver via python-sat; supports adding clauses between calls."""

    name = "embedded"

    def __init__(self, instance: Optional[CnfInstance] = None, engine: str = "glucose4"):
        from pysat.solvers import Solver

        self.engine = engine
        self._solver = Solver(name=engine)
        self.instance = CnfInstance(0)
        if instance is not None:
            self.extend(instance)

    def extend(self, instance: CnfInstance):
        self.instance.num_vars = max(self.instance.num_vars, instance.num_vars)
        self.instance.names.update(instance.names)
        self.instance.clauses.extend(instance.clauses)
        self._solver.append_formula(instance.clauses)

    def add_clause(self, clause):
        clause = list(clause)
        self.instance.num_vars = max([self.instance.num_vars] + [abs(l) for l in clause])
        self.instance.clauses.append(tuple(clause))
        self._solver.add_clause(clause)

    def solve(self, timeout: Optional[float] = None) -> SolverVerdict:
        start = time.monotonic()
        if timeout is not None and timeout <= 0:
            return SolverVerdict(TIMEOUT, None, 0.0)
        timer = None
        if timeout is not None:
            timer = threading.Timer(timeout, self._solver.interrupt)
            timer.daemon = True
            timer.start()
        try:
            result = self._solver.solve_limited(expect_interrupt=timeout is not None)
        finally:
            if timer is not None:
                timer.cancel()
        elapsed = time.monotonic() - start
        if result is None:
            self._solver.clear_interrupt()
            return SolverVerdict(TIMEOUT, None, elapsed)
        if result:
            return _certified(self.instance, SAT, self._solver.get_model() or [], elapsed)
        return SolverVerdict(UNSAT, None, elapsed)

    def close(self):
        self._solver.delete()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


class DimacsSolver:
    """Runs an external DIMACS solver binary once per :meth:`solve` call."""

    def __init__(self, path: str, instance: Optional[CnfInstance] = None, args=()):
        self.path = path
        self.args = list(args)
        self.instance = CnfInstance(0)
        if instance is not None:
            self.extend(instance)

    @property
    def name(self):
        return f"dimacs:{self.path}"

    def extend(self, instance):
        self.instance.num_vars = max(self.instance.num_vars, instance.num_vars)
        self.instance.names.update(instance.names)
        self.instance.clauses.extend(tuple(c) for c in instance.clauses)

    def add_clause(self, clause):
        self.instance.num_vars = max([self.instance.num_vars] + [abs(l) for l in clause])
        self.instance.add_clause(clause)

    def solve(self, timeout: Optional[float] = None) -> SolverVerdict:
        start = time.monotonic()
        fd, path = tempfile.mkstemp(suffix=".cnf")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.instance.to_dimacs(comments=False))
            try:
                proc = subprocess.run([self.path, *self.args, path], capture_output=True,
                                      text=True, timeout=timeout)
            except subprocess.TimeoutExpired:
                return SolverVerdict(TIMEOUT, None, time.monotonic() - start)
            except OSError as exc:
                raise SolverError(f"cannot launch {self.path}: {exc}") from exc
        finally:
            os.unlink(path)
        elapsed = time.monotonic() - start
        status, raw = parse_solver_output(proc.stdout)
        if status is None:
            raise SolverError(f"{self.path} printed no status line (exit code {proc.returncode})")
        return _certified(self.instance, status, raw, elapsed)

    def close(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def parse_solver_output(text: str):
    """Read the ``s SATISFIABLE`` / ``v ...`` convention; returns ``(status, literals)``."""
    status = None
    raw = []
    for line in text.splitlines():
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = SAT
            elif word == "UNSATISFIABLE":
                status = UNSAT
            elif word in ("UNKNOWN", "INDETERMINATE"):
                status = TIMEOUT
            else:
                raise SolverError(f"unrecognised status line {line!r}")
        elif line.startswith("v "):
            raw.extend(int(tok) for tok in line[2:].split())
    return status, raw


def make_solver(spec: str = "embedded", instance: Optional[CnfInstance] = None):
    """``"embedded"``, ``"embedded:<engine>"`` or ``"dimacs:<path>"``."""
    if spec == "embedded":
        return EmbeddedSolver(instance)
    if spec.startswith("embedded:"):
        return EmbeddedSolver(instance, engine=spec.split(":", 1)[1])
    if spec.startswith("dimacs:"):
        return DimacsSolver(spec.split(":", 1)[1], instance)
    raise ValueError(f"unknown solver {spec!r}; use 'embedded' or 'dimacs:<path>'")


def solve(instance: CnfInstance, timeout: Optional[float] = None, solver: str = "embedded") -> SolverVerdict:
    with make_solver(solver, instance) as backend:
        return backend.solve(timeout)


def add_blocking_clause(instance: CnfInstance, literals) -> CnfInstance:
    """Copy of ``instance`` that excludes every assignment making all ``literals`` true."""
    literals = list(literals)
    if not literals:
        raise ValueError("blocking clause needs at least one literal")
    out = CnfInstance(instance.num_vars, list(instance.clauses), dict(instance.names))
    out.add_clause(tuple(-lit for lit in literals))
    return out
