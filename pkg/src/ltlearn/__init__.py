"""Learning LTL formulas from positive and negative ultimately periodic traces.

Two learners are provided: :func:`learn_minimal` finds a smallest consistent
formula with a SAT solver, and :func:`learn_dt` combines small formulas in a
decision tree for larger samples.
"""

from .benchgen import PATTERNS, BenchmarkSpec, benchmark_suite, generate_sample, pattern_catalog
from .dt import DecisionTree, PrimitiveSet, SamplingConfig, learn_dt, learn_tree, tree_to_formula
from .encoding import VariablePool, decode_model, encode_sample, export_dimacs
from .errors import (AlphabetMismatchError, ContradictorySampleError, FormulaParseError, InvariantError,
                     LearnTimeout, LtlError, SampleFormatError, SizeBudgetExhausted)
from .exact import LearnerConfig, LearnResult, learn_distinct, learn_minimal
from .formula import Formula, OperatorSet, PropositionAlphabet, SyntaxDag, formula_size, parse, render
from .oracle import EnumerationBudget, oracle_minimal
from .semantics import evaluate, is_consistent
from .solver import CnfInstance, solve
from .traceio import load_sample, read_sample, save_sample, write_sample
from .words import LassoWord, Sample, normalize_position

__version__ = "0.1.0"
