"""Synthetic samples labelled by common specification patterns."""

from __future__ import annotations

import logging
import math
import os
import random
from dataclasses import dataclass
from typing import Optional

from .errors import AlphabetMismatchError, GenerationError
from .formula import SyntaxDag, as_dag, parse, render
from .semantics import valuation_table
from .traceio import save_sample
from .words import LassoWord, Sample

log = logging.getLogger(__name__)

# absence / existence / universality, three rows each
PATTERNS = (
    "G (! p0)",
    "F p0",
    "G p0",
    "(F p1) -> ((! p0) U p1)",
    "G ((! p0) | (F (p0 & (F p1))))",
    "(F p1) -> (p0 U p1)",
    "G (p1 -> (G (! p0)))",
    "G (p0 & ((! p1) -> ((! p1) U (p2 & (! p1)))))",
    "G (p1 -> (G p0))",
)

DEFAULT_SIZES = (50, 200, 500)
LONG_RUNNING_SIZE = 1000
REJECTION_BUDGET = 10**6


def pattern_catalog() -> list:
    return [parse(text) for text in PATTERNS]


def _natural_key(name):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


@dataclass(frozen=True)
class BenchmarkSpec:
    pattern: SyntaxDag
    size: int = 50
    length: int = 10
    noise: int = 1
    seed: int = 0
    alphabet: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "pattern", as_dag(self.pattern))
        if self.length < 2:
            raise ValueError("word length must be at least 2")
        if self.size < 2:
            raise ValueError("sample size must be at least 2")
        if self.noise < 0:
            raise ValueError("noise proposition count must be nonnegative")

    def base_alphabet(self) -> list:
        if self.alphabet is not None:
            base = list(self.alphabet)
        else:
            base = sorted(self.pattern.propositions(), key=_natural_key)
        missing = self.pattern.propositions() - set(base)
        if missing:
            raise AlphabetMismatchError(f"pattern uses {sorted(missing)} outside the alphabet {base}")
        return base

    def full_alphabet(self) -> list:
        return self.base_alphabet() + [f"noise{i}" for i in range(self.noise)]


def random_word(rng: random.Random, alphabet, length: int) -> LassoWord:
    """Uniform symbols; the prefix length is uniform over ``0 .. length-1``."""
    prefix_len = rng.randrange(length)
    letters = []
    for _ in range(length):
        bits = rng.getrandbits(len(alphabet)) if alphabet else 0
        letters.append(frozenset(name for b, name in enumerate(alphabet) if bits >> b & 1))
    return LassoWord(letters[:prefix_len], letters[prefix_len:])


def generate_sample(spec: BenchmarkSpec, budget: int = REJECTION_BUDGET) -> Sample:
    """Draw random words and file them by the pattern until both halves are full."""
    alphabet = spec.full_alphabet()
    rng = random.Random(spec.seed)
    want_pos = math.ceil(spec.size / 2)
    want_neg = spec.size // 2
    positives, negatives = [], []
    seen = set()
    draws = 0
    while len(positives) < want_pos or len(negatives) < want_neg:
        if draws >= budget:
            raise GenerationError(
                f"pattern {render(spec.pattern)} starved after {draws} draws: "
                f"{len(positives)}/{want_pos} positives, {len(negatives)}/{want_neg} negatives")
        draws += 1
        word = random_word(rng, alphabet, spec.length)
        if word in seen:
            continue
        holds = valuation_table(spec.pattern, word)[-1][0]
        target, want = (positives, want_pos) if holds else (negatives, want_neg)
        if len(target) < want:
            target.append(word)
            seen.add(word)
    log.debug("pattern %s: %d draws", render(spec.pattern), draws)
    return Sample(positives, negatives, alphabet)


def benchmark_suite(sizes=DEFAULT_SIZES, seeds=(0,), length: int = 10, noise: int = 1) -> list:
    """``(spec, sample)`` for every pattern x size x seed."""
    sizes = list(sizes)
    if any(s >= LONG_RUNNING_SIZE for s in sizes):
        log.warning("sample sizes >= %d are long-running for the exact learner", LONG_RUNNING_SIZE)
    suite = []
    for pattern in pattern_catalog():
        for size in sizes:
            for seed in seeds:
                spec = BenchmarkSpec(pattern, size, length, noise, seed)
                suite.append((spec, generate_sample(spec)))
    return suite


def write_suite(suite, directory) -> str:
    """Write each sample plus a tab-separated ``manifest.tsv``; returns the manifest path."""
    os.makedirs(directory, exist_ok=True)
    index = {render(p): k for k, p in enumerate(pattern_catalog())}
    lines = ["# pattern\tsize\tseed\tpath"]
    for spec, sample in suite:
        k = index.get(render(spec.pattern), "x")
        name = f"pattern{k}_n{spec.size}_s{spec.seed}.trace"
        path = os.path.join(directory, name)
        save_sample(sample, path)
        lines.append(f"{render(spec.pattern)}\t{spec.size}\t{spec.seed}\t{name}")
    manifest = os.path.join(directory, "manifest.tsv")
    with open(manifest, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    return manifest
