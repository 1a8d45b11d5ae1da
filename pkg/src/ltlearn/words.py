"""Ultimately periodic words ``u v^omega`` and samples of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Optional

from .errors import AlphabetMismatchError, ContradictorySampleError
from .formula import OperatorSet, PropositionAlphabet


def normalize_position(t: int, prefix_len: int, period_len: int) -> int:
    """Map a position of ``u v^omega`` onto ``0 .. |uv|-1`` with the same suffix."""
    if period_len < 1:
        raise ValueError("period length must be at least 1")
    if t < prefix_len + period_len:
        return t
    return prefix_len + (t - prefix_len) % period_len


def _symbol(letter) -> frozenset:
    if isinstance(letter, str):
        return frozenset({letter}) if letter else frozenset()
    return frozenset(letter)


@dataclass(frozen=True)
class LassoWord:
    """The word ``prefix . period^omega``; each symbol is a frozenset of propositions."""

    prefix: tuple
    period: tuple

    def __init__(self, prefix: Iterable = (), period: Iterable = ()):
        prefix = tuple(_symbol(a) for a in prefix)
        period = tuple(_symbol(a) for a in period)
        if not period:
            raise ValueError("the periodic part of a lasso word must be nonempty")
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    @property
    def prefix_len(self) -> int:
        return len(self.prefix)

    @property
    def period_len(self) -> int:
        return len(self.period)

    def __len__(self):
        return len(self.prefix) + len(self.period)

    @property
    def letters(self) -> tuple:
        return self.prefix + self.period

    def successor(self, t: int) -> int:
        """Next position inside ``uv``, wrapping from the last one back to ``|u|``."""
        return t + 1 if t + 1 < len(self) else len(self.prefix)

    def scan_order(self, t: int) -> list:
        """Positions visited from ``t`` until a suffix repeats.

        From a prefix position this is ``t .. |uv|-1``; from a periodic
        position it is one full turn of the loop starting at ``t``.
        """
        n = len(self)
        if t < len(self.prefix):
            return list(range(t, n))
        return list(range(t, n)) + list(range(len(self.prefix), t))

    def symbol(self, t: int) -> frozenset:
        return self.letters[normalize_position(t, len(self.prefix), len(self.period))]

    def unroll(self, length: int) -> tuple:
        return tuple(self.symbol(t) for t in range(length))

    def propositions(self) -> set:
        out = set()
        for a in self.letters:
            out |= a
        return out

    def same_omega_word(self, other: "LassoWord") -> bool:
        """Exact equality of the denoted infinite words."""
        horizon = len(self.prefix) + len(other.prefix) + 2 * lcm(len(self.period), len(other.period))
        return self.unroll(horizon) == other.unroll(horizon)

    def canonical(self) -> "LassoWord":
        """Shortest ``(u, v)`` denoting the same infinite word."""
        period = list(self.period)
        n = len(period)
        for d in range(1, n + 1):
            if n % d == 0 and period == period[:d] * (n // d):
                period = period[:d]
                break
        prefix = list(self.prefix)
        while prefix and prefix[-1] == period[-1]:
            period = [prefix.pop()] + period[:-1]
        return LassoWord(prefix, period)

    def __repr__(self):
        fmt = lambda a: "{" + ",".join(sorted(a)) + "}"
        return f"LassoWord({' '.join(map(fmt, self.prefix)) or 'ε'} ; ({' '.join(map(fmt, self.period))})^ω)"


@dataclass(frozen=True)
class Sample:
    """Positive and negative lasso words over an ordered alphabet.

    Construction does not reject contradictory samples (the same infinite
    word labelled both ways); use :meth:`check` or :meth:`contradictions`
    where that matters.
    """

    positives: tuple
    negatives: tuple
    alphabet: PropositionAlphabet
    operators: Optional[OperatorSet] = field(default=None)

    def __init__(self, positives=(), negatives=(), alphabet=None, operators=None):
        positives = tuple(positives)
        negatives = tuple(negatives)
        if alphabet is None:
            names = set()
            for w in positives + negatives:
                names |= w.propositions()
            alphabet = sorted(names) or ["p"]
        if not isinstance(alphabet, PropositionAlphabet):
            alphabet = PropositionAlphabet(alphabet)
        for w in positives + negatives:
            extra = w.propositions() - set(alphabet.names)
            if extra:
                raise AlphabetMismatchError(
                    f"word uses propositions {sorted(extra)} outside alphabet {list(alphabet.names)}")
        object.__setattr__(self, "positives", positives)
        object.__setattr__(self, "negatives", negatives)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "operators", operators)

    @property
    def words(self) -> tuple:
        return self.positives + self.negatives

    @property
    def size(self) -> int:
        return sum(len(w) for w in self.words)

    def __len__(self):
        return len(self.positives) + len(self.negatives)

    def contradictions(self) -> list:
        """Index pairs ``(i, j)`` with ``positives[i]`` and ``negatives[j]`` equal as omega-words."""
        buckets = {}
        for j, neg in enumerate(self.negatives):
            buckets.setdefault(neg.canonical(), []).append(j)
        found = []
        for i, pos in enumerate(self.positives):
            for j in buckets.get(pos.canonical(), ()):
                if pos.same_omega_word(self.negatives[j]):
                    found.append((i, j))
        return found

    def check(self) -> "Sample":
        bad = self.contradictions()
        if bad:
            i, j = bad[0]
            raise ContradictorySampleError(
                f"positive word {i + 1} and negative word {j + 1} denote the same infinite word")
        return self

    def restrict(self, positive_idx, negative_idx) -> "Sample":
        return Sample([self.positives[i] for i in positive_idx],
                      [self.negatives[j] for j in negative_idx],
                      self.alphabet, self.operators)
