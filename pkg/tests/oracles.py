"""Independent reference semantics used by the tests.

``unrolled_value`` evaluates a formula on an explicit unrolling of a lasso
word. Temporal operators look ahead a window of ``window`` positions, which
for a lasso of total length ``window`` visits every distinct future position.
It shares no code with the library's evaluator.
"""

import random

from ltlearn.formula import Formula
from ltlearn.words import LassoWord


def unrolled_value(formula, letters, t, window):
    """Value at ``t`` of an unrolled word ``letters`` (a list of sets)."""
    memo = {}

    def val(f, i):
        key = (f, i)
        if key in memo:
            return memo[key]
        lab = f.label
        if lab == "!":
            r = not val(f.left, i)
        elif lab == "|":
            r = val(f.left, i) or val(f.right, i)
        elif lab == "&":
            r = val(f.left, i) and val(f.right, i)
        elif lab == "->":
            r = (not val(f.left, i)) or val(f.right, i)
        elif lab == "X":
            r = val(f.left, i + 1)
        elif lab == "F":
            r = any(val(f.left, k) for k in range(i, i + window))
        elif lab == "G":
            r = all(val(f.left, k) for k in range(i, i + window))
        elif lab == "U":
            r = False
            for k in range(i, i + window):
                if val(f.right, k):
                    r = True
                    break
                if not val(f.left, k):
                    break
        elif lab == "true":
            r = True
        elif lab == "false":
            r = False
        else:
            r = lab in letters[i]
        memo[key] = r
        return r

    return val(formula, t)


def lasso_value(formula, word, t):
    """Infinite-word value at ``t`` via a long enough unrolling."""
    window = len(word)
    length = t + (window + 1) * (formula.size + 1)
    return unrolled_value(formula, list(word.unroll(length)), t, window)


def random_word(rng, props, max_len, min_len=1):
    total = rng.randint(min_len, max_len)
    plen = rng.randint(0, total - 1)
    letters = [frozenset(p for p in props if rng.random() < 0.5) for _ in range(total)]
    return LassoWord(letters[:plen], letters[plen:])


UNARY = ["!", "X", "F", "G"]
BINARY = ["|", "&", "->", "U"]


def random_formula(rng, props, size):
    """Random tree with exactly ``size`` tree nodes (DAG size may be smaller)."""
    if size <= 1:
        return Formula(rng.choice(props))
    if size == 2 or rng.random() < 0.4:
        return Formula(rng.choice(UNARY), random_formula(rng, props, size - 1))
    left = rng.randint(1, size - 2)
    return Formula(rng.choice(BINARY), random_formula(rng, props, left),
                   random_formula(rng, props, size - 1 - left))


def rng(seed):
    return random.Random(seed)
