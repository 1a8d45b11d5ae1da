"""Reading and writing sample files and learner reports.

Sample file layout::

    # comment
    .props: p,q
    .ops: !,|,&,->,X,U,F,G      (optional)
    .positive:
    10;01|11
    .negative:
    00|00

Each word is ``u|v`` with symbols separated by ``;``; a symbol is a bit
string in alphabet order.
"""

from __future__ import annotations

import io
from typing import Iterable, Optional, TextIO

from .errors import ContradictorySampleError, SampleFormatError
from .formula import OperatorSet, PropositionAlphabet, render
from .words import LassoWord, Sample


def _decode_symbol(bits, names, lineno):
    if len(bits) != len(names):
        raise SampleFormatError(
            f"symbol {bits!r} has {len(bits)} bits but the alphabet has {len(names)} propositions", lineno)
    if any(b not in "01" for b in bits):
        raise SampleFormatError(f"symbol {bits!r} is not a bit string", lineno)
    return frozenset(name for name, b in zip(names, bits) if b == "1")


def _decode_part(text, names, lineno):
    text = text.strip()
    if not text:
        return []
    return [_decode_symbol(tok.strip(), names, lineno) for tok in text.split(";")]


def parse_word(line: str, names, lineno: Optional[int] = None) -> LassoWord:
    if line.count("|") != 1:
        raise SampleFormatError(f"expected exactly one '|' in word {line!r}", lineno)
    u, v = line.split("|")
    period = _decode_part(v, names, lineno)
    if not period:
        raise SampleFormatError("empty period", lineno)
    return LassoWord(_decode_part(u, names, lineno), period)


def format_symbol(symbol, names) -> str:
    return "".join("1" if name in symbol else "0" for name in names)


def format_word(word: LassoWord, names) -> str:
    return (";".join(format_symbol(a, names) for a in word.prefix) + "|"
            + ";".join(format_symbol(a, names) for a in word.period))


def read_sample(stream) -> Sample:
    """Parse a sample file (path-free: give it an open text stream or a string)."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    names = None
    ops = None
    block = None
    blocks = {"positive": [], "negative": []}
    lines = {"positive": [], "negative": []}
    for lineno, raw in enumerate(stream, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("."):
            key, sep, value = line[1:].partition(":")
            key = key.strip()
            if not sep:
                raise SampleFormatError(f"directive {line!r} lacks ':'", lineno)
            value = value.strip()
            if key == "props":
                if names is not None:
                    raise SampleFormatError("alphabet declared twice", lineno)
                try:
                    names = PropositionAlphabet([n.strip() for n in value.split(",") if n.strip()])
                except ValueError as exc:
                    raise SampleFormatError(str(exc), lineno) from None
            elif key == "ops":
                try:
                    ops = OperatorSet.parse(value)
                except ValueError as exc:
                    raise SampleFormatError(str(exc), lineno) from None
            elif key in blocks:
                if value:
                    raise SampleFormatError(f"unexpected text after .{key}:", lineno)
                block = key
            else:
                raise SampleFormatError(f"unknown directive .{key}", lineno)
            continue
        if names is None:
            raise SampleFormatError("word before the .props declaration", lineno)
        if block is None:
            raise SampleFormatError("word outside a .positive/.negative block", lineno)
        blocks[block].append(parse_word(line, names.names, lineno))
        lines[block].append(lineno)
    if names is None:
        raise SampleFormatError("missing .props declaration")
    sample = Sample(blocks["positive"], blocks["negative"], names, ops)
    bad = sample.contradictions()
    if bad:
        i, j = bad[0]
        raise ContradictorySampleError(
            f"line {lines['positive'][i]}: positive word equals the negative word on line "
            f"{lines['negative'][j]}")
    return sample


def write_sample(sample: Sample, stream: Optional[TextIO] = None) -> Optional[str]:
    """Serialize ``sample``; returns the text when no stream is given."""
    names = sample.alphabet.names
    out = [f".props: {','.join(names)}"]
    if sample.operators is not None:
        out.append(f".ops: {sample.operators}")
    out.append(".positive:")
    out.extend(format_word(w, names) for w in sample.positives)
    out.append(".negative:")
    out.extend(format_word(w, names) for w in sample.negatives)
    text = "\n".join(out) + "\n"
    if stream is None:
        return text
    stream.write(text)
    return None


def load_sample(path) -> Sample:
    with open(path, encoding="utf-8") as fh:
        return read_sample(fh)


def save_sample(sample: Sample, path):
    with open(path, "w", encoding="utf-8") as fh:
        write_sample(sample, fh)


# -- reports ----------------------------------------------------------------

def format_result(formula, size: Optional[int] = None) -> str:
    if size is None:
        size = formula.size
    return f"formula := {render(formula)}\nsize := {size}\n"


def format_tree(tree, primitives) -> str:
    """One node per line, two spaces per level; ``+`` marks the true branch, ``-`` the false one."""
    lines = []

    def walk(node, depth, edge):
        pad = "  " * depth + (edge + " " if edge else "")
        if node.is_leaf:
            lines.append(pad + ("accept" if node.accept else "reject"))
            return
        lines.append(pad + f"[{node.feature}] {render(primitives[node.feature])}")
        walk(node.if_true, depth + 1, "+")
        walk(node.if_false, depth + 1, "-")

    walk(tree.root, 0, "")
    return "\n".join(lines) + "\n"


def format_primitives(primitives: Iterable) -> str:
    return "".join(f"primitive[{i}] := {render(p)}\n" for i, p in enumerate(primitives))
