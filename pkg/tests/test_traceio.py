import io

import pytest

from ltlearn.dt import DecisionTree, TreeNode
from ltlearn.errors import ContradictorySampleError, SampleFormatError
from ltlearn.formula import parse
from ltlearn.traceio import (format_result, format_tree, load_sample, read_sample, save_sample,
                             write_sample)
from ltlearn.words import LassoWord, Sample

BASIC = """\
# comment
.props: p,q
.positive:
10;01|11
.negative:
00|00
"""


def test_read_basic():
    sample = read_sample(BASIC)
    assert sample.alphabet.names == ("p", "q")
    assert sample.positives == (LassoWord([{"p"}, {"q"}], [{"p", "q"}]),)
    assert sample.negatives == (LassoWord([set()], [set()]),)
    assert sample.operators is None


def test_same_line_in_both_blocks():
    text = ".props: p\n.positive:\n1|1\n.negative:\n1|1\n"
    with pytest.raises(ContradictorySampleError) as info:
        read_sample(text)
    assert "line 3" in str(info.value) and "line 5" in str(info.value)


def test_same_omega_word_written_differently():
    with pytest.raises(ContradictorySampleError):
        read_sample(".props: p\n.positive:\n1|1\n.negative:\n|1;1\n")


@pytest.mark.parametrize("text, line", [
    (".props: p\n.positive:\n1|\n", 3),
    (".props: p,q\n.positive:\n1|11\n", 3),
    (".props: p\n.positive:\n1|2\n", 3),
    (".props: p\n.positive:\n1;1\n", 3),
    (".props: p\n1|1\n", 2),
    (".props: p\n.positive:\n.bogus:\n", 3),
    (".props: p\n.ops: !,W\n", 2),
    (".props: p,p\n", 1),
])
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(SampleFormatError) as info:
        read_sample(text)
    assert info.value.line == line


def test_missing_alphabet():
    with pytest.raises(SampleFormatError):
        read_sample(".positive:\n")


def test_round_trip_preserves_order_and_ops():
    text = ".props: p,q\n.ops: !,X,F\n.positive:\n|11\n01|10\n.negative:\n"
    sample = read_sample(text)
    assert write_sample(sample) == text
    assert read_sample(write_sample(sample)) == sample


def test_empty_prefix_and_empty_negative_block():
    sample = Sample([LassoWord([], [{"p"}])], [], ["p"])
    assert write_sample(sample) == ".props: p\n.positive:\n|1\n.negative:\n"


def test_round_trip_basic_via_files(tmp_path):
    sample = read_sample(BASIC)
    path = tmp_path / "s.trace"
    save_sample(sample, path)
    assert load_sample(path) == sample
    buf = io.StringIO()
    write_sample(sample, buf)
    assert read_sample(io.StringIO(buf.getvalue())) == sample


def test_result_report():
    assert format_result(parse("F p")) == "formula := (F p)\nsize := 2\n"


def test_tree_report():
    tree = DecisionTree(TreeNode(0, TreeNode.leaf(True), TreeNode(1, TreeNode.leaf(False), TreeNode.leaf(True))))
    text = format_tree(tree, [parse("G p"), parse("F q")])
    assert text == "[0] (G p)\n  + accept\n  - [1] (F q)\n    + reject\n    - accept\n"
