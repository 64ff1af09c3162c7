import pytest
from hypothesis import given

from conftest import M, matrices
from unfolding.graph import RootedGraph, unfold
from unfolding.textio import (
    ParseError,
    format_element,
    format_graph,
    format_partition,
    graph_to_dot,
    parse_element,
    parse_graph,
    read_rooted,
    tree_to_dot,
    tree_to_text,
)


def test_parse_basic_file():
    g, root = parse_graph("# comment\nvertex a\nedge a b 2  # parallel\nedge b a\nroot a\n")
    assert g.names == ("a", "b")
    assert g.adj == ((0, 2), (1, 0))
    assert root == 0


def test_repeated_edges_accumulate():
    g, _ = parse_graph("edge a a\nedge a a 3\n")
    assert g.adj == ((4,),)


def test_no_root_is_allowed_in_plain_parse():
    g, root = parse_graph("vertex z\n")
    assert root is None and g.names == ("z",)


@pytest.mark.parametrize(
    "text, line",
    [
        ("vertex a\nbogus a\n", 2),
        ("edge a\n", 1),
        ("vertex a\n\nedge a b x\n", 3),
        ("root a\nroot b\n", 2),
        ("vertex a-b\n", 1),
        ("vertex a b\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_graph(text, source="g.graph")
    assert info.value.line == line
    assert str(info.value).startswith(f"g.graph:{line}:")


def test_oversized_multiplicity_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_graph(f"edge a a {2**32}\n")


def test_read_rooted_requires_root(tmp_path):
    path = tmp_path / "g.graph"
    path.write_text("edge a b\n")
    with pytest.raises(ParseError, match="no root"):
        read_rooted(path)
    path.write_text("edge a b\nroot a\n")
    assert read_rooted(path) == RootedGraph(M([[0, 1], [0, 0]]), 0)


def test_read_rooted_rejects_unreachable_vertices(tmp_path):
    path = tmp_path / "g.graph"
    path.write_text("edge a b\nroot b\n")
    with pytest.raises(Exception):
        read_rooted(path)


@given(matrices(max_n=5, max_mult=4))
def test_round_trip(rows):
    g = M(rows)
    for root in (None, g.n - 1):
        assert parse_graph(format_graph(g, root)) == (g, root)


def test_graph_to_dot_repeats_parallel_edges_and_marks_root():
    dot = graph_to_dot(M([[0, 2], [0, 0]]), root=0)
    assert dot.count('"a" -> "b";') == 2
    assert '"a" [peripheries=2];' in dot
    assert dot.startswith("digraph G {")


def test_tree_outputs():
    t = unfold(RootedGraph(M([[1]]), 0), 3)
    dot = tree_to_dot(t, ["a"])
    assert dot.count("->") == 3 and dot.count('label="a"') == 4
    assert tree_to_text(t, ["a"]) == "a\n  a\n    a\n      a\n"


def test_format_partition():
    assert format_partition([0, 1, 1], ["S", "a", "b"]) == "class 0: S\nclass 1: a b\n"


@pytest.mark.parametrize(
    "text, expected",
    [("3x + y", (3, 1)), ("x", (1, 0)), ("0", (0, 0)), ("2*y + x + y", (1, 3)), ("10x", (10, 0))],
)
def test_parse_element(text, expected):
    assert parse_element(text, ["x", "y"]) == expected


def test_parse_element_with_digit_names():
    assert parse_element("2 + 3x2", ["2", "x2"]) == (1, 3)


@pytest.mark.parametrize("text", ["z", "3", "x +", "-x"])
def test_parse_element_errors(text):
    with pytest.raises(ParseError):
        parse_element(text, ["x", "y"])


def test_format_element():
    names = ["x", "y"]
    assert format_element((3, 1), names) == "3x + y"
    assert format_element((0, 0), names) == "0"
    assert format_element({1: 2}, names) == "2y"
    assert parse_element(format_element((7, 0), names), names) == (7, 0)
