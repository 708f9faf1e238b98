import random

import pytest
from hypothesis import given, strategies as st

from tailelim.cubes import Cover, cover_minterms
from tailelim.expand import FunctionSpec
from tailelim.temap import build_te_map
from tailelim.textio import (ExpressionSyntaxError, PlaError, kmap_layout, kmap_minterm,
                             parse_expression, parse_pla, read_pla, render_expression,
                             render_kmap, render_te_map, write_pla)

EXAMPLE_4_TEXT = "A'C'D' + A'BC' + BC'D + ABD + ACD"


def test_parse_golden_expressions():
    p = parse_expression("A'C' + A'B + BC")
    assert p.names == ("A", "B", "C")
    assert p.cover.encodings() == ["0-0", "01-", "-11"]
    assert parse_expression(EXAMPLE_4_TEXT).cover.encodings() == [
        "0-00", "010-", "-101", "11-1", "1-11"]


def test_parse_constants_and_complements():
    assert parse_expression("1", ["A", "B"]).cover.encodings() == ["--"]
    assert parse_expression("0 + A", ["A", "B"]).cover.encodings() == ["1-"]
    assert parse_expression("!A B + A''", ["A", "B"]).cover.encodings() == ["01", "1-"]
    assert parse_expression("  A  B'  ").cover.encodings() == ["10"]


def test_parse_contradiction_dropped():
    p = parse_expression("AA' + B", ["A", "B"])
    assert p.cover.encodings() == ["-1"]
    assert p.contradictions == ("AA'",)


def test_parse_multichar_names():
    p = parse_expression("sel' d0 + sel d1", ["sel", "d0", "d1"])
    assert p.cover.encodings() == ["01-", "1-1"]


@pytest.mark.parametrize("text, pos", [("A +", 3), ("+ A", 0), ("A ++ B", 3), ("A & B", 2),
                                       ("!", 1), ("A1", 1)])
def test_parse_errors(text, pos):
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression(text)
    assert info.value.position == pos


def test_parse_bad_names():
    with pytest.raises(ValueError):
        parse_expression("A", ["A", "A"])
    with pytest.raises(ValueError):
        parse_expression("A", ["1x"])
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("A + Q", ["A", "B"])


def test_render_examples():
    assert render_expression(Cover.from_strings(3, ["0-0", "-11"])) == "A'C' + BC"
    assert render_expression(Cover(3)) == "0"
    assert render_expression(Cover.from_strings(4, ["----"])) == "1"
    assert render_expression(Cover.from_strings(2, ["1-"]), ["sel", "d"]) == "sel"
    assert render_expression(Cover.from_strings(2, ["10"]), ["sel", "d"]) == "sel d'"


@st.composite
def covers(draw):
    n = draw(st.integers(1, 10))
    cubes = draw(st.lists(st.text("01-", min_size=n, max_size=n), max_size=8))
    return Cover.from_strings(n, cubes)


@given(covers())
def test_expression_round_trip(v):
    names = [chr(ord("A") + i) for i in range(v.width)]
    assert parse_expression(render_expression(v, names), names).cover == v


@given(covers())
def test_expression_round_trip_long_names(v):
    names = [f"x{i}" for i in range(v.width)]
    assert parse_expression(render_expression(v, names), names).cover == v


def test_read_pla_examples():
    text = ".i 3\n.o 1\n0-0 1\n01- 1\n-11 1\n.e\n"
    f = read_pla(text)
    assert f.on == {0, 2, 3, 7} and f.dc == set()
    assert read_pla(".i 3\n.o 1\n--- 1\n.e\n").on == set(range(8))
    f = read_pla(".i 3\n.o 1\n.type fr\n111 -\n000 0\n.e\n")
    assert f.dc == {7} and f.on == set()


def test_read_pla_names_and_comments():
    text = "# header\n.i 2\n.o 1\n.ilb sel d\n.p 1\n1- 1  # row\n.e\nignored\n"
    data = parse_pla(text)
    assert data.names == ("sel", "d")
    assert data.spec.on == {2, 3}
    assert data.on_cubes.encodings() == ["1-"]


def test_read_pla_on_beats_dc():
    f = read_pla(".i 2\n.o 1\n1- 1\n11 -\n0- -\n.e\n")
    assert f.on == {2, 3} and f.dc == {0, 1}


@pytest.mark.parametrize("text, line", [
    (".i 3\n.o 2\n", 2),
    (".i 3\n.o 1\n01 1\n", 3),
    (".i 3\n.o 1\n01x 1\n", 3),
    (".i 3\n.o 1\n011 7\n", 3),
    ("011 1\n", 1),
    (".i 2\n.o 1\n.type r\n", 3),
    (".i 2\n.o 1\n.foo\n", 3),
])
def test_read_pla_errors(text, line):
    with pytest.raises(PlaError) as info:
        read_pla(text)
    assert info.value.line == line


def test_read_pla_missing_header():
    with pytest.raises(PlaError):
        read_pla("")


def test_write_pla_examples():
    f = FunctionSpec(3, {0, 2, 3, 7})
    assert read_pla(write_pla(f)) == f
    assert write_pla(FunctionSpec(3, set())) == ".i 3\n.o 1\n.p 0\n.e\n"
    v = Cover.from_strings(3, ["0-0", "-11"])
    assert write_pla(v) == ".i 3\n.o 1\n.p 2\n0-0 1\n-11 1\n.e\n"
    assert write_pla(v, ["a", "b", "c"]).splitlines()[2] == ".ilb a b c"


def test_pla_round_trip_random():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(1, 8)
        on, dc = set(), set()
        for m in range(1 << n):
            r = rng.random()
            if r < 0.3:
                on.add(m)
            elif r < 0.4:
                dc.add(m)
        f = FunctionSpec(n, on, dc)
        assert read_pla(write_pla(f)) == f
        v = Cover.from_strings(n, ["".join(rng.choice("01-") for _ in range(n))
                                   for _ in range(rng.randint(0, 5))])
        data = parse_pla(write_pla(v))
        assert data.on_cubes == v and data.spec.on == cover_minterms(v)


def test_render_te_map_golden():
    text = render_te_map(build_te_map(parse_expression(EXAMPLE_4_TEXT).cover))
    lines = text.splitlines()
    assert lines[0].split() == ["x", "A'C'D'", "A'BC'", "BC'D", "ABD", "ACD"]
    assert lines[1].split() == ["A'C'D'", "x", "1", "0", "0", "0"]
    assert lines[-2].split()[-5:] == ["1", "2", "2", "2", "1"]
    assert lines[-1].split()[-5:] == ["1", "0", "0", "0", "1"]
    assert lines[-2].startswith("Total Overlaps") and lines[-1].startswith("Tail Quotient")


def test_render_te_map_final_and_singleton():
    text = render_te_map(build_te_map(parse_expression("A'C'D' + BC'D + ACD").cover))
    assert text.splitlines()[-2].split()[-3:] == ["0", "0", "0"]
    assert text.splitlines()[-1].split()[-3:] == ["2", "2", "2"]
    lines = render_te_map(build_te_map(Cover.from_strings(3, ["0-0"]))).splitlines()
    assert lines[1].split() == ["A'C'", "x"]


def _grid(text):
    return [line.split()[-4:] for line in text.splitlines()[2:]]


def test_render_kmap_golden_figures():
    three = render_kmap(parse_expression("A'C' + A'B + BC").cover)
    assert _grid(three) == [["1", "1", "0", "0"], ["0", "1", "1", "0"]]
    four = render_kmap(parse_expression(EXAMPLE_4_TEXT).cover)
    assert _grid(four) == [["1", "1", "0", "0"], ["0", "1", "1", "0"],
                           ["0", "0", "1", "1"], ["0", "0", "0", "0"]]
    assert "AB" in four.splitlines()[0] and four.splitlines()[2].startswith("CD")


def test_render_kmap_empty_and_width_errors():
    assert all(b == "0" for row in _grid(render_kmap(Cover(4))) for b in row)
    with pytest.raises(ValueError, match="truth table"):
        render_kmap(Cover(5))
    with pytest.raises(ValueError):
        render_kmap(Cover(1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_kmap_cells_exhaustive(n):
    rng = random.Random(n)
    for _ in range(30):
        v = Cover.from_strings(n, ["".join(rng.choice("01-") for _ in range(n))
                                   for _ in range(rng.randint(0, 3))])
        on = cover_minterms(v)
        _, cols, rows = kmap_layout(n)
        lines = render_kmap(v).splitlines()[2:]
        seen = set()
        for line, r in zip(lines, rows):
            cells = line.split()[-len(cols):]
            for cell, c in zip(cells, cols):
                m = kmap_minterm(n, r, c)
                seen.add(m)
                assert (cell == "1") == (m in on)
        assert seen == set(range(1 << n))
