import pytest
from hypothesis import given, settings, strategies as st

from slicecomp.automaton import Automaton, Buchi, Parity
from slicecomp.oaf import (
    DuplicateSection, MissingSection, OafSyntaxError, StateOutOfRange, UnassignedPriority,
    UnknownSymbol, emit_oaf, parse_oaf, read_oaf, write_oaf,
)
from slicecomp.slices import SliceConfig, complement_slice

FIG1_TEXT = """\
alphabet: p !p
states: 2
init: 0
acc: buchi 1
trans:
0 p 0
0 p 1
0 !p 0
0 !p 1
1 p 1
"""


def test_parse_fig1(fig1):
    a = parse_oaf(FIG1_TEXT)
    assert a == fig1
    assert emit_oaf(a) == FIG1_TEXT
    assert len([ln for ln in emit_oaf(a).splitlines() if ln[0].isdigit()]) == 5


def test_comments_blank_lines_and_inline_transition():
    text = "# fig 1\n\nalphabet: p !p  # props\nstates: 2\ninit: 0\nacc: buchi 1\n" \
           "trans: 0 p 0\n0 p 1\n\n0 !p 0\n0 !p 1\n1 p 1\n"
    assert emit_oaf(parse_oaf(text)) == FIG1_TEXT


def test_empty_trans_section():
    a = parse_oaf("alphabet: a\nstates: 2\ninit: 0\nacc: buchi\ntrans:\n")
    assert a.num_transitions == 0


def test_parity_line_lists_every_state():
    a = Automaton.from_edges(("a",), 3, 0, [(0, "a", 1)], Parity((2, 0, 5)))
    text = emit_oaf(a)
    assert "acc: parity 0=2 1=0 2=5\n" in text
    assert parse_oaf(text) == a


@pytest.mark.parametrize("text,err,line", [
    ("alphabet: p\nstates: 1\ninit: 0\nacc: buchi\ntrans: 0 q 1\n", UnknownSymbol, 5),
    ("alphabet: p\nstates: 1\ninit: 0\nacc: buchi\ntrans:\n0 p 0\n0 p 1\n", StateOutOfRange, 7),
    ("alphabet: p\nstates: 1\ninit: 3\nacc: buchi\ntrans:\n", StateOutOfRange, 3),
    ("alphabet: p\nstates: 2\ninit: 0\nacc: parity 0=1\ntrans:\n", UnassignedPriority, 4),
    ("alphabet: p\nstates: 1\nstates: 1\ninit: 0\nacc: buchi\ntrans:\n", DuplicateSection, 3),
    ("alphabet: p\nstates: 1\nacc: buchi\ntrans:\n", MissingSection, None),
    ("alphabet: p\nstates: x\ninit: 0\nacc: buchi\ntrans:\n", OafSyntaxError, 2),
    ("alphabet: p\nstates: 1\ninit: 0\nacc: rabin\ntrans:\n", OafSyntaxError, 4),
    ("alphabet: p\nstray\n", OafSyntaxError, 2),
])
def test_errors_carry_line_numbers(text, err, line):
    with pytest.raises(err) as info:
        parse_oaf(text)
    assert info.value.line == line


def test_labels_are_comments(fig1):
    c = complement_slice(fig1, SliceConfig.parse("DRM"))
    text = emit_oaf(c, with_labels=True)
    assert text.startswith("# 0: {q0}\n")
    assert parse_oaf(text) == parse_oaf(emit_oaf(c))


def test_file_round_trip(tmp_path, fig1):
    path = tmp_path / "fig1.oaf"
    write_oaf(fig1, path)
    assert path.read_bytes() == FIG1_TEXT.encode()
    assert read_oaf(path) == fig1


@st.composite
def automata(draw):
    k = draw(st.integers(1, 3))
    alphabet = tuple(draw(st.lists(st.text("abcxyz!_01", min_size=1, max_size=3),
                                   min_size=k, max_size=k, unique=True)))
    n = draw(st.integers(1, 6))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.sampled_from(alphabet),
                                    st.integers(0, n - 1)), max_size=20))
    if draw(st.booleans()):
        acc = Buchi(frozenset(draw(st.sets(st.integers(0, n - 1)))))
    else:
        acc = Parity(tuple(draw(st.lists(st.integers(0, 6), min_size=n, max_size=n))))
    return Automaton.from_edges(alphabet, n, draw(st.integers(0, n - 1)), edges, acc)


@settings(max_examples=200)
@given(a=automata())
def test_round_trip(a):
    text = emit_oaf(a)
    assert parse_oaf(text) == a
    assert emit_oaf(parse_oaf(text)) == text
