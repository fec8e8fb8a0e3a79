import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maniplex import build_seed, extension, total_colouring, vartheta
from maniplex.extend import Colouring, antipodal_colouring
from maniplex.io import ParseError, dumps_clr, dumps_mpx, dumps_wgt, loads_clr, loads_mpx, loads_wgt, read_mpx, write_mpx

from oracles import small_maniplex_zoo

ZOO = small_maniplex_zoo()


@pytest.mark.parametrize("name", sorted(ZOO))
def test_mpx_round_trip(name):
    m = ZOO[name]
    back = loads_mpx(dumps_mpx(m))
    assert back.same_graph(m)
    assert back.provenance == m.provenance
    assert dumps_mpx(back) == dumps_mpx(m)


def test_mpx_keeps_facet_labels(tmp_path):
    hc = build_seed("hemicube")
    ext = extension(hc, total_colouring(hc))
    write_mpx(ext, tmp_path / "e.mpx")
    back = read_mpx(tmp_path / "e.mpx")
    assert back.label_bits == 3
    assert np.array_equal(back.facet_labels, ext.facet_labels)
    assert antipodal_colouring(back).num_colours == 4


def test_mpx_header_format():
    text = dumps_mpx(build_seed("hemicube"))
    lines = text.splitlines()
    assert lines[0] == "# hemicube"
    assert lines[1] == "mpx 3 24"
    assert [line.split()[:2] for line in lines[2:]] == [["adj", "0"], ["adj", "1"], ["adj", "2"]]


@pytest.mark.parametrize(
    "text, line",
    [
        ("", None),
        ("mpx 2\n", 1),
        ("mpx 2 2\nadj 0 1 0\n", None),
        ("mpx 2 2\nadj 0 1\nadj 1 1 0\n", 2),
        ("mpx 2 2\nadj 0 1 0\nadj 0 1 0\n", 3),
        ("mpx 2 2\nadj 0 1 0\nadj 1 1 7\n", 3),
        ("mpx 2 2\nadj 0 1 0\nadj 1 x 0\n", 3),
        ("mpx 2 2\nadj 0 1 0\nadj 1 1 0\nbogus\n", 4),
    ],
)
def test_mpx_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as err:
        loads_mpx(text, source="f.mpx")
    assert err.value.line == line
    assert str(err.value).startswith("f.mpx")


def test_mpx_comments_and_blank_lines():
    m = loads_mpx("# note\n\nmpx 2 4  # header\nadj 0 1 0 3 2\n\nadj 1 3 2 1 0\n")
    assert m.num_flags == 4 and m.provenance == "note"


def test_wgt_round_trip_and_checks():
    hc = build_seed("hemicube")
    omega = vartheta(hc)
    assert loads_wgt(dumps_wgt(omega), hc) == omega
    bad = dumps_wgt(omega).replace("w 0 1", "w 0 2", 1)
    with pytest.raises(ParseError):
        loads_wgt(bad, hc)
    with pytest.raises(ParseError):
        loads_wgt("wgt 4\nw 0 5\n")
    with pytest.raises(ParseError):
        loads_wgt("wgt 4\nw 1 0\n")


def test_clr_round_trip():
    c = Colouring(2, np.array([2, 1, 1]))
    back = loads_clr(dumps_clr(c))
    assert back.num_colours == 2 and back.colour_of.tolist() == [2, 1, 1]
    with pytest.raises(ParseError):
        loads_clr("clr 3 1 1 2\n")


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_random_weight_round_trip(k, seed):
    hc = build_seed("hemicube")
    from oracles import random_weight

    omega = random_weight(hc, k, np.random.default_rng(seed))
    assert loads_wgt(dumps_wgt(omega), hc) == omega
