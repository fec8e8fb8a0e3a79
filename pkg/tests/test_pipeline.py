import json

import pytest

from maniplex import is_stable, validate
from maniplex.io import read_mpx
from maniplex.pipeline import expected_label, theorem1, variant_words


@pytest.fixture(scope="module")
def rank5(tmp_path_factory):
    out = tmp_path_factory.mktemp("covers")
    return theorem1("hemicube", 5, out_dir=out), out


def test_expected_labels():
    assert expected_label(3) == "2^3_{1}"
    assert expected_label(4) == "2^4_{1,3}"
    assert expected_label(6) == "2^6_{1,3,4,5}"


def test_variant_words():
    assert variant_words(3) == [""]
    assert variant_words(4) == ["T"]
    assert variant_words(5) == ["TT", "TA"]
    assert variant_words(6, "antipodal-only") == ["TAA"]
    assert all(w[0] == "T" for w in variant_words(7))
    with pytest.raises(ValueError):
        variant_words(2)


def test_rank5_report(rank5):
    report, _ = rank5
    assert report.ok
    assert [(e.rank, e.word) for e in report.entries] == [(3, ""), (4, "T"), (5, "TT"), (5, "TA")]
    sizes = {e.word: (e.extension_flags, e.facets, e.cover_flags, e.double_cover_flags) for e in report.entries}
    assert sizes == {
        "": (24, 3, 96, 192),
        "T": (192, 8, 768, 1536),
        "TT": (49152, 256, 196608, 393216),
        "TA": (3072, 16, 12288, 24576),
    }
    for e in report.entries:
        assert e.status == "certified"
        assert e.stg_label == expected_label(e.rank)
        assert e.orbits == 2 and e.fully_transitive and e.stable is False
        assert e.aut_order_double > 2 * e.aut_order
    assert report.distinct[5] == [{"a": "TT", "b": "TA", "verdict": "non-isomorphic", "method": "facet-count"}]


def test_serialized_covers_recertify(rank5):
    report, out = rank5
    for e in report.entries:
        if e.word == "TT":
            continue  # the largest cover is already covered by the report itself
        m = read_mpx(out / e.file)
        assert m.num_flags == e.cover_flags
        assert validate(m).is_maniplex
        verdict = is_stable(m)
        assert not verdict.stable and verdict.aut_order_cover == e.aut_order_double


def test_report_json_is_stable(rank5):
    report, _ = rank5
    data = json.loads(report.to_json())
    assert data["ok"] is True
    assert list(data["entries"][0]) == list(data["entries"][-1])
    assert report.to_json() == report.to_json()


def test_budget_skips_without_building():
    report = theorem1("hemicube", 6, max_flags=20000)
    status = {(e.rank, e.word): e.status for e in report.entries}
    assert status[(5, "TA")] == "certified"
    assert status[(5, "TT")] == "SKIPPED(budget)"
    assert all(status[(6, w)] == "SKIPPED(budget)" for w in variant_words(6))
    assert report.entry(6, "TAA").cover_flags == 3072 * 2**8 * 4
    assert report.ok
    assert "SKIPPED(budget)" in report.text()


def test_threads_give_same_report():
    one = theorem1("hemicube", 5, max_flags=20000, threads=1)
    two = theorem1("hemicube", 5, max_flags=20000, threads=2)
    strip = lambda r: [{k: v for k, v in e.items() if k != "seconds"} for e in r.to_dict()["entries"]]
    assert strip(one) == strip(two)


def test_other_seed_rank4():
    report = theorem1("hemioctahedron", 4)
    assert report.ok
    assert report.entry(4, "T").stg_label == "2^4_{1,3}"


def test_bad_arguments():
    with pytest.raises(ValueError):
        theorem1("hemicube", 2)
    with pytest.raises(KeyError):
        theorem1("cube", 4)
