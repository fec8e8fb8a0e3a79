import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maniplex import MalformedManiplexError, Maniplex, MapType, Walk, build_seed, double_cover, faces, is_orientable, schlafli_type, validate
from maniplex.catalog import platonic_flag_graph
from maniplex.core import components, facet_maniplex, walk_concat, walk_end, walk_flags, walk_power, walk_reverse

from oracles import naive_bipartite, naive_string_property, small_maniplex_zoo

ZOO = small_maniplex_zoo()


@pytest.fixture(scope="module")
def hemicube():
    return build_seed("hemicube")


def test_rejects_bad_shape_and_range():
    with pytest.raises(MalformedManiplexError):
        Maniplex(np.array([0, 1]))
    with pytest.raises(MalformedManiplexError):
        Maniplex(np.array([[1, 5]]))


def test_adjacency_is_read_only(hemicube):
    with pytest.raises(ValueError):
        hemicube.adj[0, 0] = 3


def test_validate_reports_every_failure():
    # colour 0 is not an involution and has a fixed point
    adj = np.array([[1, 2, 2, 0], [3, 2, 1, 0]])
    report = validate(Maniplex(adj))
    assert not report.involution
    assert not report.fixed_point_free
    assert not report.is_maniplex
    assert len(report.failures) >= 2


def test_disconnected_graph_is_not_a_maniplex():
    adj = np.array([[1, 0, 3, 2], [1, 0, 3, 2]])
    report = validate(Maniplex(adj))
    assert report.involution and not report.connected
    # equal colours on an edge is also a shared edge, but 0 and 1 are consecutive
    assert report.string_property


def test_string_property_failure_detected(hemicube):
    # swap colour 2 for colour 1: non-consecutive colours 0, 2 no longer commute
    adj = hemicube.adj.copy()
    adj[2] = hemicube.adj[1]
    report = validate(Maniplex(adj))
    assert not report.string_property


@pytest.mark.parametrize("name", sorted(ZOO))
def test_validate_matches_naive(name):
    m = ZOO[name]
    report = validate(m)
    assert report.string_property == naive_string_property(m)
    assert report.is_maniplex


@pytest.mark.parametrize("name", sorted(ZOO))
def test_orientability_matches_naive(name):
    m = ZOO[name]
    assert is_orientable(m) == naive_bipartite(m)


@pytest.mark.parametrize(
    "solid, counts, ptype",
    [
        ("tetrahedron", (4, 6, 4), MapType(3, 3)),
        ("cube", (8, 12, 6), MapType(4, 3)),
        ("octahedron", (6, 12, 8), MapType(3, 4)),
        ("dodecahedron", (20, 30, 12), MapType(5, 3)),
        ("icosahedron", (12, 30, 20), MapType(3, 5)),
    ],
)
def test_platonic_face_counts(solid, counts, ptype):
    m = platonic_flag_graph(solid)[0]
    assert tuple(faces(m, i).num_faces for i in range(3)) == counts
    assert m.num_flags == 4 * counts[1]
    assert schlafli_type(m) == ptype
    assert is_orientable(m)


def test_hemicube_faces(hemicube):
    assert [faces(hemicube, i).num_faces for i in range(3)] == [4, 6, 3]
    assert str(schlafli_type(hemicube)) == "{4,3}"


def test_face_ids_ordered_by_smallest_flag(hemicube):
    part = faces(hemicube, 2)
    firsts = [int(part.members(f).min()) for f in range(part.num_faces)]
    assert firsts == sorted(firsts)
    assert part.sizes().sum() == hemicube.num_flags


def test_components_colour_subset(hemicube):
    count, labels = components(hemicube, [0, 1])
    assert count == 3
    assert labels[0] == 0


def test_facet_maniplex(hemicube):
    f, flags = facet_maniplex(hemicube, 0)
    assert f.rank == 2 and f.num_flags == 8
    assert validate(f).is_maniplex
    assert np.array_equal(flags, np.sort(flags))


def test_double_cover_index_formula(hemicube):
    d = double_cover(hemicube)
    assert d.num_flags == 48
    for i in range(3):
        for u in range(24):
            for j in range(2):
                assert d.adj[i, 2 * u + j] == 2 * hemicube.adj[i, u] + (1 - j)
    assert validate(d).is_maniplex
    assert is_orientable(d)


def test_double_cover_of_orientable_is_disconnected():
    cube = platonic_flag_graph("cube")[0]
    assert not validate(double_cover(cube)).connected


def test_walk_algebra(hemicube):
    w = Walk(3, (0, 1, 2))
    assert walk_flags(hemicube, w)[0] == 3
    back = walk_reverse(hemicube, w)
    assert back.start == walk_end(hemicube, w)
    assert walk_end(hemicube, back) == 3
    assert walk_concat(hemicube, w, back).colours == (0, 1, 2, 2, 1, 0)
    square = Walk(3, (0, 2, 0, 2))
    assert walk_power(hemicube, square, 0).colours == ()
    assert len(walk_power(hemicube, square, 3)) == 12
    assert walk_power(hemicube, square, -1) == walk_reverse(hemicube, square)
    with pytest.raises(ValueError):
        walk_power(hemicube, w, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(ZOO)), st.integers(0, 2**32 - 1))
def test_random_relabelling_preserves_validity(name, seed):
    m = ZOO[name]
    rng = np.random.default_rng(seed)
    p = rng.permutation(m.num_flags)
    inv = np.argsort(p)
    relabelled = Maniplex(p[m.adj[:, inv]])
    assert validate(relabelled).is_maniplex == validate(m).is_maniplex
    assert is_orientable(relabelled) == is_orientable(m)
    assert sorted(faces(relabelled, 0).sizes().tolist()) == sorted(faces(m, 0).sizes().tolist())
