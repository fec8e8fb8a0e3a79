"""Seed maps, the weight functions used on them, and proper-pair checks.

Seeds are the hemi-Platonic maps.  Each is derived from scratch: vertex
coordinates give the edges (nearest pairs) and a rotation system (neighbours
sorted by angle around the outward normal); tracing faces yields the flag
graph, and point reflection through the centre gives the antipodal
automorphism whose quotient is the hemi map.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Maniplex, MapType, Walk, is_orientable, schlafli_type, validate
from .symmetry import automorphism_group, is_automorphism, is_aut_consistent
from .weights import WeightFunction, constant_weight, cross_cover, odd_walk_even_weight_exists

__all__ = [
    "SeedSpec",
    "SEEDS",
    "ProperPairReport",
    "platonic_flag_graph",
    "build_seed",
    "vartheta",
    "vartheta_prime",
    "verify_proper_pair",
]

_PHI = (1 + 5**0.5) / 2


def _cyclic(points):
    out = []
    for x, y, z in points:
        out += [(x, y, z), (y, z, x), (z, x, y)]
    return out


def _coordinates(name: str) -> np.ndarray:
    signs = [-1, 1]
    if name == "tetrahedron":
        pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "cube":
        pts = list(itertools.product(signs, repeat=3))
    elif name == "octahedron":
        pts = [tuple(s * e for e in axis) for axis in np.eye(3) for s in signs]
    elif name == "icosahedron":
        pts = _cyclic([(0, a, b * _PHI) for a in signs for b in signs])
    elif name == "dodecahedron":
        pts = list(itertools.product(signs, repeat=3))
        pts += _cyclic([(0, a / _PHI, b * _PHI) for a in signs for b in signs])
    else:
        raise KeyError(f"unknown Platonic solid {name!r}")
    return np.array(pts, dtype=float)


def _polyhedron(name: str):
    """Vertices, and faces as vertex cycles, of a Platonic solid."""
    pts = _coordinates(name)
    V = len(pts)
    dist = np.linalg.norm(pts[:, None] - pts[None, :], axis=2)
    np.fill_diagonal(dist, np.inf)
    edge_len = dist.min()
    nbrs = [np.flatnonzero(np.isclose(dist[v], edge_len)) for v in range(V)]

    rotation = []
    for v in range(V):
        normal = pts[v] / np.linalg.norm(pts[v])
        e1 = pts[nbrs[v][0]] - pts[v]
        e1 -= e1.dot(normal) * normal
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(normal, e1)
        d = pts[nbrs[v]] - pts[v]
        angles = np.arctan2(d @ e2, d @ e1)
        rotation.append([int(w) for w in nbrs[v][np.argsort(angles)]])

    succ = {}
    for v in range(V):
        ring = rotation[v]
        for t, w in enumerate(ring):
            succ[(v, w)] = ring[(t + 1) % len(ring)]

    faces, used = [], set()
    for dart in sorted(succ):
        if dart in used:
            continue
        cycle = []
        u, v = dart
        while (u, v) not in used:
            used.add((u, v))
            cycle.append(u)
            u, v = v, succ[(v, u)]
        faces.append(cycle)
    E = sum(len(r) for r in rotation) // 2
    if V - E + len(faces) != 2:
        raise AssertionError(f"{name}: Euler characteristic is not 2")
    return pts, faces


def platonic_flag_graph(name: str):
    """Flag graph of a Platonic solid, plus its vertex coordinates and flag triples.

    Flags are ``(vertex, edge, face)`` triples sorted lexicographically, where
    an edge is a sorted vertex pair.  Returns ``(maniplex, points, flags)``.
    """
    pts, face_cycles = _polyhedron(name)
    flags = []
    for f, cycle in enumerate(face_cycles):
        size = len(cycle)
        for t, v in enumerate(cycle):
            for w in (cycle[t - 1], cycle[(t + 1) % size]):
                flags.append((v, tuple(sorted((v, w))), f))
    flags.sort()
    index = {flag: i for i, flag in enumerate(flags)}

    faces_of_edge = {}
    for v, e, f in flags:
        faces_of_edge.setdefault(e, set()).add(f)
    edges_at = {}
    for v, e, f in flags:
        edges_at.setdefault((v, f), set()).add(e)

    adj = np.empty((3, len(flags)), dtype=np.int64)
    for i, (v, e, f) in enumerate(flags):
        other_v = e[0] if e[1] == v else e[1]
        (other_e,) = edges_at[(v, f)] - {e}
        (other_f,) = faces_of_edge[e] - {f}
        adj[0, i] = index[(other_v, e, f)]
        adj[1, i] = index[(v, other_e, f)]
        adj[2, i] = index[(v, e, other_f)]
    m = Maniplex(adj, provenance=name)
    report = validate(m)
    if not report.is_maniplex:
        raise AssertionError(f"{name} flag graph is not a maniplex: {report.failures}")
    return m, pts, flags


def _antipodal_quotient(name: str) -> Maniplex:
    m, pts, flags = platonic_flag_graph(name)
    opposite = {}
    for v in range(len(pts)):
        (w,) = np.flatnonzero(np.isclose(pts, -pts[v]).all(axis=1))
        opposite[v] = int(w)
    face_key = {}
    for v, e, f in flags:
        face_key.setdefault(f, set()).add(v)
    face_by_vertices = {frozenset(vs): f for f, vs in face_key.items()}
    index = {flag: i for i, flag in enumerate(flags)}
    perm = np.empty(len(flags), dtype=np.int64)
    for i, (v, e, f) in enumerate(flags):
        image_face = face_by_vertices[frozenset(opposite[x] for x in face_key[f])]
        image_edge = tuple(sorted(opposite[x] for x in e))
        perm[i] = index[(opposite[v], image_edge, image_face)]
    if not is_automorphism(m, perm) or (perm == np.arange(len(flags))).any() or (perm[perm] != np.arange(len(flags))).any():
        raise AssertionError(f"{name}: point reflection is not a fixed-point-free involutory automorphism")

    reps = np.flatnonzero(np.arange(len(flags)) < perm)
    orbit = np.empty(len(flags), dtype=np.int64)
    orbit[reps] = np.arange(reps.size)
    orbit[perm[reps]] = np.arange(reps.size)
    adj = orbit[m.adj[:, reps]]
    return Maniplex(adj, provenance=f"hemi{name}")


@dataclass(frozen=True)
class SeedSpec:
    name: str
    solid: str
    map_type: MapType
    num_flags: int

    def __post_init__(self):
        if self.map_type.p % 2 == 0 and self.map_type.q % 2 == 0:
            raise ValueError("seed needs p or q odd")


SEEDS = {
    spec.name: spec
    for spec in (
        SeedSpec("hemicube", "cube", MapType(4, 3), 24),
        SeedSpec("hemioctahedron", "octahedron", MapType(3, 4), 24),
        SeedSpec("hemidodecahedron", "dodecahedron", MapType(5, 3), 60),
        SeedSpec("hemiicosahedron", "icosahedron", MapType(3, 5), 60),
    )
}


def build_seed(spec: SeedSpec | str) -> Maniplex:
    """Build a catalogued seed and check every property it is supposed to have."""
    if isinstance(spec, str):
        spec = SEEDS[spec]
    m = _antipodal_quotient(spec.solid)
    report = validate(m)
    checks = {
        "maniplex": report.is_maniplex,
        "flag count": m.num_flags == spec.num_flags,
        "non-orientable": not is_orientable(m),
        "regular": automorphism_group(m).is_regular,
        "type": schlafli_type(m) == spec.map_type,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise AssertionError(f"seed {spec.name} failed: {', '.join(failed)}")
    return Maniplex(m.adj, provenance=spec.name)


def _rank3(m: Maniplex):
    if m.rank != 3:
        raise ValueError(f"needs rank 3, got {m.rank}")


def vartheta(m: Maniplex) -> WeightFunction:
    """``Z_4`` weights: 1-edges weigh 0, 0- and 2-edges weigh 1."""
    _rank3(m)
    return constant_weight(m, 4, [1, 0, 1])


def vartheta_prime(m: Maniplex) -> WeightFunction:
    """``Z_4`` weights: 1-edges weigh 1, the rest 0."""
    _rank3(m)
    return constant_weight(m, 4, [0, 1, 0])


@dataclass(frozen=True)
class ProperPairReport:
    regular: bool
    odd_even_walk: Walk | None
    cover_nonorientable_maniplex: bool
    aut_consistent: bool

    @property
    def verdict(self) -> bool:
        return self.regular and self.odd_even_walk is not None and self.cover_nonorientable_maniplex and self.aut_consistent


def verify_proper_pair(m: Maniplex, omega: WeightFunction) -> ProperPairReport:
    regular = automorphism_group(m).is_regular
    walk = odd_walk_even_weight_exists(m, omega)
    cover = cross_cover(m, omega)
    cover_ok = validate(cover).is_maniplex and not is_orientable(cover)
    try:
        consistent = is_aut_consistent(m, omega)
    except ValueError:
        # no unit-scaled lift and a disconnected cover to search: undecided, so not certified
        consistent = False
    return ProperPairReport(regular, walk, cover_ok, consistent)
