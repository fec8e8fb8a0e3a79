"""Maniplex data model: flag graphs as per-colour involutions.

A rank-``n`` maniplex on ``F`` flags is stored as an ``(n, F)`` integer array
``adj`` where ``adj[i, u]`` is the ``i``-neighbour ``u^i`` of flag ``u``.
Everything here is a pure function of immutable :class:`Maniplex` values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

__all__ = [
    "MalformedManiplexError",
    "Maniplex",
    "ValidationReport",
    "Walk",
    "MapType",
    "FacePartition",
    "validate",
    "is_orientable",
    "is_connected",
    "components",
    "faces",
    "facet_maniplex",
    "schlafli_type",
    "double_cover",
    "walk_flags",
    "walk_end",
    "is_closed",
    "walk_concat",
    "walk_power",
    "walk_reverse",
]


class MalformedManiplexError(ValueError):
    """Input that cannot even be read as a coloured graph on ``F`` flags."""


def _frozen(a, dtype=np.int64) -> np.ndarray:
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Maniplex:
    """A properly edge-coloured graph, possibly a maniplex.

    Construction only checks shapes and index ranges; use :func:`validate`
    for the combinatorial conditions.  ``facet_labels`` (bit vectors packed
    into integers of ``label_bits`` bits) are present exactly when the value
    was built as a colour-coded extension.
    """

    adj: np.ndarray
    facet_labels: np.ndarray | None = None
    label_bits: int = 0
    provenance: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        try:
            adj = _frozen(self.adj)
        except (TypeError, ValueError) as exc:
            raise MalformedManiplexError(f"adjacency is not an integer table: {exc}") from None
        if adj.ndim != 2 or adj.shape[0] < 1 or adj.shape[1] < 1:
            raise MalformedManiplexError(f"adjacency must have shape (rank>=1, F>=1), got {adj.shape}")
        F = adj.shape[1]
        bad = (adj < 0) | (adj >= F)
        if bad.any():
            i, u = map(int, np.argwhere(bad)[0])
            raise MalformedManiplexError(f"adj[{i}][{u}] = {int(adj[i, u])} is out of range 0..{F - 1}")
        object.__setattr__(self, "adj", adj)
        if self.facet_labels is not None:
            labels = _frozen(self.facet_labels)
            if labels.shape != (F,):
                raise MalformedManiplexError(f"facet labels must have length {F}, got {labels.shape}")
            if self.label_bits < 0 or (labels < 0).any() or (labels >> self.label_bits).any():
                raise MalformedManiplexError(f"facet labels do not fit in {self.label_bits} bits")
            object.__setattr__(self, "facet_labels", labels)

    @property
    def rank(self) -> int:
        return int(self.adj.shape[0])

    @property
    def num_flags(self) -> int:
        return int(self.adj.shape[1])

    @property
    def is_extension(self) -> bool:
        return self.facet_labels is not None

    def neighbour(self, u: int, i: int) -> int:
        return int(self.adj[i, u])

    def same_graph(self, other: Maniplex) -> bool:
        """Bit-exact equality of adjacency tables and facet labels."""
        if self.adj.shape != other.adj.shape or not np.array_equal(self.adj, other.adj):
            return False
        if (self.facet_labels is None) != (other.facet_labels is None):
            return False
        if self.facet_labels is None:
            return True
        return self.label_bits == other.label_bits and np.array_equal(self.facet_labels, other.facet_labels)

    def __repr__(self):
        ext = f", label_bits={self.label_bits}" if self.is_extension else ""
        return f"Maniplex(rank={self.rank}, num_flags={self.num_flags}{ext}, provenance={self.provenance!r})"


@dataclass(frozen=True)
class ValidationReport:
    involution: bool
    fixed_point_free: bool
    connected: bool
    string_property: bool
    facet_labels: bool | None = None
    failures: tuple[str, ...] = ()

    @property
    def is_maniplex(self) -> bool:
        return self.involution and self.fixed_point_free and self.connected and self.string_property

    @property
    def ok(self) -> bool:
        return self.is_maniplex and self.facet_labels is not False


def components(m: Maniplex, colours=None) -> tuple[int, np.ndarray]:
    """Connected components using only edges of the given colours.

    Component ids are ``0..c-1`` ordered by smallest contained flag.
    """
    F = m.num_flags
    if colours is None:
        colours = range(m.rank)
    colours = list(colours)
    if not colours:
        return F, np.arange(F, dtype=np.int64)
    rows = np.tile(np.arange(F), len(colours))
    cols = m.adj[colours].ravel()
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(F, F))
    count, labels = connected_components(graph, directed=False)
    return int(count), _relabel_by_first(labels)


def _relabel_by_first(labels: np.ndarray) -> np.ndarray:
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inverse].astype(np.int64)


def is_connected(m: Maniplex) -> bool:
    return components(m)[0] == 1


def _string_pairs(n: int):
    return [(i, j) for i in range(n) for j in range(i + 2, n)]


def validate(m: Maniplex) -> ValidationReport:
    """Check every maniplex condition and report all failures."""
    adj = m.adj
    ids = np.arange(m.num_flags)
    failures = []

    involution = True
    fixed_point_free = True
    for i in range(m.rank):
        bad = np.flatnonzero(adj[i, adj[i]] != ids)
        if bad.size:
            involution = False
            failures.append(f"colour {i} is not an involution at flag {int(bad[0])}")
        fixed = np.flatnonzero(adj[i] == ids)
        if fixed.size:
            fixed_point_free = False
            failures.append(f"colour {i} fixes flag {int(fixed[0])}")
    connected = is_connected(m)
    if not connected:
        failures.append("flag graph is disconnected")

    string_property = True
    for i, j in _string_pairs(m.rank):
        # u^{ij} == u means an i-edge doubles a j-edge: a digon, not a 4-cycle
        bad = np.flatnonzero((adj[j, adj[i, adj[j, adj[i]]]] != ids) | (adj[j, adj[i]] == ids))
        if bad.size:
            string_property = False
            failures.append(f"colours {i},{j} do not form 4-cycles at flag {int(bad[0])}")

    labels_ok = None
    if m.facet_labels is not None:
        labels_ok = True
        x = m.facet_labels
        for i in range(m.rank - 1):
            if (x[adj[i]] != x).any():
                labels_ok = False
                failures.append(f"facet labels change along colour {i}")
        if m.rank >= 1:
            diff = x ^ x[adj[m.rank - 1]]
            single_bit = (diff != 0) & ((diff & (diff - 1)) == 0)
            if not single_bit.all():
                labels_ok = False
                failures.append("a top-colour edge does not flip exactly one label bit")

    return ValidationReport(involution, fixed_point_free, connected, string_property, labels_ok, tuple(failures))


def is_orientable(m: Maniplex) -> bool:
    """True iff the flag graph is bipartite."""
    F = m.num_flags
    side = np.full(F, -1, dtype=np.int8)
    for root in range(F):
        if side[root] >= 0:
            continue
        side[root] = 0
        frontier = np.array([root])
        while frontier.size:
            nbrs = m.adj[:, frontier]
            want = 1 - side[frontier]
            want = np.broadcast_to(want, nbrs.shape)
            seen = side[nbrs] >= 0
            if (side[nbrs][seen] != want[seen]).any():
                return False
            new, idx = np.unique(nbrs[~seen], return_index=True)
            side[new] = want[~seen][idx]
            frontier = new
    return True


@dataclass(frozen=True)
class FacePartition:
    colour: int
    face_of: np.ndarray
    num_faces: int

    def members(self, face: int) -> np.ndarray:
        return np.flatnonzero(self.face_of == face)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.face_of, minlength=self.num_faces)


def faces(m: Maniplex, i: int) -> FacePartition:
    """The ``i``-faces: components after deleting all ``i``-edges."""
    if not 0 <= i < m.rank:
        raise ValueError(f"colour {i} out of range for rank {m.rank}")
    key = ("faces", i)
    if key not in m._cache:
        count, labels = components(m, [c for c in range(m.rank) if c != i])
        labels.setflags(write=False)
        m._cache[key] = FacePartition(i, labels, count)
    return m._cache[key]


def facet_maniplex(m: Maniplex, facet: int) -> tuple[Maniplex, np.ndarray]:
    """The facet with id ``facet`` as a rank-(n-1) maniplex.

    Returns the facet and the sorted array of its flags in ``m``; facet flag
    ``t`` is ``m``-flag ``flags[t]``.
    """
    if m.rank < 2:
        raise ValueError("facets need rank >= 2")
    part = faces(m, m.rank - 1)
    flags = part.members(facet)
    if flags.size == 0:
        raise ValueError(f"no facet with id {facet}")
    local = np.full(m.num_flags, -1, dtype=np.int64)
    local[flags] = np.arange(flags.size)
    adj = local[m.adj[: m.rank - 1, flags]]
    return Maniplex(adj, provenance=f"facet {facet} of [{m.provenance}]"), flags


@dataclass(frozen=True)
class MapType:
    p: int
    q: int

    def __str__(self):
        return f"{{{self.p},{self.q}}}"


def schlafli_type(m: Maniplex) -> MapType | None:
    """``{p,q}`` for an equivelar rank-3 maniplex, ``None`` otherwise."""
    if m.rank != 3:
        raise ValueError(f"Schläfli type needs rank 3, got {m.rank}")
    _, faces01 = components(m, [0, 1])
    _, faces12 = components(m, [1, 2])
    s01 = np.unique(np.bincount(faces01))
    s12 = np.unique(np.bincount(faces12))
    if s01.size != 1 or s12.size != 1:
        return None
    return MapType(int(s01[0]) // 2, int(s12[0]) // 2)


def double_cover(m: Maniplex) -> Maniplex:
    """Canonical double cover: flag ``(u, j)`` is ``2u + j``, ``(u,j)^i = (u^i, j+1)``."""
    F = m.num_flags
    out = np.empty((m.rank, 2 * F), dtype=np.int64)
    out[:, 0::2] = 2 * m.adj + 1
    out[:, 1::2] = 2 * m.adj
    return Maniplex(out, provenance=f"double({m.provenance})")


@dataclass(frozen=True)
class Walk:
    start: int
    colours: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "colours", tuple(int(c) for c in self.colours))

    def __len__(self):
        return len(self.colours)


def _check_walk(m: Maniplex, w: Walk):
    if not 0 <= w.start < m.num_flags:
        raise ValueError(f"walk start {w.start} is not a flag")
    for c in w.colours:
        if not 0 <= c < m.rank:
            raise ValueError(f"walk colour {c} out of range for rank {m.rank}")


def walk_flags(m: Maniplex, w: Walk) -> list[int]:
    _check_walk(m, w)
    out = [w.start]
    u = w.start
    for c in w.colours:
        u = int(m.adj[c, u])
        out.append(u)
    return out


def walk_end(m: Maniplex, w: Walk) -> int:
    return walk_flags(m, w)[-1]


def is_closed(m: Maniplex, w: Walk) -> bool:
    return walk_end(m, w) == w.start


def walk_concat(m: Maniplex, w1: Walk, w2: Walk) -> Walk:
    if walk_end(m, w1) != w2.start:
        raise ValueError("walks do not meet: end of the first is not the start of the second")
    return Walk(w1.start, w1.colours + w2.colours)


def walk_power(m: Maniplex, w: Walk, b: int) -> Walk:
    if not is_closed(m, w):
        raise ValueError("only closed walks have powers")
    if b < 0:
        return walk_power(m, walk_reverse(m, w), -b)
    return Walk(w.start, w.colours * b)


def walk_reverse(m: Maniplex, w: Walk) -> Walk:
    return Walk(walk_end(m, w), tuple(reversed(w.colours)))
