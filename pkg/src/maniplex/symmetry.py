"""Colour-preserving automorphisms, flag orbits and symmetry-type graphs.

Automorphisms of a connected maniplex act semiregularly on flags, so one
is determined by the image of a single flag.  :func:`find_automorphism`
propagates that single assignment along a breadth-first spanning tree and
then checks that the resulting map commutes with every colour.

The group itself is found by scanning candidate images of a base flag.  The
scan keeps the subgroup ``H`` generated by the automorphisms found so far:
everything in the ``H``-orbit of the base is an image, and a failed
candidate rules out its whole ``H``-orbit.  Candidates whose closed-walk
signature differs from the base's are rejected without propagation.  Both
shortcuts preserve the verdict; pass ``prune=False`` to test every candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import Maniplex, _relabel_by_first, double_cover, faces, is_connected, is_orientable
from .weights import WeightFunction, check_weight, cross_cover

__all__ = [
    "SEMIEDGE",
    "Automorphism",
    "AutomorphismGroup",
    "SymmetryTypeGraph",
    "StabilityVerdict",
    "is_automorphism",
    "find_automorphism",
    "automorphism_group",
    "aut_order_and_orbits",
    "symmetry_type_graph",
    "face_transitivity",
    "is_fully_transitive",
    "is_stable",
    "are_isomorphic",
    "weight_unit",
    "lift_automorphism",
    "is_aut_consistent",
    "flag_signatures",
]

SEMIEDGE = -1


@dataclass(frozen=True, eq=False)
class Automorphism:
    """A flag permutation; ``perm[u]`` is the image of ``u``."""

    perm: np.ndarray

    def __post_init__(self):
        perm = np.array(self.perm, dtype=np.int64, copy=True)
        perm.setflags(write=False)
        object.__setattr__(self, "perm", perm)

    def __call__(self, u: int) -> int:
        return int(self.perm[u])

    def __len__(self):
        return int(self.perm.size)

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return np.array_equal(self.perm, other.perm)

    __hash__ = None

    def then(self, other: Automorphism) -> Automorphism:
        """Apply ``self`` first, then ``other`` (right action)."""
        return Automorphism(other.perm[self.perm])

    def inverse(self) -> Automorphism:
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(self.perm.size)
        return Automorphism(inv)

    @property
    def is_identity(self) -> bool:
        return bool((self.perm == np.arange(self.perm.size)).all())

    @classmethod
    def identity(cls, num_flags: int) -> Automorphism:
        return cls(np.arange(num_flags))


def _is_permutation(perm: np.ndarray, size: int) -> bool:
    return perm.size == size and np.bincount(perm, minlength=size).max(initial=0) <= 1


def is_automorphism(m: Maniplex, perm) -> bool:
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (m.num_flags,) or (perm < 0).any() or (perm >= m.num_flags).any():
        return False
    return _is_permutation(perm, m.num_flags) and bool((m.adj[:, perm] == perm[m.adj]).all())


class _Propagator:
    """Breadth-first spanning tree of ``m`` rooted at ``base``, grouped by level."""

    def __init__(self, m: Maniplex, base: int):
        F, n = m.num_flags, m.rank
        seen = np.zeros(F, dtype=bool)
        seen[base] = True
        frontier = np.array([base], dtype=np.int64)
        levels = []
        while frontier.size:
            nbrs = m.adj[:, frontier].ravel()
            parents = np.tile(frontier, n)
            cols = np.repeat(np.arange(n), frontier.size)
            fresh = ~seen[nbrs]
            nbrs, parents, cols = nbrs[fresh], parents[fresh], cols[fresh]
            nbrs, first = np.unique(nbrs, return_index=True)
            if nbrs.size == 0:
                break
            seen[nbrs] = True
            levels.append((nbrs, parents[first], cols[first]))
            frontier = nbrs
        if not seen.all():
            raise ValueError("automorphism propagation needs a connected flag graph")
        self.m = m
        self.base = base
        self.levels = levels

    def image(self, target: Maniplex, b: int) -> np.ndarray | None:
        """The unique colour-preserving map sending ``base`` to ``b``, if it is an isomorphism."""
        m = self.m
        if target.adj.shape != m.adj.shape:
            return None
        tadj = target.adj
        img = np.empty(m.num_flags, dtype=np.int64)
        img[self.base] = b
        for nodes, parents, cols in self.levels:
            img[nodes] = tadj[cols, img[parents]]
        if not (tadj[:, img] == img[m.adj]).all():
            return None
        if not _is_permutation(img, target.num_flags):
            return None
        return img


def _propagator(m: Maniplex, base: int) -> _Propagator:
    key = ("propagator", base)
    if key not in m._cache:
        m._cache[key] = _Propagator(m, base)
    return m._cache[key]


def find_automorphism(m: Maniplex, a: int, b: int) -> Automorphism | None:
    """The unique automorphism mapping flag ``a`` to flag ``b``, or ``None``."""
    img = _propagator(m, a).image(m, b)
    return None if img is None else Automorphism(img)


def flag_signatures(m: Maniplex, cap: int = 32) -> np.ndarray:
    """Per-flag return times under every bicoloured rotation ``u -> u^{ij}``.

    Entry 0 means "not back within ``cap`` steps".  Equal rows are necessary
    for two flags to lie in the same orbit, or to correspond under an
    isomorphism.
    """
    key = ("signatures", cap)
    if key in m._cache:
        return m._cache[key]
    F, adj = m.num_flags, m.adj
    ids = np.arange(F)
    cols = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            step = adj[j, adj[i]]
            ret = np.zeros(F, dtype=np.int64)
            cur = ids
            for t in range(1, cap + 1):
                cur = step[cur]
                hit = (cur == ids) & (ret == 0)
                ret[hit] = t
                if ret.all():
                    break
            cols.append(ret)
    sig = np.stack(cols, axis=1) if cols else np.zeros((F, 0), dtype=np.int64)
    sig.setflags(write=False)
    m._cache[key] = sig
    return sig


def _orbits_from(num_flags: int, generators) -> np.ndarray:
    if not generators:
        return np.arange(num_flags, dtype=np.int64)
    rows = np.tile(np.arange(num_flags), len(generators))
    cols = np.concatenate([g.perm for g in generators])
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(num_flags, num_flags))
    _, labels = connected_components(graph, directed=False)
    return _relabel_by_first(labels)


@dataclass(frozen=True, eq=False)
class AutomorphismGroup:
    order: int
    orbit_of: np.ndarray
    num_orbits: int
    generators: tuple[Automorphism, ...]
    base: int
    tested: int

    @property
    def is_regular(self) -> bool:
        return self.num_orbits == 1


def automorphism_group(m: Maniplex, base: int = 0, prune: bool = True) -> AutomorphismGroup:
    """Order, flag orbits and a generating set of ``Aut(m)``.

    ``tested`` counts the candidates that needed a full propagation.
    """
    key = ("autgroup", base, prune)
    if key in m._cache:
        return m._cache[key]
    F = m.num_flags
    prop = _propagator(m, base)
    status = np.zeros(F, dtype=np.int8)  # 1 image of base, -1 not an image, 0 unknown
    status[base] = 1
    generators = []
    tested = 0
    labels = np.arange(F, dtype=np.int64)

    if prune:
        sig = flag_signatures(m)
        status[(sig != sig[base]).any(axis=1)] = -1

    for b in range(F):
        if status[b]:
            continue
        tested += 1
        img = prop.image(m, b)
        if img is None:
            if prune:
                status[labels == labels[b]] = -1
            else:
                status[b] = -1
            continue
        generators.append(Automorphism(img))
        if prune:
            labels = _orbits_from(F, generators)
            status[labels == labels[base]] = 1
        else:
            status[b] = 1

    orbit_of = _orbits_from(F, generators)
    order = int((status == 1).sum())
    num_orbits = int(orbit_of.max()) + 1
    sizes = np.bincount(orbit_of)
    if not (sizes == order).all():
        raise AssertionError("orbit sizes differ from the group order; the action is not semiregular")
    if not np.array_equal(orbit_of == orbit_of[base], status == 1):
        raise AssertionError("generated orbit of the base flag disagrees with the candidate scan")
    orbit_of.setflags(write=False)
    group = AutomorphismGroup(order, orbit_of, num_orbits, tuple(generators), base, tested)
    m._cache[key] = group
    return group


def aut_order_and_orbits(m: Maniplex, prune: bool = True) -> tuple[int, np.ndarray]:
    g = automorphism_group(m, prune=prune)
    return g.order, g.orbit_of


@dataclass(frozen=True, eq=False)
class SymmetryTypeGraph:
    """Quotient of a maniplex by its automorphism group.

    ``edges[i, o]`` is the orbit reached from orbit ``o`` along colour ``i``,
    or :data:`SEMIEDGE` when that neighbour stays in ``o``.
    """

    num_orbits: int
    orbit_of: np.ndarray
    edges: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.edges.shape[0])

    @property
    def semi_edge_colours(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.rank) if (self.edges[i] == SEMIEDGE).any())

    @property
    def label(self) -> str | None:
        """``2^n_{I}`` for two orbits, ``None`` otherwise."""
        if self.num_orbits != 2:
            return None
        colours = ",".join(str(i) for i in self.semi_edge_colours)
        return f"2^{self.rank}_{{{colours}}}"

    def components_without(self, colour: int) -> int:
        parent = list(range(self.num_orbits))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.rank):
            if i == colour:
                continue
            for o in range(self.num_orbits):
                t = int(self.edges[i, o])
                if t != SEMIEDGE:
                    parent[find(o)] = find(t)
        return len({find(o) for o in range(self.num_orbits)})

    def lines(self) -> list[str]:
        out = [f"orbits {self.num_orbits}"]
        for i in range(self.rank):
            cells = ["S" if t == SEMIEDGE else str(int(t)) for t in self.edges[i]]
            out.append(f"c {i} : {' '.join(cells)}")
        if self.label is not None:
            out.append(f"label {self.label}")
        return out


def symmetry_type_graph(m: Maniplex) -> SymmetryTypeGraph:
    group = automorphism_group(m)
    orbit_of = group.orbit_of
    k = group.num_orbits
    edges = np.empty((m.rank, k), dtype=np.int64)
    for i in range(m.rank):
        target = orbit_of[m.adj[i]]
        per_orbit = np.full(k, -1, dtype=np.int64)
        per_orbit[orbit_of] = target
        if (per_orbit[orbit_of] != target).any():
            raise AssertionError(f"colour {i} does not induce a well-defined map on orbits")
        edges[i] = np.where(per_orbit == np.arange(k), SEMIEDGE, per_orbit)
    edges.setflags(write=False)
    return SymmetryTypeGraph(k, orbit_of, edges)


def face_transitivity(stg: SymmetryTypeGraph) -> tuple[bool, ...]:
    """For each colour ``i``, whether the group is transitive on ``i``-faces."""
    return tuple(stg.components_without(i) == 1 for i in range(stg.rank))


def is_fully_transitive(m: Maniplex) -> tuple[bool, tuple[bool, ...]]:
    per_colour = face_transitivity(symmetry_type_graph(m))
    return all(per_colour), per_colour


@dataclass(frozen=True)
class StabilityVerdict:
    aut_order_base: int
    aut_order_cover: int
    stable: bool

    def __str__(self):
        word = "stable" if self.stable else "unstable"
        return f"{word} (|Aut| = {self.aut_order_base}, |Aut(double cover)| = {self.aut_order_cover})"


def is_stable(m: Maniplex) -> StabilityVerdict:
    """Compare ``|Aut|`` of ``m`` and of its canonical double cover."""
    if is_orientable(m):
        raise ValueError("stability needs a non-orientable maniplex; the double cover is disconnected")
    base = automorphism_group(m).order
    cover = automorphism_group(double_cover(m)).order
    if cover < 2 * base:
        raise AssertionError("double cover has fewer automorphisms than the expected ones")
    return StabilityVerdict(base, cover, cover == 2 * base)


def are_isomorphic(m1: Maniplex, m2: Maniplex) -> Automorphism | None:
    """A colour-preserving isomorphism ``m1 -> m2`` (as a flag map), or ``None``.

    Flag 0 of ``m1`` is sent to each flag of ``m2`` in turn.
    """
    if m1.adj.shape != m2.adj.shape:
        return None
    for i in range(m1.rank):
        if faces(m1, i).num_faces != faces(m2, i).num_faces:
            return None
    s1, s2 = flag_signatures(m1), flag_signatures(m2)
    if not np.array_equal(np.unique(s1, axis=0, return_counts=True)[1], np.unique(s2, axis=0, return_counts=True)[1]):
        return None
    if not np.array_equal(np.unique(s1, axis=0), np.unique(s2, axis=0)):
        return None
    prop = _propagator(m1, 0)
    candidates = np.flatnonzero((s2 == s1[0]).all(axis=1))
    for b in candidates:
        img = prop.image(m2, int(b))
        if img is not None:
            return Automorphism(img)
    return None


def weight_unit(m: Maniplex, omega: WeightFunction, phi: Automorphism) -> int | None:
    """Smallest unit ``a`` of ``Z_k`` with ``omega(e phi) = a * omega(e)`` for every edge."""
    k = omega.modulus
    w = omega.w
    moved = w[:, phi.perm]
    for a in range(1, k):
        if gcd(a, k) == 1 and np.array_equal(moved, (a * w) % k):
            return a
    return None


def lift_automorphism(
    m: Maniplex, omega: WeightFunction, phi: Automorphism, exact_only: bool = False
) -> Automorphism | None:
    """An automorphism of the cross-cover projecting onto ``phi``, or ``None``.

    First tries ``(u, i) -> (u phi, a i)`` for a unit ``a``; otherwise searches
    the cover directly, which needs the cover to be connected.
    """
    check_weight(m, omega)
    k = omega.modulus
    cover = cross_cover(m, omega)
    levels = np.arange(k)
    if not exact_only:
        a = weight_unit(m, omega, phi)
        if a is not None:
            perm = (phi.perm[:, None] * k + (a * levels)[None, :] % k).ravel()
            if not is_automorphism(cover, perm):
                raise AssertionError("unit-scaled lift failed to be an automorphism")
            return Automorphism(perm)
    if not is_connected(cover):
        raise ValueError("exact lift search needs a connected cross-cover")
    prop = _propagator(cover, 0)
    projected = np.repeat(phi.perm, k)
    for t in range(k):
        img = prop.image(cover, int(phi.perm[0]) * k + t)
        if img is not None and np.array_equal(img // k, projected):
            return Automorphism(img)
    return None


def is_aut_consistent(m: Maniplex, omega: WeightFunction) -> bool:
    """True iff every automorphism of ``m`` lifts to the cross-cover."""
    return all(lift_automorphism(m, omega, g) is not None for g in automorphism_group(m).generators)
