"""Cyclic weight functions on flag graphs and their cross-covers.

A weight function assigns each edge an element of ``Z_k``.  It is stored per
(colour, flag) with ``w[i, u] == w[i, u^i]`` so that the value belongs to the
edge rather than to one of its endpoints.  Walk weights alternate in sign:
the ``t``-th traced edge contributes ``(-1)^t`` times its weight.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import Maniplex, Walk, _string_pairs, components, walk_end, walk_flags

__all__ = [
    "WeightFunction",
    "LiftResult",
    "check_weight",
    "constant_weight",
    "restrict_weight",
    "walk_weight",
    "lift_walk",
    "cross_cover",
    "string_property_of_cover_predicate",
    "bicoloured_cycles",
    "connectivity_witness",
    "odd_walk_even_weight_exists",
]


@dataclass(frozen=True, eq=False)
class WeightFunction:
    modulus: int
    w: np.ndarray

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {self.modulus}")
        w = np.array(self.w, dtype=np.int64, copy=True)
        if w.ndim != 2:
            raise ValueError("weights must be a (rank, F) table")
        if (w < 0).any() or (w >= self.modulus).any():
            raise ValueError(f"weights must lie in 0..{self.modulus - 1}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def rank(self) -> int:
        return int(self.w.shape[0])

    @property
    def num_flags(self) -> int:
        return int(self.w.shape[1])

    def __eq__(self, other):
        if not isinstance(other, WeightFunction):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.w, other.w)

    __hash__ = None


def check_weight(m: Maniplex, omega: WeightFunction) -> None:
    """Raise ``ValueError`` unless ``omega`` fits ``m`` and is edge-symmetric."""
    if omega.w.shape != m.adj.shape:
        raise ValueError(f"weight table shape {omega.w.shape} does not match maniplex {m.adj.shape}")
    for i in range(m.rank):
        bad = np.flatnonzero(omega.w[i] != omega.w[i, m.adj[i]])
        if bad.size:
            u = int(bad[0])
            raise ValueError(f"weight of colour {i} differs at the two ends of the edge at flag {u}")


def constant_weight(m: Maniplex, k: int, per_colour) -> WeightFunction:
    """Weight function giving every ``i``-edge the value ``per_colour[i]``."""
    per_colour = np.asarray(per_colour, dtype=np.int64) % k
    if per_colour.shape != (m.rank,):
        raise ValueError("need one value per colour")
    return WeightFunction(k, np.repeat(per_colour[:, None], m.num_flags, axis=1))


def restrict_weight(omega: WeightFunction, flags: np.ndarray, colours) -> WeightFunction:
    """Restriction to a sub-maniplex on ``flags`` (renumbered in order) and ``colours``."""
    return WeightFunction(omega.modulus, omega.w[np.ix_(list(colours), flags)])


def walk_weight(m: Maniplex, omega: WeightFunction, walk: Walk) -> int:
    if omega.w.shape != m.adj.shape:
        raise ValueError("weight function does not match the maniplex")
    flags = walk_flags(m, walk)
    total = 0
    for t, c in enumerate(walk.colours):
        e = int(omega.w[c, flags[t]])
        total += -e if t % 2 else e
    return total % omega.modulus


@dataclass(frozen=True)
class LiftResult:
    flags: tuple[tuple[int, int], ...]
    closed: bool

    @property
    def final_level(self) -> int:
        return self.flags[-1][1]


def lift_walk(m: Maniplex, omega: WeightFunction, walk: Walk, level: int) -> LiftResult:
    """Lift of ``walk`` to the cross-cover, starting at ``(walk.start, level)``."""
    k = omega.modulus
    flags = walk_flags(m, walk)
    level %= k
    out = [(flags[0], level)]
    for t, c in enumerate(walk.colours):
        level = (int(omega.w[c, flags[t]]) - level) % k
        out.append((flags[t + 1], level))
    return LiftResult(tuple(out), out[-1] == out[0])


def cross_cover(m: Maniplex, omega: WeightFunction) -> Maniplex:
    """k-fold cross-cover: ``(u, i)`` is flag ``u*k + i`` and ``(u,i)^c = (u^c, w_c(u) - i)``.

    The result is always a properly coloured graph of involutions but it need
    not be connected or satisfy the string property.
    """
    check_weight(m, omega)
    k = omega.modulus
    levels = np.arange(k)
    adj = m.adj[:, :, None] * k + (omega.w[:, :, None] - levels[None, None, :]) % k
    return Maniplex(adj.reshape(m.rank, m.num_flags * k), provenance=f"cross({m.provenance}; k={k})")


def string_property_of_cover_predicate(m: Maniplex, omega: WeightFunction) -> bool:
    """True iff every alternating 4-cycle of non-consecutive colours has weight 0."""
    check_weight(m, omega)
    w, adj, k = omega.w, m.adj, omega.modulus
    for i, j in _string_pairs(m.rank):
        u1 = adj[i]
        u2 = adj[j, u1]
        u3 = adj[i, u2]
        total = w[i] - w[j, u1] + w[i, u2] - w[j, u3]
        if (total % k).any():
            return False
    return True


def bicoloured_cycles(m: Maniplex, i: int, j: int) -> list[Walk]:
    """One closed walk per component of the ``{i,j}``-subgraph, alternating ``i, j``.

    Each starts at the smallest flag of its component with an ``i``-edge.
    """
    count, labels = components(m, [i, j])
    _, first = np.unique(labels, return_index=True)
    out = []
    for u in first:
        u = int(u)
        colours = []
        v = u
        while True:
            v = int(m.adj[i, v])
            v = int(m.adj[j, v])
            colours += [i, j]
            if v == u:
                break
        out.append(Walk(u, tuple(colours)))
    return out


def connectivity_witness(m: Maniplex, omega: WeightFunction, extra_cycles=()) -> Walk | None:
    """An even closed walk whose weight is a unit of ``Z_k``, if one is found.

    A witness proves the cross-cover connected.  ``None`` is inconclusive.
    Searched: every bicoloured cycle for each colour pair, then ``extra_cycles``.
    """
    check_weight(m, omega)
    k = omega.modulus
    candidates = []
    for i in range(m.rank):
        for j in range(i + 1, m.rank):
            candidates.extend(bicoloured_cycles(m, i, j))
    candidates.extend(extra_cycles)
    for walk in candidates:
        if len(walk) % 2 or walk_end(m, walk) != walk.start:
            continue
        if gcd(walk_weight(m, omega, walk), k) == 1:
            return walk
    return None


def odd_walk_even_weight_exists(m: Maniplex, omega: WeightFunction) -> Walk | None:
    """A closed walk of odd length whose weight is even in ``Z_k`` (``k`` even).

    Breadth-first search on states ``(flag, length mod 2, weight mod 2)``; the
    sign pattern does not change a weight's parity.  Returns a shortest such
    walk at the smallest flag admitting one.
    """
    k = omega.modulus
    if k % 2:
        raise ValueError(f"weight parity is only meaningful for even modulus, got k={k}")
    check_weight(m, omega)
    parity = omega.w % 2
    n = m.rank
    _, comp = components(m)
    searched = set()
    for root in range(m.num_flags):
        # within a component, conjugating by a path preserves both parities
        if int(comp[root]) in searched:
            continue
        searched.add(int(comp[root]))
        start = (root, 0, 0)
        goal = (root, 1, 0)
        parent = {start: None}
        queue = deque([start])
        found = False
        while queue and not found:
            state = queue.popleft()
            u, lp, wp = state
            for c in range(n):
                nxt = (int(m.adj[c, u]), lp ^ 1, wp ^ int(parity[c, u]))
                if nxt in parent:
                    continue
                parent[nxt] = (state, c)
                if nxt == goal:
                    found = True
                    break
                queue.append(nxt)
        if found:
            colours = []
            state = goal
            while parent[state] is not None:
                state, c = parent[state]
                colours.append(c)
            return Walk(root, tuple(reversed(colours)))
    return None
