"""Facet colourings and colour-coded extensions.

The extension of a rank-``n`` maniplex ``M`` by an ``l``-colouring of its
facets has flags ``(u, x)`` with ``x`` in ``Z_2^l``, packed as
``u * 2**l + x``.  Colour ``j`` (1-based) of the colouring corresponds to bit
``j - 1`` of ``x``.  Old colours act on ``u`` only; the new top colour flips
the bit named by the colour of ``u``'s facet.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Maniplex, faces
from .symmetry import Automorphism, automorphism_group, is_automorphism
from .weights import WeightFunction, check_weight

__all__ = [
    "MAX_LABEL_BITS",
    "Colouring",
    "flip",
    "parity",
    "antipode",
    "total_colouring",
    "antipodal_colouring",
    "trivial_colouring",
    "induced_colour_permutation",
    "verify_colouring_invariant",
    "extension",
    "tau",
    "extend_automorphism",
    "extend_weight",
]

MAX_LABEL_BITS = 24


def flip(x: int, j: int) -> int:
    """``x`` with entry ``j`` (1-based) changed."""
    return x ^ (1 << (j - 1))


def parity(x):
    """``+1`` for an even number of set bits, ``-1`` otherwise (works on arrays)."""
    x = np.asarray(x, dtype=np.int64)
    count = np.zeros_like(x)
    y = x.copy()
    while y.any():
        count += y & 1
        y >>= 1
    out = 1 - 2 * (count & 1)
    return int(out) if out.ndim == 0 else out


def antipode(x: int, bits: int) -> int:
    return x ^ ((1 << bits) - 1)


@dataclass(frozen=True, eq=False)
class Colouring:
    """Surjection from facet ids onto colours ``1..num_colours``."""

    num_colours: int
    colour_of: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        colour_of = np.array(self.colour_of, dtype=np.int64, copy=True)
        if colour_of.ndim != 1 or colour_of.size == 0:
            raise ValueError("a colouring needs one colour per facet")
        if self.num_colours < 1:
            raise ValueError("need at least one colour")
        if colour_of.min() < 1 or colour_of.max() > self.num_colours:
            raise ValueError(f"colours must lie in 1..{self.num_colours}")
        if np.unique(colour_of).size != self.num_colours:
            raise ValueError("colouring is not surjective")
        colour_of.setflags(write=False)
        object.__setattr__(self, "colour_of", colour_of)

    @property
    def num_facets(self) -> int:
        return int(self.colour_of.size)

    def flag_colours(self, m: Maniplex) -> np.ndarray:
        part = faces(m, m.rank - 1)
        if part.num_faces != self.num_facets:
            raise ValueError(f"colouring covers {self.num_facets} facets but the maniplex has {part.num_faces}")
        return self.colour_of[part.face_of]


def total_colouring(m: Maniplex) -> Colouring:
    count = faces(m, m.rank - 1).num_faces
    return Colouring(count, np.arange(1, count + 1), "total")


def trivial_colouring(m: Maniplex) -> Colouring:
    count = faces(m, m.rank - 1).num_faces
    return Colouring(1, np.ones(count, dtype=np.int64), "trivial")


def antipodal_colouring(m: Maniplex) -> Colouring:
    """Colour facets ``F_x`` and ``F_{antipode(x)}`` alike; needs an extension."""
    if m.facet_labels is None:
        raise ValueError("antipodal colouring needs an extension (no facet labels)")
    bits = m.label_bits
    part = faces(m, m.rank - 1)
    label_of_facet = np.empty(part.num_faces, dtype=np.int64)
    label_of_facet[part.face_of] = m.facet_labels
    if part.num_faces != 1 << bits:
        raise ValueError("facet count does not match the label width")
    pair_key = np.minimum(label_of_facet, label_of_facet ^ ((1 << bits) - 1))
    keys = np.unique(pair_key)
    colour_of = np.searchsorted(keys, pair_key) + 1
    return Colouring(int(keys.size), colour_of, "antipodal")


def induced_colour_permutation(m: Maniplex, colouring: Colouring, phi: Automorphism) -> np.ndarray | None:
    """``perm[c]`` is the colour of ``phi(F)`` for facets ``F`` of colour ``c``.

    ``None`` if that is not a well-defined bijection.  Index 0 is unused.
    """
    part = faces(m, m.rank - 1)
    fac = part.face_of
    image_facet = np.empty(part.num_faces, dtype=np.int64)
    image_facet[fac] = fac[phi.perm]
    src = colouring.colour_of
    dst = colouring.colour_of[image_facet]
    perm = np.zeros(colouring.num_colours + 1, dtype=np.int64)
    perm[src] = dst
    if (perm[src] != dst).any():
        return None
    if np.unique(perm[1:]).size != colouring.num_colours:
        return None
    return perm


def verify_colouring_invariant(m: Maniplex, colouring: Colouring) -> bool:
    """True iff every automorphism of ``m`` permutes the colour classes."""
    return all(
        induced_colour_permutation(m, colouring, g) is not None for g in automorphism_group(m).generators
    )


def extension(m: Maniplex, colouring: Colouring) -> Maniplex:
    bits = colouring.num_colours
    if bits > MAX_LABEL_BITS:
        raise OverflowError(f"{bits} colours exceed the {MAX_LABEL_BITS}-bit label capacity")
    width = 1 << bits
    F, n = m.num_flags, m.rank
    flag_bit = colouring.flag_colours(m) - 1
    u = np.repeat(np.arange(F), width)
    x = np.tile(np.arange(width), F)
    adj = np.empty((n + 1, F * width), dtype=np.int64)
    adj[:n] = m.adj[:, u] * width + x
    adj[n] = u * width + (x ^ (1 << flag_bit[u]))
    return Maniplex(adj, facet_labels=x, label_bits=bits, provenance=f"ext({m.provenance}; {colouring.kind})")


def _label_bits(m_ext: Maniplex) -> int:
    if m_ext.facet_labels is None:
        raise ValueError("not an extension (no facet labels)")
    return m_ext.label_bits


def tau(m_ext: Maniplex, j: int) -> Automorphism:
    """``(u, x) -> (u, x^j)``."""
    bits = _label_bits(m_ext)
    if not 1 <= j <= bits:
        raise ValueError(f"colour {j} out of range 1..{bits}")
    perm = np.arange(m_ext.num_flags) ^ (1 << (j - 1))
    if not is_automorphism(m_ext, perm):
        raise AssertionError(f"tau_{j} is not an automorphism")
    return Automorphism(perm)


def extend_automorphism(m: Maniplex, colouring: Colouring, phi: Automorphism) -> Automorphism:
    """``(u, x) -> (u phi, phi(x))`` where ``phi`` moves bit ``c`` to bit ``phi(c)``."""
    cperm = induced_colour_permutation(m, colouring, phi)
    if cperm is None:
        raise ValueError("colouring is not invariant under this automorphism")
    bits = colouring.num_colours
    width = 1 << bits
    x = np.arange(width)
    moved = np.zeros(width, dtype=np.int64)
    for c in range(1, bits + 1):
        moved |= ((x >> (c - 1)) & 1) << (cperm[c] - 1)
    u = np.repeat(np.arange(m.num_flags), width)
    xs = np.tile(x, m.num_flags)
    return Automorphism(phi.perm[u] * width + moved[xs])


def extend_weight(m: Maniplex, colouring: Colouring, omega: WeightFunction) -> WeightFunction:
    """Old-colour edges inside ``F_x`` weigh ``parity(x) * omega``; new-colour edges weigh 0."""
    check_weight(m, omega)
    width = 1 << colouring.num_colours
    k = omega.modulus
    sign = parity(np.arange(width))
    w = np.zeros((m.rank + 1, m.num_flags * width), dtype=np.int64)
    w[: m.rank] = ((omega.w[:, :, None] * sign[None, None, :]) % k).reshape(m.rank, -1)
    return WeightFunction(k, w)
