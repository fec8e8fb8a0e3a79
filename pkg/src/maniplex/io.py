"""Plain-text file formats.

``MPX v1``::

    mpx <rank> <num_flags>
    adj <i> <num_flags images>          # one line per colour, in order
    facets <bits> <num_flags hex labels>  # optional, extensions only

``WGT v1``: ``wgt <k>`` then ``w <i> <num_flags values>`` per colour.

``CLR v1``: a single line ``clr <colours> <one colour per facet>``.

Blank lines and anything after ``#`` are ignored.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import MalformedManiplexError, Maniplex
from .extend import Colouring
from .weights import WeightFunction, check_weight

__all__ = [
    "ParseError",
    "dumps_mpx",
    "loads_mpx",
    "read_mpx",
    "write_mpx",
    "dumps_wgt",
    "loads_wgt",
    "read_wgt",
    "write_wgt",
    "dumps_clr",
    "loads_clr",
    "read_clr",
    "write_clr",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<string>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _records(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield number, body


def _ints(tokens, line, source, base=10):
    try:
        return [int(t, base) for t in tokens]
    except ValueError:
        raise ParseError("expected integers", line, source) from None


def dumps_mpx(m: Maniplex) -> str:
    out = []
    if m.provenance:
        out.append(f"# {m.provenance}")
    out.append(f"mpx {m.rank} {m.num_flags}")
    for i in range(m.rank):
        out.append(f"adj {i} " + " ".join(map(str, m.adj[i].tolist())))
    if m.facet_labels is not None:
        out.append(f"facets {m.label_bits} " + " ".join(format(x, "x") for x in m.facet_labels.tolist()))
    return "\n".join(out) + "\n"


def loads_mpx(text: str, source: str = "<string>") -> Maniplex:
    rows = list(_records(text))
    if not rows:
        raise ParseError("empty input", None, source)
    line, head = rows[0]
    if head[0] != "mpx" or len(head) != 3:
        raise ParseError("expected 'mpx <rank> <num_flags>'", line, source)
    rank, F = _ints(head[1:], line, source)
    if rank < 1 or F < 1:
        raise ParseError("rank and flag count must be positive", line, source)
    adj = np.full((rank, F), -1, dtype=np.int64)
    seen = set()
    labels, bits, provenance = None, 0, ""
    for comment in text.splitlines():
        if comment.startswith("# "):
            provenance = comment[2:].strip()
            break
    for line, tokens in rows[1:]:
        kind = tokens[0]
        if kind == "adj":
            if len(tokens) != F + 2:
                raise ParseError(f"adj line needs a colour and {F} images, got {len(tokens) - 2} images", line, source)
            (i,) = _ints(tokens[1:2], line, source)
            if not 0 <= i < rank:
                raise ParseError(f"colour {i} out of range 0..{rank - 1}", line, source)
            if i in seen:
                raise ParseError(f"colour {i} given twice", line, source)
            values = np.array(_ints(tokens[2:], line, source), dtype=np.int64)
            bad = np.flatnonzero((values < 0) | (values >= F))
            if bad.size:
                raise ParseError(f"flag {int(values[bad[0]])} out of range 0..{F - 1}", line, source)
            adj[i] = values
            seen.add(i)
        elif kind == "facets":
            if len(tokens) != F + 2:
                raise ParseError(f"facets line needs a width and {F} labels", line, source)
            (bits,) = _ints(tokens[1:2], line, source)
            labels = np.array(_ints(tokens[2:], line, source, base=16), dtype=np.int64)
        else:
            raise ParseError(f"unknown record {kind!r}", line, source)
    missing = sorted(set(range(rank)) - seen)
    if missing:
        raise ParseError(f"missing adj line for colour {missing[0]}", None, source)
    try:
        return Maniplex(adj, facet_labels=labels, label_bits=bits, provenance=provenance)
    except MalformedManiplexError as exc:
        raise ParseError(str(exc), None, source) from None


def read_mpx(path) -> Maniplex:
    path = Path(path)
    return loads_mpx(path.read_text(), source=str(path))


def write_mpx(m: Maniplex, path) -> None:
    Path(path).write_text(dumps_mpx(m))


def dumps_wgt(omega: WeightFunction) -> str:
    out = [f"wgt {omega.modulus}"]
    for i in range(omega.rank):
        out.append(f"w {i} " + " ".join(map(str, omega.w[i].tolist())))
    return "\n".join(out) + "\n"


def loads_wgt(text: str, m: Maniplex | None = None, source: str = "<string>") -> WeightFunction:
    """Parse a weight file; with ``m`` given, check shape and edge symmetry."""
    rows = list(_records(text))
    if not rows:
        raise ParseError("empty input", None, source)
    line, head = rows[0]
    if head[0] != "wgt" or len(head) != 2:
        raise ParseError("expected 'wgt <k>'", line, source)
    (k,) = _ints(head[1:], line, source)
    if k < 2:
        raise ParseError("modulus must be at least 2", line, source)
    table = {}
    width = None
    for line, tokens in rows[1:]:
        if tokens[0] != "w" or len(tokens) < 3:
            raise ParseError("expected 'w <colour> <values>'", line, source)
        (i,) = _ints(tokens[1:2], line, source)
        values = _ints(tokens[2:], line, source)
        if width is None:
            width = len(values)
        if len(values) != width:
            raise ParseError("weight lines have different lengths", line, source)
        if any(not 0 <= v < k for v in values):
            raise ParseError(f"weights must lie in 0..{k - 1}", line, source)
        if i in table:
            raise ParseError(f"colour {i} given twice", line, source)
        table[i] = values
    if sorted(table) != list(range(len(table))) or not table:
        raise ParseError("weight lines must cover colours 0..n-1", None, source)
    omega = WeightFunction(k, np.array([table[i] for i in range(len(table))], dtype=np.int64))
    if m is not None:
        try:
            check_weight(m, omega)
        except ValueError as exc:
            raise ParseError(str(exc), None, source) from None
    return omega


def read_wgt(path, m: Maniplex | None = None) -> WeightFunction:
    path = Path(path)
    return loads_wgt(path.read_text(), m, source=str(path))


def write_wgt(omega: WeightFunction, path) -> None:
    Path(path).write_text(dumps_wgt(omega))


def dumps_clr(colouring: Colouring) -> str:
    return f"clr {colouring.num_colours} " + " ".join(map(str, colouring.colour_of.tolist())) + "\n"


def loads_clr(text: str, source: str = "<string>") -> Colouring:
    rows = list(_records(text))
    if len(rows) != 1 or rows[0][1][0] != "clr" or len(rows[0][1]) < 3:
        raise ParseError("expected a single 'clr <colours> <values>' line", rows[0][0] if rows else None, source)
    line, tokens = rows[0]
    values = _ints(tokens[1:], line, source)
    try:
        return Colouring(values[0], np.array(values[1:]))
    except ValueError as exc:
        raise ParseError(str(exc), line, source) from None


def read_clr(path) -> Colouring:
    path = Path(path)
    return loads_clr(path.read_text(), source=str(path))


def write_clr(colouring: Colouring, path) -> None:
    Path(path).write_text(dumps_clr(colouring))
