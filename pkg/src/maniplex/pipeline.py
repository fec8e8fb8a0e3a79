"""Build and certify unstable two-orbit maniplexes rank by rank.

Starting from a seed map ``M`` with weight ``vartheta``, each variant of rank
``r > 3`` is named by a word over ``{T, A}`` of length ``r - 3``: letter
``T`` extends by the total colouring, ``A`` by the antipodal colouring.  The
first letter is always ``T`` because the seed is not an extension.  Every
variant's cross-cover is checked from scratch: maniplex, non-orientable,
two flag orbits, symmetry-type label, full transitivity and instability.
"""

from __future__ import annotations

import itertools
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .catalog import SEEDS, build_seed, vartheta, verify_proper_pair
from .core import Maniplex, faces, is_orientable, validate
from .extend import MAX_LABEL_BITS, antipodal_colouring, extend_weight, extension, total_colouring, verify_colouring_invariant
from .io import write_mpx
from .symmetry import are_isomorphic, automorphism_group, is_fully_transitive, is_stable, symmetry_type_graph
from .weights import WeightFunction, cross_cover

__all__ = [
    "DEFAULT_MAX_FLAGS",
    "VariantEntry",
    "PipelineReport",
    "variant_words",
    "expected_label",
    "theorem1",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_FLAGS = 200_000
MODULUS = 4


def variant_words(rank: int, mode: str = "all") -> list[str]:
    """Colouring words for one rank, in report order."""
    if rank < 3:
        raise ValueError("the construction starts at rank 3")
    if rank == 3:
        return [""]
    if mode == "antipodal-only":
        return ["T" + "A" * (rank - 4)]
    if mode != "all":
        raise ValueError(f"unknown variant mode {mode!r}")
    return ["T" + "".join(rest) for rest in itertools.product("TA", repeat=rank - 4)]


def expected_label(rank: int) -> str:
    colours = ",".join(str(i) for i in range(rank) if i not in (0, 2))
    return f"2^{rank}_{{{colours}}}"


@dataclass
class VariantEntry:
    rank: int
    word: str
    status: str = "pending"
    extension_flags: int = 0
    facets: int = 0
    cover_flags: int = 0
    double_cover_flags: int = 0
    colouring_invariant: bool | None = None
    proper_pair: bool | None = None
    cover_maniplex: bool | None = None
    cover_nonorientable: bool | None = None
    orbits: int | None = None
    stg_label: str | None = None
    expected_label: str = ""
    fully_transitive: bool | None = None
    stable: bool | None = None
    aut_order: int | None = None
    aut_order_double: int | None = None
    seconds: float = 0.0
    failures: list = field(default_factory=list)
    file: str | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def line(self) -> str:
        name = self.word or "-"
        head = f"rank {self.rank} {name:<8} {self.status:<16}"
        if self.status == "SKIPPED(budget)":
            return f"{head} extension {self.extension_flags} flags, {self.facets} facets, cover {self.cover_flags} flags"
        stab = "stable" if self.stable else "unstable"
        return (
            f"{head} extension {self.extension_flags} flags, {self.facets} facets, cover {self.cover_flags} flags, "
            f"double {self.double_cover_flags}; orbits {self.orbits}, {self.stg_label}, "
            f"fully transitive {self.fully_transitive}, {stab} "
            f"(|Aut| {self.aut_order}, |Aut double| {self.aut_order_double}); {self.seconds:.2f}s"
        )


@dataclass
class PipelineReport:
    seed: str
    max_rank: int
    variants: str
    max_flags: int
    entries: list = field(default_factory=list)
    distinct: dict = field(default_factory=dict)

    def at_rank(self, rank: int) -> list[VariantEntry]:
        return [e for e in self.entries if e.rank == rank]

    def entry(self, rank: int, word: str) -> VariantEntry:
        for e in self.entries:
            if e.rank == rank and e.word == word:
                return e
        raise KeyError((rank, word))

    @property
    def ok(self) -> bool:
        budget = "SKIPPED(budget)"
        return all(e.certified or e.status == budget for e in self.entries) and all(
            v["verdict"] != "isomorphic" for pairs in self.distinct.values() for v in pairs
        )

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "max_rank": self.max_rank,
            "variants": self.variants,
            "max_flags": self.max_flags,
            "entries": [asdict(e) for e in self.entries],
            "distinct": {str(r): pairs for r, pairs in sorted(self.distinct.items())},
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def text(self) -> str:
        out = [f"seed {self.seed}, ranks 3..{self.max_rank}, variants {self.variants}, max flags {self.max_flags}"]
        out += [e.line() for e in self.entries]
        for rank, pairs in sorted(self.distinct.items()):
            for p in pairs:
                out.append(f"rank {rank} {p['a']} vs {p['b']}: {p['verdict']} ({p['method']})")
        out.append("all certified" if self.ok else "NOT all certified")
        return "\n".join(out) + "\n"


def _certify(entry: VariantEntry, base: Maniplex, omega: WeightFunction, out_dir: Path | None) -> tuple[VariantEntry, Maniplex]:
    started = time.perf_counter()
    entry.extension_flags = base.num_flags
    entry.facets = faces(base, base.rank - 1).num_faces
    entry.expected_label = expected_label(base.rank)
    entry.proper_pair = verify_proper_pair(base, omega).verdict
    cover = cross_cover(base, omega)
    entry.cover_flags = cover.num_flags
    entry.double_cover_flags = 2 * cover.num_flags
    entry.cover_maniplex = validate(cover).is_maniplex
    entry.cover_nonorientable = not is_orientable(cover)
    if entry.cover_maniplex and entry.cover_nonorientable:
        group = automorphism_group(cover)
        stg = symmetry_type_graph(cover)
        verdict = is_stable(cover)
        entry.orbits = group.num_orbits
        entry.aut_order = group.order
        entry.stg_label = stg.label
        entry.fully_transitive = is_fully_transitive(cover)[0]
        entry.stable = verdict.stable
        entry.aut_order_double = verdict.aut_order_cover
    checks = {
        "colouring invariant": entry.colouring_invariant is not False,
        "proper pair": entry.proper_pair,
        "cover is a maniplex": entry.cover_maniplex,
        "cover non-orientable": entry.cover_nonorientable,
        "two orbits": entry.orbits == 2,
        "symmetry type": entry.stg_label == entry.expected_label,
        "fully transitive": entry.fully_transitive,
        "unstable": entry.stable is False,
    }
    entry.failures = [name for name, ok in checks.items() if not ok]
    entry.status = "certified" if not entry.failures else "FAILED"
    if out_dir is not None:
        name = f"cover_r{base.rank}_{entry.word or 'seed'}.mpx"
        write_mpx(cover, out_dir / name)
        entry.file = name
    entry.seconds = time.perf_counter() - started
    log.info("%s", entry.line())
    return entry, cover


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("MANIPLEX_THREADS", "1") or 1)
    return max(1, threads)


def theorem1(
    seed: str = "hemicube",
    max_rank: int = 4,
    variants: str = "all",
    max_flags: int = DEFAULT_MAX_FLAGS,
    out_dir=None,
    threads: int | None = None,
) -> PipelineReport:
    if max_rank < 3:
        raise ValueError("max rank must be at least 3")
    if seed not in SEEDS:
        raise KeyError(f"unknown seed {seed!r}; known: {', '.join(SEEDS)}")
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    report = PipelineReport(seed, max_rank, variants, max_flags)
    m = build_seed(seed)
    omega = vartheta(m)

    # word -> (base maniplex, weight) or None when over budget; sizes are tracked either way
    built = {"": (m, omega)}
    sizes = {"": (m.num_flags, faces(m, m.rank - 1).num_faces)}
    covers = {}

    entry, covers[""] = _certify(VariantEntry(3, ""), m, omega, out_dir)
    report.entries.append(entry)

    for rank in range(4, max_rank + 1):
        jobs = []
        for word in variant_words(rank, variants):
            parent_word, letter = word[:-1], word[-1]
            parent_flags, parent_facets = sizes[parent_word]
            colours = parent_facets if letter == "T" else parent_facets // 2
            flags = parent_flags * 2**colours
            sizes[word] = (flags, 2**colours)
            entry = VariantEntry(rank, word, extension_flags=flags, facets=2**colours, expected_label=expected_label(rank))
            entry.cover_flags = flags * MODULUS
            entry.double_cover_flags = 2 * entry.cover_flags
            parent = built.get(parent_word)
            if parent is None or colours > MAX_LABEL_BITS or entry.cover_flags > max_flags:
                entry.status = "SKIPPED(budget)"
                built[word] = None
                report.entries.append(entry)
                continue
            base, weight = parent
            colouring = total_colouring(base) if letter == "T" else antipodal_colouring(base)
            entry.colouring_invariant = verify_colouring_invariant(base, colouring)
            ext = extension(base, colouring)
            ext_weight = extend_weight(base, colouring, weight)
            built[word] = (ext, ext_weight)
            report.entries.append(entry)
            jobs.append((entry, ext, ext_weight))

        workers = _threads(threads)
        if workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda job: _certify(*job, out_dir), jobs))
        else:
            results = [_certify(*job, out_dir) for job in jobs]
        for entry, cover in results:
            covers[entry.word] = cover
        report.distinct[rank] = _distinctness(report.at_rank(rank), covers)
    return report


def _distinctness(entries: list[VariantEntry], covers: dict) -> list[dict]:
    out = []
    for a, b in itertools.combinations(entries, 2):
        if a.facets != b.facets or a.cover_flags != b.cover_flags:
            verdict, method = "non-isomorphic", "facet-count"
        elif a.word in covers and b.word in covers:
            iso = are_isomorphic(covers[a.word], covers[b.word])
            verdict, method = ("isomorphic" if iso is not None else "non-isomorphic"), "isomorphism-search"
        else:
            verdict, method = "undetermined", "budget"
        out.append({"a": a.word, "b": b.word, "verdict": verdict, "method": method})
    return out
