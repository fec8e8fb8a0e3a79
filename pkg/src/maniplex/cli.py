"""Command-line interface.

Exit codes: 0 when the check passes, 1 when a verdict fails, 2 when the
input is malformed or unreadable.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .catalog import SEEDS, build_seed, vartheta, vartheta_prime
from .core import double_cover, faces, is_orientable, schlafli_type, validate
from .extend import antipodal_colouring, extension, total_colouring
from .io import ParseError, read_clr, read_mpx, read_wgt, write_mpx, write_wgt
from .pipeline import DEFAULT_MAX_FLAGS, theorem1
from .symmetry import automorphism_group, is_fully_transitive, is_stable, symmetry_type_graph
from .weights import cross_cover

PASS, FAIL, MALFORMED = 0, 1, 2


class _Malformed(Exception):
    pass


def _load(path):
    try:
        return read_mpx(path)
    except (OSError, ParseError) as exc:
        raise _Malformed(str(exc)) from None


def _write(m, path):
    write_mpx(m, path)
    print(f"wrote {path} ({m.num_flags} flags, rank {m.rank})")


def _need_maniplex(m):
    report = validate(m)
    if not report.is_maniplex:
        raise _Malformed("input is not a maniplex: " + "; ".join(report.failures))


def cmd_validate(args) -> int:
    m = _load(args.file)
    report = validate(m)
    print(f"rank {m.rank}, {m.num_flags} flags")
    for name in ("involution", "fixed_point_free", "connected", "string_property"):
        print(f"{name:<17} {'ok' if getattr(report, name) else 'FAIL'}")
    if report.facet_labels is not None:
        print(f"{'facet_labels':<17} {'ok' if report.facet_labels else 'FAIL'}")
    for line in report.failures:
        print(f"  {line}")
    print("maniplex" if report.ok else "not a maniplex")
    return PASS if report.ok else FAIL


def cmd_info(args) -> int:
    m = _load(args.file)
    _need_maniplex(m)
    group = automorphism_group(m)
    print(f"provenance   {m.provenance or '-'}")
    print(f"rank         {m.rank}")
    print(f"flags        {m.num_flags}")
    print(f"orientable   {is_orientable(m)}")
    print("faces        " + " ".join(str(faces(m, i).num_faces) for i in range(m.rank)))
    if m.rank == 3:
        print(f"type         {schlafli_type(m) or 'not equivelar'}")
    print(f"|Aut|        {group.order}")
    print(f"orbits       {group.num_orbits}")
    if m.facet_labels is not None:
        print(f"label bits   {m.label_bits}")
    return PASS


def cmd_faces(args) -> int:
    m = _load(args.file)
    colours = [args.colour] if args.colour is not None else range(m.rank)
    for i in colours:
        if not 0 <= i < m.rank:
            raise _Malformed(f"colour {i} out of range 0..{m.rank - 1}")
        part = faces(m, i)
        sizes = sorted(set(part.sizes().tolist()))
        print(f"{i}-faces {part.num_faces} (flags per face: {' '.join(map(str, sizes))})")
    return PASS


def cmd_stg(args) -> int:
    m = _load(args.file)
    _need_maniplex(m)
    for line in symmetry_type_graph(m).lines():
        print(line)
    return PASS


def cmd_stability(args) -> int:
    m = _load(args.file)
    _need_maniplex(m)
    if is_orientable(m):
        print("orientable: the double cover is disconnected, stability is not defined here")
        return FAIL
    verdict = is_stable(m)
    print(verdict)
    if args.expect is None:
        return PASS
    return PASS if verdict.stable == (args.expect == "stable") else FAIL


def cmd_cross(args) -> int:
    m = _load(args.file)
    try:
        omega = read_wgt(args.weights, m)
    except (OSError, ParseError) as exc:
        raise _Malformed(str(exc)) from None
    _write(cross_cover(m, omega), args.output)
    return PASS


def cmd_extend(args) -> int:
    m = _load(args.file)
    try:
        if args.clr is not None:
            colouring = read_clr(args.clr)
        elif args.colouring == "antipodal":
            colouring = antipodal_colouring(m)
        else:
            colouring = total_colouring(m)
        ext = extension(m, colouring)
    except (OSError, ValueError) as exc:
        raise _Malformed(str(exc)) from None
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL
    _write(ext, args.output)
    return PASS


def cmd_double(args) -> int:
    _write(double_cover(_load(args.file)), args.output)
    return PASS


def cmd_catalog(args) -> int:
    if args.action == "list":
        for spec in SEEDS.values():
            print(f"{spec.name:<17} {str(spec.map_type):<6} {spec.num_flags} flags (quotient of the {spec.solid})")
        return PASS
    if args.name not in SEEDS:
        raise _Malformed(f"unknown seed {args.name!r}; known: {', '.join(SEEDS)}")
    if args.output is None:
        raise _Malformed("missing -o/--output")
    m = build_seed(args.name)
    if args.action == "build":
        _write(m, args.output)
    else:
        omega = vartheta(m) if args.weight == "vartheta" else vartheta_prime(m)
        write_wgt(omega, args.output)
        print(f"wrote {args.output} (Z_{omega.modulus} weights on {args.name})")
    return PASS


def cmd_theorem1(args) -> int:
    if args.max_rank < 3:
        raise _Malformed("--max-rank must be at least 3")
    if args.seed not in SEEDS:
        raise _Malformed(f"unknown seed {args.seed!r}; known: {', '.join(SEEDS)}")
    report = theorem1(
        args.seed,
        args.max_rank,
        variants=args.variants,
        max_flags=args.max_flags,
        out_dir=args.out_dir,
        threads=args.threads,
    )
    sys.stdout.write(report.text())
    if args.json is not None:
        Path(args.json).write_text(report.to_json())
        print(f"wrote {args.json}")
    return PASS if report.ok else FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maniplex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check the maniplex axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="summary: faces, type, automorphisms")
    p.add_argument("file")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("faces", help="count i-faces")
    p.add_argument("file")
    p.add_argument("-i", "--colour", type=int)
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("stg", help="symmetry type graph")
    p.add_argument("file")
    p.set_defaults(func=cmd_stg)

    p = sub.add_parser("stability", help="compare |Aut| of the double cover with 2|Aut|")
    p.add_argument("file")
    p.add_argument("--expect", choices=["stable", "unstable"], help="exit 1 unless the verdict matches")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("cross", help="cross-cover by a weight file")
    p.add_argument("file")
    p.add_argument("weights")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("extend", help="colour-coded extension")
    p.add_argument("file")
    p.add_argument("--colouring", choices=["total", "antipodal"], default="total")
    p.add_argument("--clr", help="colouring file, overrides --colouring")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("double", help="canonical double cover")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_double)

    p = sub.add_parser("catalog", help="seed maps")
    p.add_argument("action", choices=["list", "build", "weight"])
    p.add_argument("name", nargs="?")
    p.add_argument("weight", nargs="?", choices=["vartheta", "vartheta-prime"], default="vartheta")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("theorem1", help="build and certify the unstable two-orbit family")
    p.add_argument("--seed", default="hemicube")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--variants", choices=["all", "antipodal-only"], default="all")
    p.add_argument("--max-flags", type=int, default=DEFAULT_MAX_FLAGS)
    p.add_argument("--threads", type=int, help="defaults to MANIPLEX_THREADS or 1")
    p.add_argument("--out-dir", help="write every certified cover here")
    p.add_argument("--json", help="write the report as JSON")
    p.set_defaults(func=cmd_theorem1)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return MALFORMED if exc.code else PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except _Malformed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
