"""Command-line front end.

Verbs:
  compute      homology (and friends) for one PD or a whole table
  verify       run a named consistency check over a table, PASS/FAIL per row
  s-invariant  the Rasmussen invariant of a knot
  oracle       the skein-recursion Jones polynomial

Output is deterministic byte-for-byte for a fixed job; `--out json-lines`
emits one metadata object followed by one object per (i, j) group.
Exit status is 0 on success and 1 on any check failure or error.
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool

from .cube import TheorySpec
from .diagram import Diagram, mirror, parse_pd
from .homology import BigradedGroup, khovanov, universal_coefficient_check
from .laurent import LaurentPoly
from .lee import lee_homology, s_invariant, slice_bound
from .oracle import graded_euler, jones_skein, les_dimension_check, width_and_tb
from .rings import QQ, F2, ring_from_spec
from .tables import load_table

DEFAULT_MAX_CROSSINGS = 16


def _theory_spec(theory: str, ring):
    if theory == "kh":
        return TheorySpec.ordinary(ring)
    if theory == "odd":
        return TheorySpec.odd(ring)
    if theory == "lee":
        return TheorySpec.lee(ring)
    if theory == "barnatan":
        return TheorySpec.barnatan(ring)
    raise ValueError(f"unknown theory {theory!r}")


def _load_jobs(args) -> list[tuple[str, Diagram]]:
    if args.pd and args.table:
        raise SystemExit("give either --pd or --table, not both")
    if args.pd:
        d = parse_pd(args.pd)
        return [("pd", d)]
    if args.table:
        entries = load_table(args.table)
        if getattr(args, "name", None):
            entries = [e for e in entries if e.name == args.name]
            if not entries:
                raise SystemExit(f"no entry named {args.name}")
        return [(e.name, e.diagram()) for e in entries]
    raise SystemExit("need --pd or --table")


def _check_size(d: Diagram, limit: int):
    if d.n > limit:
        raise SystemExit(
            f"diagram has {d.n} crossings, over the --max-crossings limit {limit}"
        )


def _apply_basepoint(d: Diagram, args) -> Diagram:
    bp = getattr(args, "basepoint", None)
    if bp is not None:
        return d.with_basepoint(bp)
    if getattr(args, "reduced", False) and d.basepoint is None:
        return d.with_basepoint(1)
    return d


def _torsion_rows(g: BigradedGroup, i: int, j: int):
    counts: dict[tuple[int, int], int] = {}
    for p, e in g.torsion.get((i, j), ()):
        counts[(p, e)] = counts.get((p, e), 0) + 1
    return [[p, e, m] for (p, e), m in sorted(counts.items())]


def _emit_homology(name: str, g: BigradedGroup, meta: dict, out_format: str,
                   write):
    if out_format == "json-lines":
        write(json.dumps({"meta": dict(meta, name=name)}, sort_keys=True))
        for (i, j) in g.support():
            row = {"i": i, "j": j, "rank": g.rank(i, j),
                   "torsion": _torsion_rows(g, i, j)}
            write(json.dumps(row, sort_keys=True))
        return
    write(f"# {name}: " + " ".join(f"{k}={v}" for k, v in sorted(meta.items())))
    write("(i, j)     rank  torsion")
    for (i, j) in g.support():
        tor = ";".join(
            f"Z/{p**e}" + (f"x{m}" if m > 1 else "")
            for p, e, m in _torsion_rows(g, i, j)
        ) or "-"
        write(f"({i}, {j})".ljust(11) + str(g.rank(i, j)).ljust(6) + tor)


def parse_homology_jsonl(lines) -> tuple[dict, BigradedGroup]:
    """Re-read `--out json-lines` homology output; inverse of _emit_homology."""
    meta = None
    ranks: dict[tuple[int, int], int] = {}
    torsion: dict[tuple[int, int], tuple] = {}
    for line in lines:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "meta" in obj:
            meta = obj["meta"]
            continue
        key = (obj["i"], obj["j"])
        if obj["rank"]:
            ranks[key] = obj["rank"]
        tors = []
        for p, e, m in obj.get("torsion", ()):
            tors.extend([(p, e)] * m)
        if tors:
            torsion[key] = tuple(sorted(tors))
    if meta is None:
        raise ValueError("missing metadata line")
    return meta, BigradedGroup(ranks, torsion)


def _compute_worker(payload):
    name, pd_text, args = payload
    lines: list[str] = []
    status = _compute_one(name, parse_pd(pd_text), args, lines.append)
    return lines, status


def _cmd_compute(args) -> int:
    jobs = _load_jobs(args)
    status = 0
    if args.threads > 1 and len(jobs) > 1:
        payloads = [(name, d.pd_text(), args) for name, d in jobs]
        with Pool(args.threads) as pool:
            results = pool.map(_compute_worker, payloads)
        lines = [ln for block, st in results for ln in block]
        status = max((st for _b, st in results), default=0)
        print("\n".join(lines))
        return status
    lines: list[str] = []
    for name, d in jobs:
        status |= _compute_one(name, d, args, lines.append)
    print("\n".join(lines))
    return status


def _compute_one(name: str, d: Diagram, args, write) -> int:
    ring = ring_from_spec(args.ring)
    outputs = [o.strip() for o in args.outputs.split(",") if o.strip()]
    status = 0
    _check_size(d, args.max_crossings)
    d = _apply_basepoint(d, args)
    meta = {"theory": args.theory, "ring": args.ring,
            "reduced": args.reduced, "n_plus": d.n_plus,
            "n_minus": d.n_minus}
    if args.theory in ("lee", "barnatan"):
        dims, profile = lee_homology(d, args.theory, ring)
        if args.out == "json-lines":
            write(json.dumps({"meta": dict(meta, name=name)}, sort_keys=True))
            for i in sorted(dims):
                write(json.dumps({"i": i, "dim": dims[i]}, sort_keys=True))
            for i in sorted(profile.per_degree):
                prof = profile.per_degree[i]
                write(json.dumps(
                    {"i": i, "profile": [[j, prof[j]] for j in sorted(prof)]},
                    sort_keys=True))
        else:
            write(f"# {name}: " + " ".join(f"{k}={v}" for k, v in sorted(meta.items())))
            for i in sorted(dims):
                write(f"i={i}  dim={dims[i]}")
            for i in sorted(profile.per_degree):
                prof = profile.per_degree[i]
                steps = " ".join(f"{j}:{prof[j]}" for j in sorted(prof))
                write(f"i={i}  filtration {steps}")
        return status
    g = khovanov(d, args.theory, ring, reduced=args.reduced)
    if "homology" in outputs:
        _emit_homology(name, g, meta, args.out, write)
    for extra in outputs:
        if extra == "homology":
            continue
        if extra == "euler":
            write(f"{name} euler: {graded_euler(g)}")
        elif extra == "jones":
            write(f"{name} jones: {jones_skein(d, max_crossings=args.max_crossings)}")
        elif extra == "s":
            s = s_invariant(d)
            write(f"{name} s: {s.s}  slice-genus-bound: {slice_bound(s)}")
        elif extra == "width":
            w, _tb = width_and_tb(g)
            write(f"{name} width: {w}")
        elif extra == "tb":
            _w, tb = width_and_tb(g)
            write(f"{name} tb-bound: {tb}")
        elif extra == "checks":
            ok = graded_euler(khovanov(d, "kh", QQ)) == jones_skein(
                d, max_crossings=args.max_crossings)
            write(f"{name} euler-check: {'PASS' if ok else 'FAIL'}")
            if not ok:
                status = 1
        else:
            raise SystemExit(f"unknown output {extra!r}")
    return status


def _poincare_f2(g: BigradedGroup) -> LaurentPoly:
    return LaurentPoly({(j, i): r for (i, j), r in g.free_ranks.items()})


def _run_check(payload):
    check, name, pd, sigma, alternating, max_crossings = payload
    d = parse_pd(pd)
    try:
        if d.n > max_crossings:
            return name, True, "skipped (over crossing limit)"
        if check == "euler":
            ok = graded_euler(khovanov(d, "kh", QQ)) == jones_skein(d)
            return name, ok, "graded Euler characteristic vs skein Jones"
        if check == "parity":
            comps = len(d.components)
            g = khovanov(d, "kh", F2)
            ok = all((j - comps) % 2 == 0 for (_i, j) in g.support())
            return name, ok, "quantum-degree parity"
        if check == "lee":
            dims, _prof = lee_homology(d, "lee", QQ)
            ok = sum(dims.values()) == 2 ** len(d.components)
            if ok and len(d.components) == 1:
                ok = set(dims) == {0}
            return name, ok, "Lee total dimension 2^components"
        if check == "ucc":
            return name, universal_coefficient_check(d), "universal coefficients"
        if check == "mirror":
            ok = True
            for ring in (F2, QQ):
                a = khovanov(d, "kh", ring)
                b = khovanov(mirror(d), "kh", ring)
                ok = ok and b.free_ranks == {
                    (-i, -j): r for (i, j), r in a.free_ranks.items()}
            return name, ok, "mirror duality of free ranks"
        if check == "reduced":
            unred = _poincare_f2(khovanov(d, "kh", F2))
            red = _poincare_f2(khovanov(d.with_basepoint(1), "kh", F2, reduced=True))
            ok = unred == red * LaurentPoly.from_q_coeffs([(1, 1), (-1, 1)])
            return name, ok, "unreduced = (q + 1/q) * reduced over F2"
        if check == "thinness":
            if len(d.components) != 1 or not alternating:
                return name, True, "skipped (not an alternating knot)"
            g = khovanov(d.with_basepoint(1), "kh", F2, reduced=True)
            # the signature diagonal under the repo convention
            # (sigma(right trefoil) = -2, diagonal j - 2i = -sigma = s)
            ok = all(j - 2 * i == -sigma for (i, j) in g.support())
            return name, ok, "reduced homology on the signature diagonal"
        if check == "les":
            ok = all(les_dimension_check(d, c) for c in range(1, d.n + 1))
            return name, ok, "skein long-exact-sequence dimension identities"
        raise ValueError(f"unknown check {check!r}")
    except Exception as exc:  # surfaced per-diagram, job keeps going
        return name, False, f"error: {exc}"


CHECKS = ("euler", "parity", "lee", "ucc", "mirror", "reduced", "thinness", "les")


def _cmd_verify(args) -> int:
    entries = load_table(args.table)
    payloads = [
        (args.check, e.name, e.pd, e.signature, e.alternating, args.max_crossings)
        for e in entries
    ]
    if args.threads > 1:
        with Pool(args.threads) as pool:
            results = pool.map(_run_check, payloads)
    else:
        results = [_run_check(p) for p in payloads]
    failures = 0
    for name, ok, note in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {note}")
        failures += 0 if ok else 1
    print(f"# {args.check}: {len(results) - failures}/{len(results)} passed")
    return 1 if failures else 0


def _cmd_s_invariant(args) -> int:
    ring = ring_from_spec(args.ring)
    status = 0
    for name, d in _load_jobs(args):
        _check_size(d, args.max_crossings)
        if len(d.components) != 1:
            print(f"{name}: not a knot ({len(d.components)} components)")
            status = 1
            continue
        s = s_invariant(d, args.variant, ring)
        print(f"{name} s({args.variant},{args.ring}) = {s.s}  "
              f"slice-genus-bound = {slice_bound(s)}")
    return status


def _cmd_oracle(args) -> int:
    status = 0
    for name, d in _load_jobs(args):
        _check_size(d, args.max_crossings)
        jones = jones_skein(d, max_crossings=args.max_crossings)
        print(f"{name} jones: {jones}")
        if args.against_homology:
            ok = graded_euler(khovanov(d, "kh", QQ)) == jones
            print(f"{name} euler-check: {'PASS' if ok else 'FAIL'}")
            status |= 0 if ok else 1
    return status


def _add_input_opts(sp, with_name=True):
    sp.add_argument("--pd", help="PD string, e.g. 'X(4,2,5,1);X(2,6,3,5);X(6,4,1,3)'")
    sp.add_argument("--table", help="table file (name | pd | signature | alt)")
    if with_name:
        sp.add_argument("--name", help="restrict --table to one named entry")
    sp.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS,
                    help="safety limit on crossing count (default 16)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="linkhom",
        description="Exact Khovanov-type link homology and its oracles.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("compute", help="homology tables and invariants")
    _add_input_opts(sp)
    sp.add_argument("--theory", choices=("kh", "odd", "lee", "barnatan"),
                    default="kh")
    sp.add_argument("--ring", default="q", help="f2, fp:<p>, q or z")
    sp.add_argument("--reduced", action="store_true")
    sp.add_argument("--basepoint", type=int,
                    help="basepoint edge for reduced homology (default 1)")
    sp.add_argument("--out", choices=("text", "json-lines"), default="text")
    sp.add_argument("--outputs", default="homology",
                    help="comma list: homology,euler,jones,s,width,tb,checks")
    sp.add_argument("--threads", type=int, default=1,
                    help="parallelize --table computations across rows")
    sp.set_defaults(fn=_cmd_compute)

    sp = sub.add_parser("verify", help="run a consistency check over a table")
    sp.add_argument("--table", required=False,
                    help="table file; defaults to the bundled table")
    sp.add_argument("--check", choices=CHECKS, required=True)
    sp.add_argument("--max-crossings", type=int, default=DEFAULT_MAX_CROSSINGS)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("s-invariant", help="Rasmussen invariant of a knot")
    _add_input_opts(sp)
    sp.add_argument("--variant", choices=("lee", "barnatan"), default="lee")
    sp.add_argument("--ring", default="q")
    sp.set_defaults(fn=_cmd_s_invariant)

    sp = sub.add_parser("oracle", help="skein-recursion Jones polynomial")
    _add_input_opts(sp)
    sp.add_argument("--against-homology", action="store_true",
                    help="also compare with the graded Euler characteristic")
    sp.set_defaults(fn=_cmd_oracle)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit:
        raise
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
