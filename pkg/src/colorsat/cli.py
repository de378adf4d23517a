"""``colorsat`` command-line interface.

Exit codes: 0 success, 2 bad input or unmet precondition, 3 guard exceeded,
4 property violation (a graph that should be saturated is not, a failed
suite criterion, ...).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import kernels
from .constructions import CONSTRUCTIONS, ConstructionError, construct
from .cover import (
    GuardExceeded,
    MalformedCoverError,
    complement_cover_bound,
    exact_cover_weight,
    kn_bound_holds,
    kn_lower_bound,
    saturated_to_cover,
    star_cover,
)
from .ecg import EcgParseError, read_ecg, write_ecg
from .family import FamilyError, parse_family, rainbow_two_path_exists
from .graph import GraphError, complete_graph
from .saturation import InfeasibleFamilyError, saturation_report, verify_min_degree_bounds
from .search import DegreeSequence, NonGraphicalError, compute_sat, enumeration_guard, search_degree_sequence

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_PROPERTY = 0, 2, 3, 4


@dataclass
class ReportRow:
    family: str
    n: int
    t: int
    kind: str  # exact | lower-bound | upper-bound-by-construction
    value: float
    provenance: str
    witness: str = ""
    strict: str = ""


def _emit(args, payload, human: str | None = None, rows: list[dict] | None = None) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    elif args.csv and rows is not None:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()) if rows else [])
        w.writeheader()
        w.writerows(rows)
    else:
        print(human if human is not None else json.dumps(payload, indent=2, default=str))


def _report_text(rep) -> str:
    lines = [f"family {rep.family}, n={rep.n}, t={rep.t}, e={rep.edge_count}",
             f"free: {rep.is_free}",
             f"deficiency: {rep.deficiency}",
             f"saturated: {rep.is_saturated}"]
    if rep.member:
        lines.append(f"member (host -> G): {rep.member}")
    for u, v, c in rep.deficiency_witnesses[:10]:
        lines.append(f"  adding {u}-{v} in color {c} creates no member")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    g = read_ecg(args.graph)
    fam = parse_family(args.family)
    rep = saturation_report(g, fam, args.witness_cap)
    payload = rep.to_dict()
    text = _report_text(rep)
    if args.diagnostics and rep.is_saturated:
        diag = verify_min_degree_bounds(g, fam)
        payload["diagnostics"] = diag.to_dict()
        text += "\n" + "\n".join(f"  [{'ok' if c.ok else 'FAIL'}] {c.name} {c.detail}" for c in diag.checks)
        if not diag.ok:
            _emit(args, payload, text)
            return EXIT_PROPERTY
    _emit(args, payload, text)
    return EXIT_OK if rep.is_saturated else EXIT_PROPERTY


def _construct_params(args) -> dict:
    return {k: getattr(args, k) for k in ("n", "t", "s", "k", "c", "p") if getattr(args, k) is not None}


def cmd_construct(args) -> int:
    try:
        c = construct(args.name, **_construct_params(args))
    except KeyError as exc:
        raise ConstructionError(f"missing parameter --{exc.args[0]} for {args.name}") from None
    g = c.graph
    payload = {"certificate": c.certificate.to_dict(), "family": c.family.name, "edges": g.num_edges}
    text = f"{c.certificate.name} {c.certificate.params}: {g.num_edges} edges (claimed {c.certificate.bound} {c.certificate.claimed_edges}, {c.certificate.formula})"
    if args.out:
        write_ecg(g, args.out, f"{c.certificate.name} {c.certificate.params}")
        payload["file"] = str(args.out)
        text += f"\nwritten to {args.out}"
    elif not args.json and not args.verify:
        print(format_graph(g))
    ok = True
    if args.verify:
        rep = saturation_report(g, c.family)
        cert_ok = c.certificate.check(g)
        payload["certificate_ok"] = cert_ok
        payload["report"] = rep.to_dict()
        text += f"\ncertificate: {'ok' if cert_ok else 'FAILED'}\n" + _report_text(rep)
        ok = cert_ok and rep.is_saturated
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_PROPERTY


def format_graph(g) -> str:
    from .ecg import format_ecg

    return format_ecg(g).rstrip("\n")


def cmd_sat(args) -> int:
    fam = parse_family(args.family)
    res = compute_sat(args.n, args.t, fam, jobs=args.jobs, force=args.force, witness_limit=args.witnesses)
    payload = res.to_dict()
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for i, w in enumerate(res.witnesses):
            path = out / f"sat_n{args.n}_t{args.t}_{i}.ecg"
            write_ecg(w, path, f"saturated for {fam.name}, {w.num_edges} edges")
            files.append(str(path))
        payload["witness_files"] = files
    value = "none" if res.sat_value is None else res.sat_value
    text = (f"sat_{args.t}({args.n}, {fam.name}) = {value}\n"
            f"{res.witness_count} minimal saturated graphs; levels {res.stats['levels']}; "
            f"{res.stats['elapsed']}s")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_cover(args) -> int:
    if args.kn is not None:
        n = args.kn
        if args.t is None:
            raise ValueError("--kn needs --t")
        res = exact_cover_weight(complete_graph(n), args.t, force=args.force)
        payload = {"n": n, "t": args.t, "f": res.value, "bound": kn_lower_bound(n, args.t),
                   "holds": kn_bound_holds(res.value, n, args.t), "nodes": res.nodes,
                   "witness": res.cover.to_dict(), "lower_bound": res.lower_bound,
                   "elapsed": round(res.elapsed, 4)}
        _emit(args, payload, f"f(K_{n}) = {res.value} at t={args.t}; n log n / log t = {payload['bound']:.3f}")
        return EXIT_OK if payload["holds"] else EXIT_PROPERTY
    if args.graph is None:
        raise ValueError("give a graph file or --kn N")
    g = read_ecg(args.graph)
    t = args.t or g.t
    if t < 2:
        raise ValueError("covers need t >= 2")
    h = g.complement() if args.complement else g.uncolored()
    sc = star_cover(h, t=t)
    payload = {"n": h.n, "t": t, "target": "complement" if args.complement else "graph",
               "edges": h.num_edges, "star_cover_weight": sc.weight}
    text = [f"target has {h.num_edges} edges on {h.n} vertices; star cover weight {sc.weight} = e + n"]
    ok = True
    if args.complement:
        if all(rainbow_two_path_exists(g, u, v) for u, v in g.non_edges()):
            red = saturated_to_cover(g)
            payload["reduction_cover_weight"] = red.weight
            payload["two_e"] = 2 * g.num_edges
            text.append(f"neighbourhood cover weight {red.weight} (2e = {2 * g.num_edges})")
        else:
            payload["reduction_cover_weight"] = None
            text.append("some non-edge has no rainbow 2-path; the neighbourhood cover does not apply")
    if args.exact:
        res = exact_cover_weight(h, t, force=args.force)
        payload["f"] = res.value
        payload["nodes"] = res.nodes
        payload["witness"] = res.cover.to_dict()
        payload["lower_bound"] = res.lower_bound
        payload["elapsed"] = round(res.elapsed, 4)
        text.append(f"f = {res.value} ({res.nodes} nodes)")
        if payload.get("reduction_cover_weight") is not None and res.value > payload["two_e"]:
            ok = False
        base = g.uncolored() if args.complement else g.complement()
        bound = complement_cover_bound(base, t, guard=h.n if args.force else None)
        payload["complement_bound"] = bound.to_dict()
        text.append(f"f(complement) >= f(K_n) - (e + n): {bound.f_complement} >= {bound.f_complete} - {bound.e_plus_n} "
                    f"[{'holds' if bound.holds else 'VIOLATED'}]")
        ok = ok and bound.holds
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_degseq(args) -> int:
    seq = DegreeSequence.parse(args.seq)
    fam = parse_family(args.family)
    res = search_degree_sequence(seq, args.t, fam, force=args.force, screen=not args.no_screen)
    payload = res.to_dict()
    if args.out and res.witness is not None:
        write_ecg(res.witness, args.out, f"saturated for {fam.name} with degrees {seq}")
        payload["file"] = str(args.out)
    text = (f"({seq}), t={args.t}, {fam.name}: {'found' if res.found else 'none'} "
            f"[{res.realizations} realizations, {res.screened_out} screened out, {res.colorings} colorings tried]")
    if res.witness is not None and not args.out:
        text += "\n" + format_graph(res.witness)
    _emit(args, payload, text)
    return EXIT_OK


def _parse_range(text: str) -> range:
    if ".." in text:
        a, b = text.split("..")
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def cmd_irregularity(args) -> int:
    t = args.t
    if t < 3:
        raise ValueError("the irregularity table needs t >= 3")
    rows: list[ReportRow] = []
    c1 = parse_family("exact1(K1,3)")
    c2 = parse_family("exact2(K1,3)")
    c3 = parse_family("exact3(K1,3)")
    for n in _parse_range(args.n_range):
        upper = None
        if n >= 2 * t + 1:
            g = construct("matching-pack", n=n, t=t, s=3).graph
            upper = g.num_edges
            path = ""
            if args.witness_dir:
                Path(args.witness_dir).mkdir(parents=True, exist_ok=True)
                path = str(Path(args.witness_dir) / f"matching_pack_n{n}_t{t}.ecg")
                write_ecg(g, path, f"matching pack n={n} t={t}")
            rows.append(ReportRow(c2.name, n, t, "upper-bound-by-construction", upper, "matching-pack", path))
        lower = t * n / 2
        if n >= 2 * t:
            rows.append(ReportRow(c1.name, n, t, "lower-bound", lower, "e >= tn/2 (n >= 2t)"))
        if n <= min(args.exact_max, enumeration_guard(t)):
            for fam in (c2, c1, c3):
                res = compute_sat(n, t, fam, jobs=args.jobs)
                path = ""
                if args.witness_dir and res.witnesses:
                    Path(args.witness_dir).mkdir(parents=True, exist_ok=True)
                    path = str(Path(args.witness_dir) / f"sat_{fam.name}_n{n}_t{t}.ecg")
                    write_ecg(res.witnesses[0], path, f"saturated for {fam.name}")
                value = res.sat_value if res.sat_value is not None else float("nan")
                rows.append(ReportRow(fam.name, n, t, "exact", value, "compute_sat", path))
        if upper is not None and n >= 2 * t:
            strict = "yes" if upper < lower else "NO"
            for row in rows:
                if row.n == n and row.kind == "upper-bound-by-construction":
                    row.strict = strict
    dicts = [asdict(r) for r in rows]
    text = "\n".join(f"n={r.n:3d} {r.family:14s} {r.kind:28s} {r.value:8g}  {r.provenance}"
                     + (f"  strict: {r.strict}" if r.strict else "") for r in rows)
    _emit(args, dicts, text, dicts)
    return EXIT_PROPERTY if any(r.strict == "NO" for r in rows) else EXIT_OK


def cmd_paper_suite(args) -> int:
    from .suite import run_suite

    only = {int(x) for x in args.only.split(",")} if args.only else None
    progress = None if args.json else (lambda r: print(r.line(), flush=True))
    results = run_suite(only=only, jobs=args.jobs, progress=progress)
    passed = sum(r.ok for r in results)
    if args.json:
        print(json.dumps({"passed": passed, "total": len(results), "backend": kernels.BACKEND,
                          "criteria": [r.to_dict() for r in results]}, indent=2, default=str))
    else:
        print(f"{passed}/{len(results)} criteria passed (kernel backend: {kernels.BACKEND})")
    return EXIT_OK if passed == len(results) else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    out = fmt.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="machine-readable output")
    out.add_argument("--csv", action="store_true", help="CSV output where the command has rows")

    p = argparse.ArgumentParser(prog="colorsat", description="Edge-colored graph saturation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[fmt], help="saturation report for an .ecg graph")
    v.add_argument("graph_pos", nargs="?", metavar="graph")
    v.add_argument("--graph", help=".ecg file (or give it positionally)")
    v.add_argument("--family", required=True, help="e.g. exact2(K3), mono(K1,3), rainbow(3K2)")
    v.add_argument("--witness-cap", type=int, default=100)
    v.add_argument("--diagnostics", action="store_true", help="also check the structural inequalities")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", parents=[fmt], help="build a named construction")
    names = CONSTRUCTIONS + ("prop3-k2n2", "thm9-k2n2")
    c.add_argument("name_pos", nargs="?", metavar="name", choices=names + (None,))
    c.add_argument("--name", choices=names)
    for flag in ("n", "t", "s", "k", "c", "p"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--out", help="write the graph to this .ecg file")
    c.add_argument("--verify", action="store_true", help="check the certificate and saturation")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("sat", parents=[fmt], help="exact saturation number by exhaustive search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--family", required=True)
    s.add_argument("--force", action="store_true", help="ignore the enumeration guard")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--witnesses", type=int, default=20, help="maximum witnesses to report")
    s.add_argument("--witness-dir", help="write witnesses as .ecg files here")
    s.set_defaults(func=cmd_sat)

    cv = sub.add_parser("cover", parents=[fmt], help="t-partite cover weights")
    cv.add_argument("graph_pos", nargs="?", metavar="graph")
    cv.add_argument("--graph", help=".ecg file (or give it positionally)")
    cv.add_argument("--t", type=int, default=None, help="parts per member (default: the graph's palette)")
    cv.add_argument("--kn", type=int, help="cover K_n instead of a graph file")
    cv.add_argument("--complement", action="store_true", help="cover the complement of the graph")
    cv.add_argument("--exact", action="store_true", help="compute f exactly by branch-and-bound")
    cv.add_argument("--force", action="store_true", help="ignore the exact-cover guard")
    cv.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; the search is sequential")
    cv.set_defaults(func=cmd_cover)

    d = sub.add_parser("degseq", parents=[fmt], help="saturated colorings with a given degree sequence")
    d.add_argument("--seq", required=True, help="comma-separated degrees")
    d.add_argument("--t", type=int, required=True)
    d.add_argument("--family", required=True)
    d.add_argument("--force", action="store_true")
    d.add_argument("--no-screen", action="store_true", help="skip the copy-count screen")
    d.add_argument("--out", help="write a witness to this .ecg file")
    d.set_defaults(func=cmd_degseq)

    ir = sub.add_parser("irregularity", parents=[fmt], help="star-family bounds table")
    ir.add_argument("--t", type=int, required=True)
    ir.add_argument("--n-range", default="7..20", help="e.g. 7..20")
    ir.add_argument("--exact-max", type=int, default=5, help="largest n for exact values")
    ir.add_argument("--jobs", type=int, default=1)
    ir.add_argument("--witness-dir", help="write witness graphs here")
    ir.set_defaults(func=cmd_irregularity)

    ps = sub.add_parser("paper-suite", parents=[fmt], help="run every acceptance check")
    ps.add_argument("--only", help="comma-separated criterion numbers")
    ps.add_argument("--jobs", type=int, default=1)
    ps.set_defaults(func=cmd_paper_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    for pos, opt in (("graph_pos", "graph"), ("name_pos", "name")):
        if hasattr(args, pos):
            if getattr(args, pos) is not None and getattr(args, opt) is not None:
                parser.error(f"give the {opt} once")
            if getattr(args, opt) is None:
                setattr(args, opt, getattr(args, pos))
    if args.command == "verify" and args.graph is None:
        parser.error("verify needs a graph file")
    if args.command == "construct" and args.name is None:
        parser.error("construct needs a construction name")
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"colorsat: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (EcgParseError, FamilyError, GraphError, ConstructionError, NonGraphicalError,
            InfeasibleFamilyError, MalformedCoverError, ValueError, OSError) as exc:
        print(f"colorsat: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
