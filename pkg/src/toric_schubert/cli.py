"""Command-line front end.

Subcommands: ``classify``, ``scan``, ``render`` and ``crosscheck``.  Exit codes
are 0 for success, 1 for a failed verification, 2 for usage or parse errors
and 3 when rigidity is requested for a non-toric permutation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, permutations

from toric_schubert import bigraph, edgecone, polyoracle, rothe

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NOT_TORIC = 3

SCAN_MAX_N = 8
CROSSCHECK_MAX_N = 7
FILTERS = ("all", "toric", "rigid", "nonrigid", "disagreement")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- projections


def classification_dict(c: edgecone.Classification) -> dict:
    return {
        "permutation": str(c.permutation),
        "toric": c.toric,
        "complexity": c.complexity,
        "dimension": c.dimension,
        "trivial": c.trivial,
        "rigid": c.rigid,
        "consistent": c.consistent,
        "method_verdicts": dict(c.method_verdicts),
        "rules": list(c.rules),
        "essentials": [[list(e) for e in comp] for comp in c.essentials],
        "witnesses": c.witnesses,
    }


def face_dict(f: edgecone.FaceDescriptor) -> dict:
    return {
        "dim": f.dim,
        "simplicial": f.simplicial,
        "defining_sets": [a.label() for a in f.defining_sets],
        "functional": list(f.functional),
        "rays": [list(r.coords) for r in f.rays_on_face],
        "sources": [r.source.label() for r in f.rays_on_face],
    }


# ---------------------------------------------------------------- rendering


def render_rothe(p: rothe.Permutation) -> str:
    d = rothe.rothe_diagram(p)
    ones = {(p(j), j) for j in range(1, p.n + 1)}
    rows = []
    for r in range(1, p.n + 1):
        line = []
        for c in range(1, p.n + 1):
            if (r, c) in d:
                line.append("#")
            elif (r, c) in ones:
                line.append("*")
            else:
                line.append(".")
        rows.append("".join(line))
    return "\n".join(rows)


def render_regions(p: rothe.Permutation) -> str:
    """Overlay: E essential, D dominant, L other diagram cells of L, P cells of L'."""
    d = rothe.rothe_diagram(p)
    reg = rothe.regions(d)
    ess = rothe.essential_set(d)
    dom = rothe.dominant_piece(d)
    ones = {(p(j), j) for j in range(1, p.n + 1)}
    rows = []
    for r in range(1, p.n + 1):
        line = []
        for c in range(1, p.n + 1):
            cell = (r, c)
            if cell in ess:
                line.append("E")
            elif cell in dom:
                line.append("D")
            elif cell in d:
                line.append("L")
            elif cell in reg.l_prime:
                line.append("P")
            elif cell in ones:
                line.append("*")
            else:
                line.append(".")
        rows.append("".join(line))
    return "\n".join(rows)


def render_graph_dot(p: rothe.Permutation) -> str:
    reg = rothe.regions(rothe.rothe_diagram(p))
    return bigraph.graph_from_l(reg.l).to_dot("G_pi")


RENDERERS = {"rothe": render_rothe, "regions": render_regions, "graph-dot": render_graph_dot}


# ---------------------------------------------------------------- helpers


def _parse_perm(text: str) -> rothe.Permutation:
    try:
        return rothe.parse_permutation(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse permutation {text!r}: {exc}") from None


def _parse_methods(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in edgecone.METHODS]
    if bad or not names:
        raise UsageError(f"--methods expects a subset of {','.join(edgecone.METHODS)}")
    return names


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _text_report(report: dict) -> str:
    c = report["classification"]
    lines = [
        f"permutation  {c['permutation']}",
        f"toric        {c['toric']}",
        f"complexity   {c['complexity']}",
        f"dimension    {c['dimension']}",
    ]
    if c["toric"]:
        lines.append(f"rigid        {c['rigid']}")
        for name, v in c["method_verdicts"].items():
            lines.append(f"  {name:<10} {v}")
        if not c["consistent"]:
            lines.append("  methods DISAGREE")
        for w in c["witnesses"]:
            if w["kind"] == "essential-corner":
                lines.append(f"witness      essential corner {tuple(w['corner'])} in component {w['component']}")
            else:
                lines.append(f"witness      {len(w['rays'])}-ray 3-face from {', '.join(w['sources'])}")
    for name, block in report.get("diagrams", {}).items():
        lines.append(f"[{name}]")
        lines.append(block)
    for f in report.get("faces", []):
        tag = "simplicial" if f["simplicial"] else "NON-SIMPLICIAL"
        lines.append(f"3-face {tag}: {', '.join(f['sources'])}")
    ms = ", ".join(f"{k} {v:.1f} ms" for k, v in report["timings"].items())
    lines.append(f"timings      {ms}")
    return "\n".join(lines)


# ---------------------------------------------------------------- classify


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    p = _parse_perm(args.perm)
    methods = _parse_methods(args.methods)
    t1 = time.perf_counter()
    c = edgecone.classify_rigidity(p, methods)
    t2 = time.perf_counter()
    report = {
        "schema_version": SCHEMA_VERSION,
        "input": str(p),
        "classification": classification_dict(c),
    }
    if args.diagrams:
        report["diagrams"] = {"rothe": render_rothe(p), "regions": render_regions(p)}
    if args.faces:
        report["faces"] = [face_dict(f) for f in c.three_faces]
    report["timings"] = {
        "parse": round((t1 - t0) * 1000, 3),
        "classify": round((t2 - t1) * 1000, 3),
    }
    if args.text:
        print(_text_report(report))
    else:
        print(json.dumps(report, indent=2))
    return EXIT_OK if c.toric else EXIT_NOT_TORIC


# ---------------------------------------------------------------- scan


def _scan_one(images: tuple[int, ...]) -> dict:
    c = edgecone.classify_rigidity(rothe.Permutation(images))
    return {
        "schema_version": SCHEMA_VERSION,
        "input": str(c.permutation),
        "classification": classification_dict(c),
    }


def _keep(report: dict, flt: str) -> bool:
    c = report["classification"]
    if flt == "all":
        return True
    if flt == "toric":
        return c["toric"]
    if flt == "rigid":
        return c["toric"] and c["rigid"] is True
    if flt == "nonrigid":
        return c["toric"] and c["rigid"] is False
    return c["toric"] and not c["consistent"]


def scan_reports(n: int, jobs: int = 1):
    """Reports for all of ``S_n`` in lexicographic order."""
    perms = permutations(range(1, n + 1))
    if jobs <= 1:
        yield from map(_scan_one, perms)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_scan_one, perms, chunksize=32)


def summarize(reports) -> Counter:
    counts = Counter()
    for r in reports:
        c = r["classification"]
        counts["total"] += 1
        if not c["toric"]:
            continue
        counts["toric"] += 1
        if c["trivial"]:
            counts["trivial"] += 1
        if not c["consistent"]:
            counts["disagreement"] += 1
        elif c["rigid"]:
            counts["rigid"] += 1
        else:
            counts["nonrigid"] += 1
    return counts


def cmd_scan(args) -> int:
    if not 2 <= args.n <= SCAN_MAX_N:
        raise UsageError(f"--n must lie in 2..{SCAN_MAX_N}")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    reports = (r for r in scan_reports(args.n, args.jobs) if _keep(r, args.filter))
    if args.summary:
        counts = summarize(reports)
        print(f"S_{args.n} ({args.filter})")
        for key in ("total", "toric", "trivial", "rigid", "nonrigid", "disagreement"):
            print(f"{key:<13}{counts[key]:>8}")
        return EXIT_OK
    for r in reports:
        _emit(r)
    return EXIT_OK


# ---------------------------------------------------------------- render


def cmd_render(args) -> int:
    p = _parse_perm(args.perm)
    print(RENDERERS[args.what](p))
    return EXIT_OK


# ---------------------------------------------------------------- crosscheck


class CrosscheckFailure(Exception):
    def __init__(self, check: str, perm, detail: str):
        super().__init__(f"{check} failed for {perm}: {detail}")
        self.check = check
        self.perm = perm
        self.detail = detail


def _check_component(p, k: int, comp: edgecone.ConeComponent, deep: bool) -> None:
    g = comp.graph
    dim = g.m + g.n - 1
    gens = edgecone.dual_generators_normal(g)
    oracle = sorted(polyoracle.dual_rays(gens, dim))
    fis = bigraph.first_independent_sets(g)
    gamma = [edgecone.ray_of(g, a) for a in fis]
    if sorted(r.coords for r in gamma) != oracle:
        extra = sorted(set(r.coords for r in gamma) - set(oracle))
        missing = sorted(set(oracle) - set(r.coords for r in gamma))
        raise CrosscheckFailure(
            "ray-bijection",
            p,
            f"component {k} graph {g.sorted_edges()}: graph-only rays {extra}, oracle-only rays {missing}",
        )
    if not deep:
        return
    faces = edgecone.GraphFaces(g, fis)
    cone = polyoracle.RationalCone(dim, tuple(r.coords for r in gamma))
    lat = polyoracle.FaceLattice(cone, gens)
    for size in (1, 2, 3):
        for idx in combinations(range(len(fis)), size):
            f = faces.spans_face([fis[i] for i in idx])
            on = lat.closure(idx)
            oracle_face = lat.face(on).dim == size
            if (f is not None) != oracle_face:
                names = [fis[i].label() for i in idx]
                raise CrosscheckFailure(
                    "face-theorem", p, f"component {k}, sets {names}: graph {f is not None}, oracle {oracle_face}"
                )
            if f is not None:
                zero = {i for i, r in enumerate(gamma) if edgecone.pair(f.functional, r) == 0}
                neg = [i for i, r in enumerate(gamma) if edgecone.pair(f.functional, r) < 0]
                if zero != set(on) or neg:
                    raise CrosscheckFailure(
                        "face-functional", p, f"component {k}, functional {list(f.functional)} vanishes on {sorted(zero)}"
                    )
                if not lat.verify(lat.face(on)):
                    raise CrosscheckFailure("oracle-certificate", p, f"component {k}, rays {sorted(on)}")


def crosscheck(n: int, deep: bool = False) -> int:
    """Check every toric permutation of ``S_n``; returns the number checked."""
    checked = 0
    for images in permutations(range(1, n + 1)):
        p = rothe.Permutation(images)
        if not rothe.is_toric(p)[0]:
            continue
        checked += 1
        for k, comp in enumerate(edgecone.cone_components(p)):
            _check_component(p, k, comp, deep)
        c = edgecone.classify_rigidity(p)
        if not c.consistent:
            raise CrosscheckFailure("rigidity", p, f"verdicts {c.method_verdicts}, witnesses {c.witnesses}")
    return checked


def cmd_crosscheck(args) -> int:
    if not 1 <= args.n <= CROSSCHECK_MAX_N:
        raise UsageError(f"--n must lie in 1..{CROSSCHECK_MAX_N}")
    t0 = time.perf_counter()
    try:
        checked = crosscheck(args.n, args.deep)
    except CrosscheckFailure as exc:
        print(f"FAIL {exc}")
        return EXIT_VERIFY
    mode = "deep" if args.deep else "standard"
    print(f"ok: {checked} toric permutations of S_{args.n} ({mode}) in {time.perf_counter() - t0:.1f} s")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toric-schubert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify one permutation")
    p.add_argument("perm", help='one-line notation, e.g. "[2,4,1,3]"')
    p.add_argument("--methods", default=",".join(edgecone.METHODS))
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", help="JSON report (default)")
    fmt.add_argument("--text", dest="text", action="store_true", help="plain-text report")
    p.add_argument("--faces", action="store_true", help="include the 3-faces")
    p.add_argument("--diagrams", action="store_true", help="include ASCII diagrams")
    p.set_defaults(func=cmd_classify, text=False)

    p = sub.add_parser("scan", help="classify all of S_N")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", choices=FILTERS, default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--summary", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("render", help="draw a diagram or the graph")
    p.add_argument("--perm", required=True)
    p.add_argument("--what", choices=sorted(RENDERERS), default="rothe")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("crosscheck", help="compare the graph methods with the oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--deep", action="store_true", help="also test every face of up to three rays")
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
