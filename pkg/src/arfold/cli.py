"""Command-line surface: enumerate classes, render quivers, run verifiers."""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .rootsys import root_system
from .words import (
    CapExceededError,
    adapted_point,
    commutation_class,
    twisted_adapted_point,
)
from .arquiver import ARQuiver, adapted_quiver_of, gamma_q, hasse_quiver
from .twistfold import twisted_folded_quivers
from . import affine

SCHEMA = "arfold/1"


def _root_label(rs, r) -> str:
    v = rs.positive_roots[r]
    if rs.type_tag == "A":
        nz = [i + 1 for i, c in enumerate(v) if c]
        return f"[{nz[0]},{nz[-1]}]" if len(nz) > 1 else f"[{nz[0]}]"
    return "".join(str(c) for c in v)


def _parse_word(text: str):
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise SystemExit(f"cannot parse word {text!r}; expected e.g. 1,2,1")


def _resolve_quiver(rs, cls):
    """Coordinates for a class: adapted, twisted, or layered fallback."""
    word = cls.canonical_word
    q = adapted_quiver_of(rs, word)
    if q is not None:
        g = gamma_q(q)
        return hasse_quiver(cls, g), "adapted"
    try:
        folded = twisted_folded_quivers(rs.type_tag, rs.rank)
    except Exception:
        folded = {}
    if cls in folded:
        fq = folded[cls]
        # unfolded residue = the letter of the occurrence; type A folded
        # positions are already the doubled half-integers
        scale = 1 if rs.type_tag == "A" else 2
        coords = tuple(
            (r, cls.letter_of(r), scale * p) for r, _, p in fq.coords
        )
        return hasse_quiver(cls, ARQuiver(rs, coords, fq.arrows)), "twisted"
    return hasse_quiver(cls), "layered"


def quiver_to_json(quiver: ARQuiver) -> dict:
    rs = quiver.rs
    verts = sorted(quiver.coords, key=lambda t: (t[2], t[1], t[0]))
    index = {r: k for k, (r, _, _) in enumerate(verts)}
    return {
        "schema": SCHEMA,
        "type": rs.type_tag,
        "rank": rs.rank,
        "position_denominator": 2,
        "vertices": [
            {
                "root": list(rs.positive_roots[r]),
                "residue": i,
                "position": p2,
            }
            for r, i, p2 in verts
        ],
        "arrows": sorted(
            [index[a], index[b]] for a, b in quiver.arrows
        ),
    }


def quiver_from_json(doc: dict) -> ARQuiver:
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {doc.get('schema')!r}")
    rs = root_system(doc["type"], doc["rank"])
    coords = []
    verts = []
    for v in doc["vertices"]:
        r = rs.root_index[tuple(v["root"])]
        coords.append((r, v["residue"], v["position"]))
        verts.append(r)
    arrows = frozenset((verts[a], verts[b]) for a, b in doc["arrows"])
    return ARQuiver(rs, tuple(sorted(coords)), arrows)


def quiver_to_dot(quiver: ARQuiver) -> str:
    rs = quiver.rs
    lines = ["digraph arquiver {", "  rankdir=RL;"]
    names = {}
    for r, i, p2 in sorted(quiver.coords, key=lambda t: (t[2], t[1])):
        names[r] = f"v{r}"
        pos = Fraction(p2, 2)
        lines.append(
            f'  v{r} [label="{_root_label(rs, r)}\\n({i},{pos})"];'
        )
    for a, b in sorted(quiver.arrows):
        lines.append(f"  {names[a]} -> {names[b]};")
    lines.append("}")
    return "\n".join(lines)


def quiver_to_ascii(quiver: ARQuiver) -> str:
    rs = quiver.rs
    rows: dict[int, dict[int, str]] = {}
    positions = sorted({p2 for _, _, p2 in quiver.coords})
    for r, i, p2 in quiver.coords:
        rows.setdefault(i, {})[p2] = _root_label(rs, r)
    width = max(
        [len(lab) for row in rows.values() for lab in row.values()]
        + [len(str(Fraction(p, 2))) for p in positions]
    ) + 1
    out = []
    header = ["(i,p)".rjust(6)]
    header += [str(Fraction(p, 2)).rjust(width) for p in positions]
    out.append("".join(header))
    for i in sorted(rows):
        cells = [f"{i}".rjust(6)]
        for p in positions:
            cells.append(rows[i].get(p, "").rjust(width))
        out.append("".join(cells))
    return "\n".join(out)


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_classes(args) -> int:
    rs = root_system(args.type, args.rank)
    if args.cluster == "adapted":
        point = adapted_point(args.type, args.rank)
    else:
        point = twisted_adapted_point(args.type, args.rank)
    lines = [
        ",".join(map(str, cls.canonical_word))
        for cls in sorted(point, key=lambda c: c.canonical_word)
    ]
    lines.append(f"total {len(point)}")
    _emit("\n".join(lines), args.out)
    return 0


def cmd_quiver(args) -> int:
    rs = root_system(args.type, args.rank)
    word = _parse_word(args.cls)
    try:
        cls = commutation_class(rs, word)
    except Exception as exc:
        raise SystemExit(f"not a reduced word of w_0: {exc}")
    quiver, kind = _resolve_quiver(rs, cls)
    if args.format == "json":
        doc = quiver_to_json(quiver)
        doc["class"] = list(cls.canonical_word)
        doc["layout"] = kind
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
    elif args.format == "dot":
        _emit(quiver_to_dot(quiver), args.out)
    else:
        _emit(quiver_to_ascii(quiver), args.out)
    return 0


def _report_lines(rep) -> str:
    lines = [f"[{'PASS' if rep.ok else 'FAIL'}] {rep.name} ({rep.checked} checks)"]
    for note in rep.notes:
        lines.append(f"  note: {note}")
    for m in rep.mismatches:
        lines.append(f"  mismatch: {m}")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    reports = []
    if args.suite == "den-dist":
        _need(args, "target", "n")
        reports.append(affine.verify_den_dist(args.target, args.n))
        reports.append(affine.verify_class_invariance(args.target, args.n))
    elif args.suite == "dorey":
        _need(args, "target", "n")
        reports.append(affine.verify_dorey(args.target, args.n))
    elif args.suite == "socle-dist":
        reports.append(verify_socle_dist(args.type, args.rank, jobs=args.jobs))
    elif args.suite == "counts":
        reports.append(affine.verify_counts())
    elif args.suite == "f4":
        reports.append(affine.verify_f4_conjecture())
    text = "\n".join(_report_lines(r) for r in reports)
    print(text)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([r.as_dict() for r in reports], fh, indent=2)
    return 0 if all(r.ok for r in reports) else 1


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise SystemExit(f"suite {args.suite!r} needs --{name}")


def verify_socle_dist(type_tag: str, rank: int, jobs: int = 1):
    """Socle existence/uniqueness and dist bounds over a twisted point."""
    from .seqorder import dist, sequence_from_roots, socle
    from .affine import Report

    point = sorted(
        twisted_adapted_point(type_tag, rank), key=lambda c: c.canonical_word
    )
    rep = Report(f"socle-dist {type_tag}{rank}", True, 0)

    def check_class(cls):
        rs = cls.rs
        bad = []
        n = rs.num_positive
        for a in range(n):
            for b in range(a + 1, n):
                p = sequence_from_roots(rs, [a, b])
                d = dist(cls, p)
                s = socle(cls, p)
                if d > 2 or s is None:
                    bad.append((cls.canonical_word, a, b, d, s))
        return n * (n - 1) // 2, bad

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_class, point))
    else:
        results = [check_class(c) for c in point]
    for count, bad in results:
        rep.checked += count
        if bad:
            rep.ok = False
            rep.mismatches.extend(bad)
    return rep


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="arfold",
        description="folded AR quivers of longest-element commutation classes",
    )
    parser.add_argument(
        "--cap", type=int, default=None,
        help="enumeration cap (also via ARFOLD_CAP)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", help="list a cluster point")
    p.add_argument("--type", required=True, choices=["A", "D", "E"])
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--cluster", required=True, choices=["adapted", "twisted"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("quiver", help="render the quiver of a class")
    p.add_argument("--type", required=True, choices=["A", "D", "E"])
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--class", dest="cls", required=True,
                   help="canonical word as a comma list")
    p.add_argument("--format", default="ascii", choices=["ascii", "dot", "json"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["den-dist", "dorey", "socle-dist", "counts", "f4"])
    p.add_argument("--target", choices=["B", "C"])
    p.add_argument("--n", type=int)
    p.add_argument("--type", default="A", choices=["A", "D", "E"])
    p.add_argument("--rank", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    if args.cap is not None:
        os.environ["ARFOLD_CAP"] = str(args.cap)
        from . import words

        words.DEFAULT_CAP = args.cap
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
