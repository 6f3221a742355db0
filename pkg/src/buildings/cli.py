"""Command line front end.

Subcommands: build, verify, delta, dot, stats, bruhat.  Artifacts are
versioned JSON files describing a chamber system (chamber labels, one
partition per colour) plus, when the construction carries one, the full
metric table as canonical words.  Every failure exits non-zero with a
one-line reason on stderr; verify exits 0 exactly when all requested
axioms pass.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .arrangement import braid_chamber_system
from .bruhat import build_gb_building, bruhat_permutation, check_bn_axioms
from .chamber_system import ChamberSystem
from .core import (
    Report,
    WMetricBuilding,
    building_from_complex,
    check_b1,
    check_b2,
)
from .coxeter import (
    CoxeterMatrix,
    cycle_notation,
    permutation_to_word,
    symbol_to_matrix,
    type_a_permutation,
)
from .coxeter_complex import build_coxeter_complex
from .ff_linalg import FpMatrix
from .flag import build_flag_building, frame_apartments
from .symplectic import build_sp_building, incidence_graph
from .tree import build_tree, check_b2_interior, tree_building

ARTIFACT_FORMAT = 1

AXIOM_NAMES = ("B1", "B2", "B1'", "B2'", "BN")


def _write_output(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _artifact_json(
    kind: str,
    params: dict,
    cs: ChamberSystem,
    building: WMetricBuilding | None,
) -> str:
    doc: dict = {
        "format": ARTIFACT_FORMAT,
        "type": kind,
        "params": params,
        "colors": list(cs.colors),
        "chambers": list(cs.labels),
        "partitions": {
            str(color): [list(cl) for cl in cs.classes(color)] for color in cs.colors
        },
    }
    if building is not None:
        doc["delta"] = [
            [building.word_str(building.delta(c, d).word) for d in range(cs.size)]
            for c in range(cs.size)
        ]
    return json.dumps(doc, indent=1) + "\n"


def _load_artifact(path: str) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValueError(f"artifact file not found: {path}")
    except json.JSONDecodeError as e:
        raise ValueError(f"artifact is not valid JSON: {e}")
    if doc.get("format") != ARTIFACT_FORMAT:
        raise ValueError("unsupported artifact format")
    return doc


def _artifact_cs(doc: dict) -> ChamberSystem:
    colors = tuple(doc["colors"])
    return ChamberSystem(
        len(doc["chambers"]),
        colors,
        {color: doc["partitions"][str(color)] for color in colors},
        labels=doc["chambers"],
    )


def parse_symbol_file(text: str) -> tuple[CoxeterMatrix, tuple[int, ...]]:
    """Symbol files: one edge per line, 'i j' for order 3 and 'i j m' with
    m >= 4 or inf; omitted pairs commute.  Node ids must be contiguous."""
    edges: list[tuple] = []
    nodes: set[int] = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) == 2:
                i, j = int(parts[0]), int(parts[1])
                edges.append((i, j))
            elif len(parts) == 3:
                i, j = int(parts[0]), int(parts[1])
                label = None if parts[2].lower() in ("inf", "infinity") else int(parts[2])
                edges.append((i, j, label))
            else:
                raise ValueError("expected 'i j' or 'i j m'")
        except ValueError as e:
            raise ValueError(f"symbol file line {ln}: {e}")
        nodes.update((i, j))
    if not nodes:
        raise ValueError("symbol file defines no generators")
    names = sorted(nodes)
    base = names[0]
    if names != list(range(base, base + len(names))):
        raise ValueError(f"node ids must be contiguous, got {names}")
    shifted = [
        (e[0] - base, e[1] - base, *e[2:]) for e in edges
    ]
    return symbol_to_matrix(shifted, size=len(names)), tuple(names)


@dataclass
class Built:
    kind: str
    params: dict
    cs: ChamberSystem
    building: WMetricBuilding | None


def _build(kind: str, params: dict) -> Built:
    if kind == "flag":
        fb = build_flag_building(params["n"], params["p"])
        return Built(kind, params, fb.cs, fb.building)
    if kind == "sp":
        spb = build_sp_building(params["n"], params["p"])
        return Built(kind, params, spb.cs, spb.building)
    if kind == "gb":
        gb = build_gb_building(params["n"], params["p"])
        return Built(kind, params, gb.cs, gb.building)
    if kind == "coxeter":
        cm_rows = params["matrix"]
        cm = CoxeterMatrix.from_orders(
            [[None if x is None else int(x) for x in row] for row in cm_rows]
        )
        if cm.is_infinite_dihedral():
            raise ValueError("the infinite symbol has no finite complex; build a tree instead")
        cc = build_coxeter_complex(cm, cap=params.get("cap", 10_000), colors=tuple(params["colors"]))
        return Built(kind, params, cc.cs, building_from_complex(cc))
    if kind == "tree":
        t = build_tree(params["q"], params["depth"])
        return Built(kind, params, t.cs, tree_building(t))
    if kind == "arrangement":
        cs = braid_chamber_system(params["n"])
        return Built(kind, params, cs, None)
    raise ValueError(f"unknown artifact type {kind!r}")


def cmd_build(args: argparse.Namespace) -> int:
    if args.kind == "coxeter":
        cm, names = parse_symbol_file(Path(args.symbol).read_text(encoding="utf-8"))
        params = {
            "matrix": [[x for x in row] for row in cm.m],
            "colors": list(names),
            "cap": args.cap,
        }
    elif args.kind == "tree":
        params = {"q": args.q, "depth": args.depth}
    elif args.kind == "arrangement":
        params = {"n": args.n}
    else:
        params = {"n": args.n, "p": args.p}
    built = _build(args.kind, params)
    _write_output(_artifact_json(built.kind, built.params, built.cs, built.building), args.out)
    return 0


def _verify_one(doc: dict, axiom: str, thick: bool, margin: int | None) -> Report:
    kind = doc["type"]
    if axiom == "B1":
        return check_b1(_artifact_cs(doc), thick=thick)
    if axiom == "B2":
        if kind == "tree":
            t = build_tree(doc["params"]["q"], doc["params"]["depth"])
            return check_b2_interior(t, margin if margin is not None else min(3, t.depth - 1))
        built = _build(kind, doc["params"])
        if built.building is None:
            raise ValueError(f"artifact type {kind!r} carries no metric; B2 does not apply")
        return check_b2(built.building)
    if axiom in ("B1'", "B2'"):
        from .core import ApartmentEmbedding, check_b1_prime, check_b2_prime

        params = doc["params"]
        if kind == "flag":
            fb = build_flag_building(params["n"], params["p"])
            apartments = frame_apartments(params["n"], params["p"])
            cs = fb.cs
        elif kind == "sp":
            spb = build_sp_building(params["n"], params["p"])
            apartments, cs = spb.apartments, spb.cs
        elif kind == "coxeter":
            cm = CoxeterMatrix.from_orders(
                [[None if x is None else int(x) for x in row] for row in params["matrix"]]
            )
            cc = build_coxeter_complex(
                cm, cap=params.get("cap", 10_000), colors=tuple(params["colors"])
            )
            apartments = (ApartmentEmbedding(cc, cc.cs, list(range(cc.size))),)
            cs = cc.cs
        else:
            raise ValueError(f"artifact type {kind!r} has no apartment system")
        for apt in apartments:
            apt.check_morphism()
        if axiom == "B1'":
            return check_b1_prime(cs, apartments)
        return check_b2_prime(cs, apartments)
    if axiom == "BN":
        if kind != "gb":
            raise ValueError("the BN axioms apply to gb artifacts only")
        return check_bn_axioms(doc["params"]["n"], doc["params"]["p"])
    raise ValueError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOM_NAMES)}")


def cmd_verify(args: argparse.Namespace) -> int:
    doc = _load_artifact(args.artifact)
    axioms = []
    for name in args.axioms.split(","):
        name = name.strip()
        canon = {a.upper(): a for a in AXIOM_NAMES}.get(name.upper())
        if canon is None:
            raise ValueError(f"unknown axiom {name!r}; choose from {', '.join(AXIOM_NAMES)}")
        axioms.append(canon)
    reports = [_verify_one(doc, axiom, args.thick, args.margin) for axiom in axioms]
    result = {
        "artifact": args.artifact,
        "pass": all(r.passed for r in reports),
        "checks": [r.to_json() for r in reports],
    }
    _write_output(json.dumps(result, indent=1) + "\n", args.out)
    return 0 if result["pass"] else 1


def cmd_delta(args: argparse.Namespace) -> int:
    doc = _load_artifact(args.artifact)
    if "delta" not in doc:
        raise ValueError("artifact carries no metric table")
    size = len(doc["chambers"])
    for c in (args.c1, args.c2):
        if not 0 <= c < size:
            raise ValueError(f"chamber id {c} out of range 0..{size - 1}")
    word = doc["delta"][args.c1][args.c2]
    if word == "e":
        print("e")
        return 0
    if doc["type"] in ("flag", "gb"):
        colors = list(doc["colors"])
        letters = [colors.index(int(tok[1:])) for tok in word.split()]
        perm = type_a_permutation(tuple(letters), len(colors))
        print(f"{word} = {cycle_notation(perm)}")
    else:
        print(word)
    return 0


def cmd_dot(args: argparse.Namespace) -> int:
    doc = _load_artifact(args.artifact)
    if args.view == "chambers":
        _write_output(_artifact_cs(doc).to_dot(), args.out)
        return 0
    if args.view == "incidence":
        if doc["type"] != "sp" or doc["params"]["n"] != 2:
            raise ValueError("the incidence view needs an sp artifact with n = 2")
        spb = build_sp_building(doc["params"]["n"], doc["params"]["p"])
        _write_output(incidence_graph(spb).to_dot(), args.out)
        return 0
    if args.view == "tree":
        if doc["type"] != "tree":
            raise ValueError("the tree view needs a tree artifact")
        t = build_tree(doc["params"]["q"], doc["params"]["depth"])
        _write_output(t.to_dot(), args.out)
        return 0
    raise ValueError(f"unknown view {args.view!r}")


def cmd_stats(args: argparse.Namespace) -> int:
    doc = _load_artifact(args.artifact)
    cs = _artifact_cs(doc)
    rows: list[tuple[str, object]] = [
        ("type", doc["type"]),
        ("chambers", cs.size),
        ("colors", len(cs.colors)),
    ]
    for key, value in sorted(doc["params"].items()):
        if isinstance(value, (int, str)):
            rows.append((f"param_{key}", value))
    sizes = [len(cl) for color in cs.colors for cl in cs.classes(color)]
    rows.append(("panels", len(sizes)))
    rows.append(("min_panel", min(sizes)))
    rows.append(("max_panel", max(sizes)))
    rows.append(("thin", min(sizes) == max(sizes) == 2))
    rows.append(("thick", min(sizes) >= 3))
    try:
        rows.append(("diameter", cs.diameter()))
    except ValueError:
        rows.append(("diameter", "disconnected"))
    rows.append(("has_delta", "delta" in doc))
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["metric", "value"])
    for name, value in rows:
        writer.writerow([name, value])
    _write_output(buf.getvalue(), args.out)
    if args.figures is not None:
        from .figures import render_chamber_graph, render_panel_sizes

        figdir = Path(args.figures)
        figdir.mkdir(parents=True, exist_ok=True)
        stem = Path(args.artifact).stem
        graph_path = render_chamber_graph(cs, figdir / f"{stem}_chambers.png", title=doc["type"])
        panel_path = render_panel_sizes(cs, figdir / f"{stem}_panels.png", title=doc["type"])
        print(f"figures: {graph_path} {panel_path}", file=sys.stderr)
    return 0


def cmd_bruhat(args: argparse.Namespace) -> int:
    try:
        rows = [
            [int(x) for x in row.split(",")] for row in args.matrix.split(";")
        ]
    except ValueError:
        raise ValueError("matrix must look like '1,1,0;0,1,0;0,0,1'")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    m = FpMatrix.from_rows(rows, args.p)
    w = bruhat_permutation(m)
    word = permutation_to_word(w)
    if not word:
        print("e")
    else:
        word_str = " ".join(f"s{i + 1}" for i in word)
        print(f"{word_str} = {cycle_notation(w)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="buildings",
        description="Construct small buildings and verify their axioms exhaustively.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct an example and write its artifact")
    kinds = p_build.add_subparsers(dest="kind", required=True)
    for kind, needs in (
        ("flag", "np"),
        ("gb", "np"),
        ("sp", "np"),
        ("coxeter", "symbol"),
        ("tree", "tree"),
        ("arrangement", "n"),
    ):
        k = kinds.add_parser(kind)
        if needs == "np":
            k.add_argument("--n", type=int, required=True)
            k.add_argument("--p", type=int, required=True)
        elif needs == "n":
            k.add_argument("--n", type=int, required=True)
        elif needs == "tree":
            k.add_argument("--q", type=int, required=True)
            k.add_argument("--depth", type=int, required=True)
        else:
            k.add_argument("--symbol", required=True, help="Coxeter symbol file")
            k.add_argument("--cap", type=int, default=10_000)
        k.add_argument("--out", default=None)
        k.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="run axiom checks against an artifact")
    p_verify.add_argument("artifact")
    p_verify.add_argument(
        "--axioms", required=True, help="comma-separated subset of B1,B2,B1',B2',BN"
    )
    p_verify.add_argument("--thick", action="store_true", help="require panels of size >= 3 in B1")
    p_verify.add_argument("--margin", type=int, default=None, help="interior margin for tree B2")
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_delta = sub.add_parser("delta", help="distance between two chambers of an artifact")
    p_delta.add_argument("artifact")
    p_delta.add_argument("c1", type=int)
    p_delta.add_argument("c2", type=int)
    p_delta.set_defaults(func=cmd_delta)

    p_dot = sub.add_parser("dot", help="DOT export of an artifact")
    p_dot.add_argument("artifact")
    p_dot.add_argument("--view", choices=("chambers", "incidence", "tree"), default="chambers")
    p_dot.add_argument("--out", default=None)
    p_dot.set_defaults(func=cmd_dot)

    p_stats = sub.add_parser("stats", help="CSV summary (and optional figures)")
    p_stats.add_argument("artifact")
    p_stats.add_argument("--out", default=None)
    p_stats.add_argument("--figures", default=None, help="directory for rendered figures")
    p_stats.set_defaults(func=cmd_stats)

    p_bruhat = sub.add_parser("bruhat", help="Bruhat cell of an invertible matrix")
    p_bruhat.add_argument("matrix", help="semicolon-separated rows of comma-separated residues")
    p_bruhat.add_argument("--p", type=int, required=True)
    p_bruhat.set_defaults(func=cmd_bruhat)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
