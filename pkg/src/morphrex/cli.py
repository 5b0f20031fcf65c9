"""Command line entry points.

Every failure exits with status 2 and a single line on stderr of the form
``error [stage]: message``, where stage names the pipeline phase that
failed (load, mbf, mre, actions, run).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analysis import comparison_report
from .errors import MorphrexError, ProjectError
from .fileio import (
    SchemaError,
    canonical_json_bytes,
    read_project,
    read_tags,
    tags_from_payload,
    write_canonical_json,
    write_graph,
    write_tags,
)
from .morphology import analyze_text, load_lexicon, solutions_to_json
from .nfa import DEFAULT_MAX_STEPS
from .pipeline import result_tags_json, run_project

PREDICATE_NAMES = {
    "exact": "exact",
    "intersection": "intersection",
    "a-includes-b": "aIncludesB",
    "b-includes-a": "bIncludesA",
}


def _read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ProjectError(f"file not found: {path}") from exc


def cmd_run(args) -> int:
    project = read_project(args.project)
    text = _read_text(args.doc)
    result = run_project(project, text, max_steps=args.max_steps)

    for line in result.env.printed:
        print(line)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.doc).stem
    tags_path = out_dir / f"{stem}.tags.json"
    graph_path = out_dir / f"{stem}.graph.json"
    write_tags(result_tags_json(project, result), tags_path)
    write_graph(result.graph, graph_path, result.doc)

    tag_count = sum(
        1 for labels in result.seq.per_word for label in labels if label != "NONE"
    )
    print(
        f"{len(result.doc.entries)} words, {tag_count} tags, "
        f"{len(result.matches)} matches, {len(result.graph.nodes)} nodes, "
        f"{len(result.graph.edges)} edges"
    )
    print(f"wrote {tags_path}")
    print(f"wrote {graph_path}")
    return 0


def cmd_analyze(args) -> int:
    if bool(args.lexicon) == bool(args.project):
        raise ProjectError("analyze needs exactly one of --lexicon or --project")
    if args.lexicon:
        lexicon = load_lexicon(args.lexicon)
    else:
        lexicon = read_project(args.project).lexicon
    doc = analyze_text(_read_text(args.doc), lexicon)
    data = solutions_to_json(doc.entries)
    if args.out:
        write_canonical_json(data, args.out)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(canonical_json_bytes(data).decode("utf-8"))
    return 0


def cmd_diff(args) -> int:
    a = tags_from_payload(read_tags(args.a))
    b = tags_from_payload(read_tags(args.b))
    predicate = PREDICATE_NAMES[args.predicate]
    report = comparison_report(a, b, predicate)

    print(f"predicate: {args.predicate}")
    header = f"{'label':<12} {'matched':>7} {'onlyA':>6} {'onlyB':>6} {'precision':>10} {'recall':>10} {'f-measure':>10}"
    print(header)
    for label, row in report["labels"].items():
        print(
            f"{label:<12} {row['matched']:>7} {row['onlyA']:>6} {row['onlyB']:>6} "
            f"{row['precision']:>10} {row['recall']:>10} {row['fMeasure']:>10}"
        )
    if args.out:
        write_canonical_json(report, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve

    print(f"listening on http://{args.host}:{args.port}")
    serve(args.host, args.port, ui_dir=args.ui_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphrex",
        description="Morphology-driven tagging, matching, and relation extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a project over a text document")
    run.add_argument("--project", required=True, help="project JSON file")
    run.add_argument("--doc", required=True, help="UTF-8 text document")
    run.add_argument("--out", default=".", help="output directory")
    run.add_argument(
        "--max-steps",
        type=int,
        default=DEFAULT_MAX_STEPS,
        help="matching step budget per rule",
    )
    run.set_defaults(func=cmd_run)

    analyze = sub.add_parser("analyze", help="write morphological solutions")
    analyze.add_argument("--lexicon", help="lexicon JSON file")
    analyze.add_argument("--project", help="project JSON file to take the lexicon from")
    analyze.add_argument("--doc", required=True, help="UTF-8 text document")
    analyze.add_argument("--out", help="output file (stdout when omitted)")
    analyze.set_defaults(func=cmd_analyze)

    diff = sub.add_parser("diff", help="compare two tagging result files")
    diff.add_argument("--a", required=True, help="tagging result file, side A")
    diff.add_argument("--b", required=True, help="tagging result file, side B")
    diff.add_argument(
        "--predicate",
        choices=sorted(PREDICATE_NAMES),
        default="exact",
        help="span pairing predicate",
    )
    diff.add_argument("--out", help="also write the report as JSON")
    diff.set_defaults(func=cmd_diff)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8750)
    serve.add_argument("--ui-dir", help="directory of static UI files to serve")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MorphrexError, SchemaError) as exc:
        stage = getattr(exc, "stage", "load")
        print(f"error [{stage}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
