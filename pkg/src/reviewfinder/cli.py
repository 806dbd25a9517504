"""Command-line entry points: ingest/validate a corpus, serve the HTTP API,
and run a headless seeds-to-reviewers pipeline.

Exit codes: 0 ok, 1 domain error, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .corpus import (
    DEFAULT_FRONT_MATTER_PATTERNS,
    CorpusIndex,
    IngestFilter,
    ingest_file,
    load_snapshot,
    save_snapshot,
)
from .errors import NotFoundError, PreconditionError, ReviewFinderError
from .export import export_reviewer_list, render_export_json, render_export_text
from .network import RelevanceParams, Thresholds, candidate_reviewers
from .session import (
    CONFLICTED_ROLES,
    create_session,
    role_of,
    select_reviewer,
    set_submitting_authors,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reviewfinder",
        description="Explore a citation corpus and derive conflict-checked reviewer lists.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="parse, clean, and snapshot a corpus")
    p_ingest.add_argument("--corpus", required=True, help="NDJSON corpus file")
    p_ingest.add_argument("--out", required=True, help="snapshot file to write")
    p_ingest.add_argument("--config", help="JSON file with venues/year range/patterns")
    p_ingest.add_argument("--venue", action="append", default=None, help="venue allowlist entry")
    p_ingest.add_argument("--year-min", type=int, default=None)
    p_ingest.add_argument("--year-max", type=int, default=None)
    p_ingest.add_argument(
        "--front-matter-pattern",
        action="append",
        default=None,
        help="title pattern marking a non-paper (replaces the default list)",
    )

    p_find = sub.add_parser("find", help="headless pipeline: seeds to reviewer list")
    _add_corpus_source(p_find)
    p_find.add_argument("--seed", action="append", required=True, help="paper id or exact title")
    p_find.add_argument("--submitting", action="append", default=[], help="author id or exact name")
    p_find.add_argument("-k", type=int, default=3, help="reviewers to auto-select (greedy)")
    p_find.add_argument("--alpha", type=float, default=0.7)
    p_find.add_argument("--beta", type=float, default=0.3)
    p_find.add_argument("--min-selected", type=int, default=1)
    p_find.add_argument("--researcher-expiration", type=int, default=None)
    p_find.add_argument("--conflict-expiration", type=int, default=None)
    p_find.add_argument("--reference-year", type=int, default=None)
    p_find.add_argument("--substitutes", type=int, default=5)
    p_find.add_argument("--format", choices=("json", "text"), default="text")
    p_find.add_argument("--out", help="write output here instead of stdout")

    p_serve = sub.add_parser("serve", help="run the HTTP API")
    _add_corpus_source(p_serve)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000, help="0 picks an ephemeral port")
    p_serve.add_argument("--session-dir", default=None, help="directory for persisted sessions")
    p_serve.add_argument("--cors-origin", action="append", default=[])
    p_serve.add_argument("--static-dir", default=None, help="serve the web client from this directory")
    return parser


def _add_corpus_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--corpus", help="NDJSON corpus file (ingested with default filter)")
    group.add_argument("--snapshot", help="snapshot written by `reviewfinder ingest`")


def _load_index(args: argparse.Namespace, parser: argparse.ArgumentParser) -> CorpusIndex:
    if args.snapshot:
        path = Path(args.snapshot)
        if not path.exists():
            parser.error(f"snapshot not found: {path}")
        return load_snapshot(path)
    path = Path(args.corpus)
    if not path.exists():
        parser.error(f"corpus not found: {path}")
    return ingest_file(path)


def cmd_ingest(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = {}
    if args.config:
        config_path = Path(args.config)
        if not config_path.exists():
            parser.error(f"config not found: {config_path}")
        config = json.loads(config_path.read_text(encoding="utf-8"))
    venues = args.venue if args.venue is not None else config.get("venues", [])
    year_min = args.year_min if args.year_min is not None else config.get("year_min")
    year_max = args.year_max if args.year_max is not None else config.get("year_max")
    patterns = (
        args.front_matter_pattern
        if args.front_matter_pattern is not None
        else config.get("front_matter_patterns", DEFAULT_FRONT_MATTER_PATTERNS)
    )
    try:
        ingest_filter = IngestFilter(frozenset(venues), year_min, year_max)
    except ValueError as exc:
        parser.error(str(exc))
    corpus_path = Path(args.corpus)
    if not corpus_path.exists():
        parser.error(f"corpus not found: {corpus_path}")
    index = ingest_file(corpus_path, ingest_filter, patterns)
    save_snapshot(index, args.out)
    print(index.stats.summary())
    print(f"snapshot written to {args.out}")
    return 0


def _resolve_seed(index: CorpusIndex, token: str) -> str:
    if token in index.papers:
        return token
    matches = [
        pid for pid, rec in index.papers.items() if rec.title.lower() == token.strip().lower()
    ]
    if not matches:
        raise NotFoundError(f"cannot resolve seed: {token}")
    if len(matches) > 1:
        raise PreconditionError(f"seed title is ambiguous ({len(matches)} papers): {token}")
    return matches[0]


def _resolve_author(index: CorpusIndex, token: str) -> str:
    if token in index.author_names:
        return token
    matches = [
        aid for aid, name in index.author_names.items() if name.lower() == token.strip().lower()
    ]
    if not matches:
        raise NotFoundError(f"cannot resolve author: {token}")
    if len(matches) > 1:
        raise PreconditionError(f"author name is ambiguous ({len(matches)} ids): {token}")
    return matches[0]


def _render_candidates(session, index, fmt: str) -> str:
    cands = candidate_reviewers(
        session.network, index, session.params, session.thresholds, session.flags.expand
    )
    rows = []
    for cand in cands:
        role = role_of(session, index, cand.author_id)
        rows.append(
            {
                "author_id": cand.author_id,
                "name": cand.name,
                "relevance": round(cand.relevance, 6),
                "role": role.value,
                "conflicted": role in CONFLICTED_ROLES,
            }
        )
    if fmt == "json":
        return json.dumps(
            {"schema_version": 1, "candidates": rows}, indent=2, sort_keys=True, ensure_ascii=False
        ) + "\n"
    lines = ["Candidate reviewers", "==================="]
    for i, row in enumerate(rows, start=1):
        marker = " [conflicted]" if row["conflicted"] else ""
        lines.append(f"{i:3d}. {row['name']}  relevance {row['relevance']:.2f}{marker}")
    lines.append("")
    return "\n".join(lines)


def cmd_find(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    index = _load_index(args, parser)
    try:
        params = RelevanceParams(args.alpha, args.beta)
        thresholds = Thresholds(
            min_selected_papers=args.min_selected,
            researcher_expiration_years=args.researcher_expiration,
            conflict_expiration_years=args.conflict_expiration,
            reference_year=args.reference_year,
        )
    except ValueError as exc:
        parser.error(str(exc))
    seeds = [_resolve_seed(index, token) for token in args.seed]
    session = create_session(index, "cli", seed_ids=seeds, params=params, thresholds=thresholds)
    submitting = [_resolve_author(index, token) for token in args.submitting]
    session = set_submitting_authors(session, index, submitting)

    # Greedy convenience: walk the ranked candidates, skipping conflicted ones.
    if args.k > 0:
        for cand in candidate_reviewers(session.network, index, params, thresholds, expand=False):
            if len(session.selected_reviewers) >= args.k:
                break
            try:
                session = select_reviewer(session, index, cand.author_id)
            except ReviewFinderError:
                continue

    if session.selected_reviewers:
        document = export_reviewer_list(session, index, substitute_limit=args.substitutes)
        output = (
            render_export_json(document) if args.format == "json" else render_export_text(document)
        )
    else:
        output = _render_candidates(session, index, args.format)
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


def cmd_serve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    import uvicorn

    from .api import create_app
    from .store import SessionStore

    index = _load_index(args, parser)
    store = SessionStore(args.session_dir)
    store.load_existing(index)
    if args.static_dir and not Path(args.static_dir).is_dir():
        parser.error(f"static dir not found: {args.static_dir}")
    app = create_app(index, store, cors_origins=tuple(args.cors_origin), static_dir=args.static_dir)
    try:
        sock = socket.create_server((args.host, args.port))
    except OSError as exc:
        parser.error(f"cannot bind {args.host}:{args.port}: {exc}")
    host, port = sock.getsockname()[:2]
    print(f"listening on http://{host}:{port}", flush=True)
    server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
    server.run(sockets=[sock])
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"ingest": cmd_ingest, "find": cmd_find, "serve": cmd_serve}
    try:
        return handlers[args.command](args, parser)
    except ReviewFinderError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
