"""Scholarly corpus ingestion and the immutable citation/co-authorship index.

Input is newline-delimited JSON, one record per line, in the Open Research
Corpus shape: ``id``, ``title``, ``year``, ``venue``, ``authors`` (list of
``{"ids": [...], "name": "..."}``) and ``outCitations`` (list of paper ids).

Ingestion is a single-writer batch phase; the resulting :class:`CorpusIndex`
is never mutated afterwards and is safe to share across concurrent readers.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import IngestError, NotFoundError, PreconditionError

logger = logging.getLogger(__name__)

# Titles matching any of these (case-insensitive substring) are front matter,
# not papers. Configurable per ingestion run.
DEFAULT_FRONT_MATTER_PATTERNS: tuple[str, ...] = (
    "preface",
    "foreword",
    "editorial",
    "acknowledgment",
    "reviewers",
    "table of contents",
    "author index",
)

SNAPSHOT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AuthorRef:
    author_id: str
    name: str


@dataclass(frozen=True)
class PaperRecord:
    """One publication. ``out_citations`` is pruned to in-corpus targets."""

    paper_id: str
    title: str
    year: int
    venue: str
    authors: tuple[AuthorRef, ...]
    out_citations: tuple[str, ...]


@dataclass(frozen=True)
class IngestFilter:
    """Venue/year scoping applied before cleaning. Empty allowlist = allow all."""

    venue_allowlist: frozenset[str] = frozenset()
    year_min: int | None = None
    year_max: int | None = None

    def __post_init__(self):
        if self.year_min is not None and self.year_max is not None and self.year_min > self.year_max:
            raise ValueError(f"year_min {self.year_min} > year_max {self.year_max}")
        # Venue comparison is case-insensitive on stripped names.
        object.__setattr__(
            self, "venue_allowlist", frozenset(v.strip().lower() for v in self.venue_allowlist)
        )

    def admits(self, record: PaperRecord) -> bool:
        if self.venue_allowlist and record.venue.strip().lower() not in self.venue_allowlist:
            return False
        if record.year:
            if self.year_min is not None and record.year < self.year_min:
                return False
            if self.year_max is not None and record.year > self.year_max:
                return False
        return True


@dataclass
class IngestStats:
    papers_kept: int = 0
    dropped_filter: int = 0
    dropped_non_paper: int = 0
    dropped_no_year: int = 0
    duplicates: int = 0
    malformed_records: int = 0
    citations_kept: int = 0
    citations_dropped: int = 0
    authors: int = 0

    def summary(self) -> str:
        return (
            f"{self.papers_kept} papers, {self.citations_kept} citations, {self.authors} authors\n"
            f"dropped: {self.dropped_non_paper} non-papers, {self.dropped_no_year} missing-year, "
            f"{self.dropped_filter} filtered, {self.duplicates} duplicates, "
            f"{self.malformed_records} malformed\n"
            f"citation edges outside the corpus dropped: {self.citations_dropped}"
        )


@dataclass(frozen=True)
class CorpusIndex:
    """Post-ingestion store with citation and co-authorship adjacency.

    Invariants (checked by the test suite):
      * q in in_citations[p]  <=>  p in out_citations[q]
      * every id in any adjacency set exists in ``papers``
      * coauthor_edges is keyed by sorted pairs and holds the exact shared-paper set
    """

    papers: dict[str, PaperRecord]
    in_citations: dict[str, frozenset[str]]
    out_citations: dict[str, frozenset[str]]
    author_papers: dict[str, frozenset[str]]
    author_names: dict[str, str]
    coauthor_edges: dict[tuple[str, str], frozenset[str]]
    stats: IngestStats = field(compare=False, default_factory=IngestStats)

    @property
    def max_year(self) -> int | None:
        if not self.papers:
            return None
        return max(rec.year for rec in self.papers.values())

    def require_paper(self, paper_id: str) -> PaperRecord:
        try:
            return self.papers[paper_id]
        except KeyError:
            raise NotFoundError(f"unknown paper id: {paper_id}") from None

    def require_author(self, author_id: str) -> str:
        try:
            return self.author_names[author_id]
        except KeyError:
            raise NotFoundError(f"unknown author id: {author_id}") from None

    def citation_count(self, paper_id: str) -> int:
        """Number of papers in the whole corpus citing ``paper_id``."""
        self.require_paper(paper_id)
        return len(self.in_citations[paper_id])

    def shared_papers(self, a: str, b: str) -> frozenset[str]:
        return self.coauthor_edges.get(_pair(a, b), frozenset())

    def last_active_year(self, author_id: str) -> int:
        self.require_author(author_id)
        return max(self.papers[p].year for p in self.author_papers[author_id])


def _pair(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


def parse_record(obj: object) -> PaperRecord | None:
    """Map one raw JSON object to a record; None when unusable (no id/title)."""
    if not isinstance(obj, dict):
        return None
    paper_id = obj.get("id")
    title = obj.get("title")
    if not isinstance(paper_id, str) or not paper_id or not isinstance(title, str) or not title.strip():
        return None
    year = obj.get("year")
    if not isinstance(year, int):
        year = 0
    venue = obj.get("venue")
    if not isinstance(venue, str):
        venue = ""
    authors = []
    seen_ids: set[str] = set()
    for raw in obj.get("authors") or []:
        if not isinstance(raw, dict):
            continue
        name = str(raw.get("name") or "").strip()
        ids = raw.get("ids") or []
        # Multiple ids are not disambiguated; the first listed id is canonical.
        author_id = str(ids[0]) if ids else ""
        if not author_id:
            if not name:
                continue
            author_id = "n:" + " ".join(name.lower().split())
        if author_id in seen_ids:
            continue
        seen_ids.add(author_id)
        authors.append(AuthorRef(author_id, name or author_id))
    out = [str(c) for c in obj.get("outCitations") or [] if isinstance(c, str) and c]
    return PaperRecord(
        paper_id=paper_id,
        title=title.strip(),
        year=year,
        venue=venue.strip(),
        authors=tuple(authors),
        out_citations=tuple(out),
    )


def clean_non_papers(
    record: PaperRecord, patterns: Iterable[str] = DEFAULT_FRONT_MATTER_PATTERNS
) -> bool:
    """Keep/drop decision: True when the record survives cleaning.

    Drops records with no authors and records whose title matches any
    front-matter pattern (case-insensitive substring).
    """
    if not record.authors:
        return False
    title = record.title.lower()
    return not any(p.lower() in title for p in patterns)


def build_index(records: Iterable[PaperRecord], stats: IngestStats | None = None) -> CorpusIndex:
    """Materialize both citation directions and co-authorship over ``records``.

    Citation edges pointing outside the record set (and self-citations) are
    dropped; records are assumed already filtered and cleaned.
    """
    stats = stats if stats is not None else IngestStats()
    papers: dict[str, PaperRecord] = {rec.paper_id: rec for rec in records}

    out_cit: dict[str, frozenset[str]] = {}
    in_sets: dict[str, set[str]] = {pid: set() for pid in papers}
    for pid, rec in papers.items():
        kept = sorted({c for c in rec.out_citations if c in papers and c != pid})
        stats.citations_kept += len(kept)
        stats.citations_dropped += len(rec.out_citations) - len(kept)
        papers[pid] = replace(rec, out_citations=tuple(kept))
        out_cit[pid] = frozenset(kept)
        for target in kept:
            in_sets[target].add(pid)

    author_papers: dict[str, set[str]] = {}
    author_names: dict[str, str] = {}
    coauthor_edges: dict[tuple[str, str], set[str]] = {}
    for pid, rec in papers.items():
        ids = [a.author_id for a in rec.authors]
        for a in rec.authors:
            author_papers.setdefault(a.author_id, set()).add(pid)
            author_names.setdefault(a.author_id, a.name)  # first seen name wins
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                coauthor_edges.setdefault(_pair(a, b), set()).add(pid)

    stats.papers_kept = len(papers)
    stats.authors = len(author_names)
    return CorpusIndex(
        papers=papers,
        in_citations={pid: frozenset(s) for pid, s in in_sets.items()},
        out_citations=out_cit,
        author_papers={a: frozenset(s) for a, s in author_papers.items()},
        author_names=author_names,
        coauthor_edges={k: frozenset(v) for k, v in coauthor_edges.items()},
        stats=stats,
    )


def ingest_corpus(
    source: Iterable[str],
    ingest_filter: IngestFilter | None = None,
    patterns: Iterable[str] = DEFAULT_FRONT_MATTER_PATTERNS,
) -> CorpusIndex:
    """Parse, filter, clean, and index an NDJSON line stream.

    Malformed-but-parseable records are tolerated (skipped and counted); a
    line that is not valid JSON is a fatal error naming the line number.
    Duplicate paper ids keep the first occurrence.
    """
    ingest_filter = ingest_filter or IngestFilter()
    patterns = tuple(patterns)
    stats = IngestStats()
    kept: list[PaperRecord] = []
    seen: set[str] = set()
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise IngestError(f"line {lineno}: invalid JSON: {exc.msg}") from exc
        rec = parse_record(obj)
        if rec is None:
            stats.malformed_records += 1
            continue
        if rec.paper_id in seen:
            stats.duplicates += 1
            continue
        seen.add(rec.paper_id)
        if not ingest_filter.admits(rec):
            stats.dropped_filter += 1
            continue
        if not rec.year:
            # The time axis is meaningless without a publication year.
            stats.dropped_no_year += 1
            continue
        if not clean_non_papers(rec, patterns):
            stats.dropped_non_paper += 1
            continue
        kept.append(rec)
    index = build_index(kept, stats)
    if stats.duplicates:
        logger.warning("ingestion skipped %d duplicate paper ids", stats.duplicates)
    return index


def ingest_file(
    path: str | Path,
    ingest_filter: IngestFilter | None = None,
    patterns: Iterable[str] = DEFAULT_FRONT_MATTER_PATTERNS,
) -> CorpusIndex:
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as fh:
            return ingest_corpus(fh, ingest_filter, patterns)
    except OSError as exc:
        raise IngestError(f"cannot read corpus file {path}: {exc}") from exc


@dataclass(frozen=True)
class TitleMatch:
    paper_id: str
    title: str
    year: int
    already_in_network: bool


def search_titles(
    index: CorpusIndex,
    query: str,
    limit: int = 10,
    visible: frozenset[str] | set[str] | None = None,
) -> list[TitleMatch]:
    """Case-insensitive keyword search over titles, ordered by year then title.

    Every whitespace-separated query token must occur as a substring of the
    title. ``visible`` (the caller's network, if any) fills
    ``already_in_network``.
    """
    tokens = query.lower().split()
    if not tokens:
        raise PreconditionError("search query must be non-empty")
    in_network = visible or frozenset()
    hits = [
        rec
        for rec in index.papers.values()
        if all(tok in rec.title.lower() for tok in tokens)
    ]
    hits.sort(key=lambda r: (r.year, r.title, r.paper_id))
    return [
        TitleMatch(r.paper_id, r.title, r.year, r.paper_id in in_network)
        for r in hits[: max(limit, 0)]
    ]


def save_snapshot(index: CorpusIndex, path: str | Path) -> None:
    """Write a JSON snapshot that rebuilds to an equal index."""
    doc = {
        "schema_version": SNAPSHOT_SCHEMA_VERSION,
        "papers": [
            {
                "id": rec.paper_id,
                "title": rec.title,
                "year": rec.year,
                "venue": rec.venue,
                "authors": [[a.author_id, a.name] for a in rec.authors],
                "out_citations": list(rec.out_citations),
            }
            for _, rec in sorted(index.papers.items())
        ],
    }
    Path(path).write_text(json.dumps(doc, ensure_ascii=False, indent=1), encoding="utf-8")


def load_snapshot(path: str | Path) -> CorpusIndex:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IngestError(f"cannot read snapshot {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise IngestError(f"snapshot {path} is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or doc.get("schema_version") != SNAPSHOT_SCHEMA_VERSION:
        raise IngestError(f"snapshot {path} has an unsupported schema")
    records = []
    for raw in doc.get("papers", []):
        records.append(
            PaperRecord(
                paper_id=raw["id"],
                title=raw["title"],
                year=raw["year"],
                venue=raw.get("venue", ""),
                authors=tuple(AuthorRef(a, n) for a, n in raw.get("authors", [])),
                out_citations=tuple(raw.get("out_citations", [])),
            )
        )
    return build_index(records)
