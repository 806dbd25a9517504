"""Review sessions: submitting authors, selected reviewers, roles, substitutes.

A session is an immutable value; operations return a new session or raise
without side effects, so every op is atomic by construction. Roles are always
derived from (session, index), never stored.

Conflict rule: two researchers conflict when they share a paper that has not
expired under the session's conflict-expiration threshold. A reviewer may
never conflict with a submitting author or with another selected reviewer;
this is enforced when reviewers are selected, when the submitting set
changes, and when thresholds change.
"""

from __future__ import annotations

import enum
import json
import uuid
from collections.abc import Iterable
from dataclasses import dataclass, replace

from .corpus import CorpusIndex
from .errors import (
    ConflictError,
    DanglingIdError,
    NotFoundError,
    PreconditionError,
    SchemaError,
)
from .network import (
    PaperNetworkState,
    RelevanceParams,
    Thresholds,
    add_seed,
    candidate_reviewers,
    coauthors,
    empty_network,
    rebuild_network,
)

SESSION_SCHEMA_VERSION = 1
DEFAULT_SUBSTITUTE_LIMIT = 5


class Role(enum.Enum):
    """Exactly one role per researcher; earlier entries win when several apply."""

    SUBMITTING_AUTHOR = "submitting_author"
    SUBMITTING_COAUTHOR = "submitting_coauthor"
    SELECTED_REVIEWER = "selected_reviewer"
    REVIEWER_COAUTHOR = "reviewer_coauthor"
    CANDIDATE = "candidate"
    COLLABORATOR = "collaborator"


# Roles that disqualify a researcher from being picked as a reviewer.
CONFLICTED_ROLES = frozenset(
    {Role.SUBMITTING_AUTHOR, Role.SUBMITTING_COAUTHOR, Role.REVIEWER_COAUTHOR}
)


@dataclass(frozen=True)
class SessionFlags:
    hide_conflicted: bool = False
    expand: bool = False


@dataclass(frozen=True)
class Session:
    session_id: str
    submitting_authors: frozenset[str] = frozenset()
    network: PaperNetworkState = PaperNetworkState()
    selected_reviewers: tuple[str, ...] = ()
    params: RelevanceParams = RelevanceParams()
    thresholds: Thresholds = Thresholds()
    flags: SessionFlags = SessionFlags()


def create_session(
    index: CorpusIndex,
    session_id: str | None = None,
    seed_ids: Iterable[str] = (),
    params: RelevanceParams | None = None,
    thresholds: Thresholds | None = None,
    flags: SessionFlags | None = None,
) -> Session:
    network = empty_network()
    for pid in seed_ids:
        network = add_seed(network, index, pid)
    return Session(
        session_id=session_id or uuid.uuid4().hex,
        network=network,
        params=params or RelevanceParams(),
        thresholds=thresholds or Thresholds(),
        flags=flags or SessionFlags(),
    )


def _conflicting(index: CorpusIndex, thresholds: Thresholds, author_id: str, others: Iterable[str]) -> list[str]:
    ca = coauthors(author_id, index, thresholds)
    return sorted(ca & set(others))


def _selection_offenders(
    index: CorpusIndex,
    thresholds: Thresholds,
    reviewers: Iterable[str],
    submitting: frozenset[str],
) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """(reviewer, submitting-author) and (reviewer, reviewer) conflict pairs."""
    reviewers = list(reviewers)
    vs_submitting: list[tuple[str, str]] = []
    for r in reviewers:
        if r in submitting:
            vs_submitting.append((r, r))
        for a in _conflicting(index, thresholds, r, submitting):
            vs_submitting.append((r, a))
    vs_reviewers: list[tuple[str, str]] = []
    for i, r in enumerate(reviewers):
        for other in _conflicting(index, thresholds, r, reviewers[i + 1 :]):
            vs_reviewers.append((r, other))
    return vs_submitting, vs_reviewers


def candidate_ids(session: Session, index: CorpusIndex) -> frozenset[str]:
    return frozenset(
        c.author_id
        for c in candidate_reviewers(
            session.network, index, session.params, session.thresholds, session.flags.expand
        )
    )


def role_of(session: Session, index: CorpusIndex, author_id: str) -> Role:
    index.require_author(author_id)
    if author_id in session.submitting_authors:
        return Role.SUBMITTING_AUTHOR
    ca = coauthors(author_id, index, session.thresholds)
    if ca & session.submitting_authors:
        return Role.SUBMITTING_COAUTHOR
    if author_id in session.selected_reviewers:
        return Role.SELECTED_REVIEWER
    if ca & set(session.selected_reviewers):
        return Role.REVIEWER_COAUTHOR
    if author_id in candidate_ids(session, index):
        return Role.CANDIDATE
    return Role.COLLABORATOR


def set_submitting_authors(session: Session, index: CorpusIndex, ids: Iterable[str]) -> Session:
    """Replace the submitting set; fails atomically if any current reviewer
    would become conflicted, listing the violating pairs."""
    submitting = frozenset(ids)
    for aid in sorted(submitting):
        index.require_author(aid)
    vs_submitting, _ = _selection_offenders(
        index, session.thresholds, session.selected_reviewers, submitting
    )
    if vs_submitting:
        raise ConflictError(
            "selected reviewers conflict with the new submitting authors",
            scope="submitting_authors",
            pairs=vs_submitting,
        )
    return replace(session, submitting_authors=submitting)


def select_reviewer(session: Session, index: CorpusIndex, author_id: str) -> Session:
    """Append a non-conflicted candidate to the selected reviewers."""
    role = role_of(session, index, author_id)
    if role is Role.SELECTED_REVIEWER:
        raise PreconditionError(f"{author_id} is already a selected reviewer")
    if role is Role.SUBMITTING_AUTHOR:
        raise ConflictError(
            f"{index.author_names[author_id]} is a submitting author",
            scope="submitting_authors",
            pairs=[(author_id, author_id)],
        )
    if role is Role.SUBMITTING_COAUTHOR:
        pairs = [
            (author_id, a)
            for a in _conflicting(index, session.thresholds, author_id, session.submitting_authors)
        ]
        raise ConflictError(
            f"{index.author_names[author_id]} has papers in common with a submitting author",
            scope="submitting_authors",
            pairs=pairs,
        )
    if role is Role.REVIEWER_COAUTHOR:
        pairs = [
            (author_id, r)
            for r in _conflicting(index, session.thresholds, author_id, session.selected_reviewers)
        ]
        raise ConflictError(
            f"{index.author_names[author_id]} has papers in common with a selected reviewer",
            scope="reviewers",
            pairs=pairs,
        )
    if role is not Role.CANDIDATE:
        raise PreconditionError(f"{author_id} is not a candidate reviewer under the current settings")
    return replace(session, selected_reviewers=session.selected_reviewers + (author_id,))


def remove_reviewer(session: Session, author_id: str) -> Session:
    if author_id not in session.selected_reviewers:
        raise PreconditionError(f"{author_id} is not a selected reviewer")
    return replace(
        session,
        selected_reviewers=tuple(r for r in session.selected_reviewers if r != author_id),
    )


@dataclass(frozen=True)
class SubstituteEntry:
    author_id: str
    name: str
    common_papers_with_reviewer: int
    relevance: float


@dataclass(frozen=True)
class SubstituteList:
    for_reviewer: str
    entries: tuple[SubstituteEntry, ...]


def substitutes(
    session: Session,
    index: CorpusIndex,
    reviewer_id: str,
    limit: int = DEFAULT_SUBSTITUTE_LIMIT,
) -> SubstituteList:
    """Replacement candidates for one reviewer, ranked by shared papers.

    Entries are authors of selected papers (thresholds applied) who are free
    of conflicts with the submitting authors and with every selected reviewer
    other than ``reviewer_id``; candidates sharing papers with the reviewer
    rank first, unconflicted experts follow.
    """
    if reviewer_id not in session.selected_reviewers:
        raise PreconditionError(f"{reviewer_id} is not a selected reviewer")
    other_reviewers = set(session.selected_reviewers) - {reviewer_id}
    entries = []
    pool = candidate_reviewers(
        session.network, index, session.params, session.thresholds, expand=False
    )
    for cand in pool:
        aid = cand.author_id
        if aid in session.selected_reviewers or aid in session.submitting_authors:
            continue
        ca = coauthors(aid, index, session.thresholds)
        if ca & session.submitting_authors:
            continue
        if ca & other_reviewers:
            continue
        entries.append(
            SubstituteEntry(
                author_id=aid,
                name=cand.name,
                common_papers_with_reviewer=len(index.shared_papers(aid, reviewer_id)),
                relevance=cand.relevance,
            )
        )
    entries.sort(
        key=lambda e: (-e.common_papers_with_reviewer, -e.relevance, e.name, e.author_id)
    )
    return SubstituteList(for_reviewer=reviewer_id, entries=tuple(entries[: max(limit, 0)]))


def swap_reviewer(
    session: Session,
    index: CorpusIndex,
    reviewer_id: str,
    substitute_id: str,
    limit: int = DEFAULT_SUBSTITUTE_LIMIT,
) -> Session:
    """Exchange a reviewer for one of its current substitutes, atomically."""
    current = substitutes(session, index, reviewer_id, limit)
    if substitute_id not in {e.author_id for e in current.entries}:
        raise PreconditionError(
            f"{substitute_id} is not currently a substitute for {reviewer_id}"
        )
    without = remove_reviewer(session, reviewer_id)
    return select_reviewer(without, index, substitute_id)


def update_settings(
    session: Session,
    index: CorpusIndex,
    params: RelevanceParams | None = None,
    thresholds: Thresholds | None = None,
    flags: SessionFlags | None = None,
) -> Session:
    """Apply new parameters; fails atomically if the tightened conflict rules
    would invalidate the current reviewer selection."""
    updated = replace(
        session,
        params=params if params is not None else session.params,
        thresholds=thresholds if thresholds is not None else session.thresholds,
        flags=flags if flags is not None else session.flags,
    )
    vs_submitting, vs_reviewers = _selection_offenders(
        index, updated.thresholds, updated.selected_reviewers, updated.submitting_authors
    )
    if vs_submitting:
        raise ConflictError(
            "new settings put selected reviewers in conflict with submitting authors",
            scope="submitting_authors",
            pairs=vs_submitting,
        )
    if vs_reviewers:
        raise ConflictError(
            "new settings put selected reviewers in conflict with each other",
            scope="reviewers",
            pairs=vs_reviewers,
        )
    return updated


def save_session(session: Session) -> str:
    """Canonical JSON for the session; stable bytes for identical sessions."""
    doc = {
        "schema_version": SESSION_SCHEMA_VERSION,
        "session_id": session.session_id,
        "seeds": list(session.network.seeds),
        "selected_papers": sorted(session.network.selected),
        "submitting_authors": sorted(session.submitting_authors),
        "selected_reviewers": list(session.selected_reviewers),
        "params": {"alpha": session.params.alpha, "beta": session.params.beta},
        "thresholds": {
            "min_selected_papers": session.thresholds.min_selected_papers,
            "researcher_expiration_years": session.thresholds.researcher_expiration_years,
            "conflict_expiration_years": session.thresholds.conflict_expiration_years,
            "reference_year": session.thresholds.reference_year,
        },
        "flags": {
            "hide_conflicted": session.flags.hide_conflicted,
            "expand": session.flags.expand,
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _expect(doc: dict, key: str, kind: type | tuple[type, ...]):
    if key not in doc:
        raise SchemaError(f"session file is missing required field: {key}")
    value = doc[key]
    if not isinstance(value, kind):
        raise SchemaError(f"session field {key} has the wrong type")
    return value


def load_session(blob: str | bytes | dict, index: CorpusIndex) -> Session:
    """Rebuild a session from its persisted form against the given corpus.

    Unknown extra fields are ignored for forward compatibility; ids that the
    corpus no longer contains fail the load, naming the id.
    """
    if isinstance(blob, (str, bytes)):
        try:
            doc = json.loads(blob)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"session file is not valid JSON: {exc.msg}") from exc
    else:
        doc = blob
    if not isinstance(doc, dict):
        raise SchemaError("session file must hold a JSON object")
    if _expect(doc, "schema_version", int) != SESSION_SCHEMA_VERSION:
        raise SchemaError(f"unsupported session schema_version: {doc['schema_version']}")

    session_id = _expect(doc, "session_id", str)
    seeds = _expect(doc, "seeds", list)
    selected = _expect(doc, "selected_papers", list)
    submitting = _expect(doc, "submitting_authors", list)
    reviewers = _expect(doc, "selected_reviewers", list)
    raw_params = _expect(doc, "params", dict)
    raw_thresholds = _expect(doc, "thresholds", dict)
    raw_flags = _expect(doc, "flags", dict)
    for name, ids in (("seeds", seeds), ("selected_papers", selected)):
        for pid in ids:
            if not isinstance(pid, str):
                raise SchemaError(f"session field {name} must hold string ids")
            if pid not in index.papers:
                raise DanglingIdError("paper", pid)
    for name, ids in (("submitting_authors", submitting), ("selected_reviewers", reviewers)):
        for aid in ids:
            if not isinstance(aid, str):
                raise SchemaError(f"session field {name} must hold string ids")
            if aid not in index.author_names:
                raise DanglingIdError("author", aid)
    if not set(seeds) <= set(selected):
        raise SchemaError("session seeds must be a subset of selected_papers")

    try:
        params = RelevanceParams(float(raw_params["alpha"]), float(raw_params["beta"]))
        thresholds = Thresholds(
            min_selected_papers=int(raw_thresholds.get("min_selected_papers", 1)),
            researcher_expiration_years=_opt_int(raw_thresholds.get("researcher_expiration_years")),
            conflict_expiration_years=_opt_int(raw_thresholds.get("conflict_expiration_years")),
            reference_year=_opt_int(raw_thresholds.get("reference_year")),
        )
        flags = SessionFlags(
            hide_conflicted=bool(raw_flags.get("hide_conflicted", False)),
            expand=bool(raw_flags.get("expand", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"session settings are invalid: {exc}") from exc

    network = rebuild_network(index, tuple(dict.fromkeys(seeds)), selected)
    if frozenset(reviewers) & frozenset(submitting):
        raise SchemaError("selected_reviewers and submitting_authors overlap")
    return Session(
        session_id=session_id,
        submitting_authors=frozenset(submitting),
        network=network,
        selected_reviewers=tuple(reviewers),
        params=params,
        thresholds=thresholds,
        flags=flags,
    )


def _opt_int(value) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"expected integer or null, got {value!r}")
    return value
