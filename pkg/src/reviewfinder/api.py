"""JSON-over-HTTP service exposing corpus search, network editing, and
reviewer selection to the companion web client.

The corpus index is shared read-only; per-session mutations are serialized
through the store's session locks, so concurrent requests on one session see
some serial order.
"""

from __future__ import annotations

import re
import uuid
from dataclasses import replace
from typing import Literal

from fastapi import FastAPI, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import dblp
from .corpus import CorpusIndex, search_titles
from .errors import PreconditionError, ReviewFinderError, SchemaError
from .export import export_reviewer_list, render_export_text
from .network import (
    RelevanceParams,
    ReviewerCandidate,
    Thresholds,
    add_seed,
    candidate_reviewers,
    deselect_paper,
    paper_network_view,
    remove_seed,
    researcher_network,
    select_paper,
)
from .session import (
    CONFLICTED_ROLES,
    DEFAULT_SUBSTITUTE_LIMIT,
    Session,
    SessionFlags,
    create_session,
    remove_reviewer,
    role_of,
    select_reviewer,
    set_submitting_authors,
    substitutes,
    swap_reviewer,
    update_settings,
)
from .store import SessionStore

SESSION_ID_RE = re.compile(r"^[A-Za-z0-9_.-]{1,64}$")


class ParamsBody(BaseModel):
    alpha: float = 0.7
    beta: float = 0.3


class ThresholdsBody(BaseModel):
    min_selected_papers: int = 1
    researcher_expiration_years: int | None = None
    conflict_expiration_years: int | None = None
    reference_year: int | None = None


class FlagsBody(BaseModel):
    hide_conflicted: bool = False
    expand: bool = False


class CreateSessionBody(BaseModel):
    session_id: str | None = None
    seeds: list[str] = Field(default_factory=list)
    submitting_authors: list[str] = Field(default_factory=list)
    params: ParamsBody | None = None
    thresholds: ThresholdsBody | None = None
    flags: FlagsBody | None = None


class SeedsBody(BaseModel):
    paper_ids: list[str]


class SubmittingAuthorsBody(BaseModel):
    author_ids: list[str]


class SwapBody(BaseModel):
    substitute_id: str


class SettingsBody(BaseModel):
    params: ParamsBody | None = None
    thresholds: ThresholdsBody | None = None
    flags: FlagsBody | None = None


def _params(body: ParamsBody) -> RelevanceParams:
    try:
        return RelevanceParams(alpha=body.alpha, beta=body.beta)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _thresholds(body: ThresholdsBody) -> Thresholds:
    try:
        return Thresholds(
            min_selected_papers=body.min_selected_papers,
            researcher_expiration_years=body.researcher_expiration_years,
            conflict_expiration_years=body.conflict_expiration_years,
            reference_year=body.reference_year,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _session_view(session: Session, index: CorpusIndex) -> dict:
    return {
        "session_id": session.session_id,
        "seeds": list(session.network.seeds),
        "selected_papers": sorted(session.network.selected),
        "visible_papers": sorted(session.network.visible),
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


def _candidate_view(cand: ReviewerCandidate, role, conflicted: bool) -> dict:
    return {
        "author_id": cand.author_id,
        "name": cand.name,
        "relevance": round(cand.relevance, 6),
        "role": role.value,
        "conflicted": conflicted,
        "selected_paper_ids": sorted(cand.selected_paper_ids),
        "visible_paper_ids": sorted(cand.visible_paper_ids),
        "last_active_year": cand.last_active_year,
        "career": [[year, pid] for year, pid in cand.career],
        "dblp_url": dblp.author_url(cand.name),
    }


def create_app(
    index: CorpusIndex,
    store: SessionStore | None = None,
    cors_origins: tuple[str, ...] = (),
    static_dir: str | None = None,
) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="reviewfinder", version="0.1.0")
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(ReviewFinderError)
    async def _domain_error(_request: Request, exc: ReviewFinderError):
        return JSONResponse(status_code=exc.http_status, content={"error": exc.to_payload()})

    def mutate(session_id: str, op):
        """Run one op under the session lock; persist and return the result."""
        with store.lock(session_id):
            session = store.get(session_id)
            updated = op(session)
            store.put(updated)
            return updated

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "papers": len(index.papers),
            "authors": len(index.author_names),
            "citations": sum(len(s) for s in index.out_citations.values()),
        }

    @app.get("/papers/search")
    def papers_search(
        q: str, limit: int = Query(default=10, ge=0, le=100), session_id: str | None = None
    ):
        visible = store.get(session_id).network.visible if session_id else None
        matches = search_titles(index, q, limit, visible)
        return {
            "results": [
                {
                    "paper_id": m.paper_id,
                    "title": m.title,
                    "year": m.year,
                    "already_in_network": m.already_in_network,
                }
                for m in matches
            ]
        }

    @app.get("/authors/search")
    def authors_search(q: str, limit: int = Query(default=10, ge=0, le=100)):
        tokens = q.lower().split()
        if not tokens:
            raise PreconditionError("search query must be non-empty")
        hits = [
            (name, author_id)
            for author_id, name in index.author_names.items()
            if all(tok in name.lower() for tok in tokens)
        ]
        hits.sort()
        return {
            "results": [
                {"author_id": author_id, "name": name} for name, author_id in hits[:limit]
            ]
        }

    @app.get("/papers/{paper_id}")
    def paper_details(paper_id: str):
        rec = index.require_paper(paper_id)
        return {
            "paper_id": rec.paper_id,
            "title": rec.title,
            "year": rec.year,
            "venue": rec.venue,
            "authors": [{"author_id": a.author_id, "name": a.name} for a in rec.authors],
            "citation_count": index.citation_count(paper_id),
            "dblp_url": dblp.publication_url(rec.title),
        }

    @app.post("/sessions", status_code=201)
    def create(body: CreateSessionBody):
        session_id = body.session_id or uuid.uuid4().hex
        if not SESSION_ID_RE.match(session_id):
            raise SchemaError("session_id must match [A-Za-z0-9_.-]{1,64}")
        with store.lock(session_id):
            if store.exists(session_id):
                raise PreconditionError(f"session {session_id} already exists")
            session = create_session(
                index,
                session_id,
                seed_ids=body.seeds,
                params=_params(body.params) if body.params else None,
                thresholds=_thresholds(body.thresholds) if body.thresholds else None,
                flags=SessionFlags(**body.flags.model_dump()) if body.flags else None,
            )
            if body.submitting_authors:
                session = set_submitting_authors(session, index, body.submitting_authors)
            store.put(session)
        return _session_view(session, index)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_view(store.get(session_id), index)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        with store.lock(session_id):
            store.delete(session_id)
        return {"deleted": session_id}

    @app.post("/sessions/{session_id}/seeds")
    def post_seeds(session_id: str, body: SeedsBody):
        def op(session: Session) -> Session:
            network = session.network
            for pid in body.paper_ids:
                network = add_seed(network, index, pid)
            return replace(session, network=network)

        return _session_view(mutate(session_id, op), index)

    @app.delete("/sessions/{session_id}/seeds/{paper_id}")
    def delete_seed(session_id: str, paper_id: str):
        def op(session: Session) -> Session:
            return replace(session, network=remove_seed(session.network, index, paper_id))

        return _session_view(mutate(session_id, op), index)

    @app.post("/sessions/{session_id}/selected-papers/{paper_id}")
    def post_selected(session_id: str, paper_id: str):
        def op(session: Session) -> Session:
            return replace(session, network=select_paper(session.network, index, paper_id))

        return _session_view(mutate(session_id, op), index)

    @app.delete("/sessions/{session_id}/selected-papers/{paper_id}")
    def delete_selected(session_id: str, paper_id: str):
        def op(session: Session) -> Session:
            return replace(session, network=deselect_paper(session.network, index, paper_id))

        return _session_view(mutate(session_id, op), index)

    @app.put("/sessions/{session_id}/submitting-authors")
    def put_submitting(session_id: str, body: SubmittingAuthorsBody):
        return _session_view(
            mutate(session_id, lambda s: set_submitting_authors(s, index, body.author_ids)), index
        )

    @app.post("/sessions/{session_id}/reviewers/{author_id}")
    def post_reviewer(session_id: str, author_id: str):
        return _session_view(
            mutate(session_id, lambda s: select_reviewer(s, index, author_id)), index
        )

    @app.delete("/sessions/{session_id}/reviewers/{author_id}")
    def delete_reviewer(session_id: str, author_id: str):
        return _session_view(mutate(session_id, lambda s: remove_reviewer(s, author_id)), index)

    @app.get("/sessions/{session_id}/candidates")
    def get_candidates(session_id: str):
        session = store.get(session_id)
        cands = candidate_reviewers(
            session.network, index, session.params, session.thresholds, session.flags.expand
        )
        out = []
        for cand in cands:
            role = role_of(session, index, cand.author_id)
            conflicted = role in CONFLICTED_ROLES
            if session.flags.hide_conflicted and conflicted:
                continue
            out.append(_candidate_view(cand, role, conflicted))
        return {"session_id": session_id, "candidates": out}

    @app.get("/sessions/{session_id}/paper-network")
    def get_paper_network(session_id: str):
        session = store.get(session_id)
        view = paper_network_view(session.network, index)
        return {
            "nodes": [
                {
                    "paper_id": n.paper_id,
                    "title": index.papers[n.paper_id].title,
                    "year": n.year,
                    "citation_count": n.citation_count,
                    "selected": n.selected,
                    "seed": n.paper_id in session.network.seeds,
                }
                for n in view.nodes
            ],
            "arcs": [{"source": a, "target": b} for a, b in view.arcs],
        }

    @app.get("/sessions/{session_id}/researcher-network")
    def get_researcher_network(session_id: str):
        session = store.get(session_id)
        net = researcher_network(
            session.network, index, session.params, session.thresholds, session.flags.expand
        )
        nodes = []
        hidden: set[str] = set()
        for cand in net.candidates:
            role = role_of(session, index, cand.author_id)
            conflicted = role in CONFLICTED_ROLES
            if session.flags.hide_conflicted and conflicted:
                hidden.add(cand.author_id)
                continue
            nodes.append({"kind": "candidate", **_candidate_view(cand, role, conflicted)})
        for stub in net.collaborators:
            role = role_of(session, index, stub.author_id)
            conflicted = role in CONFLICTED_ROLES
            if session.flags.hide_conflicted and conflicted:
                hidden.add(stub.author_id)
                continue
            nodes.append(
                {
                    "kind": "collaborator",
                    "author_id": stub.author_id,
                    "name": stub.name,
                    "role": role.value,
                    "conflicted": conflicted,
                    "dblp_url": dblp.author_url(stub.name),
                }
            )
        return {
            "nodes": nodes,
            "edges": [
                {
                    "a": e.a,
                    "b": e.b,
                    "common_total": e.common_total,
                    "common_visible": e.common_visible,
                    "common_visible_ids": sorted(
                        index.shared_papers(e.a, e.b) & session.network.visible
                    ),
                    "includes_selected": e.includes_selected,
                    "last_common_year": e.last_common_year,
                }
                for e in net.edges
                if e.a not in hidden and e.b not in hidden
            ],
        }

    @app.get("/sessions/{session_id}/reviewers/{author_id}/substitutes")
    def get_substitutes(
        session_id: str, author_id: str, limit: int = Query(default=DEFAULT_SUBSTITUTE_LIMIT, ge=0)
    ):
        session = store.get(session_id)
        subs = substitutes(session, index, author_id, limit)
        return {
            "for_reviewer": subs.for_reviewer,
            "entries": [
                {
                    "author_id": e.author_id,
                    "name": e.name,
                    "common_papers_with_reviewer": e.common_papers_with_reviewer,
                    "relevance": round(e.relevance, 6),
                }
                for e in subs.entries
            ],
        }

    @app.post("/sessions/{session_id}/reviewers/{author_id}/swap")
    def post_swap(
        session_id: str,
        author_id: str,
        body: SwapBody,
        limit: int = Query(default=DEFAULT_SUBSTITUTE_LIMIT, ge=0),
    ):
        return _session_view(
            mutate(session_id, lambda s: swap_reviewer(s, index, author_id, body.substitute_id, limit)),
            index,
        )

    @app.get("/sessions/{session_id}/export")
    def get_export(session_id: str, format: Literal["json", "text"] = "json"):
        session = store.get(session_id)
        document = export_reviewer_list(session, index)
        if format == "text":
            return PlainTextResponse(render_export_text(document))
        return JSONResponse(content=document, media_type="application/json")

    @app.put("/sessions/{session_id}/settings")
    def put_settings(session_id: str, body: SettingsBody):
        def op(session: Session) -> Session:
            return update_settings(
                session,
                index,
                params=_params(body.params) if body.params else None,
                thresholds=_thresholds(body.thresholds) if body.thresholds else None,
                flags=SessionFlags(**body.flags.model_dump()) if body.flags else None,
            )

        return _session_view(mutate(session_id, op), index)

    if static_dir:
        # API routes are registered first and win; everything else falls
        # through to the bundled web client.
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
