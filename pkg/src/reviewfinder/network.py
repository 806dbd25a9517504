"""The user-built paper network and reviewer derivation.

The network is a value: every operation returns a new immutable state, and
the visible set is always reconstructible from the selected set alone
(selected papers plus their in- and out-citations). Candidate reviewers,
relevance scores, career timelines, and the co-authorship graph are all
derived views over (state, index).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .corpus import CorpusIndex
from .errors import NotFoundError, PreconditionError


@dataclass(frozen=True)
class RelevanceParams:
    """Weights for selected vs non-selected visible papers; they sum to one."""

    alpha: float = 0.7
    beta: float = 0.3

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("relevance weights must be non-negative")
        if abs(self.alpha + self.beta - 1.0) > 1e-9:
            raise ValueError(f"alpha + beta must equal 1, got {self.alpha + self.beta}")


@dataclass(frozen=True)
class Thresholds:
    """Candidate and conflict tuning. ``None`` disables an expiration.

    ``reference_year`` anchors all age computations; when None the corpus
    maximum year is used (never the wall clock).
    """

    min_selected_papers: int = 1
    researcher_expiration_years: int | None = None
    conflict_expiration_years: int | None = None
    reference_year: int | None = None

    def __post_init__(self):
        if self.min_selected_papers < 1:
            raise ValueError("min_selected_papers must be >= 1")
        for name in ("researcher_expiration_years", "conflict_expiration_years"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be >= 0")

    def effective_reference_year(self, index: CorpusIndex) -> int:
        if self.reference_year is not None:
            return self.reference_year
        return index.max_year or 0


@dataclass(frozen=True)
class PaperNetworkState:
    """Seeds are born selected; visible is derived, never edited directly."""

    seeds: tuple[str, ...] = ()
    selected: frozenset[str] = frozenset()
    visible: frozenset[str] = frozenset()


def empty_network() -> PaperNetworkState:
    return PaperNetworkState()


def _neighborhood(index: CorpusIndex, paper_id: str) -> set[str]:
    return {paper_id} | index.in_citations[paper_id] | index.out_citations[paper_id]


def rebuild_network(index: CorpusIndex, seeds: tuple[str, ...], selected: Iterable[str]) -> PaperNetworkState:
    selected_set = frozenset(selected)
    visible: set[str] = set()
    for pid in selected_set:
        visible |= _neighborhood(index, pid)
    return PaperNetworkState(seeds=seeds, selected=selected_set, visible=frozenset(visible))


def init_network(index: CorpusIndex, seed_ids: Iterable[str]) -> PaperNetworkState:
    """Start a network from seed papers; duplicates collapse."""
    seeds: list[str] = []
    for pid in seed_ids:
        index.require_paper(pid)
        if pid not in seeds:
            seeds.append(pid)
    if not seeds:
        raise PreconditionError("at least one seed paper is required")
    return rebuild_network(index, tuple(seeds), seeds)


def add_seed(state: PaperNetworkState, index: CorpusIndex, paper_id: str) -> PaperNetworkState:
    """Add a key paper found by title search; it becomes seed and selected."""
    index.require_paper(paper_id)
    if paper_id in state.seeds:
        return state
    return rebuild_network(index, state.seeds + (paper_id,), state.selected | {paper_id})


def remove_seed(state: PaperNetworkState, index: CorpusIndex, paper_id: str) -> PaperNetworkState:
    if paper_id not in state.seeds:
        raise PreconditionError(f"{paper_id} is not a seed paper")
    seeds = tuple(pid for pid in state.seeds if pid != paper_id)
    return rebuild_network(index, seeds, state.selected - {paper_id})


def select_paper(state: PaperNetworkState, index: CorpusIndex, paper_id: str) -> PaperNetworkState:
    """Mark a visible paper as key; its citations join the visible set."""
    if paper_id not in state.visible:
        index.require_paper(paper_id)
        raise PreconditionError(f"{paper_id} is not in the visible network")
    if paper_id in state.selected:
        return state
    return rebuild_network(index, state.seeds, state.selected | {paper_id})


def deselect_paper(state: PaperNetworkState, index: CorpusIndex, paper_id: str) -> PaperNetworkState:
    """Unmark a key paper; papers reachable only through it drop out."""
    if paper_id in state.seeds:
        raise PreconditionError(f"{paper_id} is a seed; remove it as a seed instead")
    if paper_id not in state.selected:
        raise PreconditionError(f"{paper_id} is not selected")
    return rebuild_network(index, state.seeds, state.selected - {paper_id})


def relevance_score(
    author_id: str, state: PaperNetworkState, index: CorpusIndex, params: RelevanceParams
) -> float:
    """alpha * |selected papers by author| + beta * |visible-unselected ones|."""
    index.require_author(author_id)
    papers = index.author_papers[author_id]
    n_selected = len(papers & state.selected)
    n_unselected = len(papers & (state.visible - state.selected))
    return params.alpha * n_selected + params.beta * n_unselected


@dataclass(frozen=True)
class ReviewerCandidate:
    author_id: str
    name: str
    relevance: float
    selected_paper_ids: frozenset[str]
    visible_paper_ids: frozenset[str]
    last_active_year: int
    career: tuple[tuple[int, str], ...]


def _make_candidate(
    author_id: str, state: PaperNetworkState, index: CorpusIndex, params: RelevanceParams
) -> ReviewerCandidate:
    papers = index.author_papers[author_id]
    selected = papers & state.selected
    visible = papers & state.visible
    career = tuple(sorted((index.papers[p].year, p) for p in papers))
    return ReviewerCandidate(
        author_id=author_id,
        name=index.author_names[author_id],
        relevance=params.alpha * len(selected) + params.beta * len(visible - selected),
        selected_paper_ids=selected,
        visible_paper_ids=visible,
        last_active_year=career[-1][0],
        career=career,
    )


def candidate_reviewers(
    state: PaperNetworkState,
    index: CorpusIndex,
    params: RelevanceParams,
    thresholds: Thresholds,
    expand: bool = False,
) -> list[ReviewerCandidate]:
    """Authors of selected papers (or of all visible papers when ``expand``),
    filtered by productivity and activity, ordered by relevance.

    The productivity floor counts authored *selected* papers, so it only
    applies in non-expanded mode. Ties order by name, then author id.
    """
    base_papers = state.visible if expand else state.selected
    author_ids = {a.author_id for pid in base_papers for a in index.papers[pid].authors}
    reference_year = thresholds.effective_reference_year(index)
    out = []
    for author_id in author_ids:
        cand = _make_candidate(author_id, state, index, params)
        if not expand and len(cand.selected_paper_ids) < thresholds.min_selected_papers:
            continue
        if (
            thresholds.researcher_expiration_years is not None
            and reference_year - cand.last_active_year > thresholds.researcher_expiration_years
        ):
            continue
        out.append(cand)
    out.sort(key=lambda c: (-c.relevance, c.name, c.author_id))
    return out


def coauthors(author_id: str, index: CorpusIndex, thresholds: Thresholds) -> frozenset[str]:
    """Researchers sharing a non-expired paper with ``author_id``.

    A shared paper is expired when it is older than the conflict expiration
    relative to the reference year; with no expiration set this is the raw
    all-time co-authorship set.
    """
    index.require_author(author_id)
    horizon = thresholds.conflict_expiration_years
    reference_year = thresholds.effective_reference_year(index)
    result = set()
    for (a, b), shared in index.coauthor_edges.items():
        if author_id == a:
            other = b
        elif author_id == b:
            other = a
        else:
            continue
        if horizon is not None:
            last = max(index.papers[p].year for p in shared)
            if reference_year - last > horizon:
                continue
        result.add(other)
    return frozenset(result)


@dataclass(frozen=True)
class ResearcherEdge:
    a: str
    b: str
    common_total: int
    common_visible: int
    includes_selected: bool
    last_common_year: int


@dataclass(frozen=True)
class CollaboratorStub:
    author_id: str
    name: str


@dataclass(frozen=True)
class ResearcherNetwork:
    candidates: tuple[ReviewerCandidate, ...]
    collaborators: tuple[CollaboratorStub, ...]
    edges: tuple[ResearcherEdge, ...]


def researcher_network(
    state: PaperNetworkState,
    index: CorpusIndex,
    params: RelevanceParams,
    thresholds: Thresholds,
    expand: bool = False,
) -> ResearcherNetwork:
    """Candidates plus their non-expired co-authors, with co-authorship edges.

    Edges connect any two included researchers whose co-authorship has not
    expired; counts cover the whole corpus and the current visible network.
    """
    cands = candidate_reviewers(state, index, params, thresholds, expand)
    cand_ids = {c.author_id for c in cands}
    collab_ids: set[str] = set()
    for c in cands:
        collab_ids |= coauthors(c.author_id, index, thresholds)
    collab_ids -= cand_ids
    included = cand_ids | collab_ids

    horizon = thresholds.conflict_expiration_years
    reference_year = thresholds.effective_reference_year(index)
    edges = []
    for (a, b), shared in sorted(index.coauthor_edges.items()):
        if a not in included or b not in included:
            continue
        last = max(index.papers[p].year for p in shared)
        if horizon is not None and reference_year - last > horizon:
            continue
        edges.append(
            ResearcherEdge(
                a=a,
                b=b,
                common_total=len(shared),
                common_visible=len(shared & state.visible),
                includes_selected=bool(shared & state.selected),
                last_common_year=last,
            )
        )
    collaborators = sorted(
        (CollaboratorStub(aid, index.author_names[aid]) for aid in collab_ids),
        key=lambda s: (s.name, s.author_id),
    )
    return ResearcherNetwork(tuple(cands), tuple(collaborators), tuple(edges))


@dataclass(frozen=True)
class PaperNode:
    paper_id: str
    year: int
    citation_count: int
    selected: bool


@dataclass(frozen=True)
class PaperNetworkView:
    nodes: tuple[PaperNode, ...]
    arcs: tuple[tuple[str, str], ...]  # (citing, cited), both visible


def paper_network_view(state: PaperNetworkState, index: CorpusIndex) -> PaperNetworkView:
    """Visible papers with whole-corpus citation counts and in-network arcs."""
    nodes = sorted(
        (
            PaperNode(
                paper_id=pid,
                year=index.papers[pid].year,
                citation_count=len(index.in_citations[pid]),
                selected=pid in state.selected,
            )
            for pid in state.visible
        ),
        key=lambda n: (n.year, n.paper_id),
    )
    arcs = sorted(
        (citing, cited)
        for citing in state.visible
        for cited in index.out_citations[citing]
        if cited in state.visible
    )
    return PaperNetworkView(tuple(nodes), tuple(arcs))
