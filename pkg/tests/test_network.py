from __future__ import annotations

import random

import pytest

from reviewfinder.errors import NotFoundError, PreconditionError
from reviewfinder.network import (
    PaperNetworkState,
    RelevanceParams,
    Thresholds,
    add_seed,
    candidate_reviewers,
    coauthors,
    deselect_paper,
    init_network,
    paper_network_view,
    relevance_score,
    remove_seed,
    researcher_network,
    select_paper,
)

from conftest import random_index
from oracles import (
    candidate_ids_oracle,
    coauthors_oracle,
    relevance_oracle,
    shared_papers_oracle,
    visible_oracle,
)

DEFAULTS = RelevanceParams()
NO_LIMITS = Thresholds()


@pytest.fixture()
def demo_state(fixture_index):
    # Seed p01, then grow through p02 to p06: the state used across tests.
    state = init_network(fixture_index, ["p01"])
    state = select_paper(state, fixture_index, "p02")
    return select_paper(state, fixture_index, "p06")


def test_init_network_seed_neighborhood(fixture_index):
    state = init_network(fixture_index, ["p01"])
    assert state.seeds == ("p01",)
    assert state.selected == frozenset({"p01"})
    assert state.visible == frozenset({"p01", "p02", "p03", "p04", "p09"})


def test_init_network_isolated_seed():
    rng = random.Random(0)
    index = random_index(rng, max_papers=1)
    (pid,) = index.papers
    state = init_network(index, [pid])
    assert state.visible == frozenset({pid})


def test_init_network_duplicates_collapse(fixture_index):
    once = init_network(fixture_index, ["p01"])
    twice = init_network(fixture_index, ["p01", "p01"])
    assert once == twice


def test_init_network_errors(fixture_index):
    with pytest.raises(NotFoundError, match="p99"):
        init_network(fixture_index, ["p01", "p99"])
    with pytest.raises(PreconditionError):
        init_network(fixture_index, [])


def test_select_paper_grows_visible(fixture_index, demo_state):
    assert demo_state.selected == frozenset({"p01", "p02", "p06"})
    assert demo_state.visible == frozenset({"p01", "p02", "p03", "p04", "p06", "p07", "p09"})
    assert demo_state.visible == visible_oracle(fixture_index, set(demo_state.selected))


def test_select_paper_requires_visibility(fixture_index):
    state = init_network(fixture_index, ["p01"])
    with pytest.raises(PreconditionError):
        select_paper(state, fixture_index, "p08")  # exists, not visible
    with pytest.raises(NotFoundError):
        select_paper(state, fixture_index, "nope")


def test_select_already_selected_is_noop(fixture_index, demo_state):
    assert select_paper(demo_state, fixture_index, "p02") == demo_state


def test_select_deselect_round_trip(fixture_index):
    state = init_network(fixture_index, ["p01"])
    grown = select_paper(state, fixture_index, "p02")
    assert deselect_paper(grown, fixture_index, "p02") == state


def test_deselect_prunes_leaf(fixture_index, demo_state):
    # p07 is reachable only through p06.
    shrunk = deselect_paper(demo_state, fixture_index, "p06")
    assert "p07" not in shrunk.visible
    assert shrunk.visible == visible_oracle(fixture_index, set(shrunk.selected))


def test_deselect_keeps_papers_cited_elsewhere(fixture_index, demo_state):
    shrunk = deselect_paper(demo_state, fixture_index, "p02")
    assert "p02" in shrunk.visible  # p01 still cites it
    assert "p02" not in shrunk.selected


def test_deselect_errors(fixture_index, demo_state):
    with pytest.raises(PreconditionError, match="seed"):
        deselect_paper(demo_state, fixture_index, "p01")
    with pytest.raises(PreconditionError):
        deselect_paper(demo_state, fixture_index, "p03")  # visible, not selected


def test_remove_seed(fixture_index):
    state = init_network(fixture_index, ["p01"])
    state = select_paper(state, fixture_index, "p02")
    removed = remove_seed(state, fixture_index, "p01")
    assert removed.seeds == ()
    assert removed.selected == frozenset({"p02"})
    assert "p01" in removed.visible  # p02 is cited by p01
    assert removed.visible == visible_oracle(fixture_index, {"p02"})
    with pytest.raises(PreconditionError):
        remove_seed(removed, fixture_index, "p01")


def test_remove_last_seed_leaves_valid_state(fixture_index):
    state = init_network(fixture_index, ["p05"])
    removed = remove_seed(state, fixture_index, "p05")
    assert removed.selected == frozenset()
    assert removed.visible == frozenset()


def test_add_seed(fixture_index):
    state = init_network(fixture_index, ["p01"])
    state = add_seed(state, fixture_index, "p08")  # not visible before: seeds bypass visibility
    assert state.seeds == ("p01", "p08")
    assert "p08" in state.selected
    assert state.visible == visible_oracle(fixture_index, set(state.selected))
    assert add_seed(state, fixture_index, "p08") == state


def test_relevance_scores_on_fixture(fixture_index, demo_state):
    # a01 authored p01, p06 (selected) and p09 (visible, unselected).
    score = relevance_score("a01", demo_state, fixture_index, DEFAULTS)
    assert abs(score - 1.7) <= 1e-12
    assert abs(relevance_score("a05", demo_state, fixture_index, DEFAULTS) - 1.4) <= 1e-12
    assert abs(relevance_score("a02", demo_state, fixture_index, DEFAULTS) - 1.0) <= 1e-12
    assert abs(relevance_score("a06", demo_state, fixture_index, DEFAULTS) - 0.7) <= 1e-12
    # a10's papers (p05) are outside the visible network.
    assert relevance_score("a10", demo_state, fixture_index, DEFAULTS) == 0.0
    with pytest.raises(NotFoundError):
        relevance_score("a99", demo_state, fixture_index, DEFAULTS)


def test_relevance_degenerate_weights(fixture_index, demo_state):
    alpha_only = RelevanceParams(alpha=1.0, beta=0.0)
    assert relevance_score("a01", demo_state, fixture_index, alpha_only) == 2.0


def test_relevance_params_validation():
    with pytest.raises(ValueError):
        RelevanceParams(alpha=0.7, beta=0.4)
    with pytest.raises(ValueError):
        RelevanceParams(alpha=-0.1, beta=1.1)


def test_candidate_order_and_content(fixture_index, demo_state):
    cands = candidate_reviewers(demo_state, fixture_index, DEFAULTS, NO_LIMITS)
    assert [c.author_id for c in cands] == ["a01", "a05", "a02", "a03", "a04", "a06"]
    a01 = cands[0]
    assert a01.selected_paper_ids == frozenset({"p01", "p06"})
    assert a01.visible_paper_ids == frozenset({"p01", "p06", "p09"})
    assert a01.last_active_year == 2012
    assert a01.career == ((2004, "p01"), (2007, "p09"), (2012, "p06"))


def test_candidates_empty_without_selection(fixture_index):
    state = PaperNetworkState()
    assert candidate_reviewers(state, fixture_index, DEFAULTS, NO_LIMITS) == []


def test_productivity_threshold(fixture_index, demo_state):
    th = Thresholds(min_selected_papers=2)
    cands = candidate_reviewers(demo_state, fixture_index, DEFAULTS, th)
    assert [c.author_id for c in cands] == ["a01", "a05"]


def test_productivity_threshold_monotonic(fixture_index, demo_state):
    previous = None
    for floor in (1, 2, 3, 4):
        ids = {
            c.author_id
            for c in candidate_reviewers(
                demo_state, fixture_index, DEFAULTS, Thresholds(min_selected_papers=floor)
            )
        }
        if previous is not None:
            assert ids <= previous
        previous = ids


def test_researcher_expiration(fixture_index, demo_state):
    th = Thresholds(researcher_expiration_years=10)  # reference year = 2018
    cands = candidate_reviewers(demo_state, fixture_index, DEFAULTS, th)
    # a03/a04 last active 2004, a06 last active 2003: all expired.
    assert [c.author_id for c in cands] == ["a01", "a05", "a02"]


def test_expand_includes_visible_authors_and_skips_productivity(fixture_index, demo_state):
    th = Thresholds(min_selected_papers=2)
    cands = candidate_reviewers(demo_state, fixture_index, DEFAULTS, th, expand=True)
    ids = [c.author_id for c in cands]
    assert ids == ["a01", "a05", "a02", "a03", "a04", "a06", "a07", "a08", "a09", "a11", "a14"]
    by_id = {c.author_id: c for c in cands}
    assert abs(by_id["a07"].relevance - 0.3) <= 1e-12
    # researcher expiration still applies in expanded mode
    active = candidate_reviewers(
        demo_state, fixture_index, DEFAULTS, Thresholds(researcher_expiration_years=5), expand=True
    )
    assert "a03" not in {c.author_id for c in active}


def test_coauthors_expiration(fixture_index):
    assert coauthors("a06", fixture_index, NO_LIMITS) == frozenset({"a05"})
    # shared paper p02 is from 2003; 15 years before the 2018 reference
    assert coauthors("a06", fixture_index, Thresholds(conflict_expiration_years=5)) == frozenset()
    assert coauthors("a02", fixture_index, NO_LIMITS) == frozenset({"a01", "a03", "a04", "a07"})
    assert coauthors("a02", fixture_index, Thresholds(conflict_expiration_years=9)) == frozenset({"a07"})
    assert coauthors("a11", fixture_index, NO_LIMITS) == frozenset()  # sole author
    with pytest.raises(NotFoundError):
        coauthors("a99", fixture_index, NO_LIMITS)


def test_coauthors_symmetry_and_monotonicity(fixture_index):
    authors = sorted(fixture_index.author_names)
    for horizon in (None, 0, 3, 9, 20):
        th = Thresholds(conflict_expiration_years=horizon)
        sets = {a: coauthors(a, fixture_index, th) for a in authors}
        for a in authors:
            for b in sets[a]:
                assert a in sets[b]
    smaller = {a: coauthors(a, fixture_index, Thresholds(conflict_expiration_years=3)) for a in authors}
    larger = {a: coauthors(a, fixture_index, Thresholds(conflict_expiration_years=12)) for a in authors}
    for a in authors:
        assert smaller[a] <= larger[a]


def test_researcher_network_demo(fixture_index, demo_state):
    net = researcher_network(demo_state, fixture_index, DEFAULTS, NO_LIMITS)
    assert [c.author_id for c in net.candidates] == ["a01", "a05", "a02", "a03", "a04", "a06"]
    assert {s.author_id for s in net.collaborators} == {"a07", "a14"}
    edges = {(e.a, e.b): e for e in net.edges}
    assert set(edges) == {
        ("a01", "a02"), ("a01", "a03"), ("a01", "a04"), ("a02", "a03"), ("a02", "a04"),
        ("a03", "a04"), ("a05", "a06"), ("a02", "a07"), ("a01", "a05"), ("a01", "a14"),
    }
    blue = edges[("a01", "a02")]
    assert blue.includes_selected and blue.common_total == 1 and blue.common_visible == 1
    grey = edges[("a02", "a07")]  # p03 is visible but not selected
    assert not grey.includes_selected
    assert grey.common_visible == 1 and grey.last_common_year == 2009


def test_researcher_network_single_author_paper():
    rng = random.Random(3)
    while True:
        index = random_index(rng, max_papers=6, max_authors=6)
        solo = [p for p in index.papers.values() if len(p.authors) == 1]
        if solo:
            break
    state = init_network(index, [solo[0].paper_id])
    # restrict to the solo paper only
    state = PaperNetworkState(state.seeds, state.selected, state.visible)
    net = researcher_network(state, index, DEFAULTS, Thresholds(conflict_expiration_years=0, reference_year=10**6))
    assert len(net.candidates) == 1
    assert net.edges == ()


def test_researcher_network_edges_respect_expiration(fixture_index, demo_state):
    th = Thresholds(conflict_expiration_years=9)  # keeps only pairs from 2009+
    net = researcher_network(demo_state, fixture_index, DEFAULTS, th)
    assert {(e.a, e.b) for e in net.edges} == {("a01", "a05"), ("a02", "a07")}


def test_paper_network_view(fixture_index, demo_state):
    view = paper_network_view(demo_state, fixture_index)
    assert [n.paper_id for n in view.nodes] == ["p02", "p01", "p09", "p03", "p06", "p04", "p07"]
    assert all(
        n.citation_count == fixture_index.citation_count(n.paper_id) for n in view.nodes
    )
    assert {n.paper_id for n in view.nodes if n.selected} == {"p01", "p02", "p06"}
    assert set(view.arcs) == {
        ("p01", "p02"), ("p03", "p01"), ("p03", "p02"), ("p04", "p01"), ("p04", "p03"),
        ("p06", "p02"), ("p07", "p04"), ("p07", "p06"), ("p09", "p01"),
    }
    visible = {n.paper_id for n in view.nodes}
    for a, b in view.arcs:
        assert a in visible and b in visible


def test_random_states_match_oracles():
    rng = random.Random(42)
    for _ in range(30):
        index = random_index(rng)
        pids = sorted(index.papers)
        state = init_network(index, rng.sample(pids, min(len(pids), rng.randint(1, 3))))
        for _ in range(12):
            action = rng.random()
            if action < 0.5 and (state.visible - state.selected):
                pid = rng.choice(sorted(state.visible - state.selected))
                state = select_paper(state, index, pid)
            elif action < 0.75 and (state.selected - set(state.seeds)):
                pid = rng.choice(sorted(state.selected - set(state.seeds)))
                state = deselect_paper(state, index, pid)
            elif state.seeds:
                state = remove_seed(state, index, rng.choice(state.seeds))
            assert state.visible == visible_oracle(index, set(state.selected))
            assert set(state.seeds) <= state.selected <= state.visible
        # relevance + candidate sets against the brute-force recount
        cands = candidate_reviewers(state, index, DEFAULTS, NO_LIMITS)
        assert {c.author_id for c in cands} == candidate_ids_oracle(index, set(state.selected))
        for author_id in sorted(index.author_names):
            expected = relevance_oracle(
                index, author_id, set(state.selected), set(state.visible), 0.7, 0.3
            )
            assert abs(relevance_score(author_id, state, index, DEFAULTS) - expected) <= 1e-12
        # pairwise edge counts against direct intersection
        net = researcher_network(state, index, DEFAULTS, NO_LIMITS)
        for e in net.edges:
            shared = shared_papers_oracle(index, e.a, e.b)
            assert e.common_total == len(shared)
            assert e.common_visible == len(shared & state.visible)
            assert e.includes_selected == bool(shared & state.selected)
        # conflict sets against the oracle at a random horizon
        horizon = rng.choice([None, 0, 2, 5, 50])
        th = Thresholds(conflict_expiration_years=horizon)
        for author_id in sorted(index.author_names):
            assert coauthors(author_id, index, th) == coauthors_oracle(
                index, author_id, th.effective_reference_year(index), horizon
            )


def test_candidate_ordering_key_and_stability():
    # name ties (shared pool) must break by author_id; recomputation is stable
    rng = random.Random(99)
    for _ in range(15):
        index = random_index(rng)
        pids = sorted(index.papers)
        state = init_network(index, rng.sample(pids, min(len(pids), 2)))
        first = candidate_reviewers(state, index, DEFAULTS, NO_LIMITS)
        second = candidate_reviewers(state, index, DEFAULTS, NO_LIMITS)
        assert first == second
        keys = [(-c.relevance, c.name, c.author_id) for c in first]
        assert keys == sorted(keys)


def test_thresholds_validation():
    with pytest.raises(ValueError):
        Thresholds(min_selected_papers=0)
    with pytest.raises(ValueError):
        Thresholds(conflict_expiration_years=-1)
    with pytest.raises(ValueError):
        Thresholds(researcher_expiration_years=-5)
