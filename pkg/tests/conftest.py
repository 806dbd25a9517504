from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # make `oracles` importable

from reviewfinder.corpus import AuthorRef, CorpusIndex, IngestFilter, PaperRecord, build_index, ingest_file

FIXTURE_PATH = Path(__file__).parent / "data" / "corpus_fixture.ndjson"
FIXTURE_FILTER = IngestFilter(year_min=1995, year_max=2018)

# Small pool so random corpora produce name ties, exercising id tie-breaks.
_NAME_POOL = (
    "Vera Lund",
    "Tomas Reis",
    "Sana Iqbal",
    "Rok Zupan",
    "Petra Voigt",
    "Omar Haddad",
    "Nina Sorel",
    "Milo Aber",
)


@pytest.fixture(scope="session")
def fixture_index() -> CorpusIndex:
    return ingest_file(FIXTURE_PATH, FIXTURE_FILTER)


def random_index(rng: random.Random, max_papers: int = 30, max_authors: int = 20) -> CorpusIndex:
    """A random cleaned corpus: every paper has a year and >= 1 author."""
    n_papers = rng.randint(1, max_papers)
    n_authors = rng.randint(1, max_authors)
    authors = [
        AuthorRef(f"a{i:02d}", rng.choice(_NAME_POOL)) for i in range(n_authors)
    ]
    records = []
    pids = [f"p{i:02d}" for i in range(n_papers)]
    for i, pid in enumerate(pids):
        team = rng.sample(authors, rng.randint(1, min(4, n_authors)))
        others = pids[:i] + pids[i + 1 :]
        cited = rng.sample(others, min(len(others), rng.randint(0, 4)))
        records.append(
            PaperRecord(
                paper_id=pid,
                title=f"Study {i:02d}",
                year=rng.randint(1995, 2020),
                venue=rng.choice(("VenueA", "VenueB")),
                authors=tuple(team),
                out_citations=tuple(cited),
            )
        )
    return build_index(records)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    status = "PASS" if report.passed else "FAIL"
    name = report.nodeid.split("::")[-1]
    sys.stderr.write(f"\nacceptance {status}: {name}\n")
