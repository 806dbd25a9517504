from __future__ import annotations

import json
import re
import subprocess
import sys
import time
from pathlib import Path

import httpx
import pytest

from reviewfinder.cli import main

from conftest import FIXTURE_PATH

GOLDEN_DIR = Path(__file__).parent / "golden"


def run_cli(*argv: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "reviewfinder", *argv],
        capture_output=True,
        text=True,
        timeout=120,
    )


@pytest.fixture(scope="module")
def snapshot(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("snap") / "fixture.snapshot.json"
    code = main(
        [
            "ingest",
            "--corpus", str(FIXTURE_PATH),
            "--out", str(out),
            "--year-min", "1995",
            "--year-max", "2018",
        ]
    )
    assert code == 0
    return out


def test_ingest_stats_line(tmp_path, capsys):
    out = tmp_path / "snap.json"
    code = main(
        [
            "ingest",
            "--corpus", str(FIXTURE_PATH),
            "--out", str(out),
            "--year-min", "1995",
            "--year-max", "2018",
        ]
    )
    captured = capsys.readouterr().out
    assert code == 0
    assert "9 papers, 11 citations, 14 authors" in captured
    assert "2 non-papers" in captured and "1 filtered" in captured
    assert out.exists()


def test_ingest_config_file(tmp_path, capsys):
    config = tmp_path / "ingest.json"
    config.write_text(json.dumps({"year_min": 1995, "year_max": 2018}), encoding="utf-8")
    code = main(
        ["ingest", "--corpus", str(FIXTURE_PATH), "--out", str(tmp_path / "s.json"),
         "--config", str(config)]
    )
    assert code == 0
    assert "9 papers, 11 citations, 14 authors" in capsys.readouterr().out


def test_ingest_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.ndjson"
    empty.write_text("", encoding="utf-8")
    code = main(["ingest", "--corpus", str(empty), "--out", str(tmp_path / "s.json")])
    assert code == 0
    assert "0 papers, 0 citations, 0 authors" in capsys.readouterr().out


def test_ingest_malformed_line(tmp_path, capsys):
    bad = tmp_path / "bad.ndjson"
    bad.write_text('{"id": "a", "title": "T", "year": 2000, "authors": []}\n{oops\n', encoding="utf-8")
    code = main(["ingest", "--corpus", str(bad), "--out", str(tmp_path / "s.json")])
    assert code == 1
    assert "line 2" in capsys.readouterr().err


def test_missing_corpus_is_usage_error():
    result = run_cli("serve", "--corpus", "/nonexistent/corpus.ndjson")
    assert result.returncode == 2
    result = run_cli("ingest", "--corpus", "/nonexistent.ndjson", "--out", "/tmp/x.json")
    assert result.returncode == 2


def test_find_golden_output(snapshot, tmp_path, capsys):
    args = [
        "find",
        "--snapshot", str(snapshot),
        "--seed", "PolyCube-Maps",  # resolved by exact title
        "--seed", "p04",
        "--submitting", "Lior Maas",  # resolved by exact name
        "-k", "2",
    ]
    code = main(args)
    assert code == 0
    output = capsys.readouterr().out
    assert output == (GOLDEN_DIR / "find_k2.txt").read_text(encoding="utf-8")
    # byte-identical on a second run
    main(args)
    assert capsys.readouterr().out == output


def test_find_greedy_skips_conflicted(snapshot, capsys):
    # Top candidate a01 wins; a02/a03/a04 all share p01 with a01 and are
    # skipped; a08 is the next conflict-free candidate.
    code = main(
        ["find", "--snapshot", str(snapshot), "--seed", "p01", "--seed", "p04",
         "--submitting", "a12", "-k", "2", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r["author_id"] for r in doc["reviewers"]] == ["a01", "a08"]


def test_find_k_zero_lists_candidates(snapshot, capsys):
    code = main(
        ["find", "--snapshot", str(snapshot), "--seed", "p01", "--seed", "p04",
         "--submitting", "a12", "-k", "0", "--format", "json"]
    )
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert "reviewers" not in doc
    assert [c["author_id"] for c in doc["candidates"]] == ["a01", "a02", "a03", "a04", "a08", "a09"]
    assert all(c["conflicted"] is False for c in doc["candidates"])


def test_find_unresolvable_seed(snapshot, capsys):
    code = main(["find", "--snapshot", str(snapshot), "--seed", "No Such Paper", "-k", "1"])
    assert code == 1
    assert "cannot resolve seed" in capsys.readouterr().err


def test_find_output_file(snapshot, tmp_path):
    out = tmp_path / "reviewers.txt"
    code = main(
        ["find", "--snapshot", str(snapshot), "--seed", "p01", "--submitting", "a12",
         "-k", "1", "--out", str(out)]
    )
    assert code == 0
    assert "Ada Moretti" in out.read_text(encoding="utf-8")


def _wait_for(url: str, timeout: float = 20.0) -> dict:
    deadline = time.time() + timeout
    while True:
        try:
            return httpx.get(url, timeout=2.0).json()
        except Exception:
            if time.time() > deadline:
                raise
            time.sleep(0.2)


def test_serve_ephemeral_port_and_snapshot_equivalence(snapshot, tmp_path):
    # Snapshot-backed and fresh-ingest services must answer identically.
    unfiltered_snapshot = tmp_path / "unfiltered.snapshot.json"
    assert main(["ingest", "--corpus", str(FIXTURE_PATH), "--out", str(unfiltered_snapshot)]) == 0

    def spawn(source_args: list[str]) -> tuple[subprocess.Popen, int]:
        proc = subprocess.Popen(
            [sys.executable, "-m", "reviewfinder", "serve", *source_args, "--port", "0",
             "--session-dir", str(tmp_path / f"sess{len(source_args)}")],
            stdout=subprocess.PIPE,
            text=True,
        )
        line = proc.stdout.readline()
        match = re.search(r"http://[\d.]+:(\d+)", line)
        assert match, f"no port announced: {line!r}"
        return proc, int(match.group(1))

    proc1, port1 = spawn(["--snapshot", str(unfiltered_snapshot)])
    proc2, port2 = spawn(["--corpus", str(FIXTURE_PATH)])
    try:
        health1 = _wait_for(f"http://127.0.0.1:{port1}/health")
        health2 = _wait_for(f"http://127.0.0.1:{port2}/health")
        assert health1 == health2
        for url in ("/papers/search?q=polycube", "/papers/p01"):
            r1 = httpx.get(f"http://127.0.0.1:{port1}{url}").json()
            r2 = httpx.get(f"http://127.0.0.1:{port2}{url}").json()
            assert r1 == r2
    finally:
        proc1.terminate()
        proc2.terminate()
        proc1.wait(timeout=10)
        proc2.wait(timeout=10)
