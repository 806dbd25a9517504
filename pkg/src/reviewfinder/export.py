"""Export of the final reviewer list with motivating papers and substitutes.

One document model, two renderings (structured JSON and plain text) that
carry identical content. Output is byte-deterministic for identical
(session, corpus) inputs.
"""

from __future__ import annotations

import json

from .corpus import CorpusIndex, PaperRecord
from .errors import PreconditionError
from .network import relevance_score
from .session import DEFAULT_SUBSTITUTE_LIMIT, Session, substitutes

EXPORT_SCHEMA_VERSION = 1


def reference_string(record: PaperRecord) -> str:
    if record.venue:
        return f"{record.title}. {record.venue}, {record.year}."
    return f"{record.title}. {record.year}."


def export_reviewer_list(
    session: Session, index: CorpusIndex, substitute_limit: int = DEFAULT_SUBSTITUTE_LIMIT
) -> dict:
    """Build the export document: per reviewer, the selected papers they
    authored (the justification) and their ranked substitutes."""
    if not session.selected_reviewers:
        raise PreconditionError("no reviewers selected; nothing to export")
    reviewers = []
    for reviewer_id in session.selected_reviewers:
        motivating = sorted(
            index.author_papers[reviewer_id] & session.network.selected,
            key=lambda pid: (index.papers[pid].year, index.papers[pid].title, pid),
        )
        subs = substitutes(session, index, reviewer_id, substitute_limit)
        reviewers.append(
            {
                "author_id": reviewer_id,
                "name": index.author_names[reviewer_id],
                "relevance": round(
                    relevance_score(reviewer_id, session.network, index, session.params), 6
                ),
                "motivating_papers": [
                    {
                        "paper_id": pid,
                        "title": index.papers[pid].title,
                        "venue": index.papers[pid].venue,
                        "year": index.papers[pid].year,
                        "reference": reference_string(index.papers[pid]),
                    }
                    for pid in motivating
                ],
                "substitutes": [
                    {
                        "author_id": e.author_id,
                        "name": e.name,
                        "common_papers_with_reviewer": e.common_papers_with_reviewer,
                        "relevance": round(e.relevance, 6),
                    }
                    for e in subs.entries
                ],
            }
        )
    return {
        "schema_version": EXPORT_SCHEMA_VERSION,
        "session_id": session.session_id,
        "submitting_authors": [
            {"author_id": aid, "name": index.author_names[aid]}
            for aid in sorted(session.submitting_authors, key=lambda a: (index.author_names[a], a))
        ],
        "reviewers": reviewers,
    }


def render_export_json(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_export_text(document: dict) -> str:
    """Plain-text rendering: reviewer heading, numbered bibliography, then a
    Substitutes block per reviewer."""
    lines = ["Selected reviewers", "=================="]
    for i, reviewer in enumerate(document["reviewers"], start=1):
        lines.append("")
        lines.append(f"{i}. {reviewer['name']}")
        lines.append("   Motivating papers:")
        for j, paper in enumerate(reviewer["motivating_papers"], start=1):
            lines.append(f"     [{j}] {paper['reference']}")
        lines.append("   Substitutes:")
        if not reviewer["substitutes"]:
            lines.append("     (none)")
        for sub in reviewer["substitutes"]:
            n = sub["common_papers_with_reviewer"]
            noun = "paper" if n == 1 else "papers"
            lines.append(
                f"     - {sub['name']} ({n} {noun} in common, relevance {sub['relevance']:.2f})"
            )
    lines.append("")
    return "\n".join(lines)
