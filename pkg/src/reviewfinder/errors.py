"""Domain error hierarchy shared by the engine, the HTTP API, and the CLI.

Every error carries a stable machine-readable ``code`` and an optional
structured ``details`` payload (e.g. the conflicting author pairs), so API
clients can react without parsing messages.
"""

from __future__ import annotations

from collections.abc import Sequence


class ReviewFinderError(Exception):
    """Base class for all domain errors."""

    code = "error"
    http_status = 400

    def __init__(self, message: str, *, details: dict | None = None):
        super().__init__(message)
        self.message = message
        self.details = details if details is not None else {}

    def to_payload(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


class NotFoundError(ReviewFinderError):
    """A paper, author, or session id does not exist."""

    code = "not_found"
    http_status = 404


class PreconditionError(ReviewFinderError):
    """The operation is not applicable to the current state."""

    code = "precondition_failed"
    http_status = 400


class ConflictError(ReviewFinderError):
    """A co-authorship conflict blocks the operation.

    ``scope`` is ``"submitting_authors"`` or ``"reviewers"``; ``pairs`` lists
    the offending (candidate, conflicting-party) author-id pairs.
    """

    http_status = 409

    def __init__(self, message: str, *, scope: str, pairs: Sequence[tuple[str, str]]):
        self.scope = scope
        self.pairs = tuple(sorted(tuple(p) for p in pairs))
        super().__init__(
            message,
            details={"scope": scope, "pairs": [list(p) for p in self.pairs]},
        )

    @property
    def code(self) -> str:  # type: ignore[override]
        return f"conflict_with_{self.scope}"


class SchemaError(ReviewFinderError):
    """A persisted blob or request body violates the expected schema."""

    code = "invalid_schema"
    http_status = 400


class DanglingIdError(SchemaError):
    """A persisted blob references an id that the current corpus lacks."""

    code = "dangling_id"

    def __init__(self, kind: str, dangling_id: str):
        super().__init__(f"unknown {kind} id in session file: {dangling_id}")
        self.details = {"kind": kind, "id": dangling_id}


class IngestError(ReviewFinderError):
    """The corpus source is unreadable."""

    code = "ingest_failed"
    http_status = 400
