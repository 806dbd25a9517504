"""Session storage with per-session command serialization.

The in-memory map is the source of truth while the service runs; with a
directory configured, every accepted mutation is also persisted as one JSON
file per session so a restarted service reproduces all reads.
"""

from __future__ import annotations

import logging
import threading
from collections import defaultdict
from pathlib import Path

from .corpus import CorpusIndex
from .errors import NotFoundError
from .session import Session, load_session, save_session

logger = logging.getLogger(__name__)


class SessionStore:
    def __init__(self, directory: str | Path | None = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._registry_lock = threading.Lock()
        self._directory = Path(directory) if directory is not None else None
        if self._directory is not None:
            self._directory.mkdir(parents=True, exist_ok=True)

    def load_existing(self, index: CorpusIndex) -> int:
        """Load persisted sessions from the directory; returns the count."""
        if self._directory is None:
            return 0
        count = 0
        for path in sorted(self._directory.glob("*.json")):
            session = load_session(path.read_text(encoding="utf-8"), index)
            self._sessions[session.session_id] = session
            count += 1
        logger.info("loaded %d persisted sessions", count)
        return count

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks[session_id]

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise NotFoundError(f"unknown session id: {session_id}") from None

    def exists(self, session_id: str) -> bool:
        return session_id in self._sessions

    def put(self, session: Session) -> None:
        self._sessions[session.session_id] = session
        if self._directory is not None:
            path = self._directory / f"{session.session_id}.json"
            path.write_text(save_session(session), encoding="utf-8")

    def delete(self, session_id: str) -> None:
        if session_id not in self._sessions:
            raise NotFoundError(f"unknown session id: {session_id}")
        del self._sessions[session_id]
        if self._directory is not None:
            (self._directory / f"{session_id}.json").unlink(missing_ok=True)

    def ids(self) -> list[str]:
        return sorted(self._sessions)
