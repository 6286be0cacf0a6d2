"""File-backed problem store with optimistic concurrency.

One JSON file per problem id plus an index file, all written atomically
(write to a temp file in the same directory, then rename). Revisions
start at 1 and increment by exactly 1 per successful mutation; a stale
``expected_revision`` raises :class:`RevisionConflictError` and leaves
state untouched.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any


class NotFoundError(KeyError):
    def __init__(self, problem_id: str):
        self.problem_id = problem_id
        super().__init__(f"no problem with id {problem_id!r}")


class RevisionConflictError(Exception):
    def __init__(self, problem_id: str, expected: int, current: int):
        self.problem_id = problem_id
        self.expected = expected
        self.current = current
        super().__init__(
            f"revision conflict on {problem_id!r}: expected {expected}, current is {current}")


@dataclass(frozen=True)
class StoredProblem:
    id: str
    revision: int
    created: str
    updated: str
    document: dict


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds").replace("+00:00", "Z")


class ProblemStore:
    """Desk-scale persistent store: trivially inspectable JSON files.

    All mutations are serialized under one lock; reads go straight to the
    filesystem, which is safe because every write is an atomic rename.
    """

    def __init__(self, root: str | Path):
        self._root = Path(root)
        self._root.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._index_path = self._root / "index.json"
        if not self._index_path.exists():
            self._write_atomic(self._index_path, {"problems": {}})

    # -- reads ------------------------------------------------------------

    def list(self) -> list[dict]:
        index = self._read_json(self._index_path)
        return [
            {"id": pid, "name": meta["name"], "revision": meta["revision"],
             "updated": meta["updated"]}
            for pid, meta in index["problems"].items()
        ]

    def get(self, problem_id: str) -> StoredProblem:
        path = self._problem_path(problem_id)
        if not path.exists():
            raise NotFoundError(problem_id)
        data = self._read_json(path)
        return StoredProblem(id=data["id"], revision=data["revision"],
                             created=data["created"], updated=data["updated"],
                             document=data["document"])

    # -- mutations ----------------------------------------------------------

    def create(self, document: dict, name: str) -> StoredProblem:
        with self._lock:
            index = self._read_json(self._index_path)
            problem_id = self._new_id(index)
            now = _utc_now()
            stored = StoredProblem(id=problem_id, revision=1, created=now,
                                   updated=now, document=document)
            self._write_problem(stored)
            index["problems"][problem_id] = {
                "name": name, "revision": 1, "created": now, "updated": now}
            self._write_atomic(self._index_path, index)
            return stored

    def put(self, problem_id: str, document: dict, name: str,
            expected_revision: int) -> StoredProblem:
        with self._lock:
            current = self.get(problem_id)
            if current.revision != expected_revision:
                raise RevisionConflictError(problem_id, expected_revision, current.revision)
            now = _utc_now()
            stored = StoredProblem(id=problem_id, revision=current.revision + 1,
                                   created=current.created, updated=now, document=document)
            self._write_problem(stored)
            index = self._read_json(self._index_path)
            index["problems"][problem_id] = {
                "name": name, "revision": stored.revision,
                "created": current.created, "updated": now}
            self._write_atomic(self._index_path, index)
            return stored

    def delete(self, problem_id: str) -> None:
        with self._lock:
            path = self._problem_path(problem_id)
            if not path.exists():
                raise NotFoundError(problem_id)
            path.unlink()
            index = self._read_json(self._index_path)
            index["problems"].pop(problem_id, None)
            self._write_atomic(self._index_path, index)

    # -- plumbing -----------------------------------------------------------

    def _new_id(self, index: dict) -> str:
        while True:
            candidate = secrets.token_urlsafe(9)
            if candidate not in index["problems"]:
                return candidate

    def _problem_path(self, problem_id: str) -> Path:
        # ids are URL-safe tokens; reject anything that could escape the root
        if not problem_id or any(c in problem_id for c in "/\\.") or problem_id == "index":
            raise NotFoundError(problem_id)
        return self._root / f"{problem_id}.json"

    def _write_problem(self, stored: StoredProblem) -> None:
        self._write_atomic(self._problem_path(stored.id), {
            "id": stored.id, "revision": stored.revision, "created": stored.created,
            "updated": stored.updated, "document": stored.document})

    @staticmethod
    def _read_json(path: Path) -> Any:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)

    def _write_atomic(self, path: Path, data: Any) -> None:
        tmp = path.with_name(f".{path.name}.{os.getpid()}.{secrets.token_hex(4)}.tmp")
        try:
            with open(tmp, "w", encoding="utf-8") as handle:
                json.dump(data, handle, indent=2, ensure_ascii=False)
                handle.write("\n")
            os.replace(tmp, path)
        finally:
            if tmp.exists():
                tmp.unlink()
