"""File-backed problem store: revisions, atomicity, concurrency."""

import json
import threading

import pytest

from mauakit.store import NotFoundError, ProblemStore, RevisionConflictError

DOC_V1 = {"schema_version": "1", "name": "first", "attributes": [], "options": []}
DOC_V2 = {"schema_version": "1", "name": "second", "attributes": [], "options": []}


@pytest.fixture
def store(tmp_path):
    return ProblemStore(tmp_path / "store")


def test_create_starts_at_revision_one(store):
    stored = store.create(DOC_V1, "first")
    assert stored.revision == 1
    assert store.get(stored.id).document == DOC_V1


def test_put_increments_revision_by_one(store):
    stored = store.create(DOC_V1, "first")
    updated = store.put(stored.id, DOC_V2, "second", expected_revision=1)
    assert updated.revision == 2
    assert updated.created == stored.created
    assert store.get(stored.id).document == DOC_V2


def test_stale_revision_conflicts_and_leaves_state(store):
    stored = store.create(DOC_V1, "first")
    store.put(stored.id, DOC_V2, "second", expected_revision=1)
    with pytest.raises(RevisionConflictError) as excinfo:
        store.put(stored.id, DOC_V1, "first", expected_revision=1)
    assert excinfo.value.current == 2
    current = store.get(stored.id)
    assert current.revision == 2
    assert current.document == DOC_V2


def test_list_reflects_contents(store):
    a = store.create(DOC_V1, "first")
    b = store.create(DOC_V2, "second")
    listing = {entry["id"]: entry for entry in store.list()}
    assert listing[a.id]["name"] == "first"
    assert listing[b.id]["revision"] == 1
    store.delete(a.id)
    assert [entry["id"] for entry in store.list()] == [b.id]


def test_get_and_delete_unknown_id(store):
    with pytest.raises(NotFoundError):
        store.get("missing")
    with pytest.raises(NotFoundError):
        store.delete("missing")


def test_path_escapes_rejected(store):
    with pytest.raises(NotFoundError):
        store.get("../evil")


def test_files_are_valid_json_after_many_writes(store, tmp_path):
    stored = store.create(DOC_V1, "first")
    for rev in range(1, 30):
        store.put(stored.id, DOC_V1 if rev % 2 else DOC_V2, "x", expected_revision=rev)
    for path in (tmp_path / "store").glob("*.json"):
        json.loads(path.read_text(encoding="utf-8"))  # must never be torn
    assert store.get(stored.id).revision == 30


def test_concurrent_conflicting_puts_exactly_one_wins(store):
    stored = store.create(DOC_V1, "first")
    outcomes = []
    barrier = threading.Barrier(8)

    def attempt(i):
        barrier.wait()
        try:
            store.put(stored.id, {**DOC_V2, "name": f"writer-{i}"}, f"writer-{i}",
                      expected_revision=1)
            outcomes.append("win")
        except RevisionConflictError:
            outcomes.append("conflict")

    threads = [threading.Thread(target=attempt, args=(i,)) for i in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert outcomes.count("win") == 1
    assert store.get(stored.id).revision == 2
