"""Tests for run directories and atomic output files."""

import json
import os

import pytest

from ers_tznn import session
from ers_tznn.exceptions import ParameterError
from ers_tznn.session import (
    METADATA_FILE,
    REPORT_FILE,
    VERIFY_FILE,
    RunStore,
    atomic_write_json,
    atomic_write_text,
)


class TestAtomicWrites:
    """Writes go through a temporary file and os.replace."""

    def test_text_and_json(self, tmp_path):
        atomic_write_text(tmp_path / "a" / "b.txt", "hello")
        assert (tmp_path / "a" / "b.txt").read_text() == "hello"
        atomic_write_json(tmp_path / "c.json", {"x": [1, 2]})
        assert json.loads((tmp_path / "c.json").read_text()) == {"x": [1, 2]}

    def test_no_temporary_files_left(self, tmp_path):
        atomic_write_text(tmp_path / "out.txt", "data")
        assert [p.name for p in tmp_path.iterdir()] == ["out.txt"]

    def test_replace_retried_on_permission_error(self, tmp_path, monkeypatch):
        calls = []
        real_replace = os.replace

        def flaky(source, target):
            calls.append(target)
            if len(calls) == 1:
                raise PermissionError("locked")
            real_replace(source, target)

        monkeypatch.setattr(session.os, "replace", flaky)
        atomic_write_text(tmp_path / "out.txt", "data")
        assert len(calls) == 2
        assert (tmp_path / "out.txt").read_text() == "data"

    def test_gives_up_and_cleans_up(self, tmp_path, monkeypatch):
        def locked(source, target):
            raise PermissionError("locked")

        monkeypatch.setattr(session.os, "replace", locked)
        monkeypatch.setattr(session.settings, "io_retry_attempts", 2)
        with pytest.raises(PermissionError):
            atomic_write_text(tmp_path / "out.txt", "data")
        assert list(tmp_path.iterdir()) == []


class TestRunStore:
    """One directory per scenario."""

    def test_default_base_dir_from_settings(self, isolated_output_dir):
        store = RunStore()
        assert store.base_dir == isolated_output_dir
        assert store.base_dir.is_dir()

    def test_create_run_writes_metadata(self, tmp_path):
        store = RunStore(tmp_path)
        run_dir = store.create_run("bench/mark: 1", kind="benchmark")
        assert run_dir.parent == tmp_path
        assert "/" not in run_dir.name and ":" not in run_dir.name
        metadata = json.loads((run_dir / METADATA_FILE).read_text())
        assert metadata["scenario"] == "bench/mark: 1"
        assert metadata["kind"] == "benchmark"

    def test_list_runs_skips_unreadable(self, tmp_path):
        store = RunStore(tmp_path)
        good = store.create_run("good")
        atomic_write_json(good / REPORT_FILE, {"scenario": "good", "pass": True})
        bad = store.create_run("bad")
        (bad / REPORT_FILE).write_text("{not json")
        store.create_run("no-report")
        runs = store.list_runs()
        assert [r["scenario"] for r in runs] == ["good"]
        assert runs[0]["run_dir"] == str(good)

    def test_list_runs_limit(self, tmp_path):
        store = RunStore(tmp_path)
        for i in range(3):
            atomic_write_json(store.create_run(f"run{i}") / REPORT_FILE, {"scenario": f"run{i}"})
        assert len(store.list_runs(limit=2)) == 2

    def test_load_verification(self, tmp_path):
        store = RunStore(tmp_path)
        assert store.load_verification() is None
        atomic_write_json(tmp_path / VERIFY_FILE, {"summary": {}, "checks": []})
        assert store.load_verification() == {"summary": {}, "checks": []}

    @pytest.mark.parametrize(
        "content", ["{not json", "[1, 2]", '{"checks": "all"}', '{"checks": [3]}']
    )
    def test_load_verification_rejects_malformed(self, tmp_path, content):
        (tmp_path / VERIFY_FILE).write_text(content)
        with pytest.raises(ParameterError, match=VERIFY_FILE):
            RunStore(tmp_path).load_verification()
