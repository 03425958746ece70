import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = []


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion's outcome and runtime."""

    @contextmanager
    def record(name, limit_s):
        start = time.perf_counter()
        entry = {"name": name, "limit": limit_s, "ok": False, "elapsed": None, "note": ""}
        _CRITERIA.append(entry)
        try:
            yield entry
        except BaseException as exc:
            entry["note"] = type(exc).__name__
            raise
        finally:
            entry["elapsed"] = time.perf_counter() - start
        entry["ok"] = entry["elapsed"] < limit_s
        assert entry["ok"], f"{name}: {entry['elapsed']:.2f}s exceeds {limit_s}s"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for c in _CRITERIA:
        status = "PASS" if c["ok"] else "FAIL"
        elapsed = f"{c['elapsed']:.2f}s" if c["elapsed"] is not None else "-"
        note = f" ({c['note']})" if c["note"] else ""
        terminalreporter.write_line(f"[{status}] {c['name']}  {elapsed} / limit {c['limit']}s{note}")
