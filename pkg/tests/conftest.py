from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from soembed.embed import EmbeddingResult, certify  # noqa: E402

# every EmbeddingResult built during the run, certified at session end
PRODUCED: list[EmbeddingResult] = []
ACCEPTANCE_LINES: list[str] = []

_original_build = EmbeddingResult.build.__func__


def _recording_build(cls, *args, **kwargs):
    E = _original_build(cls, *args, **kwargs)
    PRODUCED.append(E)
    return E


EmbeddingResult.build = classmethod(_recording_build)


def certify_produced(start: int = 0) -> list[str]:
    """Certify embeddings recorded since ``start``; return the violations."""
    seen = set()
    bad = []
    for E in PRODUCED[start:]:
        key = (E.source.canonical_rows(), E.generator.rows, E.appended.rows, E.appended.ncols)
        if key in seen:
            continue
        seen.add(key)
        cert = certify(E)
        if not cert.ok:
            bad.append(f"{E.source} via {E.strategy}: {cert}")
    return bad


def pytest_sessionfinish(session, exitstatus):
    bad = certify_produced()
    session.config._soembed_invariants = (len(PRODUCED), bad)
    if bad and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    total, bad = getattr(config, "_soembed_invariants", (0, []))
    terminalreporter.section("embedding invariants over the whole run")
    terminalreporter.write_line(
        f"{'PASS' if not bad else 'FAIL'} {total} embeddings certified, {len(bad)} violations"
    )
    for line in bad[:20]:
        terminalreporter.write_line(f"  {line}")


@pytest.fixture
def report():
    """Record and print one acceptance line."""

    def _report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _report
