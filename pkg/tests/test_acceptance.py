"""Acceptance gate: every reproduction group must pass at its stated
tolerance. One pass/fail line is printed per group (run with -s to see them
as they complete)."""

import pytest

from qroof.reproduce import DEFAULT_SEED, GROUPS, run_grouped

GROUP_NAMES = [name for name, _ in GROUPS]


@pytest.fixture(scope="module")
def groups():
    return run_grouped(seed=DEFAULT_SEED)


def _report(name, rows):
    status = "PASS" if all(row.passed for row in rows) else "FAIL"
    print(f"[{status}] {name}")
    for row in rows:
        assert row.passed, (
            f"{row.name}: expected {row.expected!r}, computed {row.computed!r}, "
            f"tolerance {row.tolerance!r}"
        )


@pytest.mark.parametrize("name", GROUP_NAMES)
def test_criterion(groups, name):
    _report(name, groups[name])


def test_every_group_reported(groups):
    assert sorted(groups) == sorted(GROUP_NAMES)
    assert sum(len(rows) for rows in groups.values()) >= 30
