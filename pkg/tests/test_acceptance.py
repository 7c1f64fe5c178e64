"""The ten acceptance criteria at their stated tolerances and runtime budgets.

Criteria run once at seed 42 with 8 workers (each timed); criterion 10 also
runs the whole report through the CLI with 1 worker and compares bytes.
"""

import time

import pytest

from conftest import ACCEPTANCE_LINES
from pinchkit import reproduce
from pinchkit.cli import main

SEED = 42
WORKERS = 8
BUDGETS = {1: 1.0, 2: 5.0, 3: 10.0, 4: 5.0, 5: 60.0, 6: 30.0, 7: 60.0, 8: 1.0, 9: 10.0, 10: None}

_cache = {}


def outcome(number):
    if number not in _cache:
        start = time.perf_counter()
        result = reproduce.run_criterion(number, SEED, WORKERS)
        _cache[number] = (result, time.perf_counter() - start)
    return _cache[number]


def record(number, passed, elapsed, detail):
    budget = BUDGETS[number]
    limit = "" if budget is None else f" / {budget:.0f}s"
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  ({elapsed:.2f}s{limit})  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number):
    result, elapsed = outcome(number)
    budget = BUDGETS[number]
    in_time = elapsed < budget
    record(number, result.passed and in_time, elapsed, result.line())
    assert result.passed, result.line()
    assert in_time, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"


def test_criterion_10_report_bytes_identical_across_workers(tmp_path):
    start = time.perf_counter()
    results = [outcome(n)[0] for n in range(1, 11)]
    report_many = reproduce.render_report(results, SEED)
    out = tmp_path / "report_1.txt"
    code = main(["verify-paper", "--seed", str(SEED), "--workers", "1", "--out", str(out)])
    report_one = out.read_text()
    same = report_one == report_many
    probe = results[9]
    elapsed = time.perf_counter() - start
    record(10, same and probe.passed, elapsed,
           f"verify-paper --seed {SEED}: workers 1 vs {WORKERS} byte-identical: {same}; {probe.line()}")
    assert code == (0 if all(r.passed for r in results) else 1)
    assert same
    assert probe.passed
