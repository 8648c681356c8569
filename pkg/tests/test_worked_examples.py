import dataclasses
import time

import pytest

from ergocoef import worked_examples as we


def test_all_checks_pass():
    checks = we.run_checks()
    bad = [c for c in checks if not c.ok]
    assert not bad, bad


def test_group_count():
    groups = {c.group for c in we.run_checks()}
    assert len(groups) >= 12


def test_fast():
    t0 = time.perf_counter()
    we.run_checks()
    assert time.perf_counter() - t0 < 1.0


@pytest.mark.parametrize("field", [f.name for f in dataclasses.fields(we.Fixtures)])
def test_each_fixture_is_guarded(field):
    assert any(not c.ok for c in we.run_checks(we.perturbed(field)))


def test_perturbed_leaves_original():
    we.perturbed("circulant")
    assert we.FIXTURES == we.Fixtures()


def test_check_deviation_kinds():
    assert we.Check("g", "x", 2.0, 2.004, 0.01).ok
    assert not we.Check("g", "x", 2.0, 2.02, 0.01).ok
    assert we.Check("g", "x", True, True, 0).ok
    assert not we.Check("g", "x", True, False, 0).ok
    assert we.Check("g", "x", [1, 2], [1, 2.005], 0.01).ok
    assert not we.Check("g", "x", [1, 2], [1, 2, 3], 0.01).ok
