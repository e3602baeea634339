# tests/test_selftest.py
import random

import pytest

from app.cli.report import Verdict
from app.cli.selftest import (
    bulk_suite,
    check_boundary_suite,
    check_bulk_suite,
    check_categories,
    check_filtered_compare,
    check_finite_duality,
    check_graded_pairing,
    check_koszul_suite,
    check_milnor_numbers,
    check_spectral,
    monomial_mf,
    quadric_tensor,
    run_selftest,
)
from app.config import Settings


def _passes(section):
    assert section.checks
    failed = [c.name for c in section.checks if c.verdict == Verdict.FAIL]
    assert failed == []


def test_suite_fixtures():
    assert len(bulk_suite()) == 7
    assert monomial_mf(5, 2).name == "P2"
    assert quadric_tensor().rank == (2, 2)


@pytest.mark.parametrize("check", [
    check_milnor_numbers,
    check_koszul_suite,
    check_graded_pairing,
])
def test_quick_sections_pass(check):
    _passes(check())


def test_seeded_sections_pass():
    _passes(check_spectral(random.Random(1), 5))
    _passes(check_finite_duality(random.Random(2)))


@pytest.mark.slow
@pytest.mark.parametrize("check", [check_bulk_suite, check_boundary_suite, check_categories])
def test_heavy_sections_pass(check):
    _passes(check())


@pytest.mark.slow
def test_filtered_compare_section_passes():
    _passes(check_filtered_compare(random.Random(3)))


@pytest.mark.slow
def test_selftest_is_reproducible():
    config = Settings(SELFTEST_RANDOM_INSTANCES=5)
    first = run_selftest(config)
    second = run_selftest(config)
    assert [s.model_dump() for s in first] == [s.model_dump() for s in second]
    for section in first:
        _passes(section)
