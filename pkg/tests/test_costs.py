from fractions import Fraction as F

import pytest

from queryvote import (
    Axiom,
    RefinementQuery,
    audit_axiom,
    audit_grid,
    bhatia_davis_floor,
    cost_bucket_count,
    cost_candidates,
    cost_computational,
    cost_last_bucket,
    cost_variance_aware,
    get_cost_function,
    variance,
)
from queryvote.costs import COST_FUNCTIONS, format_audit_table
from queryvote.rng import substream


def q(size, *ratios):
    return RefinementQuery(tuple(range(size)), ratios)


def test_variance_values():
    assert variance((F(1, 2), F(1, 2))) == 0
    assert variance((F(1, 4), F(3, 4))) == F(1, 16)
    assert variance((F(1, 2), F(3, 10), F(1, 5))) == F(7, 450)
    assert variance((F(2, 5), F(7, 20), F(1, 4))) == F(7, 1800)


def test_variance_degenerate():
    assert variance(()) == 0
    assert variance((F(1),)) == 0


def test_variance_matches_two_pass_oracle():
    rng = substream(31)
    for _ in range(200):
        parts = int(rng.integers(2, 8))
        weights = [int(x) for x in rng.integers(1, 20, parts)]
        total = sum(weights)
        ratios = tuple(F(w, total) for w in weights)
        mean = sum(ratios) / parts
        oracle = sum((r - mean) ** 2 for r in ratios) / parts
        assert variance(ratios) == oracle


def test_cost_candidates():
    assert cost_candidates(q(4, F(1, 4), F(3, 4))) == 4
    assert cost_candidates(q(1, F(1))) == 0
    assert cost_candidates(q(6, F(1, 2), F(1, 2))) == 6


def test_cost_last_bucket():
    assert cost_last_bucket(q(4, F(1, 4), F(3, 4))) == 1
    assert cost_last_bucket(q(4, F(1, 2), F(1, 2))) == 2
    assert cost_last_bucket(q(4, F(1, 4), F(1, 4), F(1, 2))) == 2


def test_cost_bucket_count():
    assert cost_bucket_count(q(10, F(1, 2), F(3, 10), F(1, 5))) == 16
    assert cost_bucket_count(q(10, F(2, 5), F(7, 20), F(1, 4))) == 15
    assert cost_bucket_count(q(10, F(1))) == 0


def test_cost_variance_aware():
    assert cost_variance_aware(q(4, F(1, 2), F(1, 2))) == 8
    assert cost_variance_aware(q(2, F(1, 2), F(1, 2))) == 4
    assert cost_variance_aware(q(4, F(1, 4), F(3, 4))) == F(15, 2)


def test_cost_computational():
    assert cost_computational(q(4, F(1, 2), F(1, 2))) == 4.0
    assert cost_computational(q(3, F(1),)) == 0.0
    assert cost_computational(q(8, F(1, 4), F(1, 4), F(1, 4), F(1, 4))) == 16.0


def test_all_costs_zero_on_degenerate_queries():
    for fn in COST_FUNCTIONS.values():
        assert fn(q(1, F(1))) == 0
        assert fn(q(5, F(1))) == 0


def test_bhatia_davis_floor_values():
    assert bhatia_davis_floor((F(1, 4), F(3, 4))) == F(3, 4)
    assert bhatia_davis_floor((F(1),)) == 1
    assert bhatia_davis_floor((F(1, 2), F(3, 10), F(1, 5))) == F(7, 9)


def test_bhatia_davis_floor_bounds_variance():
    assert 1 - variance((F(1, 4), F(3, 4))) == F(15, 16) >= F(3, 4)
    assert 1 - variance((F(1, 2), F(3, 10), F(1, 5))) == F(443, 450) >= F(7, 9)
    rng = substream(32)
    for _ in range(300):
        parts = int(rng.integers(1, 8))
        weights = [int(x) for x in rng.integers(1, 20, parts)]
        total = sum(weights)
        ratios = tuple(F(w, total) for w in weights)
        count = len(ratios)
        assert 0 <= variance(ratios) <= F(count - 1, count) * F(1, count)
        assert 1 - variance(ratios) >= bhatia_davis_floor(ratios)


def test_get_cost_function_accepts_variants():
    assert get_cost_function("Variance-Aware") is cost_variance_aware
    with pytest.raises(ValueError):
        get_cost_function("bogus")


def test_audit_candidates_fails_variance_monotonicity():
    verdict = audit_axiom("candidates", Axiom.VARIANCE_MONOTONICITY, trials=10, seed=0)
    assert not verdict.holds
    q1, q2, c1, c2 = verdict.counterexample
    assert c1 == c2 == 4
    assert variance(q1.buckets) > variance(q2.buckets)


def test_audit_last_bucket_stored_counterexample():
    verdict = audit_axiom("last_bucket", Axiom.VARIANCE_MONOTONICITY, trials=10, seed=0)
    assert not verdict.holds
    _, _, c1, c2 = verdict.counterexample
    assert (c1, c2) == (8, F(15, 2))


def test_audit_variance_aware_passes_everything():
    for axiom in Axiom:
        verdict = audit_axiom("variance_aware", axiom, trials=2000, seed=5)
        assert verdict.holds, (axiom, verdict.counterexample)
        assert verdict.counterexample is None


def test_counterexamples_reevaluate_to_violations():
    grid = audit_grid(trials=300, seed=9)
    for (name, axiom), verdict in grid.items():
        if verdict.holds:
            assert verdict.counterexample is None
            continue
        q1, q2, c1, c2 = verdict.counterexample
        fn = COST_FUNCTIONS[name]
        assert fn(q1) == c1 and fn(q2) == c2
        assert axiom is Axiom.VARIANCE_MONOTONICITY
        assert variance(q1.buckets) > variance(q2.buckets)
        assert not c1 < c2


def test_grid_pattern_small_trials():
    grid = audit_grid(trials=300, seed=4)
    for name in COST_FUNCTIONS:
        assert grid[(name, Axiom.PREFIX_MONOTONICITY)].holds
        assert grid[(name, Axiom.MULTIPLE_MONOTONICITY)].holds
        expected = name == "variance_aware"
        assert grid[(name, Axiom.VARIANCE_MONOTONICITY)].holds is expected
    table = format_audit_table(grid)
    assert "variance_aware" in table and "NO" in table and "YES" in table


def test_audit_rejects_bad_trials():
    with pytest.raises(ValueError):
        audit_axiom("candidates", Axiom.PREFIX_MONOTONICITY, trials=0)
