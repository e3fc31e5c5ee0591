import csv
import io
import json
import math

import numpy as np
import pytest

from endotree.analysis import expected_unconnected
from endotree.experiments import (
    CSV_HEADER,
    na_covariance_check,
    parse_grid,
    run_concentration_experiment,
    run_core_size_experiment,
    run_cycle_experiment,
    tree_unconnected_samples,
)
from endotree.graph_core import unconnected_count
from endotree.sampler import SeededRng, sample_independent_tree


class TestParseGrid:
    def test_inclusive(self):
        assert parse_grid("0.05:1.0:0.05") == [round(0.05 * i, 12) for i in range(1, 21)]

    def test_single_point(self):
        assert parse_grid("1:1:0.5") == [1.0]

    @pytest.mark.parametrize("bad", ["1:0:0.1", "0:1:0", "abc", "0:1"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_grid(bad)


class TestTreeSamples:
    def test_matches_sampler(self):
        vals = tree_unconnected_samples(40, 7, 20, seed=3)
        for i, v in enumerate(vals):
            t = sample_independent_tree(40, 7, SeededRng(3, i))
            assert v == unconnected_count(t, 7)


class TestConcentration:
    def test_single_trial(self):
        rep = run_concentration_experiment(30, 5, 1, [0.1, 0.5], seed=1)
        for r in rep.rows:
            assert r.emp_two_sided in (0.0, 1.0)
            assert r.emp_upper in (0.0, 1.0) and r.emp_lower in (0.0, 1.0)

    def test_deterministic_across_workers(self):
        a = run_concentration_experiment(200, 40, 500, [0.1, 0.2, 0.5], seed=7, workers=1)
        b = run_concentration_experiment(200, 40, 500, [0.1, 0.2, 0.5], seed=7, workers=3)
        assert a.to_csv() == b.to_csv()
        assert a.to_json() == b.to_json()

    def test_csv_shape(self):
        rep = run_concentration_experiment(50, 10, 100, [0.3, 0.1, 0.2], seed=2)
        rows = list(csv.reader(io.StringIO(rep.to_csv())))
        assert rows[0] == CSV_HEADER
        assert all(len(r) == len(CSV_HEADER) for r in rows)
        assert [float(r[4]) for r in rows[1:]] == [0.1, 0.2, 0.3]
        json.loads(rep.to_json())

    def test_n1000_k200_bounds_hold(self):
        trials = 20_000
        rep = run_concentration_experiment(1000, 200, trials, [0.1], seed=5, workers=2)
        r = rep.rows[0]
        se = math.sqrt(r.bound_two_sided * (1 - r.bound_two_sided) / trials)
        assert r.emp_two_sided <= r.bound_two_sided + 3 * se
        en = expected_unconnected(1000, 200).exact
        sigma = math.sqrt(rep.variance / trials)
        assert abs(rep.mean - en) <= 1 + 3 * sigma


class TestCycles:
    def test_huge_t_gives_zero(self):
        rep = run_cycle_experiment(500, 300, [1000.0], seed=1)
        assert rep.rows[0].emp_upper == 0.0

    def test_restricted_collapse_identity(self):
        rep = run_cycle_experiment(300, 400, [1.0], seed=2, restricted_k=150)
        assert rep.extra["collapse_mismatches"] == 0

    def test_deterministic_across_workers(self):
        a = run_cycle_experiment(400, 300, [0.5, 1.0], seed=4, restricted_k=100, workers=1)
        b = run_cycle_experiment(400, 300, [0.5, 1.0], seed=4, restricted_k=100, workers=4)
        assert a.to_csv() == b.to_csv()

    def test_rejects_small_complement(self):
        with pytest.raises(ValueError):
            run_cycle_experiment(10, 5, [1.0], restricted_k=9)


class TestCoreSize:
    def test_small_n_close_to_pmf(self):
        trials = 50_000
        rep = run_core_size_experiment(6, trials, seed=8, workers=2)
        for j, p in rep.pmf.items():
            se = math.sqrt(p * (1 - p) / trials)
            assert abs(rep.empirical.get(j, 0.0) - p) <= 4 * se + 1e-12
        assert sum(rep.empirical.values()) == pytest.approx(1)

    def test_deterministic(self):
        assert run_core_size_experiment(50, 200, 1, 1).to_csv() == run_core_size_experiment(50, 200, 1, 3).to_csv()


class TestNACheck:
    def test_vacuous(self):
        r = na_covariance_check(2, 1, 100)
        assert r.vacuous and r.max_covariance == 0

    def test_n10_k3(self):
        r = na_covariance_check(10, 3, 10**6, seed=9)
        assert not r.vacuous
        assert r.pairs == 21
        assert r.max_covariance <= 3e-3
        assert r.tolerance == pytest.approx(3e-3)

    def test_matches_exact_sign_small(self):
        r = na_covariance_check(4, 1, 200_000, seed=10)
        assert r.max_covariance <= r.tolerance
        assert np.isfinite(r.max_covariance)
