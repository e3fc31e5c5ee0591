import itertools
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from endotree.analysis import (
    ConcentrationBounds,
    azuma_comparison_bound,
    binomial_tail_stderr,
    chernoff_binomial_bounds,
    core_size_distribution,
    core_size_pmf,
    cycle_tail_bound,
    expected_unconnected,
    independent_set_bounds,
    mapping_unconnected_statistic,
)
from endotree.graph_core import Endofunction, RestrictionError, edge_multiset, unconnected_count

from conftest import all_trees, brute_core, brute_independent, brute_unconnected

SMALL_NK = [(n, k) for n in range(2, 7) for k in range(1, min(3, n - 1) + 1)]


def restricted_images(n, k):
    return itertools.product(*([range(k, n)] * k + [range(n)] * (n - k)))


def naive_statistic(image, k):
    """Vertices outside S that are neither hit from S nor sent into S."""
    n = len(image)
    hit = {image[x] for x in range(k)}
    return sum(1 for x in range(k, n) if x not in hit and image[x] >= k)


class TestExpectedUnconnected:
    def test_n2_k1(self):
        assert expected_unconnected(2, 1).exact == 0
        assert expected_unconnected(2, 1, rational=True).exact == 0

    def test_n4_k1(self):
        assert expected_unconnected(4, 1, rational=True).exact == Fraction(3, 2)
        assert expected_unconnected(4, 1).exact == pytest.approx(1.5, rel=1e-12)

    def test_exact_vs_asymptotic_large(self):
        e = expected_unconnected(10**4, 2 * 10**3)
        assert 0.99 <= e.exact / e.asymptotic <= 1.01

    @pytest.mark.parametrize("n,k", SMALL_NK)
    def test_equals_exhaustive_mapping_mean(self, n, k):
        total = count = 0
        for image in restricted_images(n, k):
            total += naive_statistic(image, k)
            count += 1
        assert Fraction(total, count) == expected_unconnected(n, k, rational=True).exact

    @pytest.mark.parametrize("n,k", SMALL_NK)
    def test_equals_exhaustive_tree_mean(self, n, k):
        trees = [t for t in all_trees(n) if brute_independent(t, k)]
        mean = Fraction(sum(brute_unconnected(n, t, k) for t in trees), len(trees))
        assert mean == expected_unconnected(n, k, rational=True).exact

    @given(st.integers(2, 5000).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))))
    def test_float_matches_rational(self, nk):
        n, k = nk
        a = expected_unconnected(n, k).exact
        b = float(expected_unconnected(n, k, rational=True).exact)
        assert a == pytest.approx(b, rel=1e-12, abs=1e-300)
        assert 0 <= a <= n - k

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            expected_unconnected(5, 0)


class TestMappingStatistic:
    def test_n2(self):
        assert mapping_unconnected_statistic(Endofunction.from_one_based([2, 1]), 1) == 0

    def test_n3(self):
        assert mapping_unconnected_statistic(Endofunction.from_one_based([2, 3, 3]), 1) == 1

    def test_rejects_unrestricted(self):
        with pytest.raises(RestrictionError):
            mapping_unconnected_statistic(Endofunction.identity(3), 1)

    @pytest.mark.parametrize("n,k", [(4, 1), (4, 2), (5, 2), (5, 3)])
    def test_agrees_with_edge_scan(self, n, k):
        for image in restricted_images(n, k):
            f = Endofunction(np.array(image))
            stat = mapping_unconnected_statistic(f, k)
            assert stat == unconnected_count(edge_multiset(f), k) == naive_statistic(image, k)


class TestIndependentSetBounds:
    def test_small_s_tends_to_one(self):
        b = independent_set_bounds(1000, 200, 1e-9)
        assert all(v == pytest.approx(1, abs=1e-5) for v in b)

    def test_printed_formula(self):
        expected = math.exp(-0.04 * 2000 * 0.64 * math.exp(-0.25) / 3)
        assert independent_set_bounds(2000, 400, 0.2).two_sided == pytest.approx(expected, rel=1e-12)

    def test_lower_undefined_beyond_one(self):
        assert math.isnan(independent_set_bounds(100, 10, 1.0).lower)
        assert not math.isnan(independent_set_bounds(100, 10, 0.99).lower)

    def test_rate_is_asymptotic_mean(self):
        b = ConcentrationBounds.for_params(500, 100)
        assert b.rate == b.expected_n_asymptotic
        assert b.alpha == 0.2
        assert b.expected_n_exact <= 400

    def test_rejects_nonpositive_s(self):
        with pytest.raises(ValueError):
            independent_set_bounds(10, 2, 0.0)


class TestChernoff:
    def test_mean_300_s1(self):
        assert chernoff_binomial_bounds(300, 1).upper == pytest.approx(math.exp(-100), rel=1e-12)

    def test_small_s(self):
        b = chernoff_binomial_bounds(50, 1e-9)
        assert all(v == pytest.approx(1, abs=1e-6) for v in b)

    def test_holds_for_simulated_binomial(self):
        rng = np.random.default_rng(123)
        trials, n, p = 200_000, 400, 0.1
        mean = n * p
        x = rng.binomial(n, p, size=trials)
        for s in np.arange(0.05, 1.01, 0.05):
            b = chernoff_binomial_bounds(mean, s)
            two = np.mean(np.abs(x - mean) > s * mean)
            lo = np.mean(x < (1 - s) * mean)
            up = np.mean(x > (1 + s) * mean)
            assert two <= b.two_sided + 3 * binomial_tail_stderr(b.two_sided, trials)
            assert up <= b.upper + 3 * binomial_tail_stderr(b.upper, trials)
            if s < 1:
                assert lo <= b.lower + 3 * binomial_tail_stderr(b.lower, trials)


class TestAzuma:
    def test_t_to_zero(self):
        assert azuma_comparison_bound(1000, 200, 1e-9) == pytest.approx(2, abs=1e-6)

    def test_alpha_to_zero(self):
        n, t = 10**6, 0.01
        assert azuma_comparison_bound(n, 1, t) == pytest.approx(2 * math.exp(-(n - 1) * t * t / 2), rel=1e-4)

    def test_looser_than_independent_set_bound_at_example(self):
        assert azuma_comparison_bound(2000, 400, 0.2) > independent_set_bounds(2000, 400, 0.2).two_sided

    @pytest.mark.parametrize("n", [100, 500, 2000, 10**4, 10**5])
    def test_looser_than_independent_set_bound_on_unit_interval(self, n):
        # compared as logarithms: both values underflow to 0.0 at large n
        k = n // 5
        a = 0.2
        rate = ConcentrationBounds.for_params(n, k).rate
        for t in np.linspace(0.001, 1.0, 400):
            log_azuma = math.log(2) - (n - 1) * t * t * (1 - a) ** 4 * math.exp(-2 * a / (1 - a)) / 2
            log_indep = -min(t, t * t) * rate / 3
            assert log_azuma > log_indep
            if n <= 2000:
                assert azuma_comparison_bound(n, k, t) > independent_set_bounds(n, k, t).two_sided


class TestCycleTail:
    def test_plug_in(self):
        assert cycle_tail_bound(math.exp(12), 1) == pytest.approx(math.exp(-1), rel=1e-12)

    def test_small_t(self):
        assert cycle_tail_bound(10**4, 1e-9) == pytest.approx(1, abs=1e-9)

    def test_restricted_uses_complement_size(self):
        assert cycle_tail_bound(10**4, 1, 9000) == pytest.approx(math.exp(-math.log(1000) / 12), rel=1e-12)

    def test_rejects_tiny_complement(self):
        with pytest.raises(ValueError):
            cycle_tail_bound(10, 1, 9)


class TestCoreSizePmf:
    def test_n1(self):
        assert core_size_pmf(1, 1) == 1

    def test_n2_by_hand(self):
        assert core_size_distribution(2) == {1: Fraction(1, 2), 2: Fraction(1, 2)}

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_exhaustive_histogram(self, n):
        hist = Counter(len(brute_core(list(im))) for im in itertools.product(range(n), repeat=n))
        observed = {k: Fraction(c, n**n) for k, c in hist.items()}
        assert observed == core_size_distribution(n)

    @pytest.mark.parametrize("n", [1, 7, 50, 170])
    def test_sums_to_one(self, n):
        assert sum(core_size_distribution(n).values()) == 1

    def test_log_space_regime(self):
        probs = core_size_distribution(1000)
        assert sum(probs.values()) == pytest.approx(1, rel=1e-12)
        # continuity with the exact regime
        assert core_size_pmf(171, 10) == pytest.approx(
            float(Fraction(10 * math.factorial(170), 171**10 * math.factorial(161))), rel=1e-12)
