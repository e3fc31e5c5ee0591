"""Closed-form expectations and tail bounds.

Throughout, ``S = {1..k}``, ``alpha = k/n`` and ``N`` counts vertices of
``S^c`` with no neighbour in ``S``. The asymptotic prefactors ``1 + o(1)``
carried by the cycle bounds have no finite-n value; evaluators return the
bare exponential and callers apply an explicit slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import _kernels
from .graph_core import Endofunction, check_restricted

EXACT_LIMIT = 170


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")


class Expectation(NamedTuple):
    exact: float | Fraction
    asymptotic: float


def expected_unconnected(n: int, k: int, *, rational: bool = False) -> Expectation:
    """Mean of ``N`` for a uniform tree with ``S`` independent.

    ``exact = (n-k)(1 - 1/(n-k))^k (1 - k/n)`` is the mean of the mapping
    statistic, and also the tree mean: a vertex ``x`` of ``S^c`` is
    unconnected iff ``S ∪ {x}`` is independent, and the ratio of the two
    independent-set tree counts gives the same product.
    ``asymptotic = n(1-alpha)^2 exp(-alpha/(1-alpha))``.

    ``rational=True`` returns ``exact`` as a Fraction.
    """
    _check_nk(n, k)
    m = n - k
    alpha = k / n
    asymptotic = n * (1 - alpha) ** 2 * math.exp(-alpha / (1 - alpha))
    if rational:
        exact = m * Fraction(m - 1, m) ** k * Fraction(m, n)
    elif m == 1:
        exact = 0.0
    else:
        exact = m * math.exp(k * math.log1p(-1 / m)) * (m / n)
    return Expectation(exact, asymptotic)


def mapping_unconnected_statistic(f: Endofunction, k: int) -> int:
    """Sum over ``x`` in ``S^c`` of ``min(N_x, M_x)`` for a restricted mapping.

    ``N_x`` says ``x`` is not in ``f(S)``; ``M_x`` says ``f(x)`` is outside
    ``S``. Equals the unconnected count of the mapping graph, computed
    without building any edges.
    """
    check_restricted(f, k)
    return int(_kernels.min_indicators(f.image, k).sum())


@dataclass(frozen=True)
class ConcentrationBounds:
    n: int
    k: int
    alpha: float
    expected_n_exact: float
    expected_n_asymptotic: float
    rate: float

    @classmethod
    def for_params(cls, n: int, k: int) -> "ConcentrationBounds":
        exact, asym = expected_unconnected(n, k)
        return cls(n, k, k / n, exact, asym, asym)


class TailBounds(NamedTuple):
    two_sided: float
    lower: float
    upper: float


def _chernoff_forms(scale: float, s: float) -> TailBounds:
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    two = math.exp(-min(s, s * s) * scale / 3)
    lower = math.exp(-s * s * scale / 2) if s < 1 else math.nan
    upper = math.exp(-s * s * scale / (2 + s))
    return TailBounds(two, lower, upper)


def independent_set_bounds(n: int, k: int, s: float) -> TailBounds:
    """Right-hand sides of the independent-set concentration inequality.

    With ``rate = n(1-alpha)^2 exp(-alpha/(1-alpha))``:

    * ``two_sided`` bounds ``P(|N - EN| > s EN + 1)`` by ``exp(-min(s, s^2) rate / 3)``
    * ``lower`` bounds ``P(N < (1-s) EN - 1)`` by ``exp(-s^2 rate / 2)``, only for ``0 < s < 1``
    * ``upper`` bounds ``P(N > (1+s) EN + 1)`` by ``exp(-s^2 rate / (2+s))``

    ``lower`` is NaN when ``s >= 1``; that event is then empty anyway.
    """
    _check_nk(n, k)
    return _chernoff_forms(ConcentrationBounds.for_params(n, k).rate, s)


def chernoff_binomial_bounds(mean: float, s: float) -> TailBounds:
    """Classical Chernoff bounds for a binomial with the given mean."""
    if mean <= 0:
        raise ValueError(f"mean must be positive, got {mean}")
    return _chernoff_forms(mean, s)


def azuma_comparison_bound(n: int, k: int, t: float) -> float:
    """Martingale (Azuma-Hoeffding) bound on ``P(|N - EN| > t EN)``.

    ``2 exp(-(n-1) t^2 (1-alpha)^4 exp(-2 alpha/(1-alpha)) / 2)``, with the
    ``1 + O(log n / n)`` correction dropped.
    """
    _check_nk(n, k)
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    a = k / n
    return 2 * math.exp(-(n - 1) * t * t * (1 - a) ** 4 * math.exp(-2 * a / (1 - a)) / 2)


def cycle_tail_bound(n: int, t: float, restricted_k: int | None = None) -> float:
    """``exp(-(t^2/(2+t)) log(m) / 4)`` with ``m = n`` or ``n - k``.

    Bounds ``P(C > (1+t) log m)`` for the cycle count ``C`` of a uniform
    (or restricted-uniform) mapping, up to an asymptotic ``1 + o(1)``
    factor that is not included.
    """
    m = n if restricted_k is None else n - restricted_k
    if restricted_k is not None and not 1 <= restricted_k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={restricted_k}")
    if m < 2:
        raise ValueError("need at least two vertices outside S")
    if t <= 0:
        raise ValueError(f"t must be positive, got {t}")
    return math.exp(-(t * t / (2 + t)) * math.log(m) / 4)


def core_size_pmf(n: int, k: int) -> Fraction | float:
    """``P(|core| = k) = k (n-1)! / (n^k (n-k)!)`` for a uniform mapping.

    Exact Fraction for ``n <= 170``; a float evaluated in log space beyond.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n <= EXACT_LIMIT:
        return Fraction(k * math.factorial(n - 1), n**k * math.factorial(n - k))
    log_p = math.log(k) + math.lgamma(n) - k * math.log(n) - math.lgamma(n - k + 1)
    return math.exp(log_p)


def core_size_distribution(n: int) -> dict[int, Fraction | float]:
    return {k: core_size_pmf(n, k) for k in range(1, n + 1)}


def binomial_tail_stderr(p: float, trials: int) -> float:
    """Standard error of an empirical frequency with true value ``p``."""
    return math.sqrt(max(p * (1 - p), 0.0) / trials)
