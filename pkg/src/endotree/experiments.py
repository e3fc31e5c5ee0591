"""Seeded Monte Carlo experiments comparing empirical tails with bounds.

Trial ``i`` always draws from stream ``(seed, i)``. Workers receive
contiguous trial ranges and return per-trial values; results are
concatenated in trial order, so reports do not depend on ``workers``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .analysis import (
    azuma_comparison_bound,
    core_size_pmf,
    cycle_tail_bound,
    expected_unconnected,
    independent_set_bounds,
)
from .sampler import DEFAULT_SEED, SeededRng, mapping_image, restricted_image

CSV_HEADER = [
    "n", "k", "trials", "seed", "s",
    "emp_lower", "emp_upper", "emp_two_sided",
    "bound_lower", "bound_upper", "bound_two_sided", "azuma_bound",
]
DEFAULT_SLACK = 1.1


def parse_grid(text: str) -> list[float]:
    """``"a:b:step"`` to the inclusive list ``a, a+step, ..., b``."""
    try:
        a, b, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise ValueError(f"grid must look like a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise ValueError(f"empty grid {text!r}")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [round(a + i * step, 12) for i in range(count)]


@dataclass
class TailRow:
    s: float
    emp_lower: float | None
    emp_upper: float | None
    emp_two_sided: float | None
    bound_lower: float | None
    bound_upper: float | None
    bound_two_sided: float | None
    azuma_bound: float | None


@dataclass
class ExperimentReport:
    kind: str
    n: int
    k: int | None
    trials: int
    seed: int
    rows: list[TailRow]
    mean: float
    variance: float
    expected: float | None = None
    slack: float = 1.0
    extra: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow(
                [self.n, "" if self.k is None else self.k, self.trials, self.seed]
                + [_fmt(getattr(r, name)) for name in CSV_HEADER[4:]]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2, sort_keys=True)


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and math.isnan(obj):
        return None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, min(workers, trials))
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_trials(task, args: tuple, trials: int, workers: int) -> np.ndarray:
    chunks = _chunks(trials, workers)
    if len(chunks) == 1:
        return task(*args, *chunks[0])
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = pool.map(task, *zip(*[(*args, a, b) for a, b in chunks]))
        return np.concatenate(list(parts))


def _default_workers(workers: int | None) -> int:
    return workers or os.cpu_count() or 1


def _tree_n_chunk(n: int, k: int, seed: int, start: int, stop: int) -> np.ndarray:
    out = np.empty(stop - start, dtype=np.int64)
    for i in range(start, stop):
        gen = SeededRng(seed, i).generator()
        out[i - start] = _kernels.tree_unconnected(restricted_image(n, k, gen), k)
    return out


def tree_unconnected_samples(
    n: int, k: int, trials: int, seed: int = DEFAULT_SEED, workers: int | None = 1
) -> np.ndarray:
    """``N`` for ``trials`` independent uniform trees with ``S`` independent."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    if trials < 1:
        raise ValueError("trials must be positive")
    return _run_trials(_tree_n_chunk, (n, k, seed), trials, _default_workers(workers))


def _summary(values: np.ndarray) -> tuple[float, float]:
    mean = float(values.mean())
    var = float(values.var(ddof=1)) if values.size > 1 else 0.0
    return mean, var


def run_concentration_experiment(
    n: int,
    k: int,
    trials: int,
    s_grid: list[float],
    seed: int = DEFAULT_SEED,
    workers: int | None = 1,
) -> ExperimentReport:
    """Empirical tails of ``N`` on uniform trees with ``S`` independent.

    For every ``s`` the three events are taken exactly as the bounds state
    them, including the ``+1`` slack: ``|N - EN| > s EN + 1``,
    ``N < (1-s) EN - 1`` and ``N > (1+s) EN + 1``, with ``EN`` the exact mean.
    """
    values = tree_unconnected_samples(n, k, trials, seed, workers)
    en = float(expected_unconnected(n, k).exact)
    rows = []
    for s in sorted(s_grid):
        b = independent_set_bounds(n, k, s)
        rows.append(
            TailRow(
                s=s,
                emp_lower=float(np.mean(values < (1 - s) * en - 1)),
                emp_upper=float(np.mean(values > (1 + s) * en + 1)),
                emp_two_sided=float(np.mean(np.abs(values - en) > s * en + 1)),
                bound_lower=b.lower,
                bound_upper=b.upper,
                bound_two_sided=b.two_sided,
                azuma_bound=azuma_comparison_bound(n, k, s),
            )
        )
    mean, var = _summary(values)
    return ExperimentReport("concentration", n, k, trials, seed, rows, mean, var, expected=en)


def _cycle_chunk(n: int, k: int, seed: int, start: int, stop: int) -> np.ndarray:
    # column 0: c(G); column 1: c(r(G)) when restricted, else c(G)
    out = np.empty((stop - start, 2), dtype=np.int64)
    for i in range(start, stop):
        gen = SeededRng(seed, i).generator()
        if k:
            image = restricted_image(n, k, gen)
            out[i - start, 0] = _kernels.count_cycles(image)
            out[i - start, 1] = _kernels.count_cycles(_kernels.collapse(image, k))
        else:
            c = _kernels.count_cycles(mapping_image(n, gen))
            out[i - start] = c
    return out


def run_cycle_experiment(
    n: int,
    trials: int,
    t_grid: list[float],
    seed: int = DEFAULT_SEED,
    restricted_k: int | None = None,
    workers: int | None = 1,
    slack: float = DEFAULT_SLACK,
) -> ExperimentReport:
    """Empirical ``P(C > (1+t) log m)`` against the cycle tail bound.

    ``m = n``, or ``n - k`` for restricted mappings. In the restricted case
    every trial also checks that collapsing onto ``S^c`` keeps the cycle
    count; ``extra["collapse_mismatches"]`` counts failures. ``slack`` is the
    multiplier standing in for the bound's asymptotic ``1 + o(1)`` factor.
    """
    k = restricted_k
    if k is not None and not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    if trials < 1:
        raise ValueError("trials must be positive")
    m = n if k is None else n - k
    if m < 2:
        raise ValueError("need at least two vertices outside S")
    counts = _run_trials(_cycle_chunk, (n, k or 0, seed), trials, _default_workers(workers))
    cycles = counts[:, 0]
    rows = []
    for t in sorted(t_grid):
        rows.append(
            TailRow(
                s=t,
                emp_lower=None,
                emp_upper=float(np.mean(cycles > (1 + t) * math.log(m))),
                emp_two_sided=None,
                bound_lower=None,
                bound_upper=cycle_tail_bound(n, t, k),
                bound_two_sided=None,
                azuma_bound=None,
            )
        )
    mean, var = _summary(cycles)
    extra = {"asymptotic_bound": True}
    if k is not None:
        extra["collapse_mismatches"] = int(np.count_nonzero(counts[:, 0] != counts[:, 1]))
    return ExperimentReport("cycles", n, k, trials, seed, rows, mean, var, slack=slack, extra=extra)


def _core_size_chunk(n: int, seed: int, start: int, stop: int) -> np.ndarray:
    out = np.empty(stop - start, dtype=np.int64)
    for i in range(start, stop):
        image = mapping_image(n, SeededRng(seed, i).generator())
        out[i - start] = np.count_nonzero(_kernels.core_mask(image))
    return out


@dataclass
class CoreSizeReport:
    n: int
    trials: int
    seed: int
    empirical: dict[int, float]
    pmf: dict[int, float]

    def to_csv(self) -> str:
        lines = ["n,trials,seed,core_size,empirical,pmf"]
        for size in sorted(self.pmf):
            lines.append(
                f"{self.n},{self.trials},{self.seed},{size},"
                f"{_fmt(self.empirical.get(size, 0.0))},{_fmt(self.pmf[size])}"
            )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2, sort_keys=True)


def run_core_size_experiment(
    n: int, trials: int, seed: int = DEFAULT_SEED, workers: int | None = 1
) -> CoreSizeReport:
    """Histogram of the core size of uniform mappings next to its exact law."""
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be positive")
    sizes = _run_trials(_core_size_chunk, (n, seed), trials, _default_workers(workers))
    values, counts = np.unique(sizes, return_counts=True)
    empirical = {int(v): c / trials for v, c in zip(values, counts)}
    pmf = {j: float(core_size_pmf(n, j)) for j in range(1, n + 1)}
    # the far tail is numerically zero; keep the table readable
    pmf = {j: p for j, p in pmf.items() if p > 1e-300 or j in empirical}
    return CoreSizeReport(n, trials, seed, empirical, pmf)


@dataclass
class NACheck:
    n: int
    k: int
    trials: int
    seed: int
    max_covariance: float
    pairs: int
    vacuous: bool
    tolerance: float

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2, sort_keys=True)


def na_covariance_check(n: int, k: int, trials: int, seed: int = DEFAULT_SEED) -> NACheck:
    """Largest sample covariance between ``min(N_x, M_x)`` and ``min(N_y, M_y)``.

    Negative association predicts every pair is ``<= 0``; ``tolerance`` is
    the ``3/sqrt(trials)`` Monte Carlo allowance. A single stream feeds all
    trials, drawn as one ``(trials, n)`` block.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    tol = 3 / math.sqrt(trials)
    if n - k < 2:
        return NACheck(n, k, trials, seed, 0.0, 0, True, tol)
    gen = SeededRng(seed, 0).generator()
    images = np.empty((trials, n), dtype=np.int64)
    images[:, :k] = gen.integers(k, n, size=(trials, k))
    images[:, k:] = gen.integers(0, n, size=(trials, n - k))
    hit = np.zeros((trials, n), dtype=bool)
    np.put_along_axis(hit, images[:, :k], True, axis=1)
    ind = (~hit[:, k:] & (images[:, k:] >= k)).astype(float)
    cov = np.cov(ind, rowvar=False)
    off = cov[~np.eye(n - k, dtype=bool)]
    return NACheck(n, k, trials, seed, float(off.max()), (n - k) * (n - k - 1) // 2, False, tol)
