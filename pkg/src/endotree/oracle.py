"""Exhaustive small-n ground truth.

Everything here enumerates mappings explicitly, so it is only usable for
``n <= 8``. Work can be split by the first image coordinate; partial
reports merge by summation and are identical for any split.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernels
from .bijection import (
    Variant,
    map_to_tree_with_report,
    restricted_renyi_joyal,
    restricted_renyi_joyal_inverse,
    tree_to_map,
)
from .graph_core import (
    Endofunction,
    core_decompose,
    cycle_count,
    edge_multiset,
    is_independent_set,
    tree_problem,
    unconnected_count,
)

MAX_N = 8


def _check_size(n: int, allow_large: bool) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > MAX_N and not allow_large:
        raise ValueError(f"n={n} exceeds the enumeration cap {MAX_N}; pass allow_large=True")


def restricted_count(n: int, k: int | None) -> int:
    return n**n if k is None else (n - k) ** k * n ** (n - k)


def independent_tree_count(n: int, k: int) -> int:
    """Labelled trees on ``n`` vertices in which ``{1..k}`` is independent."""
    return (n - k) ** (k - 1) * n ** (n - k - 1)


def _choices(n: int, k: int | None, first: int | None) -> list[range]:
    k = k or 0
    ranges = [range(k, n)] * k + [range(n)] * (n - k)
    if first is not None:
        ranges[0] = range(first, first + 1)
    return ranges


def enumerate_mappings(
    n: int, restricted_k: int | None = None, *, allow_large: bool = False, first: int | None = None
) -> Iterator[Endofunction]:
    """Every mapping (or every ``f`` with ``f(S) ⊂ S^c``) once, lexicographically.

    ``first`` pins ``f(0)`` to one value, for partitioned enumeration.
    """
    _check_size(n, allow_large)
    if restricted_k is not None and not 1 <= restricted_k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={restricted_k}")
    for image in itertools.product(*_choices(n, restricted_k, first)):
        yield Endofunction(np.array(image, dtype=np.int64))


@dataclass
class VerificationReport:
    n: int
    k: int | None
    variant: str
    maps_enumerated: int = 0
    distinct_images: int = 0
    tree_count: int = 0
    failures: list[tuple[tuple[int, ...], str]] = field(default_factory=list)
    delta_histogram: dict[int, int] = field(default_factory=dict)
    delta_by_cycles: dict[int, dict[int, int]] = field(default_factory=dict)
    rooting_multiplicities: dict[int, int] = field(default_factory=dict)

    @property
    def expected_maps(self) -> int:
        return restricted_count(self.n, self.k)

    @property
    def success(self) -> bool:
        return (
            not self.failures
            and self.maps_enumerated == self.expected_maps
            and self.distinct_images == self.maps_enumerated
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "variant": self.variant,
            "maps_enumerated": self.maps_enumerated,
            "distinct_images": self.distinct_images,
            "tree_count": self.tree_count,
            "success": self.success,
            "failures": [{"input": list(f), "property": p} for f, p in self.failures],
            "delta_histogram": {str(k): v for k, v in sorted(self.delta_histogram.items())},
            "delta_by_cycles": {
                str(c): {str(d): v for d, v in sorted(h.items())}
                for c, h in sorted(self.delta_by_cycles.items())
            },
            "rooting_multiplicities": {
                str(k): v for k, v in sorted(self.rooting_multiplicities.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


@dataclass
class _Partial:
    maps: int = 0
    images: set = field(default_factory=set)
    trees: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)
    delta_hist: Counter = field(default_factory=Counter)
    delta_by_c: dict = field(default_factory=dict)


def _scan(n: int, k: int | None, variant: str, first: int) -> _Partial:
    variant = Variant.parse(variant)
    out = _Partial()
    for f in enumerate_mappings(n, k, allow_large=True, first=first):
        out.maps += 1
        label = f.to_one_based()
        d, rep = map_to_tree_with_report(f, variant)
        problem = tree_problem(n, d.tree.edges)
        if problem:
            out.failures.append((label, f"image is not a tree: {problem}"))
            continue
        out.images.add(d.key)
        out.trees[d.tree.key] += 1
        back = tree_to_map(d, variant) if k is None else restricted_renyi_joyal_inverse(d, k)
        if back != f:
            out.failures.append((label, "inverse does not recover the mapping"))
        if rep.delta > rep.bound:
            out.failures.append((label, f"delta {rep.delta} exceeds bound {rep.bound}"))
        excess = rep.delta - (2 * rep.cycle_count - 2)
        out.delta_hist[excess] += 1
        out.delta_by_c.setdefault(rep.cycle_count, Counter())[rep.delta] += 1
        if k is not None:
            if not is_independent_set(d.tree, k):
                out.failures.append((label, "S not independent in image"))
            if d.root2 < k:
                out.failures.append((label, "second root inside S"))
            gap = abs(unconnected_count(d.tree, k) - unconnected_count(edge_multiset(f), k))
            if gap > 1:
                out.failures.append((label, f"unconnected counts differ by {gap}"))
    return out


def _verify(n: int, k: int | None, variant: Variant, workers: int) -> VerificationReport:
    firsts = list(_choices(n, k, None)[0])
    args = [(n, k, variant.value, a) for a in firsts]
    if workers > 1 and len(firsts) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(firsts))) as pool:
            parts = list(pool.map(_scan, *zip(*args)))
    else:
        parts = [_scan(*a) for a in args]
    report = VerificationReport(n, k, variant.value)
    images: set = set()
    trees: Counter = Counter()
    for p in parts:
        report.maps_enumerated += p.maps
        images |= p.images
        trees.update(p.trees)
        report.failures.extend(p.failures)
        for key, v in p.delta_hist.items():
            report.delta_histogram[key] = report.delta_histogram.get(key, 0) + v
        for c, h in p.delta_by_c.items():
            slot = report.delta_by_cycles.setdefault(c, {})
            for d, v in h.items():
                slot[d] = slot.get(d, 0) + v
    report.failures.sort()
    report.distinct_images = len(images)
    report.tree_count = len(trees)
    report.rooting_multiplicities = dict(Counter(trees.values()))
    expected_trees = n ** (n - 2) if n >= 2 else 1
    if k is None:
        if report.tree_count != expected_trees:
            report.failures.append(((), f"{report.tree_count} unrooted trees, expected {expected_trees}"))
        if set(trees.values()) != {n * n}:
            report.failures.append(((), "some tree does not have exactly n^2 rootings"))
    else:
        expected = independent_tree_count(n, k)
        if report.tree_count != expected:
            report.failures.append(((), f"{report.tree_count} unrooted trees, expected {expected}"))
        if set(trees.values()) != {n * (n - k)}:
            report.failures.append(((), "some tree does not have exactly n(n-k) rootings"))
    return report


def verify_bijection_exhaustive(
    n: int, variant: Variant | str = Variant.RENYI_JOYAL, workers: int = 1
) -> VerificationReport:
    """Check a bijection on all ``n^n`` mappings.

    Collects (never raises) failures of: tree validity, inverse round trip,
    the edge-delta bound, image distinctness, the ``n^{n-2}`` unrooted tree
    count and the ``n^2`` rootings per tree.
    """
    if n > 7:
        raise ValueError("exhaustive verification is capped at n = 7")
    _check_size(n, False)
    return _verify(n, None, Variant.parse(variant), workers)


def verify_restricted_exhaustive(n: int, k: int, workers: int = 1) -> VerificationReport:
    """Check the restricted bijection on all maps with ``f(S) ⊂ S^c``."""
    if n > 7:
        raise ValueError("exhaustive verification is capped at n = 7")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    return _verify(n, k, Variant.RENYI_JOYAL, workers)


def exact_statistic_distribution(
    n: int, k: int | None = None, statistic: str = "core_size"
) -> dict[int, Fraction]:
    """Exact pmf of a statistic under the uniform (or restricted) law.

    ``"N"`` is the unconnected count of the Rényi-Joyal tree and needs ``k``;
    ``"cycles"`` and ``"core_size"`` are read off the mapping.
    """
    if n > 7:
        raise ValueError("exact distributions are capped at n = 7")
    if statistic == "N":
        if k is None:
            raise ValueError("statistic N needs k")
        def value(f: Endofunction) -> int:
            return unconnected_count(restricted_renyi_joyal(f, k).tree, k)
    elif statistic == "cycles":
        value = cycle_count
    elif statistic == "core_size":
        def value(f: Endofunction) -> int:
            return core_decompose(f).core_size
    else:
        raise ValueError(f"unsupported statistic {statistic!r}")
    hist = Counter(value(f) for f in enumerate_mappings(n, k))
    total = sum(hist.values())
    return {v: Fraction(c, total) for v, c in sorted(hist.items())}


def exact_na_covariances(n: int, k: int) -> dict[tuple[int, int], Fraction]:
    """Exact ``Cov(min(N_x,M_x), min(N_y,M_y))`` for ``x < y`` in ``S^c`` (0-based)."""
    rows = np.array([_kernels.min_indicators(f.image, k) for f in enumerate_mappings(n, k)])
    total = rows.shape[0]
    sums = rows.sum(axis=0)
    out = {}
    for i in range(n - k):
        for j in range(i + 1, n - k):
            joint = int((rows[:, i] * rows[:, j]).sum())
            out[(i + k, j + k)] = Fraction(joint, total) - Fraction(int(sums[i]) * int(sums[j]), total * total)
    return out
