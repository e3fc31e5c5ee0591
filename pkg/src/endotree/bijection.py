"""Mapping <-> doubly rooted tree bijections.

Two variants share the same skeleton: keep every non-core edge
``{x, f(x)}`` and thread the core along a path. They differ only in the
order of that path.

* ``JOYAL`` orders the core as ``f(s_1), ..., f(s_m)`` for the sorted core
  ``s_1 < ... < s_m``.
* ``RENYI_JOYAL`` writes each cycle from its minimum and lists the cycles by
  decreasing minimum, so each cycle opens at a left-to-right minimum of the
  path.

The Rényi-Joyal tree differs from the mapping graph by exactly ``2c(f) - 1``
edges (``c`` cycle-closing edges dropped, ``c - 1`` connectors added).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph_core import (
    DoublyRootedTree,
    Endofunction,
    LabeledTree,
    RestrictionError,
    check_restricted,
    core_decompose,
    edge_multiset,
    is_independent_set,
    symmetric_difference_size,
    unconnected_count,
)


class Variant(str, enum.Enum):
    JOYAL = "joyal"
    RENYI_JOYAL = "renyi_joyal"

    @classmethod
    def parse(cls, value: "str | Variant") -> "Variant":
        if isinstance(value, cls):
            return value
        aliases = {"renyi": cls.RENYI_JOYAL, "renyi-joyal": cls.RENYI_JOYAL}
        return aliases.get(value) or cls(value)


@dataclass(frozen=True)
class DeltaReport:
    delta: int
    cycle_count: int
    bound: int
    core_size: int

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "cycle_count": self.cycle_count,
            "bound": self.bound,
            "core_size": self.core_size,
        }


def _assemble(f: Endofunction, path: np.ndarray, noncore: np.ndarray) -> DoublyRootedTree:
    core_edges = np.column_stack([path[:-1], path[1:]])
    tree = LabeledTree(f.n, np.concatenate([noncore, core_edges]))
    return DoublyRootedTree(tree, int(path[0]), int(path[-1]))


def renyi_joyal(f: Endofunction) -> DoublyRootedTree:
    """Rényi-Joyal tree of ``f``.

    Roots are the first and last vertex of the core path: the minimum of the
    cycle with the largest minimum, and the last vertex of the cycle holding
    the overall smallest core vertex.

    >>> f = Endofunction.from_one_based([3, 7, 8, 6, 2, 1, 2, 1])
    >>> d = renyi_joyal(f)
    >>> d.root1 + 1, d.root2 + 1
    (2, 8)
    """
    edges, r1, r2, _ = _kernels.renyi_tree_edges(f.image)
    return DoublyRootedTree(LabeledTree(f.n, edges), int(r1), int(r2))


def joyal(f: Endofunction) -> DoublyRootedTree:
    """Joyal's original tree: the core path is ``f`` applied to the sorted core."""
    dec = core_decompose(f)
    return _assemble(f, f.image[dec.core], dec.noncore_edges)


def _path_and_parents(d: DoublyRootedTree) -> tuple[np.ndarray, np.ndarray]:
    parent = _kernels.bfs_parents(d.n, d.tree.edges, d.root1)
    path = [d.root2]
    while path[-1] != d.root1:
        path.append(int(parent[path[-1]]))
    return np.array(path[::-1], dtype=np.int64), parent


def renyi_joyal_inverse(d: DoublyRootedTree) -> Endofunction:
    """The unique mapping ``f`` with ``renyi_joyal(f) == d``.

    Off-path vertices point to their neighbour toward the root path. Read
    from ``root1``, the path splits into cycles just before each new
    left-to-right minimum; note that maximal increasing runs would be wrong,
    since ``(1 3 2)`` is a single cycle.
    """
    return Endofunction(_kernels.renyi_inverse(d.n, d.tree.edges, d.root1, d.root2))


def joyal_inverse(d: DoublyRootedTree) -> Endofunction:
    """The unique mapping ``f`` with ``joyal(f) == d``."""
    path, parent = _path_and_parents(d)
    image = parent.copy()
    # the i-th smallest path vertex maps to the i-th vertex along the path
    image[np.sort(path)] = path
    return Endofunction(image)


def map_to_tree(f: Endofunction, variant: Variant | str = Variant.RENYI_JOYAL) -> DoublyRootedTree:
    variant = Variant.parse(variant)
    return renyi_joyal(f) if variant is Variant.RENYI_JOYAL else joyal(f)


def tree_to_map(d: DoublyRootedTree, variant: Variant | str = Variant.RENYI_JOYAL) -> Endofunction:
    variant = Variant.parse(variant)
    return renyi_joyal_inverse(d) if variant is Variant.RENYI_JOYAL else joyal_inverse(d)


def map_to_tree_with_report(
    f: Endofunction, variant: Variant | str = Variant.RENYI_JOYAL
) -> tuple[DoublyRootedTree, DeltaReport]:
    """Apply a bijection and measure how far the tree is from the mapping graph.

    ``delta`` counts undirected edges with multiplicity. The reported bound is
    ``2c(f)`` for Rényi-Joyal and ``2|M(f)|`` for Joyal.
    """
    variant = Variant.parse(variant)
    dec = core_decompose(f)
    d = map_to_tree(f, variant)
    delta = symmetric_difference_size(edge_multiset(f), d.tree.as_multiset())
    c = dec.cycle_count
    bound = 2 * c if variant is Variant.RENYI_JOYAL else 2 * dec.core_size
    return d, DeltaReport(delta, c, bound, dec.core_size)


@dataclass(frozen=True)
class RestrictedReport:
    """Diagnostics of one restricted transfer.

    ``cycles_min_outside`` is the number of cycles whose minimum lies
    outside ``S``; ``n_tree`` and ``n_map`` are the two unconnected counts.
    """

    cycles_min_outside: int
    n_tree: int
    n_map: int


def restricted_renyi_joyal(
    f: Endofunction, k: int, *, with_report: bool = False
) -> DoublyRootedTree | tuple[DoublyRootedTree, RestrictedReport]:
    """Rényi-Joyal on maps with ``f(S) ⊂ S^c``, ``S = {0..k-1}``.

    The image has ``S`` independent, ``root2`` outside ``S``, and its
    unconnected count within 1 of the mapping's. All three are asserted.
    """
    if not 1 <= k < f.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={f.n}")
    check_restricted(f, k)
    d = renyi_joyal(f)
    n_tree = unconnected_count(d.tree, k)
    n_map = unconnected_count(edge_multiset(f), k)
    if not is_independent_set(d.tree, k):
        raise AssertionError("S is not independent in the image tree")
    if d.root2 < k:
        raise AssertionError("second root fell inside S")
    if abs(n_tree - n_map) > 1:
        raise AssertionError(f"unconnected counts differ by {abs(n_tree - n_map)}")
    if not with_report:
        return d
    dec = core_decompose(f)
    minima = dec.path[dec.offsets[:-1]]
    return d, RestrictedReport(int(np.count_nonzero(minima >= k)), n_tree, n_map)


def in_restricted_image(d: DoublyRootedTree, k: int) -> bool:
    """Membership in the image of the restricted bijection."""
    return 1 <= k < d.n and d.root2 >= k and is_independent_set(d.tree, k)


def restricted_renyi_joyal_inverse(d: DoublyRootedTree, k: int) -> Endofunction:
    if not 1 <= k < d.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={d.n}")
    if d.root2 < k:
        raise RestrictionError(f"second root {d.root2 + 1} lies in S = {{1..{k}}}")
    if not is_independent_set(d.tree, k):
        raise RestrictionError(f"S = {{1..{k}}} is not independent in the tree")
    f = renyi_joyal_inverse(d)
    check_restricted(f, k)
    return f
