"""Endofunctions, their functional graphs, and labelled trees.

Vertices are 0-based internally. The ``from_one_based`` constructors and the
``formats`` module translate to and from the 1-based labels used in text formats.
Throughout, ``S`` is the prefix ``{0, ..., k-1}`` (``{1, ..., k}`` in 1-based
labels); use :func:`prefix_relabelling` to move an arbitrary subset there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels


class InvalidTreeError(ValueError):
    """Raised when an edge list is not a labelled tree."""


class RestrictionError(ValueError):
    """Raised when a mapping violates ``f(S) ⊂ S^c``."""


def _edge_keys(n: int, edges: np.ndarray) -> np.ndarray:
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    return np.sort(lo * n + hi)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Endofunction:
    """A total map on ``{0, ..., n-1}``; ``image[x]`` holds ``f(x)``."""

    image: np.ndarray

    def __post_init__(self):
        image = _frozen(self.image)
        if image.ndim != 1 or image.size == 0:
            raise ValueError("an endofunction needs a non-empty 1-d image")
        n = image.size
        if image.min() < 0 or image.max() >= n:
            raise ValueError(f"image entries must lie in [0, {n})")
        object.__setattr__(self, "image", image)

    @classmethod
    def from_one_based(cls, values: Iterable[int]) -> "Endofunction":
        return cls(np.asarray(list(values), dtype=np.int64) - 1)

    @classmethod
    def identity(cls, n: int) -> "Endofunction":
        return cls(np.arange(n))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "Endofunction":
        return cls(np.full(n, value))

    @property
    def n(self) -> int:
        return int(self.image.size)

    def __call__(self, x: int) -> int:
        return int(self.image[x])

    def to_one_based(self) -> tuple[int, ...]:
        return tuple(int(v) + 1 for v in self.image)

    def __eq__(self, other):
        if not isinstance(other, Endofunction):
            return NotImplemented
        return np.array_equal(self.image, other.image)

    def __hash__(self):
        return hash(self.image.tobytes())

    def __repr__(self):
        return f"Endofunction.from_one_based({list(self.to_one_based())})"


@dataclass(frozen=True, eq=False)
class EdgeMultiset:
    """Undirected edges with multiplicity; self-loops allowed.

    Rows of ``edges`` are stored as ``(min, max)``. Duplicated rows are
    repeated edges.
    """

    n: int
    edges: np.ndarray

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= self.n):
            raise ValueError(f"edge endpoints must lie in [0, {self.n})")
        edges = np.sort(edges, axis=1)
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

    def __len__(self):
        return int(self.edges.shape[0])

    def counts(self) -> dict[tuple[int, int], int]:
        pairs, mult = np.unique(self.edges, axis=0, return_counts=True)
        return {(int(u), int(v)): int(c) for (u, v), c in zip(pairs, mult)}

    def keys(self) -> np.ndarray:
        """Sorted integer encodings ``min * n + max`` of the edges."""
        return np.sort(self.edges[:, 0] * self.n + self.edges[:, 1])


@dataclass(frozen=True, eq=False)
class LabeledTree:
    """Undirected tree on ``{0, ..., n-1}`` as an ``(n-1, 2)`` edge array.

    The constructor does not check the tree property; bijection outputs are
    trees by construction. Use :meth:`from_edges` for untrusted input.
    """

    n: int
    edges: np.ndarray

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        edges.setflags(write=False)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges) -> "LabeledTree":
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        validate_tree(n, edges)
        return cls(n, edges)

    @classmethod
    def from_one_based(cls, n: int, edges) -> "LabeledTree":
        return cls.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2) - 1)

    @cached_property
    def _sorted_keys(self) -> np.ndarray:
        return _edge_keys(self.n, self.edges)

    @property
    def canonical_edges(self) -> np.ndarray:
        """Edges as ``(min, max)`` rows in lexicographic order."""
        keys = self._sorted_keys
        return np.column_stack([keys // self.n, keys % self.n])

    @cached_property
    def key(self) -> bytes:
        return self._sorted_keys.tobytes()

    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR ``(indptr, indices)``; neighbours of ``v`` are ``indices[indptr[v]:indptr[v+1]]``."""
        return _kernels.adjacency(self.n, self.edges)

    def neighbours(self, v: int) -> np.ndarray:
        indptr, indices = self.adjacency()
        return indices[indptr[v]:indptr[v + 1]]

    def as_multiset(self) -> EdgeMultiset:
        return EdgeMultiset(self.n, self.edges)

    def __eq__(self, other):
        if not isinstance(other, LabeledTree):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))


@dataclass(frozen=True, eq=False)
class DoublyRootedTree:
    tree: LabeledTree
    root1: int
    root2: int

    def __post_init__(self):
        for r in (self.root1, self.root2):
            if not 0 <= r < self.tree.n:
                raise ValueError(f"root {r} outside [0, {self.tree.n})")
        object.__setattr__(self, "root1", int(self.root1))
        object.__setattr__(self, "root2", int(self.root2))

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def key(self) -> bytes:
        return self.tree.key + np.array([self.root1, self.root2]).tobytes()

    def __eq__(self, other):
        if not isinstance(other, DoublyRootedTree):
            return NotImplemented
        return (self.tree, self.root1, self.root2) == (other.tree, other.root1, other.root2)

    def __hash__(self):
        return hash((self.tree, self.root1, self.root2))


@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    """Cyclic structure of a mapping.

    ``path`` lists the core in Rényi order: every cycle starts at its
    minimum and follows ``f``, and cycles appear by decreasing minimum.
    Cycle ``i`` is ``path[offsets[i]:offsets[i+1]]``.
    """

    n: int
    on_core: np.ndarray
    path: np.ndarray
    offsets: np.ndarray
    noncore_edges: np.ndarray

    @property
    def core(self) -> np.ndarray:
        return np.flatnonzero(self.on_core)

    @property
    def cycles(self) -> list[np.ndarray]:
        return [self.path[a:b] for a, b in zip(self.offsets[:-1], self.offsets[1:])]

    @property
    def cycle_count(self) -> int:
        return int(self.offsets.size - 1)

    @property
    def core_size(self) -> int:
        return int(self.path.size)


def core_decompose(f: Endofunction) -> CoreDecomposition:
    """Core, min-rotated cycles and non-core edges of ``f`` in O(n)."""
    on_core = _kernels.core_mask(f.image)
    path, offsets = _kernels.renyi_path(f.image, on_core)
    off = np.flatnonzero(~on_core)
    noncore = np.column_stack([off, f.image[off]])
    for a in (on_core, path, offsets, noncore):
        a.setflags(write=False)
    return CoreDecomposition(f.n, on_core, path, offsets, noncore)


def cycle_count(f: Endofunction) -> int:
    return int(_kernels.count_cycles(f.image))


def verify_core_permutation(f: Endofunction) -> bool:
    """True iff ``f`` restricted to its core is a permutation of the core."""
    core = np.flatnonzero(_kernels.core_mask(f.image))
    images = f.image[core]
    return bool(np.array_equal(np.sort(images), core))


def check_restricted(f: Endofunction, k: int) -> None:
    if not 0 <= k <= f.n:
        raise ValueError(f"k={k} outside [0, {f.n}]")
    if k and f.image[:k].min() < k:
        s = int(np.argmax(f.image[:k] < k))
        raise RestrictionError(f"f({s + 1}) = {f(s) + 1} lies in S = {{1..{k}}}")


def collapse_to_complement(g: Endofunction, k: int) -> Endofunction:
    """Collapse a restricted map onto ``S^c``, relabelled to ``{0..n-k-1}``.

    ``x`` goes to ``g(x)`` when that is outside ``S`` and to ``g(g(x))``
    otherwise. Cycles survive unchanged because no cycle lies inside ``S``.
    """
    if not 1 <= k < g.n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={g.n}")
    check_restricted(g, k)
    return Endofunction(_kernels.collapse(g.image, k))


def edge_multiset(f: Endofunction) -> EdgeMultiset:
    """Undirected ``{x, f(x)}`` for every ``x``, repeats kept."""
    return EdgeMultiset(f.n, np.column_stack([np.arange(f.n), f.image]))


def symmetric_difference_size(a: EdgeMultiset, b: EdgeMultiset) -> int:
    """Sum over pairs of ``|mult_a - mult_b|``."""
    if a.n != b.n:
        raise ValueError(f"vertex counts differ: {a.n} != {b.n}")
    return int(_kernels.sorted_multiset_distance(a.keys(), b.keys()))


def unconnected_count(graph: EdgeMultiset | LabeledTree, k: int) -> int:
    """Number of vertices outside ``S`` with no edge into ``S``.

    Self-loops never count as adjacency.
    """
    n = graph.n
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    u, v = graph.edges[:, 0], graph.edges[:, 1]
    touched = np.zeros(n, dtype=bool)
    touched[v[u < k]] = True
    touched[u[v < k]] = True
    return int(np.count_nonzero(~touched[k:]))


def tree_problem(n: int, edges) -> str | None:
    """First violated tree property of an edge list, or None."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if n < 1:
        return "a tree needs at least one vertex"
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        return f"edge endpoint outside [1, {n}]"
    if edges.shape[0] != n - 1:
        return f"expected {n - 1} edges, got {edges.shape[0]}"
    loops = edges[:, 0] == edges[:, 1]
    if loops.any():
        x = int(edges[np.argmax(loops), 0]) + 1
        return f"self-loop at vertex {x}"
    keys = _edge_keys(n, edges)
    if np.any(keys[1:] == keys[:-1]):
        return "duplicate edge"
    if n > 1 and (_kernels.bfs_parents(n, edges, 0) < 0).any():
        return "graph is disconnected"
    return None


def validate_tree(n: int, edges) -> None:
    problem = tree_problem(n, edges)
    if problem is not None:
        raise InvalidTreeError(problem)


def path_between(t: LabeledTree, a: int, b: int) -> np.ndarray:
    """Vertices of the unique simple path from ``a`` to ``b`` inclusive."""
    for v in (a, b):
        if not 0 <= v < t.n:
            raise ValueError(f"vertex {v} outside [0, {t.n})")
    parent = _kernels.bfs_parents(t.n, t.edges, b)
    out = [a]
    while out[-1] != b:
        out.append(int(parent[out[-1]]))
    return np.array(out, dtype=np.int64)


def is_independent_set(t: LabeledTree | EdgeMultiset, k: int) -> bool:
    """True iff no edge has both endpoints in ``S``."""
    e = t.edges
    return not bool(np.any((e[:, 0] < k) & (e[:, 1] < k)))


def prefix_relabelling(n: int, subset: Sequence[int]) -> np.ndarray:
    """Permutation ``sigma`` sending ``subset`` onto ``{0..len(subset)-1}``.

    Order inside and outside the subset is preserved. Apply it with
    :func:`relabel`.
    """
    subset = sorted(set(int(s) for s in subset))
    rest = [v for v in range(n) if v not in set(subset)]
    sigma = np.empty(n, dtype=np.int64)
    sigma[subset + rest] = np.arange(n)
    return sigma


def relabel(obj, sigma: np.ndarray):
    """Conjugate a mapping, or rename the vertices of a graph, by ``sigma``."""
    sigma = np.asarray(sigma, dtype=np.int64)
    if isinstance(obj, Endofunction):
        image = np.empty_like(obj.image)
        image[sigma] = sigma[obj.image]
        return Endofunction(image)
    if isinstance(obj, EdgeMultiset):
        return EdgeMultiset(obj.n, sigma[obj.edges])
    if isinstance(obj, LabeledTree):
        return LabeledTree(obj.n, sigma[obj.edges])
    if isinstance(obj, DoublyRootedTree):
        return DoublyRootedTree(relabel(obj.tree, sigma), sigma[obj.root1], sigma[obj.root2])
    raise TypeError(f"cannot relabel {type(obj).__name__}")
