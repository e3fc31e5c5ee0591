"""Seeded sampling of mappings and uniform labelled trees.

Randomness comes from numpy's Philox4x64 counter-based generator. The
128-bit key is derived once from ``master_seed`` through ``SeedSequence``;
``stream_index`` occupies the third 64-bit counter word, so every stream
owns a disjoint block of 2**128 counter values and streams need no
sequential hand-off. Integers are drawn with ``Generator.integers``, which
uses unbiased rejection (no modulo bias).

Golden outputs are stable as long as numpy keeps Philox and the bounded
integer algorithm unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .bijection import restricted_renyi_joyal
from .graph_core import Endofunction, LabeledTree

DEFAULT_SEED = 20201216


@lru_cache(maxsize=64)
def _philox_key(master_seed: int) -> tuple[int, int]:
    state = np.random.SeedSequence(master_seed).generate_state(2, dtype=np.uint64)
    return int(state[0]), int(state[1])


@dataclass(frozen=True)
class SeededRng:
    master_seed: int = DEFAULT_SEED
    stream_index: int = 0

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if not 0 <= self.stream_index < 2**64:
            raise ValueError("stream_index must be a 64-bit unsigned integer")

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        k0, k1 = _philox_key(self.master_seed)
        key = np.array([k0, k1], dtype=np.uint64)
        counter = np.array([0, 0, self.stream_index, 0], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key, counter=counter))

    def stream(self, index: int) -> "SeededRng":
        return SeededRng(self.master_seed, index)


RngLike = SeededRng | np.random.Generator


def _gen(rng: RngLike) -> np.random.Generator:
    return rng.generator() if isinstance(rng, SeededRng) else rng


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")


def mapping_image(n: int, gen: np.random.Generator) -> np.ndarray:
    return gen.integers(0, n, size=n, dtype=np.int64)


def restricted_image(n: int, k: int, gen: np.random.Generator) -> np.ndarray:
    image = np.empty(n, dtype=np.int64)
    image[:k] = gen.integers(k, n, size=k, dtype=np.int64)
    image[k:] = gen.integers(0, n, size=n - k, dtype=np.int64)
    return image


def sample_mapping(n: int, rng: RngLike) -> Endofunction:
    """Uniform endofunction: ``n`` independent uniform draws from ``{0..n-1}``.

    A ``SeededRng`` restarts its stream on every call; pass a
    ``numpy.random.Generator`` to draw several samples in sequence.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return Endofunction(mapping_image(n, _gen(rng)))


def sample_restricted_mapping(n: int, k: int, rng: RngLike) -> Endofunction:
    """Uniform mapping conditioned on ``f(S) ⊂ S^c``.

    The conditional law is a product: ``f(x)`` uniform on ``S^c`` for
    ``x`` in ``S``, uniform on everything otherwise. No rejection needed.
    """
    _check_nk(n, k)
    return Endofunction(restricted_image(n, k, _gen(rng)))


def tree_from_image(image: np.ndarray) -> LabeledTree:
    edges, _, _, _ = _kernels.renyi_tree_edges(image)
    return LabeledTree(image.size, edges)


def sample_tree(n: int, rng: RngLike) -> LabeledTree:
    """Uniform labelled tree on ``n`` vertices in O(n).

    Draw a uniform mapping, take its Rényi-Joyal tree and drop the roots.
    Every tree has exactly ``n**2`` preimages, so the result is uniform.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return tree_from_image(mapping_image(n, _gen(rng)))


def sample_independent_tree(n: int, k: int, rng: RngLike) -> LabeledTree:
    """Uniform tree among those where ``S = {0..k-1}`` is independent.

    Each such tree carries exactly ``n(n-k)`` admissible root pairs, so
    dropping the roots of a uniform restricted image keeps uniformity.
    """
    _check_nk(n, k)
    f = Endofunction(restricted_image(n, k, _gen(rng)))
    return restricted_renyi_joyal(f, k).tree
