"""Text and JSON formats, always with 1-based labels.

* mapping: one line of ``n`` integers, entry ``i`` is ``f(i)``
* tree: a line ``n`` followed by ``n - 1`` lines ``u v``
* doubly rooted tree JSON: ``{"n", "root1", "root2", "edges"}``, edges sorted
"""

from __future__ import annotations

import json

import numpy as np

from .graph_core import DoublyRootedTree, Endofunction, LabeledTree, tree_problem


class FormatError(ValueError):
    pass


def format_mapping(f: Endofunction) -> str:
    return " ".join(str(v) for v in f.to_one_based()) + "\n"


def parse_mapping(text: str) -> Endofunction:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise FormatError(f"a mapping is one line of integers, got {len(lines)} lines")
    try:
        values = [int(tok) for tok in lines[0].split()]
    except ValueError:
        raise FormatError("mapping entries must be integers") from None
    n = len(values)
    bad = [v for v in values if not 1 <= v <= n]
    if bad:
        raise FormatError(f"mapping entry {bad[0]} outside 1..{n}")
    return Endofunction.from_one_based(values)


def parse_mappings(text: str) -> list[Endofunction]:
    return [parse_mapping(ln) for ln in text.splitlines() if ln.strip()]


def format_tree(t: LabeledTree) -> str:
    lines = [str(t.n)] + [f"{u + 1} {v + 1}" for u, v in t.canonical_edges]
    return "\n".join(lines) + "\n"


def _parse_tree_lines(lines: list[str]) -> LabeledTree:
    try:
        n = int(lines[0])
        edges = [tuple(int(tok) for tok in ln.split()) for ln in lines[1:]]
    except (ValueError, IndexError):
        raise FormatError("tree text must be 'n' then lines 'u v' of integers") from None
    if any(len(e) != 2 for e in edges):
        raise FormatError("every edge line needs exactly two vertices")
    arr = np.array(edges, dtype=np.int64).reshape(-1, 2) - 1
    problem = tree_problem(n, arr)
    if problem:
        raise FormatError(problem)
    return LabeledTree(n, arr)


def parse_tree(text: str) -> LabeledTree:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty tree input")
    return _parse_tree_lines(lines)


def parse_trees(text: str) -> list[LabeledTree]:
    """Several trees in tree text format, back to back."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    out = []
    while lines:
        try:
            n = int(lines[0])
        except ValueError:
            raise FormatError(f"expected a vertex count, got {lines[0]!r}") from None
        out.append(_parse_tree_lines(lines[:n]))
        lines = lines[n:]
    return out


def drt_to_dict(d: DoublyRootedTree) -> dict:
    return {
        "n": d.n,
        "root1": d.root1 + 1,
        "root2": d.root2 + 1,
        "edges": [[int(u) + 1, int(v) + 1] for u, v in d.tree.canonical_edges],
    }


def drt_from_dict(obj: dict) -> DoublyRootedTree:
    try:
        n = int(obj["n"])
        r1, r2 = int(obj["root1"]) - 1, int(obj["root2"]) - 1
        edges = np.array(obj["edges"], dtype=np.int64).reshape(-1, 2) - 1
    except (KeyError, TypeError, ValueError):
        raise FormatError("doubly rooted tree JSON needs n, root1, root2, edges") from None
    problem = tree_problem(n, edges)
    if problem:
        raise FormatError(problem)
    if not (0 <= r1 < n and 0 <= r2 < n):
        raise FormatError(f"roots must lie in 1..{n}")
    return DoublyRootedTree(LabeledTree(n, edges), r1, r2)


def format_drt_json(d: DoublyRootedTree, **extra) -> str:
    return json.dumps({**drt_to_dict(d), **extra}) + "\n"


def parse_drt_json(text: str) -> DoublyRootedTree:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise FormatError("doubly rooted tree JSON must be an object")
    return drt_from_dict(obj)
