"""Shared brute-force oracles.

These are deliberately naive and share no code with the package: cores by
iterating ``f`` n times, trees by Prüfer decoding, adjacency by set scans.
"""

import heapq
import itertools

import pytest


def brute_core(image):
    """Cyclic vertices by definition: ``f^j(x) = x`` for some ``1 <= j <= n``."""
    n = len(image)
    core = set()
    for x in range(n):
        y = x
        for _ in range(n):
            y = image[y]
            if y == x:
                core.add(x)
                break
    return core


def brute_cycles(image):
    """Cycles as sets of vertices."""
    core = brute_core(image)
    out, seen = [], set()
    for x in sorted(core):
        if x in seen:
            continue
        cyc, y = [], x
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = image[y]
        out.append(cyc)
    return out


def prufer_decode(seq, n):
    """Tree edges (0-based) of a Prüfer sequence of length ``n - 2``."""
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, v), max(leaf, v)))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((min(u, w), max(u, w)))
    return tuple(sorted(edges))


def all_trees(n):
    """Every labelled tree on ``n`` vertices as a sorted edge tuple."""
    if n == 1:
        return [()]
    if n == 2:
        return [((0, 1),)]
    return [prufer_decode(seq, n) for seq in itertools.product(range(n), repeat=n - 2)]


def brute_unconnected(n, edges, k):
    adjacent = set()
    for u, v in edges:
        if u < k <= v:
            adjacent.add(v)
        if v < k <= u:
            adjacent.add(u)
    return (n - k) - len(adjacent)


def brute_independent(edges, k):
    return all(not (u < k and v < k) for u, v in edges)


def canon(edges):
    return tuple(sorted((int(min(u, v)), int(max(u, v))) for u, v in edges))


def one_based(edges):
    return {frozenset((int(u) + 1, int(v) + 1)) for u, v in edges}


@pytest.fixture
def eight_point_map():
    from endotree import Endofunction

    return Endofunction.from_one_based([3, 7, 8, 6, 2, 1, 2, 1])


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion and return the verdict."""

    def record(number, title, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
        _ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
