"""Brute-force ground truth: subset-scan subtree counts and complete families.

Nothing here shares code with :mod:`subtreemax.counting`; the point is to
have a second, literal route to every number.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .tree import (
    DegreeSequence,
    DegreeSequenceError,
    Tree,
    canonical_code,
    degree_sequence_of,
)

ORACLE_MAX_VERTICES = 24
FAMILY_MAX_VERTICES = 16


class CapExceeded(ValueError):
    """Input is larger than an oracle size cap."""


def _neighbor_masks(t: Tree) -> list[int]:
    masks = [0] * t.vertex_count
    for u, v in t.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def _connected(mask: int, nbr: list[int]) -> bool:
    start = mask & -mask
    seen = frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        grow = nbr[low.bit_length() - 1] & mask & ~seen
        seen |= grow
        frontier |= grow
    return seen == mask


def _check_cap(t: Tree, cap: int) -> None:
    if t.vertex_count > cap:
        raise CapExceeded(f"{t.vertex_count} vertices exceeds oracle cap {cap}")


def oracle_count(t: Tree, cap: int = ORACLE_MAX_VERTICES) -> int:
    """Number of nonempty vertex subsets inducing a connected subgraph."""
    _check_cap(t, cap)
    nbr = _neighbor_masks(t)
    return sum(1 for mask in range(1, 1 << t.vertex_count) if _connected(mask, nbr))


def oracle_count_containing(t: Tree, u: int, cap: int = ORACLE_MAX_VERTICES) -> int:
    _check_cap(t, cap)
    t._check_vertex(u)
    nbr = _neighbor_masks(t)
    bit = 1 << u
    return sum(
        1 for mask in range(1, 1 << t.vertex_count) if mask & bit and _connected(mask, nbr)
    )


# ------------------------------------------------------------------ families


@dataclass(frozen=True)
class TreeFamily:
    degree_sequence: DegreeSequence
    members: tuple  # Trees sorted by canonical code

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def to_documents(self) -> list[str]:
        return [m.to_text() for m in self.members]


def _dedup(trees, ds: DegreeSequence) -> TreeFamily:
    by_code = {}
    for t in trees:
        by_code.setdefault(canonical_code(t), t)
    return TreeFamily(ds, tuple(by_code[c] for c in sorted(by_code)))


def _from_nx(g) -> Tree:
    return Tree.from_edges(g.edges(), g.number_of_nodes())


def free_trees(n: int):
    """All non-isomorphic trees on ``n`` vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        yield Tree(1, frozenset())
        return
    for g in nx.nonisomorphic_trees(n):
        yield _from_nx(g)


def enumerate_family(ds: DegreeSequence, max_vertices: int = FAMILY_MAX_VERTICES) -> TreeFamily:
    """Every non-isomorphic tree whose internal degrees are exactly ``ds``."""
    if not isinstance(ds, DegreeSequence):
        ds = DegreeSequence.of(ds)
    if max_vertices > FAMILY_MAX_VERTICES:
        raise CapExceeded(f"max_vertices {max_vertices} exceeds {FAMILY_MAX_VERTICES}")
    n = ds.vertex_count
    if n > max_vertices:
        raise CapExceeded(f"degree sequence needs {n} vertices, cap is {max_vertices}")
    members = (t for t in free_trees(n) if degree_sequence_of(t) == ds)
    return _dedup(members, ds)


# --------------------------------------------------- Prufer cross-generator


def prufer_decode(seq, n: int) -> Tree:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return Tree.from_edges(edges, n)


def _multiset_permutations(items):
    """Distinct permutations of a sorted list, in lexicographic order."""
    a = sorted(items)
    yield tuple(a)
    m = len(a)
    while True:
        i = m - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = m - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])
        yield tuple(a)


def prufer_family(ds: DegreeSequence, max_vertices: int = 10) -> tuple[int, TreeFamily]:
    """Family generated from degree-constrained Prufer sequences.

    Vertex ``i < len(ds)`` gets degree ``ds[i]``, the rest are leaves, so the
    code word is a permutation of the multiset with ``i`` repeated
    ``ds[i] - 1`` times.  Returns (labeled trees generated, deduplicated family).
    """
    if not isinstance(ds, DegreeSequence):
        ds = DegreeSequence.of(ds)
    n = ds.vertex_count
    if n > max_vertices:
        raise CapExceeded(f"{n} vertices exceeds Prufer cap {max_vertices}")
    if n <= 2:
        t = Tree.from_edges([(0, 1)], 2) if n == 2 else Tree(1, frozenset())
        return 1, TreeFamily(ds, (t,))
    word = [i for i, d in enumerate(ds.degrees) for _ in range(d - 1)]
    generated = 0
    trees = []
    for seq in _multiset_permutations(word):
        generated += 1
        trees.append(prufer_decode(seq, n))
    return generated, _dedup(trees, ds)


def prufer_multinomial(ds: DegreeSequence) -> int:
    """(n-2)! / prod (d_i - 1)!: labeled trees with the prescribed vertex degrees."""
    n = ds.vertex_count
    out = math.factorial(n - 2)
    for d in ds.degrees:
        out //= math.factorial(d - 1)
    return out


def labeled_trees_by_edges(n: int):
    """Every labeled tree on ``n`` vertices by exhaustive (n-1)-edge subset search."""
    all_edges = list(combinations(range(n), 2))
    for subset in combinations(all_edges, n - 1):
        try:
            yield Tree.from_edges(subset, n)
        except ValueError:
            continue


def degree_sequences(max_vertices: int):
    """Every realizable internal degree sequence with at most ``max_vertices`` vertices.

    Includes the empty sequence (the single edge) but not the single vertex.
    """
    out = [DegreeSequence(())]

    def extend(prefix, max_d):
        for d in range(min(max_d, max_vertices - 1), 1, -1):
            cand = prefix + (d,)
            try:
                ds = DegreeSequence(cand)
            except DegreeSequenceError:
                continue
            if ds.vertex_count > max_vertices:
                continue
            out.append(ds)
            extend(cand, d)

    extend((), max_vertices)
    return sorted(out, key=lambda s: (s.vertex_count, [-d for d in s.degrees]))
