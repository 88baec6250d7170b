"""Tree representation, degree sequences, leaf paths and canonical codes.

Vertices are dense integer ids ``0..n-1``.  A :class:`Tree` is immutable;
every structural operation returns a new tree over the same ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class TreeError(ValueError):
    """Raised for invalid tree input (bad syntax, cycles, gaps, ...)."""


class ParseError(TreeError):
    """A line of an edge-list document could not be parsed."""


class CycleError(TreeError):
    pass


class DisconnectedError(TreeError):
    pass


class IdGapError(TreeError):
    pass


class DegreeSequenceError(ValueError):
    pass


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Tree:
    """An undirected tree on vertices ``0..vertex_count-1``.

    Validation (connected, acyclic, no loops or duplicate edges) happens on
    construction, so any ``Tree`` instance is a tree.
    """

    vertex_count: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 1:
            raise TreeError(f"vertex_count must be a positive integer, got {n!r}")
        normed = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise TreeError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise IdGapError(f"edge ({u}, {v}) outside 0..{n - 1}")
            normed.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(normed))
        if len(normed) > n - 1:
            raise CycleError(f"cycle detected: {len(normed)} edges on {n} vertices")
        # union-find doubles as the cycle and connectivity check
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in normed:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise CycleError(f"cycle detected through edge ({u}, {v})")
            parent[ru] = rv
        if len(normed) < n - 1:
            raise DisconnectedError(
                f"graph is disconnected: {len(normed)} edges on {n} vertices"
            )

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> "Tree":
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = len(edges) + 1
        return cls(vertex_count, frozenset(_norm(u, v) for u, v in edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        if self.vertex_count == 1:
            return ()
        return tuple(v for v in range(self.vertex_count) if self.degree(v) == 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def path(self, u: int, v: int) -> list[int]:
        """Vertices of the unique ``u``-``v`` path, endpoints included."""
        self._check_vertex(u)
        self._check_vertex(v)
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for y in self.adjacency[x]:
                if y not in prev:
                    prev[y] = x
                    queue.append(y)
        out = [v]
        while out[-1] != u:
            out.append(prev[out[-1]])
        return out[::-1]

    def distance(self, u: int, v: int) -> int:
        return len(self.path(u, v)) - 1

    def rooted(self, root: int) -> "RootedView":
        return RootedView.build(self, root)

    def to_text(self) -> str:
        return serialize_tree(self)

    def _check_vertex(self, u: int) -> None:
        if not (isinstance(u, int) and 0 <= u < self.vertex_count):
            raise KeyError(f"unknown vertex id {u!r}")

    def __repr__(self) -> str:
        return f"Tree({self.vertex_count}, {self.sorted_edges()})"


@dataclass(frozen=True)
class RootedView:
    tree: Tree
    root: int
    parent: dict
    children: dict
    height_of: dict
    order: tuple  # BFS order from the root

    @classmethod
    def build(cls, tree: Tree, root: int) -> "RootedView":
        tree._check_vertex(root)
        parent = {root: None}
        children = {}
        height = {root: 0}
        order = []
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            kids = [y for y in tree.adjacency[x] if y != parent[x]]
            children[x] = tuple(kids)
            for y in kids:
                parent[y] = x
                height[y] = height[x] + 1
                queue.append(y)
        return cls(tree, root, parent, children, height, tuple(order))

    @property
    def height(self) -> int:
        return max(self.height_of.values())

    def descendants(self, u: int) -> list[int]:
        out, stack = [], list(self.children[u])
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out


# ---------------------------------------------------------------- edge lists


def parse_tree(text: str) -> Tree:
    """Parse an edge-list document: one ``u v`` pair per line, ``#`` comments."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex id in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id in {raw!r}")
        edges.append((u, v))
    if not edges:
        raise ParseError("empty edge list")
    n = len(edges) + 1
    ids = {x for e in edges for x in e}
    if len(set(map(lambda e: _norm(*e), edges))) < len(edges):
        raise ParseError("duplicate edge")
    if any(u == v for u, v in edges):
        raise TreeError("self-loop")
    if ids != set(range(len(ids))):
        raise IdGapError(f"vertex ids must be 0..{len(ids) - 1} without gaps")
    if len(ids) < n:
        raise CycleError(f"cycle detected: {len(edges)} edges on {len(ids)} vertices")
    if len(ids) > n:
        raise DisconnectedError(f"graph is disconnected: {len(edges)} edges on {len(ids)} vertices")
    return Tree.from_edges(edges, n)


def serialize_tree(t: Tree) -> str:
    """Edge-list document, lines sorted by (min id, max id), LF endings."""
    return "".join(f"{u} {v}\n" for u, v in t.sorted_edges())


# ---------------------------------------------------------- degree sequences


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing degrees of the internal (non-leaf) vertices."""

    degrees: tuple = ()

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if any(d < 2 for d in degs):
            raise DegreeSequenceError(f"internal degrees must be >= 2, got {list(degs)}")
        if any(a < b for a, b in zip(degs, degs[1:])):
            raise DegreeSequenceError(f"degree sequence must be non-increasing, got {list(degs)}")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, degrees: Iterable[int]) -> "DegreeSequence":
        """Build from any iterable, sorting it first."""
        return cls(tuple(sorted((int(d) for d in degrees), reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        """Parse ``"4,4,3"`` or ``"4 4 3"``.  The order must already be non-increasing."""
        parts = text.replace(",", " ").split()
        try:
            degs = tuple(int(p) for p in parts)
        except ValueError:
            raise DegreeSequenceError(f"not an integer list: {text!r}") from None
        return cls(degs)

    @property
    def internal_count(self) -> int:
        return len(self.degrees)

    @property
    def leaf_count(self) -> int:
        return sum(self.degrees) - 2 * len(self.degrees) + 2

    @property
    def vertex_count(self) -> int:
        return self.internal_count + self.leaf_count

    def __len__(self) -> int:
        return len(self.degrees)

    def __iter__(self):
        return iter(self.degrees)

    def __str__(self) -> str:
        return ",".join(map(str, self.degrees))


def degree_sequence_of(t: Tree) -> DegreeSequence:
    return DegreeSequence.of(d for d in t.degrees if d >= 2)


# ----------------------------------------------------------------- leaf paths


@dataclass(frozen=True)
class LeafPathDecomposition:
    """A leaf-to-leaf path ``v1 x1 ... xn v2`` with the fragment of each ``xi``.

    Slots are numbered ``1..n`` along the path from ``v1``; slot 0 is ``v1``
    and slot ``n+1`` is ``v2``.  ``fragments[k-1]`` is the vertex set of the
    component containing ``x_k`` once all path edges are removed.
    """

    tree: Tree
    path: tuple  # v1, x1, ..., xn, v2
    fragments: tuple

    @property
    def v1(self) -> int:
        return self.path[0]

    @property
    def v2(self) -> int:
        return self.path[-1]

    @property
    def n(self) -> int:
        return len(self.path) - 2

    def anchor(self, k: int) -> int:
        if not 0 <= k <= self.n + 1:
            raise IndexError(f"slot {k} outside 0..{self.n + 1}")
        return self.path[k]

    def fragment(self, k: int) -> frozenset:
        if not 1 <= k <= self.n:
            raise IndexError(f"slot {k} outside 1..{self.n}")
        return self.fragments[k - 1]

    def fragment_edges(self, k: int) -> list[tuple[int, int]]:
        verts = self.fragment(k)
        return sorted(e for e in self.tree.edges if e[0] in verts and e[1] in verts)

    def fragment_tree(self, k: int) -> tuple[Tree, int]:
        """The fragment relabeled densely, with its anchor's new id."""
        verts = sorted(self.fragment(k))
        ids = {v: i for i, v in enumerate(verts)}
        sub = Tree.from_edges(((ids[u], ids[v]) for u, v in self.fragment_edges(k)), len(verts))
        return sub, ids[self.path[k]]

    def off_path_neighbors(self, k: int) -> tuple[int, ...]:
        on = {self.path[k - 1], self.path[k + 1]}
        return tuple(y for y in self.tree.neighbors(self.path[k]) if y not in on)

    def path_edges(self) -> list[tuple[int, int]]:
        return [_norm(a, b) for a, b in zip(self.path, self.path[1:])]

    def reassemble(self) -> Tree:
        edges = set(self.path_edges())
        for k in range(1, self.n + 1):
            edges.update(self.fragment_edges(k))
        return Tree(self.tree.vertex_count, frozenset(edges))

    def reversed(self) -> "LeafPathDecomposition":
        return LeafPathDecomposition(self.tree, self.path[::-1], self.fragments[::-1])


def leaf_path(t: Tree, v1: int, v2: int) -> LeafPathDecomposition:
    t._check_vertex(v1)
    t._check_vertex(v2)
    if v1 == v2:
        raise TreeError("path endpoints must differ")
    for v in (v1, v2):
        if t.degree(v) != 1:
            raise TreeError(f"vertex {v} is not a leaf")
    path = t.path(v1, v2)
    if len(path) < 3:
        raise TreeError(f"leaves {v1} and {v2} are adjacent; the path has no internal vertex")
    on_path = set(path)
    fragments = []
    for x in path[1:-1]:
        seen = {x}
        stack = [y for y in t.neighbors(x) if y not in on_path]
        seen.update(stack)
        while stack:
            y = stack.pop()
            for z in t.neighbors(y):
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        fragments.append(frozenset(seen))
    return LeafPathDecomposition(t, tuple(path), tuple(fragments))


# ------------------------------------------------------------ canonical codes


def rooted_code(t: Tree, root: int, parent: int | None = None) -> str:
    """AHU string of the subtree at ``root`` (away from ``parent``)."""
    # iterative post-order; recursion would limit tree height
    codes: dict[int, str] = {}
    stack = [(root, parent, False)]
    while stack:
        x, par, done = stack.pop()
        kids = [y for y in t.adjacency[x] if y != par]
        if done:
            codes[x] = "(" + "".join(sorted(codes[y] for y in kids)) + ")"
        else:
            stack.append((x, par, True))
            stack.extend((y, x, False) for y in kids)
    return codes[root]


def centers(t: Tree) -> list[int]:
    """One or two central vertices, by repeated leaf stripping."""
    n = t.vertex_count
    if n <= 2:
        return list(range(n))
    deg = t.degrees
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for y in t.adjacency[v]:
                deg[y] -= 1
                if deg[y] == 1:
                    nxt.append(y)
        layer = nxt
    return sorted(layer)


def canonical_code(t: Tree) -> bytes:
    return min(rooted_code(t, c) for c in centers(t)).encode("ascii")


def relabel(t: Tree, mapping: Sequence[int]) -> Tree:
    """Apply the permutation ``v -> mapping[v]`` to vertex ids."""
    return Tree.from_edges(((mapping[u], mapping[v]) for u, v in t.edges), t.vertex_count)


def path_tree(n: int) -> Tree:
    return Tree.from_edges(((i, i + 1) for i in range(n - 1)), n)


def star_tree(leaves: int) -> Tree:
    return Tree.from_edges(((0, i) for i in range(1, leaves + 1)), leaves + 1)


def spider(legs: Sequence[int]) -> Tree:
    """Center 0 with one path of each given length hanging off it."""
    edges, nxt = [], 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return Tree.from_edges(edges, nxt)
