"""Greedy trees: construction from a degree sequence and structural recognition."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .tree import DegreeSequence, DegreeSequenceError, RootedView, Tree


@dataclass(frozen=True)
class GreedyTree:
    tree: Tree
    root: int
    level_degrees: tuple  # per level, the degrees in construction order

    @property
    def degree_sequence(self) -> DegreeSequence:
        from .tree import degree_sequence_of

        return degree_sequence_of(self.tree)


def build_greedy(ds: DegreeSequence) -> GreedyTree:
    """Breadth-first greedy construction.

    The root takes the largest degree.  Vertices are expanded in BFS order,
    which keeps parents of each level in non-increasing degree order, and
    each one receives the largest degrees still unassigned; once the
    sequence is exhausted the remaining slots become leaves.
    """
    if not isinstance(ds, DegreeSequence):
        ds = DegreeSequence.of(ds)
    if ds.leaf_count < 2:
        raise DegreeSequenceError(f"degree sequence {list(ds.degrees)} is not realizable")
    degrees = list(ds.degrees)
    if not degrees:
        return GreedyTree(Tree.from_edges([(0, 1)], 2), 0, ((1,), (1,)))

    target = {0: degrees[0]}
    remaining = deque(degrees[1:])
    edges = []
    levels = [[degrees[0]]]
    level_of = {0: 0}
    queue = deque([0])
    nxt = 1
    while queue:
        v = queue.popleft()
        slots = target[v] - (0 if v == 0 else 1)
        for _ in range(slots):
            d = remaining.popleft() if remaining else 1
            target[nxt] = d
            edges.append((v, nxt))
            level_of[nxt] = level_of[v] + 1
            if level_of[nxt] == len(levels):
                levels.append([])
            levels[level_of[nxt]].append(d)
            if d > 1:
                queue.append(nxt)
            nxt += 1
    t = Tree.from_edges(edges, nxt)
    return GreedyTree(t, 0, tuple(tuple(level) for level in levels))


@dataclass(frozen=True)
class GreedyCheck:
    ok: bool
    root: int | None = None
    violations: tuple = ()  # ((condition, detail), ...) in condition order

    @property
    def condition(self) -> str | None:
        """The first violated condition, "i" to "v"."""
        return self.violations[0][0] if self.violations else None

    @property
    def failed(self) -> tuple:
        return tuple(c for c, _ in self.violations)

    def __bool__(self) -> bool:
        return self.ok


def _depth_ranges(view: RootedView, degree) -> dict:
    """For each vertex, depth below it -> (min degree, max degree) among its descendants."""
    ranges: dict[int, dict[int, tuple[int, int]]] = {}
    for v in reversed(view.order):
        acc: dict[int, tuple[int, int]] = {}
        for c in view.children[v]:
            d = degree(c)
            _merge(acc, 1, d, d)
            for depth, (lo, hi) in ranges[c].items():
                _merge(acc, depth + 1, lo, hi)
        ranges[v] = acc
    return ranges


def _merge(acc, depth, lo, hi):
    if depth in acc:
        a, b = acc[depth]
        acc[depth] = (min(a, lo), max(b, hi))
    else:
        acc[depth] = (lo, hi)


def _dominates(ra: dict, rb: dict) -> int | None:
    """First depth where some entry of ``rb`` exceeds some entry of ``ra``."""
    for depth in sorted(set(ra) & set(rb)):
        if ra[depth][0] < rb[depth][1]:
            return depth
    return None


def _check_rooted(t: Tree, root: int) -> GreedyCheck:
    view = t.rooted(root)
    deg = t.degree
    found = []
    max_deg = max(t.degrees)
    if deg(root) != max_deg:
        found.append(("i", f"root degree {deg(root)} < maximum {max_deg}"))

    leaf_heights = [view.height_of[v] for v in t.leaves]
    if leaf_heights and max(leaf_heights) - min(leaf_heights) > 1:
        found.append(("ii", f"leaf heights range {min(leaf_heights)}..{max(leaf_heights)}"))

    by_level: dict[int, list[int]] = {}
    for v in view.order:
        by_level.setdefault(view.height_of[v], []).append(v)
    levels = sorted(by_level)
    for h_w, h_u in zip(levels, levels[1:]):
        lo = min(deg(w) for w in by_level[h_w])
        hi = max(deg(u) for u in by_level[h_u])
        if lo < hi:
            found.append(("iii", f"a degree-{hi} vertex at height {h_u} lies below a degree-{lo} vertex at height {h_w}"))
            break

    ranges = _depth_ranges(view, deg)
    iv = v = None
    for h in levels:
        verts = by_level[h]
        for a in verts:
            for b in verts:
                if deg(a) <= deg(b):
                    continue
                if iv is None and _dominates(ranges[a], ranges[b]) is not None:
                    iv = f"descendants of {b} outrank those of {a}"
                pa, pb = view.parent[a], view.parent[b]
                if v is not None or pa is None or pb is None or pa == pb:
                    continue
                sib_a = [s for s in view.children[pa] if s != a]
                sib_b = [s for s in view.children[pb] if s != b]
                if not sib_a or not sib_b:
                    continue
                if min(deg(s) for s in sib_a) < max(deg(s) for s in sib_b):
                    v = f"siblings of {b} outrank siblings of {a}"
                elif any(
                    _dominates(ranges[sa], ranges[sb]) is not None for sa in sib_a for sb in sib_b
                ):
                    v = f"descendants of a sibling of {b} outrank those of a sibling of {a}"
    if iv:
        found.append(("iv", iv))
    if v:
        found.append(("v", v))
    return GreedyCheck(not found, root, tuple(found))


def is_greedy(t: Tree) -> GreedyCheck:
    """Check the five greedy-tree conditions from every maximum-degree root.

    Accepts as soon as one root passes; otherwise reports the failure seen
    from the first maximum-degree vertex.
    """
    if t.vertex_count <= 2:
        return GreedyCheck(True, 0)
    max_deg = max(t.degrees)
    first_failure = None
    for r in range(t.vertex_count):
        if t.degree(r) != max_deg:
            continue
        res = _check_rooted(t, r)
        if res.ok:
            return res
        if first_failure is None:
            first_failure = res
    return first_failure
