"""Component, tail and degree switches and the three-phase switching algorithm.

All switches keep vertex ids; they only rewire edges.  A switch is described
by the leaf pair of the path it acts on (in the orientation used) and slot
indices on that path, so any trace can be replayed with :func:`replay`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .counting import (
    PathProfile,
    component_switch_delta,
    count_subtrees,
    degree_switch_delta,
    path_profile,
    predicted_delta_component_switch,
    tail_switch_delta,
    _down_counts,
)
from .tree import LeafPathDecomposition, Tree, TreeError, leaf_path, rooted_code

DEFAULT_MAX_SWITCHES = 10**6


class SwitchError(ValueError):
    """Invalid switch indices or an unmet phase precondition."""


class InvariantError(RuntimeError):
    """A switch failed to increase the count, or the safety cap was hit."""


class SafetyCapExceeded(InvariantError):
    pass


@dataclass(frozen=True)
class Switch:
    kind: str  # "component", "tail" or "degree"
    v1: int
    v2: int
    indices: tuple
    moved: tuple = ()  # degree switch: roots of the relocated branches

    def to_json(self) -> dict:
        out = {"kind": self.kind, "v1": self.v1, "v2": self.v2, "indices": list(self.indices)}
        if self.moved:
            out["moved"] = list(self.moved)
        return out


@dataclass(frozen=True)
class TraceStep:
    switch: Switch
    count_before: int
    count_after: int
    phase: int

    def to_json(self) -> dict:
        out = self.switch.to_json()
        out["phase"] = self.phase
        out["count_before"] = str(self.count_before)
        out["count_after"] = str(self.count_after)
        return out


@dataclass(frozen=True)
class SwitchTrace:
    initial_count: int
    final_count: int
    steps: tuple = ()

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> list:
        return [s.to_json() for s in self.steps]


# ------------------------------------------------------------------ switches


def _rewire(t: Tree, remove, add) -> Tree:
    edges = set(t.edges)
    for u, v in remove:
        edges.discard((min(u, v), max(u, v)))
    for u, v in add:
        edges.add((min(u, v), max(u, v)))
    return Tree(t.vertex_count, frozenset(edges))


def _check_decomposition(t: Tree, d: LeafPathDecomposition) -> None:
    if d.tree is not t and d.tree != t:
        raise SwitchError("decomposition belongs to a different tree")


def apply_component_switch(t: Tree, d: LeafPathDecomposition, k: int, j: int) -> Tree:
    """Exchange the fragments at slots ``k`` and ``j``.

    The anchors trade places on the path and carry their fragments along,
    so every vertex keeps its degree.
    """
    _check_decomposition(t, d)
    n = d.n
    if not (1 <= k <= n and 1 <= j <= n) or k == j:
        raise SwitchError(f"component slots ({k}, {j}) invalid for a path with {n} internal vertices")
    order = list(d.path)
    order[k], order[j] = order[j], order[k]
    return _rewire(t, d.path_edges(), zip(order, order[1:]))


def apply_tail_switch(t: Tree, d: LeafPathDecomposition, i: int, j: int) -> Tree:
    """Exchange the prefix tail ending at slot ``i`` with the suffix tail starting at ``j``.

    Slot 0 (``v1``) and slot ``n+1`` (``v2``) are allowed, in which case
    the tail is just that leaf.  The slots strictly between must be nonempty.
    """
    _check_decomposition(t, d)
    n = d.n
    if not (0 <= i and j <= n + 1 and j - i >= 2):
        raise SwitchError(f"tail slots ({i}, {j}) invalid for a path with {n} internal vertices")
    p = d.path
    return _rewire(t, [(p[i], p[i + 1]), (p[j - 1], p[j])], [(p[j], p[i + 1]), (p[i], p[j - 1])])


@dataclass(frozen=True)
class DegreePlan:
    receiver: int  # slot
    giver: int  # slot
    moved: tuple  # branch roots leaving the giver, smallest first
    moved_product: int  # prod (1 + f) over moved branches
    kept_product: int  # prod (1 + f) over branches the giver keeps


def degree_switch_plan(t: Tree, d: LeafPathDecomposition, l: int, k: int) -> DegreePlan:
    """Which branches of ``x_k`` a degree switch toward ``x_l`` would move."""
    n = d.n
    if not (1 <= l <= n and 1 <= k <= n) or l == k:
        raise SwitchError(f"degree slots ({l}, {k}) invalid for a path with {n} internal vertices")
    xl, xk = d.path[l], d.path[k]
    p, q = t.degree(xl), t.degree(xk)
    if p >= q:
        raise SwitchError(f"degree switch needs d(x_l)={p} < d(x_k)={q}")
    branches = d.off_path_neighbors(k)
    if not branches:
        raise SwitchError(f"slot {k} has no off-path branches")
    g = _down_counts(t, xk)
    ranked = sorted(branches, key=lambda r: (g[r], rooted_code(t, r, xk)))
    moved = tuple(ranked[len(ranked) - (q - p):])
    kept = ranked[: len(ranked) - (q - p)]
    mp = kp = 1
    for r in moved:
        mp *= 1 + g[r]
    for r in kept:
        kp *= 1 + g[r]
    return DegreePlan(l, k, moved, mp, kp)


def apply_degree_switch(t: Tree, d: LeafPathDecomposition, l: int, k: int) -> Tree:
    """Move the ``q - p`` largest off-path branches of ``x_k`` over to ``x_l``.

    Branches are ranked by their rooted subtree count, ties broken by
    canonical code, so the result is deterministic.
    """
    _check_decomposition(t, d)
    plan = degree_switch_plan(t, d, l, k)
    return _apply_plan(t, d, plan)


def branch_move_plans(t: Tree, d: LeafPathDecomposition, l: int, k: int):
    """Every way to hand ``q - p`` off-path branches of ``x_k`` to ``x_l``.

    These are the inverses of degree switches, which always move the largest
    branches.  Choices whose moved branches are isomorphic are yielded once.
    """
    first = degree_switch_plan(t, d, l, k)
    need = len(first.moved)
    g = _down_counts(t, d.path[k])
    branches = d.off_path_neighbors(k)
    code = {r: rooted_code(t, r, d.path[k]) for r in branches}
    seen = set()
    for moved in combinations(sorted(branches, key=lambda r: (g[r], code[r])), need):
        key = tuple(code[r] for r in moved)
        if key in seen:
            continue
        seen.add(key)
        mp = kp = 1
        for r in branches:
            if r in moved:
                mp *= 1 + g[r]
            else:
                kp *= 1 + g[r]
        yield DegreePlan(l, k, moved, mp, kp)


def _apply_plan(t: Tree, d: LeafPathDecomposition, plan: DegreePlan) -> Tree:
    xl, xk = d.path[plan.receiver], d.path[plan.giver]
    return _rewire(t, [(xk, r) for r in plan.moved], [(xl, r) for r in plan.moved])


def apply_switch(t: Tree, s: Switch) -> Tree:
    """Re-apply a recorded switch."""
    d = leaf_path(t, s.v1, s.v2)
    if s.kind == "component":
        return apply_component_switch(t, d, *s.indices)
    if s.kind == "tail":
        return apply_tail_switch(t, d, *s.indices)
    if s.kind == "degree":
        if not s.moved:
            return apply_degree_switch(t, d, *s.indices)
        l, k = s.indices
        if set(s.moved) - set(d.off_path_neighbors(k)):
            raise SwitchError(f"moved branches {s.moved} are not off-path neighbours of slot {k}")
        return _apply_plan(t, d, DegreePlan(l, k, tuple(s.moved), 0, 0))
    raise SwitchError(f"unknown switch kind {s.kind!r}")


def replay(t: Tree, trace: SwitchTrace) -> Tree:
    for step in trace.steps:
        t = apply_switch(t, step.switch)
    return t


# ------------------------------------------------------------------ recorder


class _Recorder:
    """Working tree plus the steps applied so far; enforces strict increase."""

    def __init__(self, t: Tree, max_switches: int = DEFAULT_MAX_SWITCHES):
        self.tree = t
        self.count = count_subtrees(t)
        self.initial = self.count
        self.steps: list[TraceStep] = []
        self.max_switches = max_switches

    def apply(self, new: Tree, switch: Switch, phase: int, predicted: int) -> None:
        after = count_subtrees(new)
        if after - self.count != predicted:
            raise InvariantError(
                f"{switch}: predicted change {predicted}, actual {after - self.count}"
            )
        if after <= self.count:
            raise InvariantError(f"{switch}: count did not increase ({self.count} -> {after})")
        if len(self.steps) >= self.max_switches:
            raise SafetyCapExceeded(f"more than {self.max_switches} switches")
        self.steps.append(TraceStep(switch, self.count, after, phase))
        self.tree, self.count = new, after

    def trace(self) -> SwitchTrace:
        return SwitchTrace(self.initial, self.count, tuple(self.steps))


# ------------------------------------------------------------------- phase I


def _phase1(rec: _Recorder, v1: int, v2: int) -> None:
    while True:
        changed = False
        for a, b in ((v1, v2), (v2, v1)):
            d = leaf_path(rec.tree, a, b)
            k = 1
            while k <= d.n - 1:
                prof = path_profile(d)
                if not prof.prefix[k - 1] < prof.suffix[k + 2]:
                    break
                if prof.branch[k] > prof.branch[k + 1]:
                    delta = predicted_delta_component_switch(prof, k)
                    new = apply_component_switch(rec.tree, d, k, k + 1)
                    rec.apply(new, Switch("component", a, b, (k, k + 1)), 1, delta)
                    d = leaf_path(rec.tree, a, b)
                    changed = True
                k += 1
        if not changed:
            return


# ---------------------------------------------------------- centred labeling


@dataclass(frozen=True)
class CentredLabeling:
    """A leaf path oriented so that ``x_1`` sits at slot ``pivot`` and the
    ``y`` vertices lie toward ``d.v2``: ``x_k = pivot - k + 1`` and ``y_k = pivot + k``.

    Past the end of a side the leaf stands in for every further level, so a
    short side still gets compared against the deeper levels of the other.
    """

    d: LeafPathDecomposition
    pivot: int
    profile: PathProfile

    def left_slot(self, k: int) -> int:
        return max(self.pivot - k + 1, 0)

    def right_slot(self, k: int) -> int:
        return min(self.pivot + k, self.d.n + 1)

    def value(self, slot: int) -> int:
        """Fragment count at a slot; the leaves count as 1."""
        return self.profile.branch[slot]

    def beyond(self, slot: int) -> int:
        """Tail count just outside ``slot`` (away from x_1); 1 past the leaves."""
        if slot <= self.pivot:
            return self.profile.prefix[slot - 1] if slot >= 1 else 1
        return self.profile.suffix[slot + 1] if slot <= self.d.n else 1

    def in_range(self, slot: int) -> bool:
        return 0 <= slot <= self.d.n + 1

    def internal(self, slot: int) -> bool:
        return 1 <= slot <= self.d.n


def centre_labeling(t: Tree, v1: int, v2: int) -> CentredLabeling:
    """``x_1`` = the slot with the largest fragment (nearest ``v1`` on ties);
    ``y_1`` = its path neighbour with the larger fragment, then larger tail,
    then the ``v2`` side."""
    d = leaf_path(t, v1, v2)
    prof = path_profile(d)
    n = d.n
    p = max(range(1, n + 1), key=lambda s: (prof.branch[s], -s))
    y_left = False
    if p > 1 and p < n:
        left = (prof.branch[p - 1], prof.prefix[p - 1])
        right = (prof.branch[p + 1], prof.suffix[p + 1])
        y_left = left > right
    elif p == n and n > 1:
        y_left = True
    if y_left:
        d = d.reversed()
        prof = path_profile(d)
        p = n + 1 - p
    return CentredLabeling(d, p, prof)


def _relabel_after(t: Tree, lab: CentredLabeling, x1: int, flipped: bool) -> CentredLabeling:
    d = leaf_path(t, lab.d.v2, lab.d.v1) if flipped else leaf_path(t, lab.d.v1, lab.d.v2)
    return CentredLabeling(d, d.path.index(x1), path_profile(d))


def _level_move(rec: _Recorder, lab: CentredLabeling, hi: int, lo: int):
    """Try to fix ``value(hi) >= value(lo)`` for two slots on opposite sides.

    Returns the new labeling if a switch was applied, else None.
    """
    if not (lab.in_range(hi) and lab.in_range(lo)):
        return None
    if not (lab.internal(hi) or lab.internal(lo)):
        return None
    if lab.value(hi) > lab.value(lo):
        return None
    i, j = min(hi, lo), max(hi, lo)
    if j - i < 2:
        return None
    d = lab.d
    use_tail = lab.beyond(hi) < lab.beyond(lo) or not (lab.internal(hi) and lab.internal(lo))
    if use_tail:
        delta = tail_switch_delta(lab.profile, i, j)
        if delta <= 0:
            return None
        new = apply_tail_switch(rec.tree, d, i, j)
        rec.apply(new, Switch("tail", d.v1, d.v2, (i, j)), 2, delta)
        return _relabel_after(rec.tree, lab, d.path[lab.pivot], flipped=True)
    delta = component_switch_delta(lab.profile, i, j)
    if delta <= 0:
        return None
    new = apply_component_switch(rec.tree, d, i, j)
    rec.apply(new, Switch("component", d.v1, d.v2, (i, j)), 2, delta)
    return _relabel_after(rec.tree, lab, d.path[lab.pivot], flipped=False)


def swapped_labeling(lab: CentredLabeling) -> CentredLabeling | None:
    """The labeling with ``x_1`` and ``y_1`` exchanged, if their fragments tie."""
    n, p = lab.d.n, lab.pivot
    if p + 1 > n or lab.profile.branch[p] != lab.profile.branch[p + 1]:
        return None
    d = lab.d.reversed()
    return CentredLabeling(d, n - p, path_profile(d))


def _walk(rec: _Recorder, lab: CentredLabeling) -> None:
    k = 1
    # walk outward while level k still has an internal vertex on either side
    while lab.internal(lab.left_slot(k)) or lab.internal(lab.right_slot(k)):
        lab = _level_move(rec, lab, lab.left_slot(k), lab.right_slot(k)) or lab
        lab = _level_move(rec, lab, lab.right_slot(k), lab.left_slot(k + 1)) or lab
        k += 1


def _phase2(rec: _Recorder, v1: int, v2: int) -> None:
    lab = centre_labeling(rec.tree, v1, v2)
    before = len(rec.steps)
    _walk(rec, lab)
    if len(rec.steps) == before:
        # equal x_1 and y_1 leave the labeling ambiguous; try the other one
        alt = swapped_labeling(lab)
        if alt is not None:
            _walk(rec, alt)


# ----------------------------------------------------------------- phase III


def _phase3(rec: _Recorder, v1: int, v2: int) -> bool:
    lab = centre_labeling(rec.tree, v1, v2)
    t, d = rec.tree, lab.d
    for i in range(1, d.n + 1):
        for recv, giver in ((lab.left_slot(i), lab.right_slot(i)), (lab.right_slot(i), lab.left_slot(i + 1))):
            if not (lab.internal(recv) and lab.internal(giver)):
                continue
            if t.degree(d.path[recv]) >= t.degree(d.path[giver]):
                continue
            plan = degree_switch_plan(t, d, recv, giver)
            delta = degree_switch_delta(lab.profile, recv, giver, plan.moved_product, plan.kept_product)
            if delta <= 0:
                continue
            new = _apply_plan(t, d, plan)
            rec.apply(new, Switch("degree", d.v1, d.v2, (recv, giver), plan.moved), 3, delta)
            return True
    return False


# ------------------------------------------------------------ public phases


def _changes(fn, t: Tree, v1: int, v2: int) -> bool:
    rec = _Recorder(t)
    fn(rec, v1, v2)
    return bool(rec.steps)


def phase1(t: Tree, v1: int, v2: int) -> Tree:
    """Bubble larger fragments toward the heavier end of the ``v1``-``v2`` path."""
    rec = _Recorder(t)
    _phase1(rec, v1, v2)
    return rec.tree


def phase2(t: Tree, v1: int, v2: int, *, check: bool = True) -> Tree:
    """Interleave fragments outward from the largest one using tail and component switches."""
    if check and _changes(_phase1, t, v1, v2):
        raise SwitchError("phase2 requires a Phase I fixpoint for this leaf pair")
    rec = _Recorder(t)
    _phase2(rec, v1, v2)
    return rec.tree


def phase3(t: Tree, v1: int, v2: int, *, check: bool = True) -> tuple[Tree, bool]:
    """Apply at most one degree switch; returns the tree and whether one happened."""
    if check and (_changes(_phase1, t, v1, v2) or _changes(_phase2, t, v1, v2)):
        raise SwitchError("phase3 requires a Phase I and II fixpoint for this leaf pair")
    rec = _Recorder(t)
    switched = _phase3(rec, v1, v2)
    return rec.tree, switched


def leaf_pairs(t: Tree) -> list[tuple[int, int]]:
    """Unordered leaf pairs with at least one vertex between them, ascending."""
    return [(a, b) for a, b in combinations(t.leaves, 2) if b not in t.neighbors(a) and t.degree(a) == 1]


def run_switching_algorithm(t: Tree, max_switches: int = DEFAULT_MAX_SWITCHES) -> tuple[Tree, SwitchTrace]:
    """Sweep all leaf pairs with Phases I-III until a full sweep changes nothing."""
    if t.vertex_count < 3:
        raise TreeError("the switching algorithm needs at least 3 vertices")
    rec = _Recorder(t, max_switches)
    pairs = leaf_pairs(t)
    while True:
        at_sweep = len(rec.steps)
        for a, b in pairs:
            while True:
                before = len(rec.steps)
                _phase1(rec, a, b)
                _phase2(rec, a, b)
                _phase3(rec, a, b)
                if len(rec.steps) == before:
                    break
        if len(rec.steps) == at_sweep:
            return rec.tree, rec.trace()
