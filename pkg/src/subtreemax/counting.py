"""Exact subtree counts and the path quantities built from them.

Everything here is plain Python ``int`` arithmetic: counts grow exponentially
with the number of vertices and must stay exact.

Notation on a leaf path ``v1 x1 ... xn v2`` (slots ``1..n``):

``branch[k]``  subtrees of the fragment hanging at ``x_k`` that contain ``x_k``
``prefix[k]``  subtrees of the part left of edge ``x_k x_k+1`` that contain ``x_k``
``suffix[k]``  subtrees of the part right of edge ``x_k-1 x_k`` that contain ``x_k``

with the leaves as sentinels: ``prefix[0] = suffix[n+1] = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .tree import LeafPathDecomposition, Tree


def _down_counts(t: Tree, root: int) -> dict[int, int]:
    """g(v) = number of subtrees containing v inside v's branch, rooted at ``root``."""
    view = t.rooted(root)
    g: dict[int, int] = {}
    for v in reversed(view.order):
        prod = 1
        for c in view.children[v]:
            prod *= 1 + g[c]
        g[v] = prod
    return g


def count_rooted(t: Tree, u: int) -> int:
    """Number of subtrees of ``t`` containing vertex ``u``."""
    t._check_vertex(u)
    return _down_counts(t, u)[u]


def count_subtrees(t: Tree) -> int:
    """Total number of (nonempty) subtrees of ``t``.

    Each subtree has a unique vertex nearest to vertex 0; summing the
    rooted product over all vertices counts each subtree once.
    """
    return sum(_down_counts(t, 0).values())


def count_all_rooted(t: Tree) -> list[int]:
    """``count_rooted(t, u)`` for every ``u`` in two passes (rerooting)."""
    n = t.vertex_count
    view = t.rooted(0)
    down = _down_counts(t, 0)
    full = [0] * n
    full[0] = down[0]
    for v in view.order[1:]:
        p = view.parent[v]
        # subtrees containing p but not v, seen from v's side
        up = full[p] // (1 + down[v])
        full[v] = down[v] * (1 + up)
    return full


# ------------------------------------------------------------------ profiles


@dataclass(frozen=True)
class PathProfile:
    """Per-slot counts along a leaf path; index 0 and n+1 are the leaves."""

    n: int
    branch: tuple   # count of each slot's fragment at its anchor; 1 at the leaves
    prefix: tuple   # subtrees of slots 0..k containing slot k
    suffix: tuple   # subtrees of slots k..n+1 containing slot k

    def chain_right(self, start: int, stop: int) -> int:
        """Subtrees containing slot ``start`` within slots ``start..stop`` (0 if empty)."""
        acc = 0
        for s in range(stop, start - 1, -1):
            acc = self.branch[s] * (1 + acc)
        return acc

    def chain_left(self, start: int, stop: int) -> int:
        """Subtrees containing slot ``start`` within slots ``stop..start`` (0 if empty)."""
        acc = 0
        for s in range(stop, start + 1):
            acc = self.branch[s] * (1 + acc)
        return acc


def path_profile(d: LeafPathDecomposition) -> PathProfile:
    n = d.n
    t = d.tree
    g = _down_counts(t, d.v1)
    c = [1] * (n + 2)
    for k in range(1, n + 1):
        x, nxt = d.path[k], d.path[k + 1]
        prod = 1
        for y in t.neighbors(x):
            if y != nxt and y != d.path[k - 1]:
                prod *= 1 + g[y]
        c[k] = prod
    prefix = [1] * (n + 2)
    for k in range(1, n + 1):
        prefix[k] = c[k] * (1 + prefix[k - 1])
    suffix = [1] * (n + 2)
    for k in range(n, 0, -1):
        suffix[k] = c[k] * (1 + suffix[k + 1])
    # whole-tree counts at the two leaves, by the same recurrences
    prefix[n + 1] = 1 + prefix[n]
    suffix[0] = 1 + suffix[1]
    return PathProfile(n, tuple(c), tuple(prefix), tuple(suffix))


# ----------------------------------------------------------- C, D sums


class InterleavingError(ValueError):
    """The inputs violate C_1 >= D_1 >= C_2 >= ..."""


@dataclass(frozen=True)
class LemmaCD:
    x_count: int
    y_count: int
    x_count_ext: int | None = None  # with the next x-side fragment added
    y_count_ext: int | None = None


def _interleave(xs: Sequence[int], ys: Sequence[int]) -> list[int]:
    out = []
    for i in range(max(len(xs), len(ys))):
        if i < len(xs):
            out.append(xs[i])
        if i < len(ys):
            out.append(ys[i])
    return out


def _prefix_product_sum(values: Sequence[int]) -> int:
    """sum_{i=1}^{m} prod_{j=1}^{i} values[j-1]"""
    total, prod = 0, 1
    for v in values:
        prod *= v
        total += prod
    return total


def _product(values: Sequence[int]) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def lemma_cd(x_side: Sequence[int], y_side: Sequence[int]) -> LemmaCD:
    """Counts ``x_count, y_count`` (and the ``_ext`` pair when ``x_side`` has one extra entry).

    ``x_side = [C_1, ..., C_{k-1}]`` or ``[C_1, ..., C_k]`` and
    ``y_side = [D_1, ..., D_{k-1}]``.  With the inner region being the
    fragments ``X_1..X_{k-1}, Y_1..Y_{k-1}``, ``x_count`` counts its subtrees
    containing ``x_{k-1}`` and ``y_count`` those containing ``y_{k-1}``; the
    ``_ext`` counts are the same counts once ``X_k`` joins the region, anchored
    at ``x_k`` and ``y_{k-1}``.
    """
    xs, ys = [int(v) for v in x_side], [int(v) for v in y_side]
    if len(xs) not in (len(ys), len(ys) + 1):
        raise ValueError("x_side must have the same length as y_side or one more")
    seq = _interleave(xs, ys)
    if any(a < b for a, b in zip(seq, seq[1:])):
        raise InterleavingError(f"C_1 >= D_1 >= C_2 >= ... violated by {seq}")
    m = len(ys)  # k - 1
    cs, ds = xs[:m], ys
    x_count = _prefix_product_sum(cs[::-1]) + _product(cs) * _prefix_product_sum(ds)
    y_count = _prefix_product_sum(ds[::-1]) + _product(ds) * _prefix_product_sum(cs)
    if len(xs) == m:
        return LemmaCD(x_count, y_count)
    x_ext = _prefix_product_sum(xs[::-1]) + _product(xs) * _prefix_product_sum(ds)
    y_ext = _prefix_product_sum(ds[::-1]) + _product(ds) * _prefix_product_sum(xs)
    return LemmaCD(x_count, y_count, x_ext, y_ext)


# ------------------------------------------------------------ switch deltas


def predicted_delta_component_switch(p: PathProfile, k: int) -> int:
    """Change in subtree count from exchanging the fragments of slots k, k+1."""
    if not 1 <= k <= p.n - 1:
        raise IndexError(f"k={k} outside 1..{p.n - 1}")
    return (p.branch[k] - p.branch[k + 1]) * (p.suffix[k + 2] - p.prefix[k - 1])


def _check_slot(p: PathProfile, s: int) -> None:
    if not 1 <= s <= p.n:
        raise IndexError(f"slot {s} outside 1..{p.n}")


def component_switch_delta(p: PathProfile, a: int, b: int) -> int:
    """Change in count from exchanging the fragments of any two slots."""
    _check_slot(p, a)
    _check_slot(p, b)
    if a == b:
        return 0
    if a > b:
        a, b = b, a
    outer_a = 1 + p.prefix[a - 1]
    outer_b = 1 + p.suffix[b + 1]
    inner_a = 1 + p.chain_right(a + 1, b - 1)
    inner_b = 1 + p.chain_left(b - 1, a + 1)
    return (p.branch[a] - p.branch[b]) * (inner_b * outer_b - outer_a * inner_a)


def tail_switch_delta(p: PathProfile, i: int, j: int) -> int:
    """Change in count from exchanging the prefix tail through slot ``i`` with
    the suffix tail from slot ``j`` (``0 <= i``, ``j <= n+1``, ``j - i >= 2``)."""
    if not (0 <= i and j <= p.n + 1 and j - i >= 2):
        raise IndexError(f"tail slots ({i}, {j}) invalid for n={p.n}")
    left, right = p.prefix[i], p.suffix[j]
    return (right - left) * (p.chain_right(i + 1, j - 1) - p.chain_left(j - 1, i + 1))


def degree_switch_delta(p: PathProfile, receiver: int, giver: int, moved: int, kept: int) -> int:
    """Change in count when branches leave slot ``giver`` for slot ``receiver``.

    ``moved`` and ``kept`` are the products of ``1 + f`` over the moved and
    the remaining off-path branches of the giver, so ``c[giver] == moved * kept``.
    """
    _check_slot(p, receiver)
    _check_slot(p, giver)
    if receiver == giver:
        raise ValueError("receiver and giver must differ")
    if moved * kept != p.branch[giver]:
        raise ValueError("moved * kept must equal the giver's fragment count")
    env_r, env_g = _environments(p, receiver, giver)
    return (moved - 1) * (p.branch[receiver] * env_r - kept * env_g)


def _environments(p: PathProfile, a: int, b: int) -> tuple[int, int]:
    """(1 + outer tail)(1 + inner chain) for slot a and for slot b."""
    if a < b:
        env_a = (1 + p.prefix[a - 1]) * (1 + p.chain_right(a + 1, b - 1))
        env_b = (1 + p.suffix[b + 1]) * (1 + p.chain_left(b - 1, a + 1))
    else:
        env_a = (1 + p.suffix[a + 1]) * (1 + p.chain_left(a - 1, b + 1))
        env_b = (1 + p.prefix[b - 1]) * (1 + p.chain_right(b + 1, a - 1))
    return env_a, env_b


# ------------------------------------------------- centred-labeling gains
#
# On a path labeled ... x2 x1 y1 y2 ... these evaluate the gains of the
# Phase II and Phase III moves at level k from C_k, D_k, the outer tails
# C_{>=k+1}, D_{>=k+1} and the inner counts C, D of ``lemma_cd``.


def tail_gain(c_ge_k: int, d_ge_k: int, cd: LemmaCD) -> int:
    """f(S) - f(T) for exchanging X_{>=k} and Y_{>=k}."""
    return (d_ge_k - c_ge_k) * (cd.x_count - cd.y_count)


def component_gain(c_k: int, d_k: int, c_ge_next: int, d_ge_next: int, cd: LemmaCD) -> int:
    """f(S) - f(T) for exchanging X_k and Y_k."""
    return (d_k - c_k) * ((1 + c_ge_next) * (1 + cd.x_count) - (1 + d_ge_next) * (1 + cd.y_count))


def degree_gain(c_k: int, d_kept: int, d_moved: int, c_ge_next: int, d_ge_next: int, cd: LemmaCD) -> int:
    """f(S) - f(T) for moving branches with product ``d_moved`` from y_k to x_k."""
    a = (1 + c_ge_next) * (1 + cd.x_count)
    b = (1 + d_ge_next) * (1 + cd.y_count)
    return c_k * d_moved * a + d_kept * b - c_k * a - d_kept * d_moved * b


def degree_gain_factored(c_k: int, d_kept: int, d_moved: int, c_ge_next: int, d_ge_next: int, cd: LemmaCD) -> int:
    """``(D''-1)(C_k-D')[A-B]``; kept only to show it differs from :func:`degree_gain`."""
    a = (1 + c_ge_next) * (1 + cd.x_count)
    b = (1 + d_ge_next) * (1 + cd.y_count)
    return (d_moved - 1) * (c_k - d_kept) * (a - b)
