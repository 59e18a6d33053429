"""Exhaustive, duplicate-free generation of shapes and equivalence classes.

All generators are lazy and deterministic: two runs yield identical
sequences.  The brute-force ``oracle_*`` counters share no code with the
generators beyond the canonical key they deduplicate on.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterator, Optional, Sequence

from .core import (
    DuplicateLabelError,
    SumTree,
    canonical_key,
    canonical_shape,
    leaf,
    node,
    relabel,
    s_node_count,
)

SHAPE_CAP = 20
ORACLE_SHAPE_CAP = 8
ORACLE_TOTAL_CAP = 7


def _check_size(n, cap=None):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if cap is not None and n > cap:
        raise ValueError(f"n={n} exceeds the generation cap {cap}")


# ---------------------------------------------------------------- shapes

def _iter_shapes(n: int) -> Iterator[SumTree]:
    if n == 1:
        yield leaf()
        return
    for i in range(1, n // 2 + 1):
        for a in _all_shapes(i):
            for b in _all_shapes(n - i):
                if i == n - i and canonical_key(a) > canonical_key(b):
                    continue
                yield node(a, b)


@lru_cache(maxsize=None)
def _all_shapes(n: int) -> tuple:
    return tuple(_iter_shapes(n))


def shapes(n: int, s_filter: Optional[int] = None) -> Iterator[SumTree]:
    """Every shape with ``n`` leaves up to isomorphism, each exactly once.

    Emitted trees are ``canonical_shape`` fixed points, ordered by left
    subtree leaf count, then recursively by the left and right subtrees.
    With ``s_filter`` only shapes with that many S-nodes are produced.
    """
    _check_size(n, SHAPE_CAP)
    if s_filter is not None and s_filter < 0:
        raise ValueError("s_filter must be nonnegative")
    # subtrees come from cached tables; the top level is generated lazily
    for t in _iter_shapes(n):
        if s_filter is None or s_node_count(t) == s_filter:
            yield t


@lru_cache(maxsize=None)
def _forms(n: int) -> tuple:
    if n == 1:
        return (leaf(),)
    return tuple(node(a, b)
                 for i in range(1, n // 2 + 1)
                 for a in _forms(i)
                 for b in _forms(n - i))


def parenthetic_forms(n: int, s_filter: Optional[int] = None) -> Iterator[SumTree]:
    """Trees built by joining an i-leaf and an (n-i)-leaf form, i <= n - i.

    Children are normalized only by leaf count, so at an equal split both
    orders of two different subforms are produced.  The counts are
    ``alpha(n)`` and ``tau(n, s)``; they exceed the number of isomorphism
    classes from n = 8 on, where ``shapes`` is the duplicate-free stream.
    """
    _check_size(n, SHAPE_CAP)
    for t in _forms(n):
        if s_filter is None or s_node_count(t) == s_filter:
            yield t


# ---------------------------------------------------------------- labeled classes

def _check_labels(shape: SumTree, labels: Sequence) -> list:
    labels = list(labels)
    if len(labels) != shape.leaf_count:
        raise ValueError(f"shape has {shape.leaf_count} leaves, got {len(labels)} labels")
    keys = [str(x) for x in labels]
    if len(set(keys)) != len(keys):
        raise DuplicateLabelError("labels must be distinct")
    return labels


def _reps(shape: SumTree, labels: tuple) -> Iterator[SumTree]:
    """Canonical labeled trees of canonical ``shape`` over ``labels``.

    Walks label subsets top-down.  At a node with isomorphic children the
    first label is pinned to the left subset, which removes the swap
    redundancy before any subtree is built.
    """
    if shape.is_leaf:
        yield leaf(labels[0])
        return
    a, b = shape.left, shape.right
    k = a.leaf_count
    symmetric = k == b.leaf_count and canonical_key(a) == canonical_key(b)
    idx = range(len(labels))
    if symmetric:
        subsets = ((0,) + rest for rest in combinations(idx[1:], k - 1))
    else:
        subsets = combinations(idx, k)
    for chosen in subsets:
        chosen_set = set(chosen)
        left_labels = tuple(labels[i] for i in chosen)
        right_labels = tuple(labels[i] for i in idx if i not in chosen_set)
        right_reps = None
        for ra in _reps(a, left_labels):
            if right_reps is None:
                right_reps = list(_reps(b, right_labels))
            for rb in right_reps:
                if ra._sort_key <= rb._sort_key:
                    yield node(ra, rb)
                else:
                    yield node(rb, ra)


def class_representatives(shape: SumTree, labels: Sequence) -> Iterator[SumTree]:
    """One canonical labeled tree per equivalence class with this shape.

    Yields ``distinct_labelings(shape)`` trees, which equals
    ``class_count(shape)`` whenever every S-node has isomorphic children.
    """
    labels = _check_labels(shape, labels)
    yield from _reps(canonical_shape(shape), tuple(labels))


def all_classes(n: int, labels: Sequence) -> Iterator[SumTree]:
    """One canonical representative of every equivalence class on ``n`` summands."""
    _check_size(n)
    labels = list(labels)
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    for sh in shapes(n):
        yield from class_representatives(sh, labels)


# ---------------------------------------------------------------- brute-force oracles

def oracle_class_count(shape: SumTree, labels: Sequence) -> int:
    """Count classes by labeling ``shape`` every possible way and deduplicating."""
    labels = _check_labels(shape, labels)
    if shape.leaf_count > ORACLE_SHAPE_CAP:
        raise ValueError(f"shape oracle is capped at n={ORACLE_SHAPE_CAP}")
    keys = {canonical_key(relabel(shape, perm)) for perm in permutations(labels)}
    return len(keys)


@lru_cache(maxsize=None)
def _bracketings(n: int) -> tuple:
    """All ordered full binary trees on leaf positions 0..n-1 as nested tuples."""

    def build(lo, hi):
        if hi - lo == 1:
            return [lo]
        out = []
        for mid in range(lo + 1, hi):
            for a in build(lo, mid):
                for b in build(mid, hi):
                    out.append((a, b))
        return out

    return tuple(build(0, n))


def _key_of(skel, names):
    """Canonical key of a bracketing with leaf positions mapped to ``names``."""
    if isinstance(skel, int):
        return 1, names[skel]
    na, ka = _key_of(skel[0], names)
    nb, kb = _key_of(skel[1], names)
    if (na, ka) > (nb, kb):
        na, ka, nb, kb = nb, kb, na, ka
    return na + nb, f"({ka}+{kb})"


def oracle_total_count(n: int, labels: Optional[Sequence] = None) -> int:
    """Count classes over every ordering of every bracketing (Catalan(n-1) * n!)."""
    _check_size(n, ORACLE_TOTAL_CAP)
    if labels is None:
        labels = [chr(ord("a") + i) for i in range(n)]
    labels = [str(x) for x in labels]
    if len(labels) != n or len(set(labels)) != n:
        raise ValueError("need n distinct labels")
    keys = set()
    for skel in _bracketings(n):
        for perm in permutations(labels):
            keys.add(_key_of(skel, perm)[1])
    return len(keys)


def swap_closure(tree: SumTree) -> set:
    """Serializations of every tree reachable from ``tree`` by child swaps (BFS)."""
    from collections import deque

    from .core import interior_paths, swap_at

    seen = {tree.text}
    queue = deque([tree])
    while queue:
        t = queue.popleft()
        for path in interior_paths(t):
            u = swap_at(t, path)
            if u.text not in seen:
                seen.add(u.text)
                queue.append(u)
    return seen
