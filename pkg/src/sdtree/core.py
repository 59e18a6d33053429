"""Summation trees, their text form, SD labeling and canonical forms.

A summation tree is a rooted full binary tree: leaves carry summand labels,
interior nodes are additions.  A *shape* is the same structure with labels
erased.  Two labeled trees are computationally equivalent when one can be
reached from the other by swapping the two children of any set of nodes;
two shapes are isomorphic under the same moves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional, Sequence, Union

Label = Union[str, int]

S = "S"
D = "D"

SHAPE_LEAF = "x"

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class ParseError(ValueError):
    """Malformed summation text; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class DuplicateLabelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SumTree:
    """Immutable full binary summation tree.

    A leaf has ``label`` set (``None`` for an unlabeled shape leaf) and no
    children.  An interior node has both children and no label.
    """

    label: Optional[Label] = None
    left: Optional["SumTree"] = None
    right: Optional["SumTree"] = None
    leaf_count: int = field(init=False)

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a node has either zero or two children")
        if self.left is None:
            if self.label is not None:
                _check_label(self.label)
            n = 1
        else:
            if self.label is not None:
                raise ValueError("interior nodes carry no label")
            n = self.left.leaf_count + self.right.leaf_count
        object.__setattr__(self, "leaf_count", n)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def is_shape(self) -> bool:
        return all(leaf.label is None for leaf in self.leaves())

    def leaves(self) -> Iterator["SumTree"]:
        stack = [self]
        while stack:
            t = stack.pop()
            if t.is_leaf:
                yield t
            else:
                stack.append(t.right)
                stack.append(t.left)

    def labels(self) -> list:
        return [leaf.label for leaf in self.leaves()]

    def interior_nodes(self) -> Iterator["SumTree"]:
        """Interior nodes in pre-order."""
        stack = [self]
        while stack:
            t = stack.pop()
            if not t.is_leaf:
                yield t
                stack.append(t.right)
                stack.append(t.left)

    @cached_property
    def text(self) -> str:
        if self.is_leaf:
            return SHAPE_LEAF if self.label is None else str(self.label)
        return f"({self.left.text}+{self.right.text})"

    @cached_property
    def _canonical_text(self) -> str:
        if self.is_leaf:
            return self.text
        a, b = _ordered(self.left, self.right)
        return f"({a._canonical_text}+{b._canonical_text})"

    @cached_property
    def _sort_key(self):
        return (self.leaf_count, self._canonical_text)

    def __eq__(self, other):
        if not isinstance(other, SumTree):
            return NotImplemented
        return self is other or self.text == other.text

    def __hash__(self):
        return hash(self.text)

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"SumTree({self.text!r})"


def _check_label(label: Label) -> None:
    if isinstance(label, bool):
        raise TypeError("labels are identifiers or nonnegative integers")
    if isinstance(label, int):
        if label < 0:
            raise ValueError(f"integer label must be nonnegative: {label}")
    elif isinstance(label, str):
        if not _IDENT.match(label):
            raise ValueError(f"invalid label {label!r}")
    else:
        raise TypeError(f"invalid label type {type(label).__name__}")


def _ordered(a: SumTree, b: SumTree):
    return (a, b) if a._sort_key <= b._sort_key else (b, a)


def leaf(label: Optional[Label] = None) -> SumTree:
    return SumTree(label=label)


def node(left: SumTree, right: SumTree) -> SumTree:
    return SumTree(left=left, right=right)


def _require_distinct(tree: SumTree) -> None:
    seen = set()
    for lab in tree.labels():
        if lab is None:
            continue
        key = str(lab)
        if key in seen:
            raise DuplicateLabelError(f"duplicate leaf label {key!r}")
        seen.add(key)


# ---------------------------------------------------------------- text form

_TOKEN = re.compile(r"\s*(?:(?P<punct>[()+])|(?P<num>\d+)(?![A-Za-z_])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str):
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "num":
            value = int(value)
        yield kind, value, start
        pos = m.end()
    yield "eof", None, end


def _parse(text: str, shape: bool) -> SumTree:
    if not text.strip():
        raise ParseError("empty input", 0)
    tokens = list(_tokenize(text))
    i = 0

    def expect_punct(ch):
        nonlocal i
        kind, value, pos = tokens[i]
        if kind != "punct" or value != ch:
            what = "end of input" if kind == "eof" else repr(value)
            hint = ": unbalanced parenthesis" if ch == ")" else ""
            raise ParseError(f"expected {ch!r}, found {what}{hint}", pos)
        i += 1

    # iterative descent; deep ladders would overflow the recursion limit
    stack = []  # pending frames: [children so far]
    result = None
    while True:
        kind, value, pos = tokens[i]
        if kind == "punct" and value == "(":
            i += 1
            stack.append([])
            continue
        if kind in ("ident", "num"):
            i += 1
            t = leaf(None if shape else value)
        else:
            what = "end of input" if kind == "eof" else repr(value)
            raise ParseError(f"expected a label or '(', found {what}", pos)
        # reduce completed nodes
        while True:
            if not stack:
                result = t
                break
            frame = stack[-1]
            frame.append(t)
            if len(frame) == 1:
                expect_punct("+")
                break
            expect_punct(")")
            stack.pop()
            t = node(frame[0], frame[1])
        if result is not None:
            break
    kind, value, pos = tokens[i]
    if kind != "eof":
        raise ParseError(f"trailing input {value!r}", pos)
    return result


def parse(text: str) -> SumTree:
    """Parse ``expr := label | '(' expr '+' expr ')'`` into a labeled tree.

    Whitespace between tokens is ignored.  Leaf labels must be distinct.
    """
    tree = _parse(text, shape=False)
    _require_distinct(tree)
    return tree


def parse_shape(text: str) -> SumTree:
    """Parse the same grammar but discard labels (any label text allowed)."""
    return _parse(text, shape=True)


def serialize(tree: SumTree) -> str:
    return tree.text


def shape_of(tree: SumTree) -> SumTree:
    if tree.is_leaf:
        return tree if tree.label is None else leaf()
    return node(shape_of(tree.left), shape_of(tree.right))


# ---------------------------------------------------------------- SD labels

def sd_labels(tree: SumTree) -> dict:
    """Map every interior node (keyed by its path from the root) to S or D.

    Paths are strings over ``"L"``/``"R"``; the root is ``""``.
    """
    out = {}
    stack = [("", tree)]
    while stack:
        path, t = stack.pop()
        if t.is_leaf:
            continue
        out[path] = S if t.left.leaf_count == t.right.leaf_count else D
        stack.append((path + "R", t.right))
        stack.append((path + "L", t.left))
    return out


def s_node_count(tree: SumTree) -> int:
    return sum(1 for t in tree.interior_nodes() if t.left.leaf_count == t.right.leaf_count)


def d_node_count(tree: SumTree) -> int:
    return tree.leaf_count - 1 - s_node_count(tree)


def automorphism_exponent(tree: SumTree) -> int:
    """Number of nodes whose two children are isomorphic shapes.

    ``2**automorphism_exponent(t)`` is the number of child-swap sequences
    (up to their net effect) that map the shape of ``t`` onto itself.  It is
    at most ``s_node_count(t)``; the two agree exactly when every S-node has
    isomorphic children.
    """
    return sum(1 for t in tree.interior_nodes()
               if t.left.leaf_count == t.right.leaf_count
               and shape_of(t.left)._canonical_text == shape_of(t.right)._canonical_text)


# ---------------------------------------------------------------- canonical forms

def _canonicalize(tree: SumTree) -> SumTree:
    if tree.is_leaf:
        return tree
    a, b = _ordered(_canonicalize(tree.left), _canonicalize(tree.right))
    return node(a, b)


def canonical_shape(tree: SumTree) -> SumTree:
    """Representative of the isomorphism class of the shape of ``tree``.

    Children are ordered by (leaf count, serialized canonical subtree).
    """
    return _canonicalize(shape_of(tree))


def canonical_labeled(tree: SumTree) -> SumTree:
    _require_distinct(tree)
    return _canonicalize(tree)


def canonical_key(tree: SumTree) -> str:
    """Serialized canonical form; equal keys iff computationally equivalent."""
    return tree._canonical_text


def equivalent(a: SumTree, b: SumTree) -> bool:
    return a.leaf_count == b.leaf_count and canonical_key(a) == canonical_key(b)


def isomorphic(a: SumTree, b: SumTree) -> bool:
    return canonical_shape(a).text == canonical_shape(b).text


def swap_at(tree: SumTree, path: str) -> SumTree:
    """Return ``tree`` with the children of the node at ``path`` exchanged."""
    if tree.is_leaf:
        raise ValueError("cannot swap at a leaf")
    if not path:
        return node(tree.right, tree.left)
    head, rest = path[0], path[1:]
    if head == "L":
        return node(swap_at(tree.left, rest), tree.right)
    return node(tree.left, swap_at(tree.right, rest))


def interior_paths(tree: SumTree) -> list:
    return list(sd_labels(tree))


# ---------------------------------------------------------------- constructors

def _as_leaves(labels: Sequence) -> list:
    labels = list(labels)
    if not labels:
        raise ValueError("empty label sequence")
    leaves = [leaf(lab) for lab in labels]
    named = [str(lab) for lab in labels if lab is not None]
    if len(set(named)) != len(named):
        raise DuplicateLabelError("labels must be distinct")
    return leaves


def ladder(labels: Sequence) -> SumTree:
    """Left-to-right fold: ``(((a+b)+c)+d)``."""
    leaves = _as_leaves(labels)
    t = leaves[0]
    for nxt in leaves[1:]:
        t = node(t, nxt)
    return t


def _pairwise(leaves: list) -> SumTree:
    k = len(leaves)
    if k == 1:
        return leaves[0]
    h = (k + 1) // 2  # larger half on the left
    return node(_pairwise(leaves[:h]), _pairwise(leaves[h:]))


def pairwise(labels: Sequence) -> SumTree:
    """Recursive halving; for odd counts the left half gets the extra summand."""
    return _pairwise(_as_leaves(labels))


def _mu(leaves: list) -> SumTree:
    n = len(leaves)
    top = 1 << (n.bit_length() - 1)
    if top == n:
        return _pairwise(leaves)
    return node(_pairwise(leaves[:top]), _mu(leaves[top:]))


def mu(labels: Sequence) -> SumTree:
    """Perfect tree on the largest power-of-two prefix joined with mu of the rest.

    Attains the maximum possible S-node count for its number of leaves.
    """
    return _mu(_as_leaves(labels))


def ladder_shape(n: int) -> SumTree:
    return ladder([None] * n)


def pairwise_shape(n: int) -> SumTree:
    return pairwise([None] * n)


def mu_shape(n: int) -> SumTree:
    return mu([None] * n)


def default_labels(n: int) -> list:
    """``a, b, ..., z`` then ``x26, x27, ...`` for larger ``n``."""
    alpha = "abcdefghijklmnopqrstuvwxyz"
    return [alpha[i] if i < 26 else f"x{i}" for i in range(n)]


def relabel(shape: SumTree, labels: Sequence) -> SumTree:
    """Assign ``labels`` to the leaves of ``shape`` in left-to-right order."""
    labels = list(labels)
    if len(labels) != shape.leaf_count:
        raise ValueError(f"shape has {shape.leaf_count} leaves, got {len(labels)} labels")
    it = iter(labels)

    def build(t):
        if t.is_leaf:
            return leaf(next(it))
        left = build(t.left)
        return node(left, build(t.right))

    tree = build(shape)
    _require_distinct(tree)
    return tree
