import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdtree.core import (
    D,
    S,
    DuplicateLabelError,
    ParseError,
    automorphism_exponent,
    canonical_key,
    canonical_labeled,
    canonical_shape,
    d_node_count,
    default_labels,
    equivalent,
    interior_paths,
    isomorphic,
    ladder,
    ladder_shape,
    leaf,
    mu,
    node,
    pairwise,
    pairwise_shape,
    parse,
    parse_shape,
    relabel,
    s_node_count,
    sd_labels,
    serialize,
    shape_of,
    swap_at,
)
from sdtree.enumeration import beta, epsilon


@st.composite
def trees(draw, max_leaves=9):
    """Random labeled trees on the labels a, b, c, ... in a random order."""
    n = draw(st.integers(1, max_leaves))
    labels = draw(st.permutations(default_labels(n)))

    def build(items):
        if len(items) == 1:
            return leaf(items[0])
        k = draw(st.integers(1, len(items) - 1))
        return node(build(items[:k]), build(items[k:]))

    return build(list(labels))


def random_swaps(draw, tree):
    t = tree
    for _ in range(draw(st.integers(0, 12))):
        paths = interior_paths(t)
        if not paths:
            break
        t = swap_at(t, draw(st.sampled_from(paths)))
    return t


# ---------------------------------------------------------------- parsing

def test_serialize_examples():
    assert ladder("abcd").text == "(((a+b)+c)+d)"
    assert pairwise("abcde").text == "(((a+b)+c)+(d+e))"
    assert pairwise("abcd").text == "((a+b)+(c+d))"
    assert serialize(parse("  ( a + (b+c) ) ")) == "(a+(b+c))"


def test_numeric_labels():
    t = parse("((0+1)+2)")
    assert t.labels() == [0, 1, 2]


@pytest.mark.parametrize("text, pos", [("(a+b", 4), ("(a+b))", 5), ("(a b)", 3), ("", 0), ("(a+)", 3)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.pos == pos


def test_unbalanced_message():
    with pytest.raises(ParseError, match="unbalanced parenthesis"):
        parse("((a+b)+c")


def test_duplicate_labels_rejected():
    with pytest.raises(DuplicateLabelError):
        parse("(a+a)")


def test_shape_parse():
    s = parse_shape("((x+x)+x)")
    assert s.leaf_count == 3
    assert s.labels() == [None, None, None]
    # labels are accepted and erased
    assert parse_shape("(a+(b+c))") == parse_shape("(x+(x+x))")


@given(trees())
def test_parse_serialize_roundtrip(t):
    assert parse(serialize(t)) == t
    assert parse_shape(shape_of(t).text) == shape_of(t)


# ---------------------------------------------------------------- SD labels

def test_sd_labels_small():
    assert sd_labels(parse("((a+b)+c)")) == {"": D, "L": S}
    assert sd_labels(parse("((a+b)+(c+d))")) == {"": S, "L": S, "R": S}


@pytest.mark.parametrize("n", range(1, 40))
def test_named_shapes_s_counts(n):
    # ladder has exactly one S-node (the bottom pair); pairwise has epsilon(n)
    assert s_node_count(ladder_shape(n)) == (1 if n >= 2 else 0)
    assert s_node_count(pairwise_shape(n)) == epsilon(n)
    assert s_node_count(mu(default_labels(n))) == beta(n)


@given(trees())
def test_s_plus_d_is_interior_count(t):
    assert s_node_count(t) + d_node_count(t) == t.leaf_count - 1
    assert len(interior_paths(t)) == t.leaf_count - 1


@given(trees())
def test_automorphisms_bounded_by_s_nodes(t):
    assert automorphism_exponent(t) <= s_node_count(t)


def test_automorphism_gap_example():
    # the root is an S-node but its two halves are different shapes
    t = parse_shape("((x+(x+(x+x)))+((x+x)+(x+x)))")
    assert s_node_count(t) == 5
    assert automorphism_exponent(t) == 4


# ---------------------------------------------------------------- canonical forms

def test_canonical_examples():
    assert canonical_labeled(parse("((c+b)+a)")).text == "(a+(b+c))"
    assert canonical_shape(parse("((a+b)+c)")).text == "(x+(x+x))"


@given(st.data(), trees())
def test_swaps_preserve_canonical_key(data, t):
    u = random_swaps(data.draw, t)
    assert canonical_key(u) == canonical_key(t)
    assert equivalent(t, u)
    assert isomorphic(t, u)
    assert s_node_count(u) == s_node_count(t)


@given(trees())
def test_canonicalization_idempotent(t):
    c = canonical_labeled(t)
    assert canonical_labeled(c) == c
    assert canonical_shape(canonical_shape(t)) == canonical_shape(t)
    assert canonical_shape(t) == shape_of(c)


@given(trees(max_leaves=6), trees(max_leaves=6))
@settings(max_examples=200)
def test_equivalent_means_same_shape_and_labels(a, b):
    if equivalent(a, b):
        assert isomorphic(a, b)
        assert sorted(map(str, a.labels())) == sorted(map(str, b.labels()))


def test_reassociation_is_not_equivalence():
    assert not equivalent(parse("((a+b)+c)"), parse("(a+(b+c))"))
    assert equivalent(parse("((a+b)+c)"), parse("(c+(b+a))"))


def test_relabel_and_swap():
    t = relabel(pairwise_shape(4), "wxyz")
    assert t.text == "((w+x)+(y+z))"
    assert swap_at(t, "").text == "((y+z)+(w+x))"
    assert swap_at(t, "R").text == "((w+x)+(z+y))"
    with pytest.raises(ValueError):
        swap_at(t, "LL")


def test_mu_shape_small():
    assert mu("abc").leaf_count == 3
    assert s_node_count(mu(default_labels(7))) == beta(7) == 4
