from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sdtree import enumeration as E
from sdtree.core import ladder_shape, mu_shape, pairwise_shape, parse_shape
from sdtree.generate import parenthetic_forms


def double_factorial_odd(n):
    # (2n-3)!! by its definition, independent of count_all
    out = 1
    for k in range(2 * n - 3, 0, -2):
        out *= k
    return out


def test_count_all_values():
    assert [E.count_all(n) for n in range(1, 8)] == [1, 1, 3, 15, 105, 945, 10395]


@pytest.mark.parametrize("n", range(2, 60))
def test_count_all_oracle(n):
    assert E.count_all(n) == double_factorial_odd(n) == E.count_all_via_catalan(n)


def test_count_ladder():
    assert E.count_ladder(7) == 2520
    assert E.count_ladder(2) == 1


def test_epsilon_first_values():
    expected = [0, 1, 1, 3, 2, 3, 4, 7]
    for method in E.EPSILON_METHODS:
        assert [E.epsilon(n, method) for n in range(1, 9)] == expected, method


@given(st.integers(1, 10**6))
def test_epsilon_methods_agree(n):
    r = E.epsilon(n)
    assert E.epsilon(n, "closed") == r
    assert E.epsilon(n, "closed_arithmetic") == r
    assert E.epsilon(n, "baruchel") == r


@pytest.mark.parametrize("n", range(1, 300))
def test_baruchel_blockwise_matches_direct(n):
    assert E.epsilon_baruchel(n) == E.epsilon_baruchel_direct(n)


@given(st.integers(0, 19))
def test_epsilon_power_of_two(k):
    # every node of a perfect tree is an S-node
    assert E.epsilon(2**k) == 2**k - 1


@pytest.mark.parametrize("n", range(1, 40))
def test_sigma_methods(n):
    values = {E.sigma_pairwise(n, m) for m in E.SIGMA_METHODS}
    assert len(values) == 1
    assert E.sigma_pairwise(n) == E.class_count(pairwise_shape(n))


def test_sigma_first_values():
    assert [E.sigma_pairwise(n) for n in range(1, 9)] == [1, 1, 3, 3, 30, 90, 315, 315]


def test_alpha_first_values():
    assert [E.alpha(n) for n in range(1, 16)] == [
        1, 1, 1, 2, 3, 6, 11, 24, 47, 103, 214, 481, 1030, 2337, 5131,
    ]


@pytest.mark.parametrize("n", range(1, 13))
def test_tau_against_form_generator(n):
    # tau counts the objects produced by parenthetic_forms, bucketed by S-nodes
    from sdtree.core import s_node_count

    counts = [0] * (E.beta(n) + 1)
    for f in parenthetic_forms(n):
        counts[s_node_count(f)] += 1
    assert counts == E.tau_row(n)
    assert sum(counts) == E.alpha(n)


def test_tau_values():
    assert E.tau_row(8) == [0, 1, 6, 7, 6, 3, 0, 1]
    assert E.tau(15, 5) == 1190
    assert E.tau(15, 14) == 0
    assert E.tau(15, -1) == 0


@pytest.mark.parametrize("n", range(1, 120))
def test_tau_row_sums_to_alpha(n):
    assert sum(E.tau_row(n)) == E.alpha(n)


@pytest.mark.parametrize("n", range(3, 200))
def test_tau2_closed(n):
    assert E.tau2_closed(n) == E.tau(n, 2)


def test_tau2_closed_at_101():
    # n = 2m+1 with m = 50
    assert E.tau2_closed(101) == 49**2 == 2401


def test_tau_one_s_node():
    # only the ladder has a single S-node
    assert all(E.tau(n, 1) == 1 for n in range(2, 60))


@given(st.integers(0, 10**6))
def test_beta_methods_agree(n):
    b = E.beta(n)
    assert E.beta(n, "decomposition") == b
    assert E.beta(n, "popcount") == b


@pytest.mark.parametrize("n", range(0, 200))
def test_beta_is_two_adic_valuation(n):
    f = factorial(n)
    v = 0
    while f % 2 == 0:
        f //= 2
        v += 1
    assert E.beta(n) == v
    assert E.min_class_count(n) == f


@pytest.mark.parametrize("n", range(1, 60))
def test_mu_attains_beta(n):
    from sdtree.core import s_node_count

    assert s_node_count(mu_shape(n)) == E.beta(n)
    assert E.class_count(mu_shape(n)) == E.min_class_count(n)


def test_class_count_named_shapes():
    assert E.class_count(ladder_shape(8)) == 20160
    assert E.class_count(pairwise_shape(8)) == 315


def test_distinct_labelings_differs_from_class_count():
    t = parse_shape("((x+(x+(x+x)))+((x+x)+(x+x)))")
    assert E.class_count(t) == 1260
    assert E.distinct_labelings(t) == 2520


@pytest.mark.parametrize("n", range(0, 40))
def test_catalan(n):
    assert E.catalan(n) == comb(2 * n, n) - comb(2 * n, n + 1)


def test_guards():
    with pytest.raises(ValueError):
        E.count_all(0)
    with pytest.raises(TypeError):
        E.alpha(2.0)
    with pytest.raises(E.CapExceeded):
        E.count_all(E.caps.big + 1)
    with pytest.raises(ValueError):
        E.epsilon(5, "bogus")
    with pytest.raises(ArithmeticError):
        E.exact_div(7, 2)
