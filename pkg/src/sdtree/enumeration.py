"""Exact counts of summation trees, shapes and S-nodes.

Every count is a Python ``int``.  Quotients such as ``n! / 2**e`` are checked
to be exact; a remainder raises ``ArithmeticError`` because it can only mean
a formula bug.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .core import SumTree, s_node_count


@dataclass
class Caps:
    """Largest ``n`` accepted for integer-valued and factorial-scale counts."""

    small: int = 10**6
    big: int = 5000


caps = Caps()


class CapExceeded(ValueError):
    pass


def _check_n(n, lo=1, big=False):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < lo:
        raise ValueError(f"n must be >= {lo}, got {n}")
    cap = caps.big if big else caps.small
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the configured cap {cap}")


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise ArithmeticError(f"{a} is not divisible by {b}")
    return q


# ---------------------------------------------------------------- all / ladder

def count_all(n: int) -> int:
    """Computationally inequivalent summations on ``n`` terms: (2n-3)!!."""
    _check_n(n, big=True)
    out = 1
    for k in range(3, 2 * n - 2, 2):
        out *= k
    return out


def count_ladder(n: int) -> int:
    _check_n(n, lo=2, big=True)
    return factorial(n) // 2


# ---------------------------------------------------------------- epsilon

@lru_cache(maxsize=None)
def _epsilon_rec(n: int) -> int:
    if n == 1:
        return 0
    m, odd = divmod(n, 2)
    if odd:
        return _epsilon_rec(m) + _epsilon_rec(m + 1)
    return 2 * _epsilon_rec(m) + 1


def epsilon_closed_bitwise(n: int) -> int:
    """Per-level S-node counts summed over the bits of ``n``.

    Level ``i`` contributes ``2**i - (n mod 2**i)`` when bit ``i`` is clear
    and ``n mod 2**i`` when it is set.
    """
    total = 0
    for i in range(n.bit_length()):
        low = n & ((1 << i) - 1)
        if (n >> i) & 1:
            total += low
        else:
            total += (1 << i) - low
    return total


def epsilon_closed_arithmetic(n: int) -> int:
    """The closed form written with floor, mod and a signed power of -1."""
    total = 0
    for i in range(n.bit_length()):  # i = 0 .. floor(log2 n)
        p = 2**i
        flip = (n // p + 1) % 2
        total += flip * p + (-1) ** flip * (n % p)
    return total


def _count_low_half(lo: int, hi: int, half: int) -> int:
    """How many x in [lo, hi] satisfy x mod (2*half) < half."""

    def below(x):  # count in [0, x)
        q, r = divmod(x, 2 * half)
        return q * half + min(r, half)

    return below(hi + 1) - below(lo)


def epsilon_baruchel(n: int) -> int:
    """|{k : 1 <= k < n, (n-k-1) mod 2**(L+1) < 2**L}|, L = floor(log2 k).

    Members are counted one bit-length block of ``k`` at a time; within a
    block the modulus is fixed so the membership test is periodic in ``k``.
    """
    total = 0
    j = 0
    while (1 << j) < n:
        k_lo = 1 << j
        k_hi = min((1 << (j + 1)) - 1, n - 1)
        # x = n - k - 1 ranges over [n - k_hi - 1, n - k_lo - 1]
        total += _count_low_half(n - k_hi - 1, n - k_lo - 1, 1 << j)
        j += 1
    return total


def epsilon_baruchel_direct(n: int) -> int:
    """Membership test for each ``k`` separately; O(n)."""
    count = 0
    for k in range(1, n):
        L = k.bit_length() - 1
        if (n - k - 1) % (1 << (L + 1)) < (1 << L):
            count += 1
    return count


EPSILON_METHODS = ("recursive", "closed", "closed_arithmetic", "baruchel")


def epsilon(n: int, method: str = "recursive") -> int:
    """S-node count of the pairwise summation tree on ``n`` leaves."""
    _check_n(n)
    if method == "recursive":
        return _epsilon_rec(n)
    if method == "closed":
        return epsilon_closed_bitwise(n)
    if method == "closed_arithmetic":
        return epsilon_closed_arithmetic(n)
    if method == "baruchel":
        return epsilon_baruchel(n)
    raise ValueError(f"unknown epsilon method {method!r}")


# ---------------------------------------------------------------- pairwise

@lru_cache(maxsize=None)
def _sigma_tournament(n: int) -> int:
    if n == 1:
        return 1
    m, odd = divmod(n, 2)
    if odd:
        return comb(2 * m + 1, m) * _sigma_tournament(m) * _sigma_tournament(m + 1)
    return exact_div(comb(2 * m, m) * _sigma_tournament(m) ** 2, 2)


SIGMA_METHODS = ("tournament_recursive", "epsilon_recursive", "epsilon_closed")


def sigma_pairwise(n: int, method: str = "epsilon_closed") -> int:
    """Computationally inequivalent pairwise summations on ``n`` summands."""
    _check_n(n, big=True)
    if method == "tournament_recursive":
        return _sigma_tournament(n)
    if method == "epsilon_recursive":
        return exact_div(factorial(n), 2 ** _epsilon_rec(n))
    if method == "epsilon_closed":
        return exact_div(factorial(n), 2 ** epsilon_closed_bitwise(n))
    raise ValueError(f"unknown sigma method {method!r}")


# ---------------------------------------------------------------- per shape

def class_count(shape: SumTree) -> int:
    """n! / 2**(S-node count): labelings of ``shape`` modulo S-node block swaps.

    This is the number of equivalence classes of labelings whenever every
    S-node's two children are isomorphic (ladder, pairwise, mu and every shape
    with n <= 7).  See ``distinct_labelings`` for the general class count.
    """
    n = shape.leaf_count
    return exact_div(factorial(n), 2 ** s_node_count(shape))


def distinct_labelings(shape: SumTree) -> int:
    """Equivalence classes among all labelings of ``shape``: n!/|Aut(shape)|."""
    from .core import automorphism_exponent

    n = shape.leaf_count
    return exact_div(factorial(n), 2 ** automorphism_exponent(shape))


# ---------------------------------------------------------------- shapes

_table_lock = threading.Lock()
_alpha = [0, 1]  # alpha[0] unused


def alpha(n: int) -> int:
    """Half-Catalan numbers: sum_{i=1}^{n//2} alpha(i) * alpha(n-i), alpha(1) = 1."""
    _check_n(n, big=True)
    if n >= len(_alpha):
        with _table_lock:
            for k in range(len(_alpha), n + 1):
                _alpha.append(sum(_alpha[i] * _alpha[k - i] for i in range(1, k // 2 + 1)))
    return _alpha[n]


# Tables of rows tau(k, 0..min(w, beta(k))) for k = 0, 1, ..., keyed by the
# width w; a table of width w answers every query with s <= w.
_tau_tables: dict = {}


def _tau_table(n: int, w: int) -> list:
    rows = _tau_tables.get(w)
    if rows is not None and len(rows) > n:
        return rows
    with _table_lock:
        rows = _tau_tables.setdefault(w, [[1], [1]])  # tau(0,0) = tau(1,0) = 1
        for k in range(len(rows), n + 1):
            row = [0] * (min(w, beta(k)) + 1)
            width = len(row)
            for j in range(1, (k - 1) // 2 + 1):
                a, b = rows[j], rows[k - j]
                for i, x in enumerate(a):
                    if x:
                        for t, y in enumerate(b[: width - i]):
                            row[i + t] += x * y
            if k % 2 == 0:
                h = rows[k // 2]
                for i, x in enumerate(h):
                    if x:
                        for t, y in enumerate(h[: max(0, width - i - 1)]):
                            row[i + t + 1] += x * y
            rows.append(row)
    return rows


def tau(n: int, s: int) -> int:
    """Parenthetic forms with ``n`` leaves and exactly ``s`` S-nodes (0 off support)."""
    _check_n(n, lo=0, big=True)
    if s < 0 or s > beta(n):
        return 0
    return _tau_table(n, s)[n][s]


def tau_row(n: int) -> list:
    """``[tau(n, 0), ..., tau(n, beta(n))]``."""
    _check_n(n, lo=0, big=True)
    w = beta(n)
    return list(_tau_table(n, w)[n])


def tau2_closed(n: int) -> int:
    """Forms with exactly two S-nodes: (m-1)^2 for n=2m+1, (m-1)(m-2) for n=2m."""
    _check_n(n, big=True)
    if n < 3:
        return 0  # the odd formula gives 1 at n=1, which has no interior node
    m, odd = divmod(n, 2)
    return (m - 1) ** 2 if odd else (m - 1) * (m - 2)


# ---------------------------------------------------------------- beta

def beta_legendre(n: int) -> int:
    total, p = 0, 2
    while p <= n:
        total += n // p
        p *= 2
    return total


def beta_decomposition(n: int) -> int:
    """Split off the top power of two: beta(2^k + r) = (2^k - 1) + beta(r)."""
    total = 0
    while n:
        top = 1 << (n.bit_length() - 1)
        total += top - 1
        n -= top
    return total


def beta_popcount(n: int) -> int:
    return n - bin(n).count("1")


BETA_METHODS = ("legendre", "decomposition", "popcount")


def beta(n: int, method: str = "legendre") -> int:
    """Exponent of 2 in n!; the most S-nodes any shape on n leaves can have."""
    _check_n(n, lo=0)
    if method == "legendre":
        return beta_legendre(n)
    if method == "decomposition":
        return beta_decomposition(n)
    if method == "popcount":
        return beta_popcount(n)
    raise ValueError(f"unknown beta method {method!r}")


def min_class_count(n: int) -> int:
    """n! / 2**beta(n), the largest odd divisor of n!."""
    _check_n(n, lo=0, big=True)
    return exact_div(factorial(n), 2 ** beta(n))


def catalan(n: int) -> int:
    _check_n(n, lo=0, big=True)
    return exact_div(comb(2 * n, n), n + 1)


def count_all_via_catalan(n: int) -> int:
    """n! * C(n-1) / 2**(n-1): orderings times bracketings over commutations."""
    _check_n(n, big=True)
    return exact_div(factorial(n) * catalan(n - 1), 2 ** (n - 1))
