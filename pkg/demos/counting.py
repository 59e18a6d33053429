"""
Counting inequivalent summations
================================

Swapping the two operands of any addition never changes a floating-point
sum, so summations are counted up to child swaps.  This script prints the
exact counts for all trees, the ladder, and the pairwise tree.
"""

from sdtree import enumeration as E
from sdtree.core import pairwise, s_node_count

# All summation trees on n terms, up to swaps.
for n in range(2, 9):
    print(f"n={n}  all={E.count_all(n)}  ladder={E.count_ladder(n)}  pairwise={E.sigma_pairwise(n)}")

# The pairwise count is n! divided by 2 for every node whose two halves
# have the same number of leaves (an S-node).
t = pairwise("abcdefg")
print(t.text, "has", s_node_count(t), "S-nodes; epsilon(7) =", E.epsilon(7))

# Four ways to get epsilon agree well past any size we would sum by hand.
for n in (10, 1000, 65536, 99999):
    print(n, [E.epsilon(n, m) for m in E.EPSILON_METHODS])

# The same total falls out of Catalan numbers: orderings times bracketings,
# halved once per addition.
print([E.count_all_via_catalan(n) == E.count_all(n) for n in range(2, 12)])
