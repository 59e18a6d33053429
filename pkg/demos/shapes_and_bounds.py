"""
Shapes and the S-node bound
===========================

A shape is a tree with its labels erased.  Its S-nodes decide how many
labelings collapse together, so the shape with the most S-nodes has the
fewest distinct summations.
"""

from collections import Counter

from sdtree import enumeration as E
from sdtree.core import mu_shape, s_node_count
from sdtree.generate import parenthetic_forms, shapes

# Shapes on 6 leaves with their S-node counts.
for s in shapes(6):
    print(f"{s.text:32s} S={s_node_count(s)}")

# No shape on n leaves has more than beta(n) S-nodes, the exponent of 2 in n!.
for n in range(2, 13):
    counts = Counter(s_node_count(s) for s in shapes(n))
    print(n, "beta =", E.beta(n), " attained by", counts[E.beta(n)], "shape(s);  mu:", s_node_count(mu_shape(n)))

# The tau table counts parenthetic forms, which keep the two orders of a pair
# of different equal-size halves apart.  From n = 8 on it exceeds the number
# of shapes up to isomorphism.
for n in range(6, 11):
    print(n, "forms:", sum(1 for _ in parenthetic_forms(n)), " alpha:", E.alpha(n),
          " shapes:", sum(1 for _ in shapes(n)))
print("tau row 15:", E.tau_row(15))
