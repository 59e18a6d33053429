"""
Rounding error across equivalence classes
=========================================

Different classes of the same sum can round differently.  The survey
evaluates one representative per class in hardware arithmetic and compares
it with the exact rational sum of the inputs.
"""

from sdtree.core import ladder, pairwise, parse
from sdtree.floateval import eval_tree, survey
from sdtree.ieee import hex_float

# Cancellation: adding the small term first loses it.
binding = {"a": 1, "b": 1e16, "c": -1e16}
for text in ("((a+b)+c)", "(a+(b+c))"):
    r = eval_tree(parse(text), binding)
    print(text, "->", hex_float(r.rounded), " abs error", float(r.abs_error))

report = survey(3, binding)
print(f"{report.count} classes, {report.distinct} distinct results: {sorted(report.results)}")

# Swapping children never changes the bits; reassociating can.
values = dict(zip("abcdefgh", [0.1 * (k + 1) for k in range(8)]))
print("ladder   ", eval_tree(ladder("abcdefgh"), values, "binary32").rounded)
print("pairwise ", eval_tree(pairwise("abcdefgh"), values, "binary32").rounded)

# Every class of the pairwise shape on 8 terms, in single precision.
r = survey(8, values, "binary32", "pairwise")
print(f"pairwise n=8: {r.count} classes, {r.distinct} distinct results, "
      f"max error {float(r.max_abs_error):.3g} at {r.argmax}")
print("Kahan:", r.compensated, " exact:", float(r.exact))
