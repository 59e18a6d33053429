"""Evaluate summation trees in IEEE-754 arithmetic and measure their error.

Inputs are rounded once into the target format.  Every interior node is then
one hardware addition in that format (numpy scalars, no wider intermediate).
The exact reference is the rational sum of the rounded inputs, so reported
errors come from summation order alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from . import enumeration
from .core import (
    SumTree,
    canonical_shape,
    default_labels,
    interior_paths,
    ladder_shape,
    pairwise_shape,
    parse_shape,
    swap_at,
)
from .generate import all_classes, class_representatives
from .ieee import Format, Overflow, get_format, hex_float, parse_literal, round_to_format, to_native

SURVEY_CAP_ALL = 7
SURVEY_CAP_SHAPE = 8


class EvaluationError(ArithmeticError):
    pass


class Binding(dict):
    """Label -> exact value of the literal it was given as."""

    @classmethod
    def from_pairs(cls, pairs) -> "Binding":
        b = cls()
        for label, value in pairs:
            label = str(label).strip()
            if label in b:
                raise ValueError(f"label {label!r} bound twice")
            b[label] = value if isinstance(value, Fraction) else _exact(value)
        return b


def _exact(value) -> Fraction:
    if isinstance(value, str):
        return parse_literal(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite input {value!r}")
        return Fraction(value)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, np.floating):
        return _exact(float(value))
    raise TypeError(f"cannot bind value of type {type(value).__name__}")


def parse_binding(text: str) -> Binding:
    """``label = value`` per line; blank lines and ``#`` comments are skipped."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'label = value'")
        label, value = line.split("=", 1)
        try:
            pairs.append((label.strip(), parse_literal(value)))
        except ValueError as e:
            raise ValueError(f"line {lineno}: {e}") from None
    return Binding.from_pairs(pairs)


def load_binding(path: Union[str, Path]) -> Binding:
    return parse_binding(Path(path).read_text())


def format_binding(binding: Mapping, fmt=None) -> str:
    """Inverse of ``parse_binding``; values written as exact hex floats."""
    lines = []
    for label, value in binding.items():
        v = Fraction(value)
        if fmt is not None:
            v = round_to_format(v, get_format(fmt))
        lines.append(f"{label} = {hex_float(float(v))}")
    return "\n".join(lines) + "\n"


def as_binding(values) -> Binding:
    if isinstance(values, Binding):
        return values
    if isinstance(values, Mapping):
        return Binding.from_pairs(values.items())
    values = list(values)
    return Binding.from_pairs(zip(default_labels(len(values)), values))


# ---------------------------------------------------------------- evaluation

@dataclass(frozen=True)
class EvalReport:
    expression: str
    precision: str
    rounded: float
    exact: Fraction
    abs_error: Fraction
    rel_error: Union[Fraction, float]  # inf when the exact sum is 0 and the result is not

    @property
    def rounded_hex(self) -> str:
        return hex_float(self.rounded)

    def to_dict(self, hex_output=False) -> dict:
        d = {
            "expression": self.expression,
            "precision": self.precision,
            "rounded": self.rounded_hex if hex_output else self.rounded,
            "exact": str(self.exact),
            "abs_error": float(self.abs_error),
            "rel_error": float(self.rel_error),
        }
        if hex_output:
            d["abs_error"] = hex_float(float(self.abs_error))
        return d


def _rounded_inputs(tree: SumTree, binding: Mapping, fmt: Format) -> dict:
    out = {}
    for lab in tree.labels():
        key = str(lab)
        if key not in binding:
            raise EvaluationError(f"unbound label {key!r}")
        try:
            out[key] = round_to_format(_exact(binding[key]), fmt)
        except (Overflow, ValueError) as e:
            raise EvaluationError(f"label {key!r}: {e}") from None
    return out


def _hardware_sum(tree: SumTree, inputs: dict, fmt: Format):
    native = {k: to_native(v, fmt) for k, v in inputs.items()}
    # post-order without recursion
    stack = [(tree, False)]
    values = []
    with np.errstate(over="raise", invalid="raise"):
        while stack:
            t, done = stack.pop()
            if t.is_leaf:
                values.append(native[str(t.label)])
            elif done:
                b = values.pop()
                a = values.pop()
                try:
                    s = a + b
                except FloatingPointError:
                    raise EvaluationError(f"overflow in {fmt.name} while evaluating {tree.text}") from None
                if not np.isfinite(s):
                    raise EvaluationError(f"overflow in {fmt.name} while evaluating {tree.text}")
                values.append(s)
            else:
                stack.append((t, True))
                stack.append((t.right, False))
                stack.append((t.left, False))
    (result,) = values
    assert result.dtype == fmt.dtype
    return result


def _report(tree, fmt, rounded: float, exact: Fraction) -> EvalReport:
    err = abs(Fraction(rounded) - exact)
    if exact == 0:
        rel = Fraction(0) if err == 0 else float("inf")
    else:
        rel = err / abs(exact)
    return EvalReport(tree.text, fmt.name, rounded, exact, err, rel)


def eval_tree(tree: SumTree, binding, precision="binary64") -> EvalReport:
    """One correctly rounded addition per interior node, in post-order."""
    fmt = get_format(precision)
    binding = as_binding(binding)
    inputs = _rounded_inputs(tree, binding, fmt)
    rounded = float(_hardware_sum(tree, inputs, fmt))
    return _report(tree, fmt, rounded, sum(inputs.values(), Fraction(0)))


def reference_eval(tree: SumTree, binding, precision="binary64") -> EvalReport:
    """Same contract as ``eval_tree`` but every addition is an exact rational
    sum passed through ``round_to_format``; no floating-point hardware."""
    fmt = get_format(precision)
    binding = as_binding(binding)
    inputs = _rounded_inputs(tree, binding, fmt)

    def go(t):
        if t.is_leaf:
            return inputs[str(t.label)]
        try:
            return round_to_format(go(t.left) + go(t.right), fmt)
        except Overflow:
            raise EvaluationError(f"overflow in {fmt.name} while evaluating {tree.text}") from None

    return _report(tree, fmt, float(go(tree)), sum(inputs.values(), Fraction(0)))


def compensated_sum(values: Sequence, precision="binary64") -> float:
    """Kahan compensated summation carried out in the target format."""
    fmt = get_format(precision)
    xs = []
    for v in values:
        try:
            xs.append(to_native(round_to_format(_exact(v), fmt), fmt))
        except Overflow as e:
            raise EvaluationError(str(e)) from None
    zero = fmt.dtype(0)
    total, carry = zero, zero
    with np.errstate(over="raise", invalid="raise"):
        try:
            for x in xs:
                y = x - carry
                t = total + y
                carry = (t - total) - y
                total = t
        except FloatingPointError:
            raise EvaluationError("overflow during compensated summation") from None
    return float(total)


# ---------------------------------------------------------------- survey

@dataclass
class SurveyReport:
    n: int
    selector: str
    precision: str
    count: int
    distinct: int
    min_abs_error: Fraction
    max_abs_error: Fraction
    mean_abs_error: Fraction
    argmin: str
    argmax: str
    exact: Fraction
    compensated: float
    results: dict = field(default_factory=dict, repr=False)  # rounded value -> #classes

    def to_dict(self, hex_output=False) -> dict:
        conv = hex_float if hex_output else float
        return {
            "n": self.n,
            "selector": self.selector,
            "precision": self.precision,
            "classes": self.count,
            "distinct": self.distinct,
            "min_abs_error": conv(float(self.min_abs_error)),
            "max_abs_error": conv(float(self.max_abs_error)),
            "mean_abs_error": conv(float(self.mean_abs_error)),
            "argmin": self.argmin,
            "argmax": self.argmax,
            "exact": str(self.exact),
            "compensated": conv(self.compensated),
            "rounded_values": {
                (hex_float(k) if hex_output else repr(k)): v
                for k, v in sorted(self.results.items())
            },
        }


def expected_survey_count(n: int, selector: str) -> int:
    if selector == "all":
        return enumeration.count_all(n)
    if selector == "ladder":
        return enumeration.count_ladder(n) if n >= 2 else 1
    if selector == "pairwise":
        return enumeration.sigma_pairwise(n)
    return enumeration.distinct_labelings(parse_shape(selector))


def _class_stream(n: int, labels: list, selector: str):
    if selector == "all":
        if n > SURVEY_CAP_ALL:
            raise ValueError(f"survey over all classes is capped at n={SURVEY_CAP_ALL}")
        return all_classes(n, labels)
    if n > SURVEY_CAP_SHAPE:
        raise ValueError(f"survey over one shape is capped at n={SURVEY_CAP_SHAPE}")
    if selector == "ladder":
        shape = ladder_shape(n)
    elif selector == "pairwise":
        shape = pairwise_shape(n)
    else:
        shape = parse_shape(selector)
        if shape.leaf_count != n:
            raise ValueError(f"shape {selector!r} has {shape.leaf_count} leaves, expected {n}")
    return class_representatives(canonical_shape(shape), labels)


def survey(n: int, binding, precision="binary64", selector: str = "all") -> SurveyReport:
    """Evaluate one representative of every class picked by ``selector``.

    ``selector`` is ``all``, ``ladder``, ``pairwise`` or a shape expression.
    Ties for argmin/argmax go to the lexicographically smaller expression.
    """
    fmt = get_format(precision)
    binding = as_binding(binding)
    if len(binding) != n:
        raise ValueError(f"binding has {len(binding)} labels, expected {n}")
    labels = list(binding)
    count = 0
    results = {}
    total = Fraction(0)
    best = worst = None
    exact = None
    for tree in _class_stream(n, labels, selector):
        r = eval_tree(tree, binding, fmt)
        if exact is None:
            exact = r.exact
        assert r.exact == exact
        count += 1
        results[r.rounded] = results.get(r.rounded, 0) + 1
        total += r.abs_error
        key = (r.abs_error, r.expression)
        if best is None or key < best:
            best = key
        if worst is None or r.abs_error > worst[0] or (r.abs_error == worst[0] and r.expression < worst[1]):
            worst = key
    comp = compensated_sum([binding[k] for k in labels], fmt)
    return SurveyReport(
        n=n,
        selector=selector,
        precision=fmt.name,
        count=count,
        distinct=len(results),
        min_abs_error=best[0],
        max_abs_error=worst[0],
        mean_abs_error=total / count,
        argmin=best[1],
        argmax=worst[1],
        exact=exact,
        compensated=comp,
        results=results,
    )


def equivalence_evaluation_invariance_check(tree: SumTree, binding, precision="binary64",
                                            trials: int = 100, seed: Optional[int] = 0) -> bool:
    """True iff random child-swap sequences never change the bits of the result."""
    fmt = get_format(precision)
    rng = random.Random(seed)
    base = eval_tree(tree, binding, fmt).rounded
    base_bits = fmt.dtype(base).tobytes()
    if tree.is_leaf:
        return True
    for _ in range(trials):
        t = tree
        for _ in range(rng.randint(1, 2 * tree.leaf_count)):
            t = swap_at(t, rng.choice(interior_paths(t)))
        if fmt.dtype(eval_tree(t, binding, fmt).rounded).tobytes() != base_bits:
            return False
    return True
