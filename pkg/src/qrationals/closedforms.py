"""Closed-form expressions for the first and second derivatives of the
deformation at q = 1, modular inverses, Thomae's function, and the
depth-based numerator/denominator derivative formulas with their calibration
report.

The first-derivative form is (x² − x + 1 − f(x)²)/2 with f Thomae's function.
The second-derivative form combines a cubic polynomial part, a Thomae part,
and a lattice sum weighted by the bracket ⟨n/a⟩_b.
"""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from typing import Iterator, Literal

from .exact import Rat, derivative_at_one
from .qdeform import deform, to_cfrac, _path_from_terms

__all__ = [
    "mod_inverse",
    "thomae",
    "bracket",
    "F",
    "G",
    "H",
    "d1_closed",
    "d2_closed",
    "numerator_d1_closed",
    "denominator_d1_closed",
    "numerator_derivative",
    "denominator_derivative",
    "derivative_report",
    "derivative_report_csv",
    "lemma_calibration",
    "NoInverseError",
]

DepthConvention = Literal["depth", "mediants"]


class NoInverseError(ValueError):
    """Raised when a modular inverse is requested for non-coprime arguments."""


def mod_inverse(a: int, b: int) -> int:
    """Representative in [0, b−1] of a^{−1} mod b (0 when b = 1)."""
    if b < 1:
        raise ValueError("modulus must be >= 1")
    try:
        return pow(a % b, -1, b)
    except ValueError as exc:
        raise NoInverseError(f"{a} has no inverse modulo {b}") from exc


def thomae(x: Rat) -> Rat:
    """1/b on reduced a/b (so 1 on integers); sign is ignored by reduction."""
    return Fraction(1, Fraction(x).denominator)


def bracket(n: int, a: int, b: int) -> Rat:
    """⟨n/a⟩_b = (a^{−1}·n mod b)/b − 1/2."""
    return Fraction(mod_inverse(a, b) * n % b, b) - Fraction(1, 2)


def F(x: Rat) -> Rat:
    """Cubic polynomial part of the second-derivative closed form."""
    x = Fraction(x)
    return x ** 3 / 3 - x * x + Fraction(5, 3) * x - 1


def G(x: Rat) -> Rat:
    """Thomae-part multiplier of the second-derivative closed form."""
    return 1 - Fraction(x)


def H(x: Rat) -> Rat:
    """Lattice-sum weight x²(1 − x) of the second-derivative closed form."""
    x = Fraction(x)
    return x * x * (1 - x)


def d1_closed(x: Rat) -> Rat:
    """(x² − x + 1 − f(x)²)/2 — the first derivative of the deformation at
    q = 1, in closed form."""
    x = Fraction(x)
    return (x * x - x + 1 - thomae(x) ** 2) / 2


def d2_closed(a: int, b: int) -> Rat:
    """F(a/b) + f(a/b)²·G(a/b) + 20·Σ_{n<b} ⟨n/a⟩_b·H(n/b) — the second
    derivative of the deformation at q = 1, in closed form."""
    if b < 1:
        raise ValueError("denominator must be >= 1")
    if math.gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not reduced")
    x = Fraction(a, b)
    lattice = sum(bracket(n, a, b) * H(Fraction(n, b)) for n in range(1, b))
    return F(x) + thomae(x) ** 2 * G(x) + 20 * lattice


# --------------------------------------------------------------------------
# Depth-based derivative formulas (calibration targets, not hard claims)
# --------------------------------------------------------------------------

def _depth_value(a: int, b: int, convention: DepthConvention) -> int:
    _, depth = _path_from_terms(to_cfrac(Fraction(a, b)).terms)
    return depth if convention == "depth" else depth + 1


def numerator_d1_closed(a: int, b: int, convention: DepthConvention = "mediants") -> Rat:
    """(D·b + a^{−1} − a)/2 with D the depth of a/b under the chosen
    convention ("depth" = tree depth; "mediants" = depth + 1 = number of
    mediant steps).

    This formula does NOT reproduce the exact numerator derivative on all
    inputs under either convention; see lemma_calibration for the mismatch
    sets.  The quotient-rule combination of numerator and denominator
    derivatives is the convention-independent invariant.
    """
    if math.gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not reduced")
    D = _depth_value(a, b, convention)
    return Fraction(D * b + mod_inverse(a, b) - a, 2)


def denominator_d1_closed(a: int, b: int, convention: DepthConvention = "mediants") -> Rat:
    """(1 − a² + b·a^{−1} + b²(1 − D))/(2a) under the chosen depth
    convention; same calibration caveat as numerator_d1_closed."""
    if a == 0:
        raise ValueError("undefined at a = 0")
    if math.gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not reduced")
    D = _depth_value(a, b, convention)
    return Fraction(1 - a * a + b * mod_inverse(a, b) + b * b * (1 - D), 2 * a)


def numerator_derivative(a: int, b: int) -> Rat:
    """Exact derivative at q = 1 of the canonical numerator polynomial."""
    return Fraction(deform(Fraction(a, b)).deform.num.derivative()(1))


def denominator_derivative(a: int, b: int) -> Rat:
    """Exact derivative at q = 1 of the canonical denominator polynomial."""
    return Fraction(deform(Fraction(a, b)).deform.den.derivative()(1))


# --------------------------------------------------------------------------
# Reports
# --------------------------------------------------------------------------

def _sweep(max_b: int, max_a=None) -> Iterator[tuple[int, int]]:
    """Reduced pairs (a, b) with 1 ≤ b ≤ max_b, 0 ≤ a ≤ 2b by default."""
    for b in range(1, max_b + 1):
        hi = 2 * b if max_a is None else max_a
        for a in range(0, hi + 1):
            if math.gcd(a, b) == 1:
                yield a, b


def derivative_report(max_b: int) -> Iterator[dict]:
    """Closed forms against the exact engine for every reduced a/b with
    b ≤ max_b, 0 ≤ a ≤ 2b.  Yields one record per fraction with match flags.
    """
    for a, b in _sweep(max_b):
        x = Fraction(a, b)
        rf = deform(x).deform
        e1 = derivative_at_one(rf, 1)
        e2 = derivative_at_one(rf, 2)
        c1 = d1_closed(x)
        c2 = d2_closed(a, b)
        yield {
            "a": a, "b": b,
            "exact_d1": e1, "closed_d1": c1,
            "exact_d2": e2, "closed_d2": c2,
            "d1_match": e1 == c1, "d2_match": e2 == c2,
        }


def derivative_report_csv(max_b: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["a", "b", "exact_d1", "closed_d1", "exact_d2", "closed_d2",
                     "d1_match", "d2_match"])
    from .exact import rat_to_str
    for row in derivative_report(max_b):
        writer.writerow([row["a"], row["b"],
                         rat_to_str(row["exact_d1"]), rat_to_str(row["closed_d1"]),
                         rat_to_str(row["exact_d2"]), rat_to_str(row["closed_d2"]),
                         int(row["d1_match"]), int(row["d2_match"])])
    return buf.getvalue()


def lemma_calibration(max_b: int) -> dict:
    """Per-convention mismatch sets of the depth-based formulas against the
    exact polynomial derivatives, over reduced a/b with 1 ≤ a ≤ b ≤ max_b.

    Returns {"numerator": {convention: [(a, b), ...]},
             "denominator": {convention: [(a, b), ...]}}.
    """
    out = {"numerator": {}, "denominator": {}}
    pairs = [(a, b) for b in range(1, max_b + 1) for a in range(1, b + 1)
             if math.gcd(a, b) == 1]
    for conv in ("depth", "mediants"):
        num_mism = []
        den_mism = []
        for a, b in pairs:
            if numerator_d1_closed(a, b, conv) != numerator_derivative(a, b):
                num_mism.append((a, b))
            if denominator_d1_closed(a, b, conv) != denominator_derivative(a, b):
                den_mism.append((a, b))
        out["numerator"][conv] = num_mism
        out["denominator"][conv] = den_mism
    return out
