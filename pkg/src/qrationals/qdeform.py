"""Canonical q-deformation [a/b]_q of a rational number.

The deformation is defined through the alternating continued fraction

    [a_0]_q + q^{a_0} / ( [a_1]_{1/q} + q^{-a_1} / ( [a_2]_q + ... ) )

evaluated bottom-up over integer-polynomial pairs, with reciprocal-variable
factors cleared to ordinary polynomials at every step.  Each step is a 2×2
polynomial move of determinant ±q^k, so the final pair needs only q-power /
content / sign normalization to be canonical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal

from .exact import (
    IntPoly,
    Rat,
    RatFunc,
    poly_from_json_list,
    poly_to_json_list,
    rat_to_str,
)

__all__ = [
    "CFrac",
    "QRational",
    "q_integer",
    "to_cfrac",
    "deform",
    "deform_from_cfrac",
    "qrational_to_json",
    "qrational_from_json",
]

Parity = Literal["even", "odd", "canonical"]


@dataclass(frozen=True)
class CFrac:
    """Continued-fraction expansion a_0; a_1, ..., a_m with a_i ≥ 1 for i ≥ 1.

    Both terminal conventions (..., a_m) and (..., a_m − 1, 1) are valid
    instances and evaluate to the same rational.
    """

    terms: tuple[int, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("expansion needs at least one term")
        if any(t < 1 for t in self.terms[1:]):
            raise ValueError("partial quotients after the first must be >= 1")

    def value(self) -> Rat:
        v = Fraction(self.terms[-1])
        for t in reversed(self.terms[:-1]):
            v = t + 1 / v
        return v


def to_cfrac(x: Rat, parity: Parity = "canonical") -> CFrac:
    """Expand x by the Euclidean algorithm (floor-based, so negatives work).

    The canonical expansion never ends in a partial quotient of 1 except for
    integers.  "even"/"odd" request the parity of the number of partial
    quotients after a_0, using the terminal rewrite a_m ↔ (a_m − 1, 1).
    """
    x = Fraction(x)
    terms = []
    while True:
        f = math.floor(x)
        terms.append(f)
        x -= f
        if x == 0:
            break
        x = 1 / x
    if parity != "canonical":
        tail_len = len(terms) - 1
        want_odd = parity == "odd"
        if (tail_len % 2 == 1) != want_odd:
            if tail_len == 0:
                terms = [terms[0] - 1, 1]
            else:  # canonical tails never end in 1, so the split is valid
                terms = terms[:-1] + [terms[-1] - 1, 1]
    return CFrac(tuple(terms))


def q_integer(n: int, reciprocal: bool = False) -> RatFunc:
    """[n]_q (or [n]_{1/q} with reciprocal powers cleared) as a RatFunc.

    [n]_q = 1 + q + ... + q^{n-1} for n ≥ 0; negative n comes from running
    [x+1]_q = q·[x]_q + 1 backwards, giving [−k]_q = −[k]_q / q^k.
    The reciprocal variant substitutes q → 1/q and clears:
    [n]_{1/q} = [n]_q / q^{n−1} for n > 0 and [−k]_{1/q} = −q·[k]_q.
    """
    if not reciprocal:
        if n >= 0:
            return RatFunc._from_clean(IntPoly([1] * n), IntPoly.const(1))
        k = -n
        return RatFunc._from_clean(-IntPoly([1] * k), IntPoly.monomial(k))
    if n > 0:
        return RatFunc._from_clean(IntPoly([1] * n), IntPoly.monomial(n - 1))
    if n == 0:
        return RatFunc._from_clean(IntPoly(), IntPoly.const(1))
    k = -n
    return RatFunc._from_clean(-(IntPoly([1] * k).shift(1)), IntPoly.const(1))


def _qint_poly(n: int) -> IntPoly:
    """[n]_q for n ≥ 0 as a bare polynomial."""
    return IntPoly([1] * n)


def deform_from_cfrac(cf: CFrac) -> RatFunc:
    """Evaluate the alternating continued-fraction tower for any valid
    expansion of a rational (canonical or parity-rewritten) and canonicalize.

    Levels are counted from a_0: even levels contribute [a_i]_q + q^{a_i}/rest,
    odd levels [a_i]_{1/q} + q^{-a_i}/rest.  Bottom-up on cleared pairs:

        even step:  (N, D) -> ([a_i]_q·N + q^{a_i}·D,  N)
        odd step:   (N, D) -> (q·[a_i]_q·N + D,        q^{a_i}·N)

    The head term a_0 may be any integer; a_0 = −k uses the backwards
    recurrence, contributing (N − [k]_q·D) / (q^k·D) to the final pair.
    """
    terms = cf.terms
    a0, tail = terms[0], terms[1:]
    if not tail:
        return q_integer(a0)
    N = D = None
    for i in range(len(terms) - 1, 0, -1):
        ai = terms[i]
        if N is None:
            if i % 2 == 0:
                N, D = _qint_poly(ai), IntPoly.const(1)
            else:
                N, D = _qint_poly(ai), IntPoly.monomial(ai - 1)
        else:
            if i % 2 == 0:
                N, D = _qint_poly(ai) * N + D.shift(ai), N
            else:
                N, D = (_qint_poly(ai) * N).shift(1) + D, N.shift(ai)
    # head: value = a0 + 1/(tower of levels >= 1); the tower pair is (N, D),
    # so 1/tower = D/N and the head contributes like an even-level step on it.
    if a0 >= 0:
        num, den = _qint_poly(a0) * N + D.shift(a0), N
    else:
        k = -a0
        num, den = D - _qint_poly(k) * N, N.shift(k)
    return RatFunc._from_clean(num, den)


def _path_from_terms(terms: tuple[int, ...]) -> tuple[str, int]:
    """Branch word and depth from a canonical expansion.

    The tail (a_1, ..., a_m) maps to the run-length word
    L^{u_1} R^{u_2} L^{u_3} ... with u = (a_1, ..., a_{m-1}, a_m − 1);
    depth is Σu − 1 (integers: empty word, depth −1).
    """
    tail = terms[1:]
    if not tail:
        return "", -1
    u = list(tail[:-1]) + [tail[-1] - 1]
    word = "".join(("L" if i % 2 == 0 else "R") * v for i, v in enumerate(u))
    return word, sum(u) - 1


@dataclass(frozen=True)
class QRational:
    """A rational together with its canonical deformation, tree depth, and
    branch word."""

    value: Rat
    deform: RatFunc
    depth: int
    path: str


@lru_cache(maxsize=None)
def deform(x: Rat) -> QRational:
    """Canonical q-deformation of x with depth and branch word attached."""
    x = Fraction(x)
    cf = to_cfrac(x)
    rf = deform_from_cfrac(cf)
    path, depth = _path_from_terms(cf.terms)
    return QRational(value=x, deform=rf, depth=depth, path=path)


def qrational_to_json(qr: QRational) -> dict:
    return {
        "a": str(qr.value.numerator),
        "b": str(qr.value.denominator),
        "depth": qr.depth,
        "path": qr.path,
        "num": poly_to_json_list(qr.deform.num),
        "den": poly_to_json_list(qr.deform.den),
    }


def qrational_from_json(obj: dict) -> QRational:
    value = Fraction(int(obj["a"]), int(obj["b"]))
    rf = RatFunc(poly_from_json_list(obj["num"]), poly_from_json_list(obj["den"]))
    return QRational(value=value, deform=rf, depth=int(obj["depth"]), path=str(obj["path"]))
