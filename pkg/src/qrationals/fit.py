"""Exact coefficient-recovery experiments: assemble sample systems from the
derivative engine and solve them over the rationals.

fit_d1 recovers (α, β, γ, δ) in  d1 = α·x² + β·x + γ + δ·f(x)²  and fit_d2
recovers the 11 coefficients of the second-derivative ansatz, including the
weight of the lattice-sum column λ(a/b) = Σ ⟨n/a⟩_b·B_3(n/b).
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Rat, derivative_at_one, matrix_rank_exact, solve_linear_exact
from .qdeform import deform
from .closedforms import bracket, d1_closed, d2_closed
from .dedekind import bernoulli_poly
from .sbtree import build_qtree

__all__ = [
    "FitSystem",
    "RankDeficientError",
    "fit_d1",
    "fit_d2",
    "default_d1_samples",
    "default_d2_samples",
    "lattice_column",
    "emit_plot_data",
    "plot_data_csv",
    "D1_FEATURE_NAMES",
    "D2_FEATURE_NAMES",
]


class RankDeficientError(ValueError):
    """The sample set's feature matrix does not reach full rank; add samples
    with more varied denominators."""


@dataclass(frozen=True)
class FitSystem:
    """Rows of (sample, feature vector, right-hand side) plus a description
    of which ansatz they instantiate."""

    rows: tuple[tuple[Rat, tuple[Rat, ...], Rat], ...]
    description: str


D1_FEATURE_NAMES = ("x^2", "x", "1", "f^2")

D2_FEATURE_NAMES = (
    "1/b^3", "a/b^3", "a^2/b^3", "a^3/b^3",
    "1/b^2", "a/b^2", "a^2/b^2",
    "1/b", "a/b", "1", "lambda",
)


def lattice_column(a: int, b: int) -> Rat:
    """λ(a/b) = Σ_{n=1}^{b−1} ⟨n/a⟩_b·B_3(n/b).

    Uses the plain Bernoulli polynomial; the arguments n/b lie in (0, 1)
    where it agrees with the periodic variant.
    """
    return sum(bracket(n, a, b) * bernoulli_poly(3, Fraction(n, b)) for n in range(1, b))


def _d1_features(x: Fraction) -> tuple[Rat, ...]:
    return (x * x, x, Fraction(1), Fraction(1, x.denominator ** 2))


def _d2_features(a: int, b: int) -> tuple[Rat, ...]:
    return (
        Fraction(1, b ** 3), Fraction(a, b ** 3), Fraction(a * a, b ** 3),
        Fraction(a ** 3, b ** 3),
        Fraction(1, b * b), Fraction(a, b * b), Fraction(a * a, b * b),
        Fraction(1, b), Fraction(a, b), Fraction(1),
        lattice_column(a, b),
    )


def _solve_system(sys: FitSystem, width: int) -> tuple[Rat, ...]:
    """Greedily pick the first rank-increasing rows, solve the square system,
    then demand zero residual on every remaining row."""
    chosen: list[tuple[tuple[Rat, ...], Rat]] = []
    basis: list[Sequence[Rat]] = []
    for _, feats, rhs in sys.rows:
        if len(chosen) == width:
            break
        if matrix_rank_exact(basis + [feats]) > len(basis):
            basis.append(feats)
            chosen.append((feats, rhs))
    if len(chosen) < width:
        raise RankDeficientError(
            f"feature matrix rank {len(chosen)} < {width}; "
            "add samples with more varied denominators")
    coeffs = solve_linear_exact([c[0] for c in chosen], [c[1] for c in chosen])
    for _, feats, rhs in sys.rows:
        predicted = sum(c * f for c, f in zip(coeffs, feats))
        if predicted != rhs:
            raise ValueError("sample set is inconsistent with the ansatz")
    return tuple(coeffs)


def fit_d1(samples: Sequence[Rat]) -> tuple[Rat, Rat, Rat, Rat]:
    """Recover (α, β, γ, δ) exactly from first derivatives at the samples."""
    rows = []
    for s in samples:
        x = Fraction(s)
        rhs = derivative_at_one(deform(x).deform, 1)
        rows.append((x, _d1_features(x), rhs))
    sys = FitSystem(rows=tuple(rows), description="first-derivative 4-term ansatz")
    a, b, c, d = _solve_system(sys, 4)
    return a, b, c, d


def fit_d2(samples: Sequence[Rat]) -> tuple[Rat, ...]:
    """Recover the 11 second-derivative ansatz coefficients exactly.

    Coefficient order follows D2_FEATURE_NAMES; the last entry is the weight
    of the lattice-sum column.
    """
    rows = []
    for s in samples:
        x = Fraction(s)
        rhs = derivative_at_one(deform(x).deform, 2)
        rows.append((x, _d2_features(x.numerator, x.denominator), rhs))
    sys = FitSystem(rows=tuple(rows), description="second-derivative 11-term ansatz")
    return _solve_system(sys, 11)


def default_d1_samples() -> list[Fraction]:
    """Four non-integer samples whose feature matrix is full-rank (integers
    alone cannot separate the x² and f² columns)."""
    return [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5)]


def default_d2_samples(max_b: int = 40, need: int = 17) -> list[Fraction]:
    """Deterministic sample pool: reduced proper fractions ordered by (b, a).

    The greedy selector inside fit_d2 then picks the lexicographically first
    full-rank subset.  All pool members are tree nodes of small depth.
    """
    out: list[Fraction] = []
    for b in range(2, max_b):
        for a in range(1, b):
            if math.gcd(a, b) == 1:
                out.append(Fraction(a, b))
        if len(out) >= need:
            break
    return out


# --------------------------------------------------------------------------
# Plot data
# --------------------------------------------------------------------------

def emit_plot_data(depth: int, order: int, start: int = 0) -> list[tuple]:
    """Rows (x, value, b, depth) for every tree node between start and
    start+1 down to the given depth, sorted by x; value is the exact
    derivative of the given order (0 returns the node value itself).
    """
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1, or 2")
    rows = []
    for node in build_qtree(start, depth):
        x = node.value
        if order == 0:
            val = x
        elif order == 1:
            val = d1_closed(x)
        else:
            val = d2_closed(x.numerator, x.denominator)
        rows.append((x, val, x.denominator, node.depth))
    rows.sort(key=lambda r: r[0])
    return rows


def _dec(x: Rat, places: int = 12) -> str:
    """Exact decimal rendering to a fixed number of places (round half away
    from zero is irrelevant here; truncation error < 10^−places)."""
    sign = "-" if x < 0 else ""
    x = abs(Fraction(x))
    scaled = x * 10 ** places
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        whole += 1
    digits = f"{whole:0{places + 1}d}"
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def plot_data_csv(depth: int, order: int, start: int = 0) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x", "value", "b", "depth"])
    for x, val, b, d in emit_plot_data(depth, order, start):
        writer.writerow([_dec(x), _dec(val), b, d])
    return buf.getvalue()
