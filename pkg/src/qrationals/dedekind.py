"""Bernoulli numbers and polynomials, periodic Bernoulli functions,
generalized Dedekind sums s_{i,j}, their h-normalization, the two-index
reciprocity formula, and an identity battery.

Conventions (pinned by the test suite):
  - B_1 = −1/2 (so B̄_1(a n/b) matches the bracket's −1/2 offset).
  - Periodic functions take B_i of the fractional part, so B̄_i(integer) = B_i.
  - s_sum is the exclusive lattice sum Σ_{n=1}^{b−1}.
  - h uses the inclusive completion: h_{i,j} = (−1)^{i+j}/(i!j!) ·
    (s_{i,j} + (1−d_{i,j})·B_i·B_j) with d_{i,j} = 1 iff i = 1 or j = 1.
    Equivalently, the sum in h runs to n = b and the d-term subtracts the
    completion exactly when a first-order factor is present.  This is the
    unique normalization consistent with h_{i,0} = (B_i/i!)·b^{1−i} and with
    the reciprocity formula below.
"""
from __future__ import annotations

import csv
import io
import math
from fractions import Fraction
from functools import lru_cache

from .exact import Rat, rat_to_str
from .closedforms import H, bracket, mod_inverse

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "periodic_bernoulli",
    "s_sum",
    "h_val",
    "reciprocity_residual",
    "check_identities",
    "duplication_literal_residual",
    "bracket_weight_sum",
    "reciprocity_sweep",
    "bridge_mismatches",
    "battery_sweep",
    "battery_report_csv",
]

BERNOULLI_BOUND = 12


@lru_cache(maxsize=None)
def bernoulli_number(i: int) -> Rat:
    """B_i with the B_1 = −1/2 convention, by the defining recurrence."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if i == 0:
        return Fraction(1)
    # Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m ≥ 1, solved for B_m
    total = sum(Fraction(math.comb(i + 1, k)) * bernoulli_number(k) for k in range(i))
    return -total / (i + 1)


def bernoulli_poly(i: int, x: Rat, bound: int = BERNOULLI_BOUND) -> Rat:
    """B_i(x) = Σ_k C(i,k)·B_k·x^{i−k}, exactly."""
    if i > bound:
        raise ValueError(f"index {i} exceeds the configured bound {bound}")
    x = Fraction(x)
    return sum(Fraction(math.comb(i, k)) * bernoulli_number(k) * x ** (i - k)
               for k in range(i + 1))


@lru_cache(maxsize=None)
def periodic_bernoulli(i: int, x: Rat) -> Rat:
    """B_i of the fractional part of x."""
    x = Fraction(x)
    return bernoulli_poly(i, x - math.floor(x))


@lru_cache(maxsize=None)
def s_sum(i: int, j: int, a: int, b: int) -> Rat:
    """Σ_{n=1}^{b−1} B̄_i(n/b)·B̄_j(a·n/b) (exclusive; 0 when b = 1)."""
    if b < 1:
        raise ValueError("modulus must be >= 1")
    return sum(periodic_bernoulli(i, Fraction(n, b)) * periodic_bernoulli(j, Fraction(a * n, b))
               for n in range(1, b))


def _s_inclusive(i: int, j: int, a: int, b: int) -> Rat:
    """Exclusive sum plus the n = b completion term B_i·B_j."""
    return s_sum(i, j, a, b) + bernoulli_number(i) * bernoulli_number(j)


def h_val(i: int, j: int, a: int, b: int) -> Rat:
    """(−1)^{i+j}/(i!j!) · (s_{i,j}(a,b) + (1 − d_{i,j})·B_i·B_j),
    d_{i,j} = 1 iff i = 1 or j = 1."""
    d = 1 if (i == 1 or j == 1) else 0
    return (Fraction((-1) ** (i + j), math.factorial(i) * math.factorial(j))
            * (s_sum(i, j, a, b) + (1 - d) * bernoulli_number(i) * bernoulli_number(j)))


def reciprocity_residual(i: int, j: int, p: int, q: int) -> Rat:
    """Left minus right side of the two-index reciprocity formula; zero
    means the formula holds for (i, j, p, q).

        −q^{i−1} Σ_{u=0}^{j} C(i−1+u, i−1)·h_{i−1+u, j−u}(p, q)·(−p)^u
        + p^{j−1} Σ_{v=0}^{i} C(j−1+v, j−1)·h_{j−1+v, i−v}(q, p)·(−q)^v
        = (−1)^{j−1}·[ B_{i−1}B_j/((i−1)!·j!)·q + B_i·B_{j−1}/(i!·(j−1)!)·p ]
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p} and {q} must be coprime")
    if i < 1 or j < 1:
        raise ValueError("indices must be >= 1")
    lhs = Fraction(0)
    for u in range(0, j + 1):
        lhs += (-Fraction(q ** (i - 1)) * math.comb(i - 1 + u, i - 1)
                * h_val(i - 1 + u, j - u, p, q) * Fraction(-p) ** u)
    for v in range(0, i + 1):
        lhs += (Fraction(p ** (j - 1)) * math.comb(j - 1 + v, j - 1)
                * h_val(j - 1 + v, i - v, q, p) * Fraction(-q) ** v)
    B = bernoulli_number
    rhs = (B(i - 1) * B(j) / Fraction(math.factorial(i - 1) * math.factorial(j))
           * q * Fraction(-1) ** (j - 1)
           + B(i) * B(j - 1) / Fraction(math.factorial(i) * math.factorial(j - 1))
           * p * Fraction(-1) ** (j - 1))
    return lhs - rhs


# --------------------------------------------------------------------------
# Identity battery
# --------------------------------------------------------------------------

def duplication_literal_residual(i: int, j: int, p: int, q: int) -> Rat:
    """s_{i,j}(2p, q) − 2^i·s_{i,j}(p, q) for odd q.

    This two-term scaling is NOT an identity (the battery gates the correct
    three-term duplication law instead); the residual is exposed so that its
    failure can be pinned rather than hidden.
    """
    if q % 2 == 0:
        raise ValueError("literal scaling is only stated for odd moduli")
    return s_sum(i, j, 2 * p, q) - Fraction(2) ** i * s_sum(i, j, p, q)


def check_identities(p: int, q: int, bound: int = 4) -> list[dict]:
    """Verify the identity battery at coprime (p, q): even-index boundary
    values, the parity law, shift periodicity, and the three-term duplication
    law (at total index weight 4).  Returns one record per identity instance
    with its residual and a pass flag.
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"{p} and {q} must be coprime")
    rows = []

    def add(name, params, residual):
        rows.append({"identity": name, "params": params,
                     "residual": residual, "ok": residual == 0})

    # boundary values: h_{i,0} = h_{0,i} = (B_i/i!)·q^{1−i} for even i
    for i in (2, 4):
        want = bernoulli_number(i) / math.factorial(i) * Fraction(q) ** (1 - i)
        add("even_boundary", (i, 0, p, q), h_val(i, 0, p, q) - want)
        add("even_boundary", (0, i, p, q), h_val(0, i, p, q) - want)

    # parity law h(−p, q) = (−1)^j h(p, q), uniform in (i, j)
    for i in range(0, bound + 1):
        for j in range(0, bound + 1 - i):
            add("parity", (i, j, p, q),
                h_val(i, j, -p, q) - Fraction(-1) ** j * h_val(i, j, p, q))
            add("shift", (i, j, p, q),
                h_val(i, j, p + q, q) - h_val(i, j, p, q))

    # three-term duplication law on inclusive sums, total weight 4
    for i in range(0, 5):
        j = 4 - i
        lhs = (_s_inclusive(i, j, p, 2 * q) + _s_inclusive(i, j, p + q, 2 * q)
               + Fraction(2) ** (1 - j) * _s_inclusive(i, j, 2 * p, q))
        rhs = (2 + Fraction(2) ** (2 - i - j)) * _s_inclusive(i, j, p, q)
        add("duplication", (i, j, p, q), lhs - rhs)

    return rows


# --------------------------------------------------------------------------
# Bridges to the second-derivative closed form
# --------------------------------------------------------------------------

def bracket_weight_sum(a: int, b: int) -> Rat:
    """Σ_{n=1}^{b−1} ⟨n/a⟩_b·H(n/b); equals −s_{1,3}(a, b) exactly."""
    return sum(bracket(n, a, b) * H(Fraction(n, b)) for n in range(1, b))


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

def reciprocity_sweep(bound: int) -> list[tuple[int, int]]:
    """Coprime pairs p, q ≤ bound where the (4,1) reciprocity residual is
    nonzero.  Empty list = formula verified."""
    return [(p, q) for p in range(1, bound + 1) for q in range(1, bound + 1)
            if math.gcd(p, q) == 1 and reciprocity_residual(4, 1, p, q) != 0]


def bridge_mismatches(max_b: int) -> dict[str, list[tuple[int, int]]]:
    """Check the bridges between the bracket lattice sums and the generalized
    Dedekind sums over all reduced a/b with b ≤ max_b:
      substitution: Σ ⟨n/a⟩_b·H(n/b) = −s_{1,3}(a, b)
      symmetry:     s_{3,1}(a^{−1}, b) = s_{1,3}(a, b)
      zero_sum:     Σ ⟨n/a⟩_b·(n/b)(1 − n/b) = 0
    """
    out = {"substitution": [], "symmetry": [], "zero_sum": []}
    for b in range(1, max_b + 1):
        for a in range(1, b + 1):
            if math.gcd(a, b) != 1:
                continue
            if bracket_weight_sum(a, b) != -s_sum(1, 3, a, b):
                out["substitution"].append((a, b))
            if s_sum(3, 1, mod_inverse(a, b), b) != s_sum(1, 3, a, b):
                out["symmetry"].append((a, b))
            z = sum(bracket(n, a, b) * Fraction(n, b) * (1 - Fraction(n, b))
                    for n in range(1, b))
            if z != 0:
                out["zero_sum"].append((a, b))
    return out


def battery_sweep(bound: int) -> list[dict]:
    """Every failing identity-battery record over coprime p, q ≤ bound
    (empty = all identities hold)."""
    bad = []
    for p in range(1, bound + 1):
        for q in range(1, bound + 1):
            if math.gcd(p, q) != 1:
                continue
            bad.extend(row for row in check_identities(p, q) if not row["ok"])
    return bad


def battery_report_csv(p: int, q: int) -> str:
    """Identity battery at a single (p, q) as CSV rows
    (identity, params, residual, pass)."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["identity", "params", "residual", "pass"])
    for row in check_identities(p, q):
        writer.writerow([row["identity"], " ".join(map(str, row["params"])),
                         rat_to_str(row["residual"]), int(row["ok"])])
    return buf.getvalue()
