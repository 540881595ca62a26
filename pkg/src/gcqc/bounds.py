"""Quantum Hamming bound and the distance-3 family built from perfect inner
codes and Hamming outer codes over the next prime-power alphabet.

Everything is exact integers or fractions; logarithms are taken only at the
end (see :func:`gcqc.classical_code.log_q`) and printed half-even to three
decimals.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .classical_code import log_q, round3
from .finite_field import least_prime_power_above, prime_power

# Linear-programming bound values quoted for n=90 (q=2) and n=840 (q=3).
# Printed as annotations only; nothing here computes an LP bound.
LP_BOUND_QUOTED = {(90, 2): "81.879", (840, 3): "831.976"}

# exact integers longer than this are emitted as expressions
DECIMAL_DIGITS = 1000


@dataclass(frozen=True)
class HammingBound:
    n: int
    q: int
    t: int
    cap: Fraction

    @property
    def log(self) -> float:
        return log_q(self.cap, self.q)

    @property
    def log_str(self) -> str:
        return str(round3(self.log))

    def admits(self, size: int) -> bool:
        return size <= self.cap


def quantum_hamming_bound(n: int, q: int, t: int = 1) -> HammingBound:
    """Nondegenerate sphere packing: ``K <= q^n / sum_{j<=t} C(n,j)(q^2-1)^j``."""
    if n < 1 or t < 0:
        raise ValueError("need n >= 1 and t >= 0")
    spheres = sum(math.comb(n, j) * (q * q - 1) ** j for j in range(t + 1))
    return HammingBound(n, q, t, Fraction(q**n, spheres))


@dataclass(frozen=True)
class FamilyRow:
    q: int
    s: int
    i: int
    n_s: int
    Q: int
    P: int
    L_i: int
    N_si: int
    M_lower: int
    M_construction: int
    hamming_cap: Fraction
    stab_cap: int
    beats_stabilizer: bool
    argument_applies: bool
    inner_valid: bool

    @property
    def log_M(self) -> float:
        return log_q(self.M_lower, self.q)

    @property
    def log_cap(self) -> float:
        return log_q(self.hamming_cap, self.q)

    @property
    def ratio_log(self) -> float:
        """``log_q M_lower - log_q hamming_cap`` (non-positive)."""
        return log_q(Fraction(self.M_lower) / self.hamming_cap, self.q)

    @property
    def gap(self) -> float:
        return -self.ratio_log

    def _exact(self, value: int | Fraction, expr: str) -> str:
        """Decimal form while short, otherwise the exact defining expression."""
        if self.N_si * math.log10(self.q) <= DECIMAL_DIGITS:
            return str(value)
        return expr

    def csv_row(self) -> dict:
        q, N = self.q, self.N_si
        return {
            "q": self.q,
            "s": self.s,
            "i": self.i,
            "n_s": self.n_s,
            "Q": self.Q,
            "P": self.P,
            "L_i": self.L_i,
            "N_si": self.N_si,
            "M_lower": self._exact(self.M_lower, f"ceil({q}^{N}/{self.P}^{self.i})"),
            "log_M_lower": str(round3(self.log_M)),
            "hamming_cap": self._exact(self.hamming_cap, f"{q}^{N}/{(q * q - 1) * N + 1}"),
            "log_hamming_cap": str(round3(self.log_cap)),
            "stab_cap": self._exact(self.stab_cap, f"{q}^{N - 2 * self.s * self.i - 1}"),
            "log_stab_cap": self.N_si - 2 * self.s * self.i - 1,
            "beats_stabilizer": self.beats_stabilizer,
            "argument_applies": self.argument_applies,
            "inner_valid": self.inner_valid,
            "ratio_log": f"{self.ratio_log:.6f}",
        }

    def to_json(self) -> dict:
        d = self.csv_row()
        d["M_construction"] = self._exact(
            self.M_construction,
            f"{q}^({self.n_s - 2 * self.s}*{self.L_i})*ceil({self.Q}^{self.L_i}/{self.P}^{self.i})",
        ) if (q := self.q) else ""
        return d


def family_row(q: int, s: int, i: int) -> FamilyRow:
    """One member ``((N_si, M_si, 3))_q`` of the family.

    The inner code is the perfect quantum Hamming code of length
    ``n_s = (q^2s - 1)/(q^2 - 1)`` with its ``Q = q^2s`` translates; the outer
    code is the restriction of the ``P``-ary Hamming code of redundancy ``i``
    to ``Q`` symbols, ``P`` the least prime power above ``Q``.

    ``M_lower`` is ``ceil(q^N / P^i)``; ``M_construction`` is the actual
    dimension ``R^L * ceil(Q^L / P^i)`` with ``R = q^(n_s - 2s)``.
    ``argument_applies`` records the hypotheses ``i > 1`` and
    ``Q^i < P^i < q Q^i`` under which the stabilizer comparison is proven;
    ``inner_valid`` is false when the inner code would have negative
    dimension exponent (s = 1).
    """
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if s < 1 or i < 2:
        raise ValueError("need s >= 1 and i >= 2")
    n_s = (q ** (2 * s) - 1) // (q * q - 1)
    Q = q ** (2 * s)
    P = least_prime_power_above(Q)
    L = (P**i - 1) // (P - 1)
    N = L * n_s
    M_lower = -(-(q**N) // P**i)
    R_exp = n_s - 2 * s
    outer_size = -(-(Q**L) // P**i)
    M_construction = q ** (R_exp * L) * outer_size if R_exp >= 0 else 0
    cap = quantum_hamming_bound(N, q, 1).cap
    stab = q ** (N - 2 * s * i - 1)
    return FamilyRow(
        q=q,
        s=s,
        i=i,
        n_s=n_s,
        Q=Q,
        P=P,
        L_i=L,
        N_si=N,
        M_lower=M_lower,
        M_construction=M_construction,
        hamming_cap=cap,
        stab_cap=stab,
        beats_stabilizer=M_lower > stab,
        argument_applies=i > 1 and Q**i < P**i < q * Q**i,
        inner_valid=R_exp >= 0,
    )


def asymptotic_table(q: int, s_range: Iterable[int], i: int) -> list[FamilyRow]:
    return [family_row(q, s, i) for s in s_range]


def table_csv(rows: Iterable[FamilyRow]) -> str:
    rows = list(rows)
    buf = io.StringIO()
    fields = list((rows[0] if rows else family_row(2, 2, 2)).csv_row())
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.csv_row())
    return buf.getvalue()


def stabilizer_dimension_cap(n: int, q: int) -> int:
    """Largest integer exponent k with q^k within the Hamming bound: a
    stabilizer code has dimension q^k, so q^k <= cap."""
    cap = quantum_hamming_bound(n, q, 1).cap
    k = int(math.floor(log_q(cap, q)))
    while q ** (k + 1) <= cap:
        k += 1
    while q**k > cap:
        k -= 1
    return k

