"""Polynomials over GF(q) and cyclic codes of length n.

Polynomials are tuples of field indices, lowest degree first, with no trailing
zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

import itertools

import numpy as np

from .classical_code import ClassicalCode
from .finite_field import FiniteField

Poly = tuple[int, ...]


def trim(a) -> Poly:
    a = list(int(x) for x in a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_mul(f: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, c in enumerate(a):
        if c:
            out[i : i + len(b)] = f.add(out[i : i + len(b)], f.mul(np.asarray(b), c))
    return trim(out)


def poly_divmod(f: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    lead_inv = int(f.inv(b[-1]))
    while len(trim(r)) >= len(b):
        r = list(trim(r))
        shift = len(r) - len(b)
        c = int(f.mul(r[-1], lead_inv))
        quot[shift] = c
        for k, bk in enumerate(b):
            r[shift + k] = int(f.sub(r[shift + k], f.mul(c, bk)))
    return trim(quot), trim(r)


def x_n_minus_one(f: FiniteField, n: int) -> Poly:
    return (int(f.neg(1)),) + (0,) * (n - 1) + (1,)


def monic_polys(f: FiniteField, degree: int):
    for low in itertools.product(range(f.q), repeat=degree):
        yield tuple(reversed(low)) + (1,) if degree else (1,)


def factor(f: FiniteField, a: Poly) -> list[Poly]:
    """Monic irreducible factors (with multiplicity) by trial division with
    monic polynomials of increasing degree. Desk-scale only."""
    a = trim(a)
    lead = a[-1]
    a = trim(f.mul(np.asarray(a), int(f.inv(lead))))
    out: list[Poly] = []
    d = 1
    while len(a) - 1 >= 2 * d:
        for g in monic_polys(f, d):
            while True:
                quot, rem = poly_divmod(f, a, g)
                if rem:
                    break
                out.append(g)
                a = quot
        d += 1
    if len(a) > 1:
        out.append(a)
    return out


def divisors_of_degree(f: FiniteField, a: Poly, degree: int) -> list[Poly]:
    """All monic divisors of ``a`` with the given degree, in order of their
    lower coefficients (read as base-q numbers, constant term first)."""
    facs = factor(f, a)
    found = set()
    for mask in itertools.product((0, 1), repeat=len(facs)):
        prod: Poly = (1,)
        for use, g in zip(mask, facs):
            if use:
                prod = poly_mul(f, prod, g)
        if len(prod) - 1 == degree:
            found.add(prod)
    return sorted(found)


def cyclic_code(f: FiniteField, n: int, generator_poly: Poly) -> ClassicalCode:
    """Cyclic code generated by ``g(x)``, which must divide ``x^n - 1``."""
    _, rem = poly_divmod(f, x_n_minus_one(f, n), generator_poly)
    if rem:
        raise ValueError("generator polynomial does not divide x^n - 1")
    k = n - (len(generator_poly) - 1)
    g = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        g[i, i : i + len(generator_poly)] = generator_poly
    return ClassicalCode.linear(f, g, name=f"cyclic(n={n}, g={generator_poly})")
