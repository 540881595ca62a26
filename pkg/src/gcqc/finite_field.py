"""Exact arithmetic over prime-power fields GF(p^m).

Elements are integers in [0, q). The integer is the base-p evaluation of the
coefficient vector of the residue polynomial, so index 0 is zero, index 1 is
one and index p (when m > 1) is the class of x.

Scalar arithmetic goes through :class:`FieldElement`; the vectorised helpers on
:class:`FiniteField` accept numpy integer arrays and are what the code and
error-enumeration layers use.
"""

from __future__ import annotations

import functools
from collections.abc import Sequence

import numpy as np
import numpy.typing as npt

MAX_ORDER = 2**16

IntArray = npt.NDArray[np.int64]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(x: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``x == p**m`` and p prime, or None."""
    if x < 2:
        return None
    p = 2
    while p * p <= x and x % p:
        p += 1
    if x % p:
        p = x
    m = 0
    while x % p == 0:
        x //= p
        m += 1
    return (p, m) if x == 1 else None


def least_prime_power_above(x: int) -> int:
    """Smallest prime power strictly greater than ``x``."""
    if x < 2:
        raise ValueError(f"expected x >= 2, got {x}")
    y = x + 1
    while prime_power(y) is None:
        y += 1
    return y


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient tuples low degree first


def _poly_mod(a: list[int], b: Sequence[int], p: int) -> list[int]:
    a = list(a)
    db = len(b) - 1
    lead_inv = pow(b[-1], p - 2, p)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        f = a[-1] * lead_inv % p
        shift = len(a) - 1 - db
        for k, c in enumerate(b):
            a[shift + k] = (a[shift + k] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of a given degree, ordered by the base-p index of the
    lower coefficients."""
    for idx in range(p**degree):
        coeffs = [(idx // p**k) % p for k in range(degree)]
        yield tuple(coeffs) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(list(poly), f, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    for poly in _monic_polys(m, p):
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------


class FiniteField:
    """The field GF(p^m) with a fixed irreducible modulus.

    Use :func:`make_field` rather than the constructor; it caches instances so
    that two requests for the same field return the same object.
    """

    def __init__(self, p: int, m: int, modulus: Sequence[int]) -> None:
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(int(c) for c in modulus)
        if len(self.modulus) != m + 1 or self.modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not is_irreducible(self.modulus, p):
            raise ValueError(f"modulus {self.modulus} is reducible over GF({p})")
        self._build_tables()

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        self._powers = np.array([p**k for k in range(m)], dtype=np.int64)

        def times_x(v: list[int]) -> list[int]:
            top = v[-1]
            out = [0] + v[:-1]
            return [(out[k] - top * self.modulus[k]) % p for k in range(m)]

        def to_vec(idx: int) -> list[int]:
            return [(idx // p**k) % p for k in range(m)]

        def to_idx(v: Sequence[int]) -> int:
            return sum(c * p**k for k, c in enumerate(v))

        def poly_mul(a: int, b: int) -> int:
            va, vb = to_vec(a), to_vec(b)
            acc = [0] * m
            shifted = vb
            for k in range(m):
                if va[k]:
                    acc = [(acc[j] + va[k] * shifted[j]) % p for j in range(m)]
                shifted = times_x(shifted)
            return to_idx(acc)

        def poly_pow(a: int, e: int) -> int:
            out = 1
            while e:
                if e & 1:
                    out = poly_mul(out, a)
                a = poly_mul(a, a)
                e >>= 1
            return out

        order_factors = [r for r in range(2, q) if (q - 1) % r == 0 and is_prime(r)]
        g = 1
        if q > 2:
            g = next(
                c
                for c in range(2, q)
                if all(poly_pow(c, (q - 1) // r) != 1 for r in order_factors)
            )
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            exp[k] = x
            log[x] = k
            x = poly_mul(x, g)
        exp[q - 1 :] = exp[: q - 1]
        self._exp = exp
        self._log = log
        self.primitive = g

        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        self._inv = inv

        idx = np.arange(q, dtype=np.int64)
        digits = (idx[:, None] // self._powers[None, :]) % p
        self._neg = ((-digits) % p) @ self._powers

    # ------------------------------------------------------------------ scalar

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    def __len__(self) -> int:
        return self.q

    def __call__(self, index: int) -> FieldElement:
        return FieldElement(self, index)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def descriptor(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # ------------------------------------------------------------- vectorised

    def add(self, x, y):
        """Elementwise sum of index arrays (or ints)."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        if self.m == 1:
            return (x + y) % self.p
        out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
        for pk in self._powers:
            out += (((x // pk) + (y // pk)) % self.p) * pk
        return out

    def neg(self, x):
        return self._neg[np.asarray(x, dtype=np.int64)]

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.m == 1:
            return (x * y) % self.p
        zero = (x == 0) | (y == 0)
        s = self._log[np.where(zero, 1, x)] + self._log[np.where(zero, 1, y)]
        return np.where(zero, 0, self._exp[s])

    def inv(self, x):
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero")
        return self._inv[x]

    def pow(self, x, e: int):
        x = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(x)
        zero = x == 0
        s = (self._log[np.where(zero, 1, x)] * e) % (self.q - 1)
        return np.where(zero, 0, self._exp[s])

    def sum(self, x, axis: int = 0):
        """Field sum along an axis."""
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(x, axis=axis)
        if self.m == 1:
            return x.sum(axis=axis) % self.p
        digits = (x[..., None] // self._powers) % self.p
        return (digits.sum(axis=axis) % self.p) @ self._powers

    def matmul(self, a, b):
        """Matrix product over the field; ``a`` is (..., k), ``b`` is (k, n)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            # entries < 2^16 so each partial product < 2^32; chunk the inner
            # dimension to keep sums well inside int64
            out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
            step = 1 << 20
            for k0 in range(0, a.shape[-1], step):
                out = (out + a[..., k0 : k0 + step] @ b[k0 : k0 + step]) % self.p
            return out
        out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
        for k in range(a.shape[-1]):
            out = self.add(out, self.mul(a[..., k, None], b[k]))
        return out

    # ----------------------------------------------------------- linear algebra

    def rref(self, mat) -> tuple[IntArray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = np.array(mat, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError("expected a matrix")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            a[[r, piv]] = a[[piv, r]]
            a[r] = self.mul(a[r], self._inv[a[r, c]])
            for rr in range(rows):
                if rr != r and a[rr, c]:
                    a[rr] = self.sub(a[rr], self.mul(a[r], a[rr, c]))
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def rank(self, mat) -> int:
        return len(self.rref(mat)[1])

    def null_space(self, mat) -> IntArray:
        """Basis (as rows) of the right kernel {x : mat @ x = 0}."""
        mat = np.asarray(mat, dtype=np.int64)
        cols = mat.shape[1]
        red, pivots = self.rref(mat)
        free = [c for c in range(cols) if c not in pivots]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for r, pc in enumerate(pivots):
                basis[i, pc] = self._neg[red[r, f]]
        return basis

    def all_vectors(self, n: int, start: int = 0, stop: int | None = None) -> IntArray:
        """Rows ``start..stop`` of GF(q)^n in lexicographic order (position 0
        most significant)."""
        stop = self.q**n if stop is None else stop
        idx = np.arange(start, stop, dtype=np.int64)
        weights = self.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return (idx[:, None] // weights[None, :]) % self.q


class FieldElement:
    """A single element of a :class:`FiniteField`."""

    __slots__ = ("field", "index")

    def __init__(self, field: FiniteField, index: int) -> None:
        index = int(index)
        if not 0 <= index < field.q:
            raise ValueError(f"index {index} outside [0, {field.q})")
        self.field = field
        self.index = index

    @property
    def coefficients(self) -> tuple[int, ...]:
        """Coefficient vector of the residue polynomial, low degree first."""
        f = self.field
        return tuple((self.index // f.p**k) % f.p for k in range(f.m))

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field is not self.field:
            raise ValueError(f"mixed fields {self.field} and {other.field}")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, int(self.field.add(self.index, other.index)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, int(self.field.sub(self.index, other.index)))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field, int(self.field.mul(self.index, other.index)))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, int(self.field.neg(self.index)))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElement(self.field, int(self.field.pow(self.index, e)))

    def inverse(self) -> FieldElement:
        if self.index == 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, int(self.field._inv[self.index]))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field is self.field
            and other.index == self.index
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.index))

    def __int__(self) -> int:
        return self.index

    def __repr__(self) -> str:
        return f"{self.field}({self.index})"


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def make_field(p: int, m: int = 1) -> FiniteField:
    """Build GF(p^m) with the lexicographically least monic irreducible modulus.

    "Least" orders the non-leading coefficients by their base-p index, so the
    constant term is least significant. Results are cached.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise ValueError(f"GF({p}^{m}) exceeds the supported order {MAX_ORDER}")
    return _cached_field(p, m)


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, m: int) -> FiniteField:
    return FiniteField(p, m, least_irreducible(p, m))


def field_of_order(q: int) -> FiniteField:
    pm = prime_power(q)
    if pm is None:
        raise ValueError(f"{q} is not a prime power")
    return make_field(*pm)


def symbol(x: int, q: int) -> str:
    """Render a field index; single characters for q <= 16 (hex style)."""
    return format(int(x), "x") if q <= 16 else str(int(x))


def vector_string(v: Sequence[int], q: int) -> str:
    if q <= 16:
        return "".join(symbol(x, q) for x in v)
    return ",".join(str(int(x)) for x in v)


def parse_vector(s: str, q: int) -> tuple[int, ...]:
    if q <= 16 and "," not in s:
        return tuple(int(c, 16) for c in s)
    return tuple(int(c) for c in s.split(","))


__all__ = [
    "FieldElement",
    "FiniteField",
    "add",
    "field_of_order",
    "inv",
    "is_irreducible",
    "is_prime",
    "least_prime_power_above",
    "make_field",
    "mul",
    "neg",
    "parse_vector",
    "prime_power",
    "vector_string",
]
