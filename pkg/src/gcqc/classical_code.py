"""Classical block codes over GF(q).

A :class:`ClassicalCode` has one of three bodies:

* ``linear``   -- row space of a full-rank generator matrix,
* ``coset``    -- a linear code shifted by a translate vector,
* ``explicit`` -- an arbitrary list of distinct codewords.

Vectors are numpy rows of field indices. Sizes are Python ints and never pass
through floating point.
"""

from __future__ import annotations

import functools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction

import numpy as np

from .finite_field import FiniteField, IntArray, field_of_order, vector_string

DEFAULT_MAX_ENUM = 2**22


class EnumerationError(RuntimeError):
    """Raised when an operation would enumerate more than the allowed budget."""


# ---------------------------------------------------------------------------
# exact logarithms


def log_q(x: int | Fraction, q: int) -> float:
    """log base q of a positive exact number.

    ``math.log`` works on arbitrary Python ints without converting to float
    first, so the absolute error stays near machine epsilon times the result.
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of non-positive number")
    return (math.log(x.numerator) - math.log(x.denominator)) / math.log(q)


def round3(x: float) -> Decimal:
    """Round half-even to three decimals."""
    return Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class CodeParams:
    """Parameters ``(n, K, d)_q`` of a classical code (or ``((n, K, d))_q`` of a
    CWS quantum code). ``d`` may be a certified lower bound; see ``d_is_exact``."""

    n: int
    size: int
    q: int
    d: int | None = None
    d_is_exact: bool = False

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("code size must be positive")
        if self.size > self.q**self.n:
            raise ValueError("code size exceeds q^n")
        if self.d is not None and self.size >= 2 and self.d > self.n:
            raise ValueError("distance exceeds length")

    @property
    def log_size(self) -> float:
        return log_q(self.size, self.q)

    @property
    def log_size_str(self) -> str:
        """Integer exponent for exact powers of q, otherwise three decimals."""
        k = self.size.bit_length() // max(self.q.bit_length() - 1, 1) + 1
        while k > 0 and self.q**k > self.size:
            k -= 1
        if self.q**k == self.size:
            return str(k)
        return str(round3(self.log_size))

    def distance_str(self) -> str:
        if self.d is None:
            return "?"
        return str(self.d) if self.d_is_exact else f">={self.d}"

    def __str__(self) -> str:
        return f"({self.n}, {self.q}^{self.log_size_str}, {self.distance_str()})_{self.q}"

    def quantum_str(self) -> str:
        return f"(({self.n}, {self.q}^{self.log_size_str}, {self.distance_str()}))_{self.q}"

    def row(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "size": str(self.size),
            "log_size": self.log_size_str,
            "d": "" if self.d is None else self.d,
            "d_is_exact": self.d_is_exact,
        }


# ---------------------------------------------------------------------------
# vector helpers


def as_vectors(vectors, n: int | None = None) -> IntArray:
    arr = np.asarray(
        [tuple(v) for v in vectors] if not isinstance(vectors, np.ndarray) else vectors,
        dtype=np.int64,
    )
    if arr.ndim == 1:
        arr = arr.reshape(0 if arr.size == 0 else 1, -1) if n is None else arr.reshape(-1, n)
    if n is not None and arr.size == 0:
        arr = arr.reshape(0, n)
    return arr


def pack(vectors: IntArray, q: int) -> np.ndarray:
    """Integer keys for rows, position 0 most significant (so key order is
    lexicographic order). Falls back to Python ints when q^n overflows int64."""
    vectors = np.asarray(vectors, dtype=np.int64)
    n = vectors.shape[-1]
    if q**n < 2**63:
        weights = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
        return vectors @ weights
    weights = np.array([q ** (n - 1 - j) for j in range(n)], dtype=object)
    return vectors.astype(object) @ weights


def weight(vectors: IntArray) -> IntArray:
    return np.count_nonzero(np.asarray(vectors), axis=-1)


# ---------------------------------------------------------------------------


class ClassicalCode:
    """A block code of length ``n`` over ``field``."""

    def __init__(
        self,
        field: FiniteField,
        n: int,
        *,
        generator=None,
        words=None,
        translate=None,
        parity_check=None,
        distance: int | None = None,
        distance_exact: bool = False,
        name: str | None = None,
    ) -> None:
        if (generator is None) == (words is None):
            raise ValueError("give exactly one of generator or words")
        self.field = field
        self.n = int(n)
        self.name = name
        self._distance = distance
        self._distance_exact = distance_exact
        self.translate: IntArray | None = None
        self.generator: IntArray | None = None
        self._words: IntArray | None = None
        if generator is not None:
            g = as_vectors(generator, self.n)
            if g.shape[1:] != (self.n,):
                raise ValueError("generator rows must have length n")
            if field.rank(g) != g.shape[0]:
                raise ValueError("generator matrix must have full row rank")
            self.generator = g
            if parity_check is not None:
                h = as_vectors(parity_check, self.n)
                if np.any(field.matmul(g, h.T)):
                    raise ValueError("parity-check matrix does not annihilate generator")
                self.__dict__["parity_check"] = h
            if translate is not None:
                t = np.asarray(translate, dtype=np.int64).reshape(self.n)
                if np.any(t):
                    self.translate = t
        else:
            w = as_vectors(words, self.n)
            if w.shape[1:] != (self.n,):
                raise ValueError("codewords must have length n")
            if np.any((w < 0) | (w >= field.q)):
                raise ValueError("codeword symbol outside the field")
            if len(np.unique(pack(w, field.q))) != len(w):
                raise ValueError("explicit codewords must be distinct")
            if len(w) == 0:
                raise ValueError("a code needs at least one codeword")
            self._words = w

    # ------------------------------------------------------------ constructors

    @classmethod
    def linear(cls, field: FiniteField, generator, **kw) -> ClassicalCode:
        g = as_vectors(generator)
        return cls(field, g.shape[1], generator=g, **kw)

    @classmethod
    def explicit(cls, field: FiniteField, words, n: int | None = None, **kw) -> ClassicalCode:
        w = as_vectors(words, n)
        return cls(field, w.shape[1] if n is None else n, words=w, **kw)

    def shifted(self, translate) -> ClassicalCode:
        """The coset ``translate + self`` of a linear code."""
        if self.kind != "linear":
            raise ValueError("cosets are defined for linear codes")
        return ClassicalCode(
            self.field,
            self.n,
            generator=self.generator,
            translate=translate,
            parity_check=self.__dict__.get("parity_check"),
            distance=self._distance,
            distance_exact=self._distance_exact,
        )

    # --------------------------------------------------------------- structure

    @property
    def kind(self) -> str:
        if self.generator is None:
            return "explicit"
        return "linear" if self.translate is None else "coset"

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def k(self) -> int:
        """Dimension of a linear (or coset) body."""
        if self.generator is None:
            raise ValueError("explicit codes have no dimension")
        return self.generator.shape[0]

    @property
    def size(self) -> int:
        return exact_size(self)

    @functools.cached_property
    def parity_check(self) -> IntArray:
        if self.generator is None:
            raise ValueError("explicit codes have no parity-check matrix")
        if self.k == 0:
            return np.eye(self.n, dtype=np.int64)
        return self.field.null_space(self.generator)

    def syndromes(self, vectors) -> IntArray:
        """Syndromes with respect to the underlying linear code."""
        v = as_vectors(vectors, self.n)
        h = self.parity_check
        if h.shape[0] == 0:
            return np.zeros((len(v), 0), dtype=np.int64)
        return self.field.matmul(v, h.T)

    @functools.cached_property
    def _keys(self) -> np.ndarray:
        return np.sort(pack(self.words(), self.q))

    def contains(self, vectors) -> np.ndarray:
        v = as_vectors(vectors, self.n)
        if self.generator is not None:
            if self.translate is not None:
                v = self.field.sub(v, self.translate)
            return ~np.any(self.syndromes(v), axis=1)
        keys = pack(v, self.q)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        return self._keys[pos] == keys

    def __contains__(self, vector) -> bool:
        return bool(self.contains([vector])[0])

    def words(self, max_enum: int = DEFAULT_MAX_ENUM) -> IntArray:
        """All codewords. Linear bodies enumerate messages in lexicographic
        order, so the first word is the translate (or zero)."""
        if self._words is not None:
            return self._words
        if self.size > max_enum:
            raise EnumerationError(
                f"enumeration infeasible: {self.size} codewords exceed budget {max_enum}"
            )
        msgs = self.field.all_vectors(self.k)
        w = self.field.matmul(msgs, self.generator) if self.k else np.zeros((1, self.n), np.int64)
        if self.translate is not None:
            w = self.field.add(w, self.translate)
        return w

    def __iter__(self):
        return (tuple(int(x) for x in w) for w in self.words())

    def __len__(self) -> int:
        return self.size

    # --------------------------------------------------------------- distances

    def params(self) -> CodeParams:
        return CodeParams(self.n, self.size, self.q, self._distance, self._distance_exact)

    def distance(self, max_enum: int = DEFAULT_MAX_ENUM) -> int:
        """Known distance if recorded, else brute force."""
        if self._distance is not None and self._distance_exact:
            return self._distance
        d = min_distance(self, max_enum)
        self._distance, self._distance_exact = d, True
        return d

    @property
    def known_distance(self) -> tuple[int | None, bool]:
        return self._distance, self._distance_exact

    # ---------------------------------------------------------------- detection

    @functools.cached_property
    def _difference_table(self) -> tuple[np.ndarray, np.ndarray]:
        """Sorted keys of all nonzero differences c' - c and, per key, the
        smallest index of a c realising it."""
        w = self.words()
        keys, firsts = [], []
        for i in range(len(w)):
            d = self.field.sub(w, w[i])
            d = np.delete(d, i, axis=0)
            keys.append(pack(d, self.q))
            firsts.append(np.full(len(d), i, dtype=np.int64))
        if not keys:
            return np.zeros(0, np.int64), np.zeros(0, np.int64)
        k = np.concatenate(keys)
        f = np.concatenate(firsts)
        uniq, idx = np.unique(k, return_index=True)
        return uniq, f[idx]

    def collisions(self, errors) -> np.ndarray:
        """Mask of error vectors ``e != 0`` with ``c + e`` a different codeword
        for some codeword ``c``."""
        e = as_vectors(errors, self.n)
        nonzero = np.any(e, axis=1)
        if self.generator is not None:
            return nonzero & ~np.any(self.syndromes(e), axis=1)
        if self.size == 1:
            return np.zeros(len(e), dtype=bool)
        if self.size**2 <= 4 * DEFAULT_MAX_ENUM:
            uniq, _ = self._difference_table
            keys = pack(e, self.q)
            pos = np.minimum(np.searchsorted(uniq, keys), len(uniq) - 1)
            return nonzero & (uniq[pos] == keys)
        hit = np.zeros(len(e), dtype=bool)
        w = self.words()
        for j in range(len(e)):
            if nonzero[j]:
                hit[j] = bool(np.any(self.contains(self.field.add(w, e[j]))))
        return hit

    def collision_pair(self, error) -> tuple[IntArray, IntArray] | None:
        """First codeword ``c`` (in :meth:`words` order) with ``c + e`` in the
        code, as the pair ``(c, c + e)``."""
        e = np.asarray(error, dtype=np.int64).reshape(1, self.n)
        if not self.collisions(e)[0]:
            return None
        w = self.words()
        if self.generator is not None:
            c = w[0]
        elif self.size**2 <= 4 * DEFAULT_MAX_ENUM:
            uniq, first = self._difference_table
            c = w[first[np.searchsorted(uniq, pack(e, self.q))[0]]]
        else:
            c = w[int(np.argmax(self.contains(self.field.add(w, e[0]))))]
        return c, self.field.add(c, e[0])

    # ------------------------------------------------------------------ output

    def to_json(self) -> dict:
        out: dict = {"q": self.q, "n": self.n, "kind": self.kind, "field": self.field.descriptor()}
        if self.generator is not None:
            out["generator"] = self.generator.tolist()
            if self.translate is not None:
                out["translate"] = self.translate.tolist()
        else:
            out["words"] = self._words.tolist()
        if self._distance is not None:
            out["distance"] = self._distance
            out["distance_exact"] = self._distance_exact
        return out

    @classmethod
    def from_json(cls, data: dict) -> ClassicalCode:
        field = field_of_order(int(data["q"]))
        n = int(data["n"])
        kind = data.get("kind", "generator" in data and "linear" or "explicit")
        kw = dict(distance=data.get("distance"), distance_exact=data.get("distance_exact", False))
        if kind in ("linear", "coset"):
            return cls(
                field, n, generator=data["generator"], translate=data.get("translate"), **kw
            )
        if kind == "explicit":
            return cls(field, n, words=data["words"], **kw)
        raise ValueError(f"unknown code kind {kind!r}")

    def __repr__(self) -> str:
        label = self.name or self.kind
        return f"<ClassicalCode {label} {self.params()}>"

    def word_strings(self) -> list[str]:
        return [vector_string(w, self.q) for w in self.words()]


# ---------------------------------------------------------------------------
# operations


def exact_size(code: ClassicalCode) -> int:
    if code.generator is not None:
        return code.q**code.k
    return len(code._words)


def min_distance(code: ClassicalCode, max_enum: int = DEFAULT_MAX_ENUM) -> int:
    """Exact minimum distance by enumeration.

    Linear and coset bodies use the minimum nonzero weight of the base code;
    explicit bodies compare every pair. A single-word code has no finite
    distance and is rejected.
    """
    if code.size > max_enum:
        raise EnumerationError(
            f"enumeration infeasible: {code.size} codewords exceed budget {max_enum}"
        )
    if code.size < 2:
        raise ValueError("minimum distance needs at least two codewords")
    if code.generator is not None:
        base = code.field.matmul(code.field.all_vectors(code.k)[1:], code.generator)
        return int(weight(base).min())
    w = code.words()
    best = code.n
    for i in range(len(w) - 1):
        best = min(best, int(np.count_nonzero(w[i + 1 :] != w[i], axis=1).min()))
        if best == 1:
            break
    return best


def repetition_code(field: FiniteField, n: int) -> ClassicalCode:
    return ClassicalCode.linear(
        field, np.ones((1, n), dtype=np.int64), distance=n, distance_exact=True, name="repetition"
    )


def full_space(field: FiniteField, n: int) -> ClassicalCode:
    return ClassicalCode.linear(
        field, np.eye(n, dtype=np.int64), distance=1, distance_exact=True, name="full space"
    )


def projective_points(field: FiniteField, i: int) -> IntArray:
    """Representatives of PG(i-1, q) whose first nonzero entry is 1, in
    lexicographic order."""
    v = field.all_vectors(i)
    nz = v != 0
    has = nz.any(axis=1)
    lead = v[np.arange(len(v)), np.argmax(nz, axis=1)]
    return v[has & (lead == 1)]


def hamming_params(q: int, i: int) -> CodeParams:
    if i < 2:
        raise ValueError("Hamming codes need redundancy i >= 2")
    length = (q**i - 1) // (q - 1)
    return CodeParams(length, q ** (length - i), q, 3, True)


def hamming_code(field: FiniteField, i: int) -> ClassicalCode:
    """q-ary Hamming code ``[L, L - i, 3]`` with ``L = (q^i - 1)/(q - 1)``.

    The parity-check columns are the projective points of PG(i-1, q).
    """
    if i < 2:
        raise ValueError("Hamming codes need redundancy i >= 2")
    h = projective_points(field, i).T.copy()
    g = field.null_space(h)
    return ClassicalCode(
        field,
        h.shape[1],
        generator=g,
        parity_check=h,
        distance=3,
        distance_exact=True,
        name=f"Hamming(q={field.q}, i={i})",
    )


def _lex_chunks(field: FiniteField, n: int, chunk: int = 1 << 16):
    total = field.q**n
    for start in range(0, total, chunk):
        yield field.all_vectors(n, start, min(total, start + chunk))


def cosets(base: ClassicalCode, count: int) -> list[ClassicalCode]:
    """``count`` disjoint cosets of a linear code, ``base`` first.

    Leaders are taken greedily as the lexicographically least vector not yet
    covered, which makes each leader the least element of its coset.
    """
    if base.kind != "linear":
        raise ValueError("cosets need a linear base code")
    index = base.q ** (base.n - base.k)
    if count > index:
        raise ValueError(f"requested {count} cosets but the code has index {index}")
    if count < 1:
        return []
    out = [base]
    seen = {tuple(np.zeros(base.n - base.k, dtype=np.int64))}
    for chunk in _lex_chunks(base.field, base.n):
        if len(out) >= count:
            break
        syn = base.syndromes(chunk)
        keys = pack(syn, base.q) if syn.shape[1] else np.zeros(len(chunk), np.int64)
        _, first = np.unique(keys, return_index=True)
        for j in np.sort(first):
            s = tuple(syn[j])
            if s in seen:
                continue
            seen.add(s)
            out.append(base.shifted(chunk[j]))
            if len(out) >= count:
                break
    return out


def union(codes: Sequence[ClassicalCode]) -> ClassicalCode:
    """Union of pairwise disjoint codes. A complete set of cosets of one linear
    code collapses to the full space."""
    if not codes:
        raise ValueError("empty union")
    field, n = codes[0].field, codes[0].n
    if any(c.field is not field or c.n != n for c in codes):
        raise ValueError("codes differ in field or length")
    total = sum(c.size for c in codes)
    g0 = codes[0].generator
    same_base = g0 is not None and all(
        c.generator is not None and np.array_equal(c.generator, g0) for c in codes
    )
    if same_base:
        leaders = np.array([_first(c) for c in codes])
        distinct = len(np.unique(pack(codes[0].syndromes(leaders), field.q))) == len(codes)
        if not distinct:
            raise ValueError("codes are not pairwise disjoint")
        if total == field.q**n:
            return full_space(field, n)
    words = np.concatenate([c.words() for c in codes])
    if len(np.unique(pack(words, field.q))) != total:
        raise ValueError("codes are not pairwise disjoint")
    return ClassicalCode.explicit(field, words, n)


def _first(code: ClassicalCode) -> IntArray:
    return code.translate if code.translate is not None else np.zeros(code.n, dtype=np.int64)


def subcode_over_subalphabet(
    code: ClassicalCode | CodeParams,
    s: int,
    mode: str = "enumerate",
    max_enum: int = DEFAULT_MAX_ENUM,
) -> ClassicalCode | CodeParams:
    """Restrict a q-ary code to the subalphabet ``{0, ..., s-1}``.

    ``mode="bound"`` returns only the guaranteed parameters
    ``(n, ceil(K s^n / q^n), d)_s``. ``mode="enumerate"`` buckets every
    subalphabet word by syndrome and keeps the largest bucket (ties go to the
    lexicographically smallest syndrome); the result is an explicit code over
    GF(s), which therefore has to be a prime power.
    """
    params = code if isinstance(code, CodeParams) else code.params()
    q, n = params.q, params.n
    if s >= q or s < 2:
        raise ValueError(f"subalphabet size must satisfy 2 <= s < q, got s={s}, q={q}")
    if mode == "bound":
        size = -(-params.size * s**n // q**n)
        return CodeParams(n, size, s, params.d, False)
    if mode != "enumerate":
        raise ValueError(f"unknown mode {mode!r}")
    if isinstance(code, CodeParams) or code.generator is None:
        raise ValueError("enumerate mode needs a linear code")
    if s**n > max_enum:
        raise EnumerationError(f"enumeration infeasible: {s}^{n} words exceed budget {max_enum}")
    sub = field_of_order(s)
    words = sub.all_vectors(n)  # indices 0..s-1 read as GF(q) symbols
    syn = code.syndromes(words)
    keys = pack(syn, q)
    uniq, inverse, counts = np.unique(keys, return_inverse=True, return_counts=True)
    best = int(np.argmax(counts))  # first maximum = smallest syndrome key
    chosen = words[inverse.ravel() == best]
    d, _ = code.known_distance
    return ClassicalCode(
        sub, n, words=chosen, distance=d, distance_exact=False, name=f"subalphabet({s}) of {code.name}"
    )


@dataclass(frozen=True)
class Detection:
    ok: bool
    error: tuple[int, ...] | None = None
    codeword: tuple[int, ...] | None = None
    image: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def detects(code: ClassicalCode, errors: Iterable) -> Detection:
    """Whether no error maps a codeword onto a different codeword.

    On failure the result carries the first offending error (in the given
    order) and the first codeword it moves into the code.
    """
    e = as_vectors(list(errors) if not isinstance(errors, np.ndarray) else errors, code.n)
    if len(e) == 0:
        return Detection(True)
    bad = code.collisions(e)
    if not bad.any():
        return Detection(True)
    j = int(np.argmax(bad))
    c, c2 = code.collision_pair(e[j])
    return Detection(False, tuple(map(int, e[j])), tuple(map(int, c)), tuple(map(int, c2)))
