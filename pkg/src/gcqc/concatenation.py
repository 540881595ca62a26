"""Generalized concatenation of CWS codes.

An :class:`InnerPartition` is a graph together with disjoint word codes
``B_0 .. B_{r-1}``, labelled by the elements of an outer alphabet GF(r) in
index order. Concatenating with an outer classical code ``A`` over GF(r)
replaces every outer symbol ``i`` by an arbitrary word of ``B_i``, on ``n'``
disjoint copies of the graph. The distance of the result is

    min(d * d_c, min_i d_i, d_G)

with ``d`` the distance of the union of the subcodes, ``d_c`` the distance of
``A``, ``d_i`` the subcode distances and ``d_G`` the graph distance.
"""

from __future__ import annotations

import functools
import itertools
import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field

import numpy as np

from .classical_code import (
    DEFAULT_MAX_ENUM,
    ClassicalCode,
    CodeParams,
    EnumerationError,
    cosets,
    min_distance,
    pack,
    repetition_code,
    union,
)
from .cws import (
    CwsCode,
    Graph,
    VerifyReport,
    cws_distance,
    cws_distance_verify,
    graph_distance,
    pentagon,
    ring,
)
from .cyclic import cyclic_code, divisors_of_degree, x_n_minus_one
from .finite_field import FiniteField, field_of_order, make_field

log = logging.getLogger(__name__)


class SearchFailure(RuntimeError):
    """A constructive search ran to completion without finding a code."""


def distance_formula(d: int, d_c: int | float, d_i: int | Sequence[int], d_G: int | float) -> int:
    """``min(d * d_c, min d_i, d_G)``; infinite entries are allowed for
    quantities that impose no constraint."""
    dis = [d_i] if isinstance(d_i, (int, float)) else list(d_i)
    vals = [d, d_c, d_G, *dis]
    if any(v < 1 for v in vals):
        raise ValueError("distances must be >= 1")
    out = min(d * d_c, min(dis), d_G)
    if math.isinf(out):
        raise ValueError("distance formula is unbounded")
    return int(out)


@dataclass(frozen=True)
class ConcatParams:
    n: int
    n_outer: int
    K_outer: int
    R: int
    r: int
    d: int
    d_outer: int
    d_i: tuple[int, ...]
    d_c: int | None = None
    d_G: int | None = None

    @property
    def N(self) -> int:
        return self.n * self.n_outer

    @property
    def K(self) -> int:
        return self.K_outer * self.R**self.n_outer

    @property
    def basic_lower(self) -> int:
        """``min(d d', d_i)``; with ``R == 1`` the subcodes are single states
        and only ``d d'`` remains (ordinary concatenation)."""
        if self.R == 1:
            return self.d * self.d_outer
        return min(self.d * self.d_outer, *self.d_i)

    @property
    def delta(self) -> int:
        if self.d_c is None:
            return self.basic_lower
        d_G = math.inf if self.d_G is None else self.d_G
        d_i = [math.inf] if self.R == 1 else self.d_i
        return distance_formula(self.d, self.d_c, d_i, d_G)

    def params(self, q: int) -> CodeParams:
        return CodeParams(self.N, self.K, q, self.delta, False)


def concat_params(
    inner: tuple[int, int, int],
    outer: tuple[int, int, int],
    R: int | Sequence[int],
    d_i: Sequence[int] = (),
    *,
    d_c: int | None = None,
    d_G: int | None = None,
) -> ConcatParams:
    """Parameter calculus for equal subcode dimensions ``R``.

    ``inner`` is ``(n, K, d)`` and ``outer`` is ``(n', K', d')``. Supplying the
    classical outer distance ``d_c`` (and ``d_G``) switches the distance to the
    CWS formula.
    """
    if not isinstance(R, int):
        sizes = set(R)
        if len(sizes) != 1:
            raise ValueError(
                "unequal subcode dimensions: use concatenate() for exact size accounting"
            )
        (R,) = sizes
    n, K, d = inner
    n_outer, K_outer, d_outer = outer
    r = K // R if K % R == 0 else None
    if r is None:
        raise ValueError("inner dimension is not a multiple of R")
    return ConcatParams(n, n_outer, K_outer, R, r, d, d_outer, tuple(d_i), d_c, d_G)


# ---------------------------------------------------------------------------


@dataclass
class InnerPartition:
    graph: Graph
    subcodes: list[ClassicalCode]
    alphabet: FiniteField
    subcode_distances: list[int]
    union_distance: int
    graph_distance: int | None
    name: str = "inner"

    def __post_init__(self) -> None:
        if len(self.subcodes) != self.alphabet.q:
            raise ValueError(
                f"{len(self.subcodes)} subcodes cannot be labelled by {self.alphabet}"
            )
        if any(c.n != self.graph.n or c.field is not self.graph.field for c in self.subcodes):
            raise ValueError("subcodes must match the graph's length and field")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def r(self) -> int:
        return len(self.subcodes)

    @property
    def q(self) -> int:
        return self.graph.field.q

    @property
    def sizes(self) -> list[int]:
        return [c.size for c in self.subcodes]

    @property
    def equal_size(self) -> int | None:
        s = set(self.sizes)
        return s.pop() if len(s) == 1 else None

    @functools.cached_property
    def union_code(self) -> ClassicalCode:
        return union(self.subcodes)

    @property
    def size(self) -> int:
        return sum(self.sizes)

    def params(self) -> CodeParams:
        return CodeParams(self.n, self.size, self.q, self.union_distance, True)

    def label(self, i: int):
        return self.alphabet(i)

    def subcode_of(self, block) -> int:
        hits = [i for i, c in enumerate(self.subcodes) if block in c]
        if len(hits) != 1:
            raise ValueError(f"block {block} lies in {len(hits)} subcodes")
        return hits[0]

    @classmethod
    def build(
        cls,
        graph: Graph,
        subcodes: Sequence[ClassicalCode],
        alphabet: FiniteField | None = None,
        *,
        cutoff: int | None = None,
        max_enum: int = DEFAULT_MAX_ENUM,
        name: str = "inner",
    ) -> InnerPartition:
        """Compute every distance by exhaustive search.

        Cosets of one linear code share their difference set, so their
        distance is computed once. A distance above ``cutoff`` is recorded as
        ``cutoff + 1`` (a lower bound).
        """
        alphabet = alphabet or field_of_order(len(subcodes))
        cutoff = graph.n if cutoff is None else cutoff
        gd = graph_distance(graph, cutoff, max_enum=max_enum)

        def dist(code: ClassicalCode) -> int:
            res = cws_distance(CwsCode(graph, code), cutoff, max_enum=max_enum)
            return cutoff + 1 if res.value is None else res.value

        cache: dict[bytes, int] = {}
        dists = []
        for c in subcodes:
            key = c.generator.tobytes() if c.generator is not None else None
            if key is not None and key in cache:
                dists.append(cache[key])
                continue
            dists.append(dist(c))
            if key is not None:
                cache[key] = dists[-1]
        part = cls(graph, list(subcodes), alphabet, dists, 0, gd.value, name)
        part.union_distance = dist(part.union_code)
        return part

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "graph": self.graph.to_json(),
            "alphabet": self.alphabet.descriptor(),
            "subcodes": [c.to_json() for c in self.subcodes],
            "subcode_distances": self.subcode_distances,
            "union_distance": self.union_distance,
            "graph_distance": self.graph_distance,
        }


@functools.cache
def build_pentagon_partition() -> InnerPartition:
    """Pentagon with the 16 cosets of ``{00000, 11111}`` labelled by GF(16)."""
    gf2 = make_field(2)
    base = repetition_code(gf2, 5)
    part = InnerPartition.build(pentagon(), cosets(base, 16), make_field(2, 4), name="pentagon")
    return part


def cyclic_candidates(field: FiniteField, n: int, k: int) -> list[ClassicalCode]:
    """Every cyclic ``[n, k]`` code, from the degree ``n-k`` divisors of x^n - 1."""
    return [
        cyclic_code(field, n, g) for g in divisors_of_degree(field, x_n_minus_one(field, n), n - k)
    ]


def search_cyclic_inner(graph: Graph, k: int, d: int = 3) -> list[tuple[ClassicalCode, VerifyReport]]:
    """Verify every cyclic ``[n, k]`` code against the graph; returns all
    candidates with their reports."""
    out = []
    for code in cyclic_candidates(graph.field, graph.n, k):
        rep = cws_distance_verify(CwsCode(graph, code), d)
        log.info("cyclic candidate %s: %s", code.name, rep.summary())
        out.append((code, rep))
    return out


def search_perfect_inner(graph: Graph, redundancy: int) -> ClassicalCode:
    """Backtracking search for a linear word code whose single-site error
    images all have distinct nonzero syndromes.

    Such a code with ``q^redundancy = (q^2 - 1) n + 1`` is a perfect distance-3
    nondegenerate CWS code. Parity-check columns are chosen site by site in
    lexicographic order; a site is checked as soon as its whole neighbourhood
    is fixed, so the first solution found is deterministic.
    """
    f, n = graph.field, graph.n
    q = f.q
    nvec = q**redundancy
    vecs = f.all_vectors(redundancy)
    keyw = q ** np.arange(redundancy - 1, -1, -1, dtype=np.int64)
    add_t = np.empty((nvec, nvec), dtype=np.int64)
    for i in range(nvec):
        add_t[i] = f.add(vecs[i], vecs) @ keyw
    mul_t = np.empty((q, nvec), dtype=np.int64)
    for c in range(q):
        mul_t[c] = f.mul(vecs, c) @ keyw
    add_t = add_t.tolist()
    mul_t = mul_t.tolist()
    pairs = [(a, b) for a in range(q) for b in range(q) if a or b]
    adj = graph.adjacency
    nbrs = [[(k, int(adj[j, k])) for k in range(n) if adj[j, k]] for j in range(n)]
    # a site is checkable once every vertex in its closed neighbourhood is set
    ready_at: dict[int, list[int]] = {}
    for j in range(n):
        ready_at.setdefault(max([j] + [k for k, _ in nbrs[j]]), []).append(j)

    def site_syndromes(j: int, cols: list[int]) -> list[int] | None:
        g = 0
        for k, w in nbrs[j]:
            g = add_t[g][mul_t[w][cols[k]]]
        out = []
        for a, b in pairs:
            out.append(add_t[mul_t[b][cols[j]]][mul_t[a][g]])
        if 0 in out or len(set(out)) != len(out):
            return None
        return out

    cols = [0] * n

    def rec(pos: int, used: frozenset) -> bool:
        if pos == n:
            return True
        for v in range(1, nvec):
            cols[pos] = v
            new = set()
            ok = True
            for j in ready_at.get(pos, []):
                syn = site_syndromes(j, cols)
                if syn is None or used.intersection(syn) or new.intersection(syn):
                    ok = False
                    break
                new.update(syn)
            if ok and rec(pos + 1, used | new):
                return True
        return False

    if not rec(0, frozenset()):
        raise SearchFailure(
            f"no word code with redundancy {redundancy} separates all single-site errors"
        )
    h = vecs[cols].T.copy()
    if f.rank(h) != redundancy:
        raise SearchFailure("search produced a rank-deficient parity-check matrix")
    g = f.null_space(h)
    return ClassicalCode(f, n, generator=g, parity_check=h, name="perfect ring code")


@functools.cache
def build_ring10_partition() -> InnerPartition:
    """Ten-vertex ternary ring with 81 cosets of a ``[10, 6]`` word code,
    labelled by GF(81).

    The cyclic ``[10, 6]`` codes are tried first. Each contains a weight-2
    word ``1 -+ x^5`` and so fails, which triggers the backtracking search.
    """
    gf3 = make_field(3)
    graph = ring(10, gf3)
    base = next(
        (c for c, rep in search_cyclic_inner(graph, 6) if rep.passed),
        None,
    )
    if base is None:
        log.info("no cyclic [10,6] ternary code works on the ring; searching non-cyclic codes")
        base = search_perfect_inner(graph, 4)
    subs = cosets(base, 81)
    return InnerPartition.build(graph, subs, make_field(3, 4), cutoff=4, name="ring10")


# ---------------------------------------------------------------------------


@dataclass
class GcqcCode:
    inner: InnerPartition
    outer: ClassicalCode | CodeParams
    params: CodeParams
    outer_distance: int
    word_code: ClassicalCode | None = None
    labels: np.ndarray | None = None  # outer word index for each codeword
    exact_distance: int | None = None
    notes: dict = dc_field(default_factory=dict)

    @property
    def n_outer(self) -> int:
        return self.outer.n

    @functools.cached_property
    def graph(self) -> Graph:
        return self.inner.graph.copies(self.n_outer)

    @property
    def formula_distance(self) -> int:
        return self.params.d

    def cws(self) -> CwsCode:
        if self.word_code is None:
            raise EnumerationError("code was built in parameter mode; no explicit word code")
        return CwsCode(self.graph, self.word_code, self.params.d)

    def verify(self, d: int | None = None, **kw) -> VerifyReport:
        return cws_distance_verify(self.cws(), self.params.d if d is None else d, **kw)

    def certify(self, **kw) -> tuple[VerifyReport, VerifyReport]:
        """Check ``>= formula`` (PASS at formula) and ``== formula`` (FAIL at
        formula + 1 with a witness of that weight)."""
        lo = self.verify(self.params.d, **kw)
        hi = self.verify(self.params.d + 1, **kw)
        if lo.passed and not hi.passed and hi.witness_weight == self.params.d:
            self.exact_distance = self.params.d
        return lo, hi

    def blocks(self, word) -> list[np.ndarray]:
        n = self.inner.n
        w = np.asarray(word)
        return [w[j * n : (j + 1) * n] for j in range(self.n_outer)]

    def block_labels(self, word) -> tuple[int, ...]:
        """Outer symbols of a codeword, recovered block by block."""
        return tuple(self.inner.subcode_of(b) for b in self.blocks(word))

    def words_for_outer(self, outer_word) -> np.ndarray:
        if self.word_code is None or self.labels is None:
            raise EnumerationError("code was built in parameter mode")
        ow = np.asarray(outer_word).reshape(1, -1)
        idx = np.nonzero(
            np.all(self.outer.words()[self.labels] == ow, axis=1)
        )[0]
        return self.word_code.words()[idx]

    def summary(self) -> dict:
        p = self.params
        return {
            "inner": self.inner.name,
            "outer": getattr(self.outer, "name", None) or str(self.outer),
            "n": p.n,
            "q": p.q,
            "size": str(p.size),
            "log_size": p.log_size_str,
            "d": p.d,
            "d_is_exact": self.exact_distance is not None,
            "d_c": self.outer_distance,
            "d_union": self.inner.union_distance,
            "d_i_min": min(self.inner.subcode_distances),
            "d_G": self.inner.graph_distance,
            "label": f"(({p.n}, {p.q}^{p.log_size_str}, {p.d}))_{p.q}",
        }


def _outer_distance(outer: ClassicalCode | CodeParams, max_enum: int) -> int:
    if isinstance(outer, CodeParams):
        if outer.d is None:
            raise ValueError("outer parameters carry no distance")
        return outer.d
    d, _ = outer.known_distance
    if d is not None:
        return d
    return min_distance(outer, max_enum)


def concatenate(
    inner: InnerPartition,
    outer: ClassicalCode | CodeParams,
    *,
    mode: str = "auto",
    max_enum: int = DEFAULT_MAX_ENUM,
) -> GcqcCode:
    """Concatenate an inner partition with an outer code over GF(r).

    ``mode`` is ``explicit`` (build every codeword), ``params`` (exact size
    and formula distance only) or ``auto`` (explicit when within budget).
    """
    if outer.q != inner.r:
        raise ValueError(f"outer alphabet has {outer.q} symbols but inner has {inner.r} subcodes")
    d_c = _outer_distance(outer, max_enum) if outer.size > 1 else math.inf
    d_G = math.inf if inner.graph_distance is None else inner.graph_distance
    formula = distance_formula(inner.union_distance, d_c, inner.subcode_distances, d_G)

    R = inner.equal_size
    if R is not None:
        size = outer.size * R**outer.n
    elif isinstance(outer, ClassicalCode) and outer.size <= max_enum:
        sizes = np.array(inner.sizes, dtype=object)
        size = int(sum(int(np.prod(sizes[w])) for w in outer.words()))
    else:
        raise EnumerationError("unequal subcode sizes need an enumerable outer code")

    n_total = inner.n * outer.n
    params = CodeParams(n_total, size, inner.q, formula, False)
    gc = GcqcCode(inner, outer, params, int(d_c) if not math.isinf(d_c) else 0)

    explicit = mode == "explicit" or (
        mode == "auto" and isinstance(outer, ClassicalCode) and size <= max_enum
    )
    if mode not in ("auto", "explicit", "params"):
        raise ValueError(f"unknown mode {mode!r}")
    if not explicit:
        return gc
    if isinstance(outer, CodeParams):
        raise EnumerationError("explicit mode needs an outer code, not parameters")
    if size > max_enum:
        raise EnumerationError(
            f"enumeration budget exceeded: {size} codewords (budget {max_enum})"
        )

    sub_words = [c.words() for c in inner.subcodes]
    chunks, labels = [], []
    for t, ow in enumerate(outer.words()):
        blocks = [sub_words[int(s)] for s in ow]
        grid = itertools.product(*(range(len(b)) for b in blocks))
        idx = np.array(list(grid), dtype=np.int64).reshape(-1, len(blocks))
        words = np.concatenate([blocks[j][idx[:, j]] for j in range(len(blocks))], axis=1)
        chunks.append(words)
        labels.append(np.full(len(words), t, dtype=np.int64))
    gc.word_code = ClassicalCode.explicit(
        inner.graph.field, np.concatenate(chunks), n_total, name="C_gc"
    )
    gc.labels = np.concatenate(labels)
    return gc


def outer_repetition(r: int, length: int) -> ClassicalCode:
    """The ``(length, r, length)_r`` repetition code ``{00..0, 11..1, ...}``."""
    return repetition_code(field_of_order(r), length)


def pentagon_outer_params(outer: CodeParams) -> CodeParams:
    """Pentagon partition with a distance-3 code over GF(16):
    ``((5 n', 2^n' K', 3))_2``."""
    if outer.q != 16 or outer.d is None or outer.d < 3:
        raise ValueError("needs an outer code over GF(16) with distance >= 3")
    return CodeParams(5 * outer.n, 2**outer.n * outer.size, 2, 3, False)


__all__ = [
    "ConcatParams",
    "GcqcCode",
    "InnerPartition",
    "SearchFailure",
    "build_pentagon_partition",
    "build_ring10_partition",
    "concat_params",
    "concatenate",
    "cyclic_candidates",
    "distance_formula",
    "pentagon_outer_params",
    "outer_repetition",
    "pack",
    "search_cyclic_inner",
    "search_perfect_inner",
]
