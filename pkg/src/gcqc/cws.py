"""Graphs, the classical error map of a graph state, and CWS distance checks.

A Pauli error ``X^a Z^b`` on a graph with adjacency matrix ``A`` is sent to
the classical string ``b + a A``. A nondegenerate CWS code (graph, word code)
detects an error set iff no error has zero image and no image maps a codeword
onto another codeword.

Errors are enumerated by increasing weight, then lexicographic support, then
lexicographic exponent pairs ``(a_j, b_j)`` per site, so every witness is
reproducible. For qubits the per-site order is Z, X, Y.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .classical_code import (
    DEFAULT_MAX_ENUM,
    ClassicalCode,
    EnumerationError,
    as_vectors,
    pack,
)
from .finite_field import (
    FiniteField,
    IntArray,
    field_of_order,
    make_field,
    parse_vector,
    vector_string,
)

# soft cap on ints materialised per enumeration chunk
_CHUNK_ELEMS = 1 << 22


class Graph:
    """Undirected graph with edge weights in GF(q)."""

    def __init__(self, field: FiniteField, adjacency) -> None:
        a = np.array(adjacency, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency must be square")
        if np.any(np.diag(a)):
            raise ValueError("adjacency must have zero diagonal")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency must be symmetric")
        if np.any((a < 0) | (a >= field.q)):
            raise ValueError("edge weight outside the field")
        a.setflags(write=False)
        self.field = field
        self.adjacency = a

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @classmethod
    def from_edges(cls, field: FiniteField, n: int, edges) -> Graph:
        a = np.zeros((n, n), dtype=np.int64)
        for e in edges:
            u, v, w = (*e, 1) if len(e) == 2 else e
            a[u, v] = a[v, u] = w
        return cls(field, a)

    def edges(self) -> list[tuple[int, int, int]]:
        iu = np.argwhere(np.triu(self.adjacency))
        return [(int(u), int(v), int(self.adjacency[u, v])) for u, v in iu]

    def degree(self, v: int) -> int:
        return int(np.count_nonzero(self.adjacency[v]))

    def disjoint_union(self, *others: Graph) -> Graph:
        graphs = (self, *others)
        if any(g.field is not self.field for g in graphs):
            raise ValueError("graphs over different fields")
        n = sum(g.n for g in graphs)
        a = np.zeros((n, n), dtype=np.int64)
        off = 0
        for g in graphs:
            a[off : off + g.n, off : off + g.n] = g.adjacency
            off += g.n
        return Graph(self.field, a)

    def copies(self, count: int) -> Graph:
        if count < 1:
            raise ValueError("need at least one copy")
        return self.disjoint_union(*([self] * (count - 1)))

    def to_json(self) -> dict:
        return {"q": self.field.q, "n": self.n, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return cls.from_edges(field_of_order(int(data["q"])), int(data["n"]), data["edges"])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Graph)
            and other.field is self.field
            and np.array_equal(other.adjacency, self.adjacency)
        )

    def __repr__(self) -> str:
        return f"<Graph n={self.n} over {self.field} with {len(self.edges())} edges>"


def ring(n: int, field: FiniteField | None = None) -> Graph:
    """Cycle on ``n`` vertices, all edge weights 1."""
    if n < 3:
        raise ValueError("a ring needs at least 3 vertices")
    field = field or make_field(2)
    return Graph.from_edges(field, n, [(j, (j + 1) % n) for j in range(n)])


def pentagon() -> Graph:
    return ring(5, make_field(2))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PauliError:
    """``X^a Z^b`` up to phase; ``a`` and ``b`` are field-index vectors."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError("a and b differ in length")

    @classmethod
    def from_sites(cls, n: int, sites: dict[int, tuple[int, int]]) -> PauliError:
        a, b = [0] * n, [0] * n
        for j, (aj, bj) in sites.items():
            a[j], b[j] = aj, bj
        return cls(tuple(a), tuple(b))

    @classmethod
    def single(cls, n: int, site: int, kind: str) -> PauliError:
        """Qubit-style single-site error, ``kind`` in X, Y, Z."""
        ab = {"X": (1, 0), "Z": (0, 1), "Y": (1, 1)}[kind.upper()]
        return cls.from_sites(n, {site: ab})

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if self.a[j] or self.b[j])

    @property
    def weight(self) -> int:
        return len(self.support)

    def is_identity(self) -> bool:
        return self.weight == 0

    def compose(self, other: PauliError, field: FiniteField) -> PauliError:
        return PauliError(
            tuple(int(x) for x in field.add(self.a, other.a)),
            tuple(int(x) for x in field.add(self.b, other.b)),
        )

    def label(self, q: int = 2) -> str:
        """``X1 Z2 Z5`` for qubits (1-based sites), ``X^a Z^b @j`` otherwise."""
        parts = []
        for j in self.support:
            a, b = self.a[j], self.b[j]
            if q == 2:
                parts.append(f"{'Y' if a and b else 'X' if a else 'Z'}{j + 1}")
            else:
                parts.append(f"X^{a}Z^{b}@{j + 1}")
        return " ".join(parts) or "I"

    def to_json(self, q: int) -> dict:
        return {
            "support": list(self.support),
            "a": vector_string(self.a, q),
            "b": vector_string(self.b, q),
            "label": self.label(q),
        }


def translate(graph: Graph, error: PauliError) -> IntArray:
    """The classical image ``b + a A`` of a Pauli error."""
    if error.n != graph.n:
        raise ValueError("error length does not match graph")
    f = graph.field
    return f.add(np.asarray(error.b, np.int64), f.matmul(np.asarray(error.a, np.int64), graph.adjacency))


def site_pairs(q: int) -> IntArray:
    """Nonzero exponent pairs (a, b) in lexicographic order."""
    return np.array([(a, b) for a in range(q) for b in range(q) if a or b], dtype=np.int64)


def _site_table(graph: Graph) -> IntArray:
    """``T[j, p]`` = image of the single-site error with pair ``p`` at ``j``."""
    f, n = graph.field, graph.n
    pairs = site_pairs(f.q)
    table = np.zeros((n, len(pairs), n), dtype=np.int64)
    for j in range(n):
        for p, (a, b) in enumerate(pairs):
            row = f.mul(graph.adjacency[j], a)
            row[j] = f.add(row[j], b)
            table[j, p] = row
    return table


def error_count(n: int, q: int, max_weight: int) -> int:
    return sum(math.comb(n, w) * (q * q - 1) ** w for w in range(1, max_weight + 1))


@dataclass
class _Block:
    weight: int
    supports: IntArray  # (S, w)
    combos: IntArray  # (P, w) indices into site_pairs
    images: IntArray  # (S * P, n), support-major


class ErrorEnumerator:
    """Yields blocks of error images in the canonical order."""

    def __init__(self, graph: Graph) -> None:
        self.graph = graph
        self.pairs = site_pairs(graph.field.q)
        self.table = _site_table(graph)

    def blocks(self, w: int) -> Iterator[_Block]:
        n, f = self.graph.n, self.graph.field
        if w == 0 or w > n:
            return
        combos = np.array(list(itertools.product(range(len(self.pairs)), repeat=w)), dtype=np.int64)
        step = max(1, _CHUNK_ELEMS // (len(combos) * w * n * f.m))
        it = itertools.combinations(range(n), w)
        while True:
            sup = np.array(list(itertools.islice(it, step)), dtype=np.int64)
            if len(sup) == 0:
                return
            # terms[s, c, k, :] = table[sup[s, k], combos[c, k]]
            terms = self.table[sup[:, None, :], combos[None, :, :]]
            images = f.sum(terms, axis=2).reshape(-1, n)
            yield _Block(w, sup, combos, images)

    def error(self, block: _Block, flat_index: int) -> PauliError:
        s, c = divmod(int(flat_index), len(block.combos))
        sites = {
            int(block.supports[s, k]): tuple(int(x) for x in self.pairs[block.combos[c, k]])
            for k in range(block.weight)
        }
        return PauliError.from_sites(self.graph.n, sites)


def _check_budget(graph: Graph, max_weight: int, max_enum: int) -> None:
    count = error_count(graph.n, graph.field.q, max_weight)
    if count > max_enum:
        raise EnumerationError(
            f"combinatorial budget exceeded: {count} errors of weight <= {max_weight} "
            f"on {graph.n} sites (budget {max_enum})"
        )


@dataclass(frozen=True)
class Hit:
    weight: int
    error: PauliError
    image: IntArray


def first_hit(
    graph: Graph,
    max_weight: int,
    test: Callable[[IntArray], np.ndarray],
    *,
    min_weight: int = 1,
    max_enum: int = DEFAULT_MAX_ENUM,
    threads: int = 1,
) -> Hit | None:
    """First error (canonical order) of weight in ``[min_weight, max_weight]``
    whose image satisfies ``test``; ``test`` maps an (E, n) array to a mask."""
    enum = ErrorEnumerator(graph)

    def probe(block: _Block):
        mask = test(block.images)
        return (block, int(np.argmax(mask))) if mask.any() else None

    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for w in range(max(1, min_weight), max_weight + 1):
            # budget is checked lazily so an early witness never trips it
            _check_budget(graph, w, max_enum)
            blocks = enum.blocks(w)
            while True:
                window = list(itertools.islice(blocks, threads))
                if not window:
                    break
                results = pool.map(probe, window) if pool else map(probe, window)
                for res in results:
                    if res is not None:
                        block, j = res
                        return Hit(w, enum.error(block, j), block.images[j])
    finally:
        if pool:
            pool.shutdown(cancel_futures=True)
    return None


# ---------------------------------------------------------------------------


@dataclass
class InducedErrorSet:
    """Distinct nonzero images of all nonidentity errors up to ``max_weight``,
    kept in order of first appearance."""

    max_weight: int
    q: int
    patterns: IntArray
    zero_hit: bool

    def __len__(self) -> int:
        return len(self.patterns)

    def strings(self) -> list[str]:
        return [vector_string(p, self.q) for p in self.patterns]

    def as_set(self) -> set[tuple[int, ...]]:
        return {tuple(int(x) for x in p) for p in self.patterns}


def induced_error_set(
    graph: Graph, max_weight: int, *, max_enum: int = DEFAULT_MAX_ENUM
) -> InducedErrorSet:
    n, q = graph.n, graph.field.q
    if max_weight <= 0:
        return InducedErrorSet(max_weight, q, np.zeros((0, n), np.int64), False)
    _check_budget(graph, max_weight, max_enum)
    enum = ErrorEnumerator(graph)
    chunks, zero_hit = [], False
    for w in range(1, max_weight + 1):
        for block in enum.blocks(w):
            nz = np.any(block.images, axis=1)
            zero_hit |= bool((~nz).any())
            chunks.append(block.images[nz])
    allp = np.concatenate(chunks) if chunks else np.zeros((0, n), np.int64)
    _, first = np.unique(pack(allp, q), return_index=True)
    return InducedErrorSet(max_weight, q, allp[np.sort(first)], zero_hit)


@dataclass(frozen=True)
class GraphDistance:
    """Least weight of a nonidentity error with zero image, or ``None`` when
    no such error exists up to ``cutoff`` (meaning the distance exceeds it)."""

    value: int | None
    cutoff: int
    witness: PauliError | None = None

    def __int__(self) -> int:
        if self.value is None:
            raise ValueError(f"graph distance exceeds cutoff {self.cutoff}")
        return self.value

    def __str__(self) -> str:
        return str(self.value) if self.value is not None else f">{self.cutoff}"


def graph_distance(
    graph: Graph,
    cutoff: int | None = None,
    *,
    max_enum: int = DEFAULT_MAX_ENUM,
    threads: int = 1,
) -> GraphDistance:
    cutoff = graph.n if cutoff is None else min(cutoff, graph.n)
    hit = first_hit(
        graph, cutoff, lambda im: ~np.any(im, axis=1), max_enum=max_enum, threads=threads
    )
    if hit is None:
        return GraphDistance(None, cutoff)
    return GraphDistance(hit.weight, cutoff, hit.error)


@dataclass
class CwsCode:
    graph: Graph
    word_code: ClassicalCode
    claimed_d: int | None = None

    def __post_init__(self) -> None:
        if self.word_code.n != self.graph.n:
            raise ValueError("word code length differs from graph size")
        if self.word_code.field is not self.graph.field:
            raise ValueError("word code and graph use different fields")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def size(self) -> int:
        return self.word_code.size


@dataclass
class VerifyReport:
    passed: bool
    d: int
    q: int
    reason: str = "ok"  # ok | degenerate | collision
    error: PauliError | None = None
    image: IntArray | None = None
    codewords: tuple[IntArray, IntArray] | None = None
    errors_checked: int = 0
    extra: dict = dc_field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def witness_weight(self) -> int | None:
        return None if self.error is None else self.error.weight

    def summary(self) -> str:
        if self.passed:
            return f"PASS d={self.d} ({self.errors_checked} errors of weight <= {self.d - 1})"
        q = self.q
        s = (
            f"FAIL d={self.d}: {self.reason} at weight {self.witness_weight}: "
            f"{self.error.label(q)} -> {vector_string(self.image, q)}"
        )
        if self.codewords is not None:
            c1, c2 = self.codewords
            s += f" maps {vector_string(c1, q)} to {vector_string(c2, q)}"
        return s

    def to_json(self) -> dict:
        out = {"passed": self.passed, "d": self.d, "reason": self.reason}
        if self.error is not None:
            out["witness"] = dict(
                self.error.to_json(self.q), image=vector_string(self.image, self.q)
            )
            if self.codewords is not None:
                out["witness"]["codewords"] = [vector_string(c, self.q) for c in self.codewords]
        out["errors_checked"] = self.errors_checked
        return out


def _failure_test(code: CwsCode) -> Callable[[IntArray], np.ndarray]:
    wc = code.word_code

    def test(images: IntArray) -> np.ndarray:
        return ~np.any(images, axis=1) | wc.collisions(images)

    return test


def _report(code: CwsCode, d: int, hit: Hit | None) -> VerifyReport:
    q = code.graph.field.q
    checked = error_count(code.n, q, d - 1)
    if hit is None:
        return VerifyReport(True, d, q, errors_checked=checked)
    if not np.any(hit.image):
        return VerifyReport(False, d, q, "degenerate", hit.error, hit.image, errors_checked=checked)
    pair = code.word_code.collision_pair(hit.image)
    return VerifyReport(False, d, q, "collision", hit.error, hit.image, pair, errors_checked=checked)


def cws_distance_verify(
    code: CwsCode, d: int, *, max_enum: int = DEFAULT_MAX_ENUM, threads: int = 1
) -> VerifyReport:
    """PASS iff every nonidentity error of weight <= d-1 has a nonzero image
    that maps no codeword onto another codeword."""
    if d < 1:
        raise ValueError("distance must be >= 1")
    hit = first_hit(
        code.graph, d - 1, _failure_test(code), max_enum=max_enum, threads=threads
    )
    return _report(code, d, hit)


@dataclass(frozen=True)
class DistanceResult:
    """Nondegenerate CWS distance by exhaustive search: least weight of an
    error that either has zero image or links two codewords."""

    value: int | None
    cutoff: int
    witness: VerifyReport | None = None

    @property
    def exceeds_cutoff(self) -> bool:
        return self.value is None


def cws_distance(
    code: CwsCode,
    cutoff: int | None = None,
    *,
    min_weight: int = 1,
    max_enum: int = DEFAULT_MAX_ENUM,
    threads: int = 1,
) -> DistanceResult:
    """Exact distance if it is at most ``cutoff``; searching starts at
    ``min_weight`` (weights below it are assumed already cleared)."""
    cutoff = code.n if cutoff is None else min(cutoff, code.n)
    hit = first_hit(
        code.graph,
        cutoff,
        _failure_test(code),
        min_weight=min_weight,
        max_enum=max_enum,
        threads=threads,
    )
    if hit is None:
        return DistanceResult(None, cutoff)
    return DistanceResult(hit.weight, cutoff, _report(code, hit.weight + 1, hit))


def single_site_images(graph: Graph) -> dict[str, list[str]]:
    """For qubit graphs: images of every Z, X and Y error, site by site."""
    if graph.field.q != 2:
        raise ValueError("single_site_images is for qubit graphs")
    return {
        kind: [
            vector_string(translate(graph, PauliError.single(graph.n, j, kind)), 2)
            for j in range(graph.n)
        ]
        for kind in ("Z", "X", "Y")
    }


def parse_vectors(strings: Sequence[str], q: int) -> IntArray:
    return as_vectors([parse_vector(s, q) for s in strings])
