"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python
tests/test_acceptance.py``) to see the summary lines.
"""

from __future__ import annotations

import itertools
import time

import numpy as np
import pytest

from gcqc.bounds import family_row, quantum_hamming_bound
from gcqc.classical_code import (
    cosets,
    full_space,
    hamming_code,
    repetition_code,
    subcode_over_subalphabet,
)
from gcqc.concatenation import (
    build_pentagon_partition,
    concatenate,
    outer_repetition,
    search_cyclic_inner,
)
from gcqc.cws import (
    CwsCode,
    PauliError,
    cws_distance,
    cws_distance_verify,
    graph_distance,
    induced_error_set,
    pentagon,
    ring,
    translate,
)
from gcqc.finite_field import make_field
from oracles import naive_min_distance
from random_instances import check, random_instance

TOL = 5e-4

# Z, X and Y images of single-qubit errors on the pentagon, site by site
PENTAGON_IMAGES = {
    "Z": ["10000", "01000", "00100", "00010", "00001"],
    "X": ["01001", "10100", "01010", "00101", "10010"],
    "Y": ["11001", "11100", "01110", "00111", "10011"],
}

# the eight length-15 codewords over outer word 000, in printed order
OUTER_ZERO_WORDS = [
    "000000000000000", "000000000011111", "000001111100000", "000001111111111",
    "111110000000000", "111110000011111", "111111111100000", "111111111111111",
]


class Criterion:
    def __init__(self, number: int, title: str, limit: float) -> None:
        self.number, self.title, self.limit = number, title, limit
        self.checks: dict[str, bool] = {}
        self.notes: list[str] = []

    def __enter__(self) -> Criterion:
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.t0

    def record(self, name: str, ok: bool) -> None:
        self.checks[name] = bool(ok)

    def finish(self, capsys) -> None:
        self.record(f"time < {self.limit:g} s", self.elapsed < self.limit)
        failed = [k for k, v in self.checks.items() if not v]
        status = "FAIL" if failed else "PASS"
        line = f"[{status}] {self.number:>2}. {self.title} ({self.elapsed:.2f} s)"
        if self.notes:
            line += " :: " + "; ".join(self.notes)
        if failed:
            line += " :: failed: " + "; ".join(failed)
        with capsys.disabled():
            print("\n" + line)
        assert not failed, line


def _near(x: float, target: float) -> bool:
    return abs(x - target) <= TOL


def test_criterion_01_pentagon_patterns(capsys):
    with Criterion(1, "pentagon single-error images", 1.0) as c:
        s = induced_error_set(pentagon(), 1)
        got = s.strings()
        expected = PENTAGON_IMAGES["Z"] + PENTAGON_IMAGES["X"] + PENTAGON_IMAGES["Y"]
        c.record("15 patterns", len(got) == 15)
        c.record("set equals the listed images", set(got) == set(expected))
        g = pentagon()
        for kind, images in PENTAGON_IMAGES.items():
            row = [
                "".join(map(str, translate(g, PauliError.single(5, j, kind)))) for j in range(5)
            ]
            c.record(f"{kind} group", row == images)
    c.finish(capsys)


def test_criterion_02_graph_distances(capsys):
    with Criterion(2, "graph distances of one and three pentagons", 1.0) as c:
        for name, g in [("pentagon", pentagon()), ("three pentagons", pentagon().copies(3))]:
            gd = graph_distance(g)
            c.record(f"{name} d_G = 3", gd.value == 3)
            c.record(
                f"{name} witness has weight 3 and zero image",
                gd.witness is not None
                and gd.witness.weight == 3
                and not translate(g, gd.witness).any(),
            )
            c.record(f"{name} nothing at weight <= 2", graph_distance(g, 2).value is None)
    c.finish(capsys)


def test_criterion_03_inner_codes(capsys):
    with Criterion(3, "pentagon cosets verify at d=3, union fails at d=2", 1.0) as c:
        g = pentagon()
        gf2 = make_field(2)
        subs = cosets(repetition_code(gf2, 5), 16)
        c.record("16 distinct cosets", len({tuple(map(tuple, s.words())) for s in subs}) == 16)
        c.record("each coset passes d=3", all(cws_distance_verify(CwsCode(g, s), 3) for s in subs))
        union = full_space(gf2, 5)
        c.record("union fails d=2", not cws_distance_verify(CwsCode(g, union), 2))
        c.record("union distance 1", cws_distance(CwsCode(g, union)).value == 1)
    c.finish(capsys)


def test_criterion_04_length_fifteen(capsys):
    with Criterion(4, "((15, 2^7, 3)) reproduction", 10.0) as c:
        gc = concatenate(build_pentagon_partition(), outer_repetition(16, 3))
        words = gc.word_code.words()
        c.record("128 codewords", len(words) == 128 and gc.params.size == 128)
        c.record("length 15", words.shape[1] == 15)
        zero = ["".join(map(str, w)) for w in gc.words_for_outer([0, 0, 0])]
        c.record("outer 000 words verbatim", zero == OUTER_ZERO_WORDS)
        lo, hi = gc.certify()
        c.record("PASS at d=3", lo.passed)
        c.record("FAIL at d=4 with witness", not hi.passed and hi.error is not None)
        c.notes.append(f"d=4 witness {hi.error.label() if hi.error else None} ({hi.reason})")
    c.finish(capsys)


def test_criterion_05_formula_oracle(capsys):
    with Criterion(5, "distance formula vs brute force on random instances", 300.0) as c:
        rng = np.random.default_rng(20240605)
        outcomes = [check(random_instance(rng)) for _ in range(60)]
        c.record(">= 50 instances", len(outcomes) >= 50)
        c.record("length <= 18", all(o.n * o.n_outer <= 18 for o in outcomes))
        c.record("distance >= formula in every case", all(o.ok for o in outcomes))
        # a witness found at the formula weight must mean equality
        c.record(
            "equality whenever a formula-weight witness exists",
            all(o.equal for o in outcomes if o.distance is not None and o.distance <= o.formula),
        )
        eq = sum(o.equal for o in outcomes)
        by_d = {}
        for o in outcomes:
            by_d[o.formula] = by_d.get(o.formula, 0) + 1
        c.notes.append(f"{eq}/{len(outcomes)} equal; formula values {dict(sorted(by_d.items()))}")
    c.finish(capsys)


def test_criterion_06_example_one(capsys):
    with Criterion(6, "((85, 2^77, 3)) in parameter mode", 1.0) as c:
        outer = hamming_code(make_field(2, 4), 2)
        gc = concatenate(build_pentagon_partition(), outer, mode="params")
        p = gc.params
        c.record("outer is (17, 16^15, 3)", (outer.n, outer.size, outer.known_distance[0]) == (17, 16**15, 3))
        c.record("N = 85", p.n == 85)
        c.record("K = 2^77 exactly", p.size == 2**77 == 151115727451828646838272)
        c.record("distance 3", p.d == 3)
        c.notes.append(f"K = {p.size}")
    c.finish(capsys)


def test_criterion_07_example_two(capsys):
    with Criterion(7, "((90, M, 3)) beats the stabilizer cap", 1.0) as c:
        M = 2**18 * -(-(16**18) // 17**2)
        h17 = hamming_code(make_field(17), 2)
        outer = subcode_over_subalphabet(h17, 16, mode="bound")
        gc = concatenate(build_pentagon_partition(), outer, mode="params")
        c.record("M from concatenation", gc.params.size == M)
        c.record("M from family row", family_row(2, 2, 2).M_construction == M)
        c.record("log2 M = 81.825", _near(gc.params.log_size, 81.825))
        hb = quantum_hamming_bound(90, 2, 1)
        c.record("Hamming log2 = 81.918", _near(hb.log, 81.918))
        c.record("beats 2^81", M > 2**81 and family_row(2, 2, 2).beats_stabilizer)
        c.notes.append(f"log2 M = {gc.params.log_size:.6f}, Hamming {hb.log:.6f}")
    c.finish(capsys)


def test_criterion_08_example_three(capsys):
    with Criterion(8, "((840, M, 3))_3 parameters and cyclic ring-10 gate", 120.0) as c:
        r = family_row(3, 2, 2)
        c.record("N = 840", r.N_si == 840)
        c.record("log3 M_lower = 831.955", _near(r.log_M, 831.955))
        hb = quantum_hamming_bound(840, 3, 1)
        c.record("Hamming log3 = 831.978", _near(hb.log, 831.978))
        reps = search_cyclic_inner(ring(10, make_field(3)), 6)
        passing = [code for code, rep in reps if rep.passed]
        c.record("a cyclic [10,6]_3 code passes d=3 on the ring", bool(passing))
        c.notes.append(f"log3 M_lower = {r.log_M:.6f}")
        c.notes.append(
            "cyclic candidates: "
            + ", ".join(f"{code.name} -> {rep.reason} at weight {rep.witness_weight}" for code, rep in reps)
        )
    c.finish(capsys)


def _hamming_syndrome_buckets(p: int, s: int, n: int) -> tuple[list[list[int]], list[tuple]]:
    """Independent bucket count for the redundancy-2 Hamming code over GF(p):
    columns are the projective points with leading 1, in lexicographic order."""
    cols = [(0, 1)] + [(1, b) for b in range(p)]
    assert len(cols) == n
    buckets: dict[tuple, list] = {}
    for v in itertools.product(range(s), repeat=n):
        syn = tuple(sum(v[j] * cols[j][r] for j in range(n)) % p for r in range(2))
        buckets.setdefault(syn, []).append(v)
    return max(buckets.values(), key=len), cols


def test_criterion_09_subalphabet(capsys):
    with Criterion(9, "GF(5) Hamming restricted to 4 symbols", 5.0) as c:
        f5 = make_field(5)
        h = hamming_code(f5, 2)
        best, cols = _hamming_syndrome_buckets(5, 4, 6)
        zero_syn = all(
            sum(int(w[j]) * cols[j][r] for j in range(6)) % 5 == 0
            for w in h.words()
            for r in range(2)
        )
        c.record("oracle parity check matches the code", zero_syn and h.size == 625)
        sub = subcode_over_subalphabet(h, 4, mode="enumerate")
        c.record("explicit code", sub.kind == "explicit")
        c.record("size >= 164", sub.size >= 164)
        c.record("size equals max bucket", sub.size == len(best))
        words = sub.words().tolist()
        c.record("symbols in 0..3", all(0 <= x < 4 for w in words for x in w))
        c.record("min distance >= 3", naive_min_distance(words) >= 3)
        c.notes.append(f"size {sub.size}, oracle bucket {len(best)}")
    c.finish(capsys)


def test_criterion_10_asymptotics(capsys):
    with Criterion(10, "Hamming-cap gap shrinks for q=2, i=2, s=2..6", 10.0) as c:
        rows = [family_row(2, s, 2) for s in range(2, 7)]
        gaps = [abs(r.ratio_log) for r in rows]
        c.record(
            "|ratio_log| strictly decreasing",
            all(a > b for a, b in zip(gaps, gaps[1:])),
        )
        c.notes.append(
            "gaps " + ", ".join(f"s={r.s}: {g:.6f} (P/Q={r.P}/{r.Q})" for r, g in zip(rows, gaps))
        )
    c.finish(capsys)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
