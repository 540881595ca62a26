import csv
import io
import math
from fractions import Fraction

import pytest

from gcqc.bounds import (
    asymptotic_table,
    family_row,
    quantum_hamming_bound,
    stabilizer_dimension_cap,
    table_csv,
)


def near(x, y, tol=5e-4):
    return abs(x - y) <= tol


class TestHamming:
    def test_five_qubits(self):
        hb = quantum_hamming_bound(5, 2)
        assert hb.cap == 2 and hb.admits(2) and not hb.admits(3)

    def test_ninety(self):
        assert near(quantum_hamming_bound(90, 2).log, 81.918)
        assert quantum_hamming_bound(90, 2).log_str == "81.918"

    def test_eight_forty(self):
        assert near(quantum_hamming_bound(840, 3).log, 831.978)

    def test_t_zero(self):
        assert quantum_hamming_bound(7, 3, 0).cap == 3**7

    def test_exact_formula(self):
        for n in (3, 10, 17):
            for q in (2, 3, 4):
                cap = quantum_hamming_bound(n, q, 2).cap
                sph = 1 + n * (q * q - 1) + math.comb(n, 2) * (q * q - 1) ** 2
                assert cap == Fraction(q**n, sph)

    def test_invalid(self):
        with pytest.raises(ValueError):
            quantum_hamming_bound(0, 2)

    def test_stabilizer_cap(self):
        assert stabilizer_dimension_cap(90, 2) == 81
        assert stabilizer_dimension_cap(840, 3) == 831
        assert stabilizer_dimension_cap(5, 2) == 1


class TestFamily:
    def test_q2_s2(self):
        r = family_row(2, 2, 2)
        assert (r.n_s, r.Q, r.P, r.L_i, r.N_si) == (5, 16, 17, 18, 90)
        assert r.M_lower == -(-(2**90) // 17**2)
        assert r.M_construction == 2**18 * -(-(16**18) // 17**2)
        assert near(r.log_M, 81.825)
        assert r.beats_stabilizer and r.stab_cap == 2**81
        assert near(r.gap, 81.918 - 81.825, 1e-3)

    def test_q3_s2(self):
        r = family_row(3, 2, 2)
        assert (r.n_s, r.Q, r.P, r.L_i, r.N_si) == (10, 81, 83, 84, 840)
        assert near(r.log_cap, 831.978)
        assert r.stab_cap == 3**831 and r.beats_stabilizer

    def test_bounded_by_hamming(self):
        for q, s in [(2, 2), (2, 3), (3, 2), (4, 2), (2, 4)]:
            r = family_row(q, s, 2)
            assert r.M_lower <= r.hamming_cap
            assert r.M_construction >= r.M_lower
            assert r.ratio_log <= 0

    def test_s1_flagged(self):
        r = family_row(2, 1, 2)
        assert not r.inner_valid and r.M_construction == 0

    def test_stabilizer_comparison_rows(self):
        for q, s, i in [(2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2), (4, 2, 2)]:
            r = family_row(q, s, i)
            if r.argument_applies:
                assert r.M_lower > r.stab_cap

    def test_invalid(self):
        with pytest.raises(ValueError):
            family_row(6, 2, 2)
        with pytest.raises(ValueError):
            family_row(2, 2, 1)

    def test_csv(self):
        rows = asymptotic_table(2, range(2, 5), 2)
        parsed = list(csv.DictReader(io.StringIO(table_csv(rows))))
        assert [int(p["N_si"]) for p in parsed] == [90, 1428, 21930]
        assert parsed[0]["log_M_lower"] == "81.825"
        assert parsed[2]["M_lower"] == "ceil(2^21930/257^2)"
        assert {"ratio_log", "beats_stabilizer", "stab_cap"} <= set(parsed[0])

    def test_empty_table(self):
        assert asymptotic_table(2, [], 2) == []
        assert table_csv([]).startswith("q,s,i,")
