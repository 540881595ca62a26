import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gcqc.classical_code import ClassicalCode, CodeParams, cosets, repetition_code
from gcqc.concatenation import (
    InnerPartition,
    build_pentagon_partition,
    build_ring10_partition,
    concat_params,
    concatenate,
    cyclic_candidates,
    distance_formula,
    pentagon_outer_params,
    outer_repetition,
    search_cyclic_inner,
)
from gcqc.cws import CwsCode, cws_distance_verify, induced_error_set, pentagon, ring
from gcqc.finite_field import make_field
from random_instances import check, random_instance

GF2, GF3 = make_field(2), make_field(3)


@pytest.fixture(scope="module")
def pent():
    return build_pentagon_partition()


@pytest.fixture(scope="module")
def pent15(pent):
    return concatenate(pent, outer_repetition(16, 3))


class TestFormula:
    def test_pentagon_repetition(self):
        assert distance_formula(1, 3, [3] * 16, 3) == 3

    def test_outer_distance_one_collapses(self):
        assert distance_formula(1, 1, [3] * 16, 3) == 1

    def test_weak_subcode(self):
        assert distance_formula(1, 3, [3] * 15 + [2], 3) == 2

    def test_infinite_entries(self):
        assert distance_formula(2, math.inf, [math.inf], 5) == 5
        with pytest.raises(ValueError, match="unbounded"):
            distance_formula(2, math.inf, [math.inf], math.inf)
        with pytest.raises(ValueError):
            distance_formula(0, 1, [1], 1)


class TestParamCalculus:
    def test_ordinary_concatenation(self):
        cp = concat_params((5, 2, 3), (3, 2, 3), 1)
        assert (cp.N, cp.K, cp.basic_lower) == (15, 2, 9)
        assert cp.params(2).quantum_str().startswith("((15, 2")

    def test_pentagon_fifteen(self):
        cp = concat_params((5, 32, 1), (3, 16, 3), 2, [3] * 16)
        assert (cp.N, cp.K, cp.basic_lower) == (15, 128, 3)
        assert cp.K == 2**7

    def test_cws_formula_switch(self):
        cp = concat_params((5, 32, 1), (3, 16, 1), 2, [3] * 16, d_c=3, d_G=3)
        assert cp.delta == 3

    def test_unequal_R(self):
        with pytest.raises(ValueError, match="unequal"):
            concat_params((5, 32, 1), (3, 16, 3), [2, 2, 1], [3, 3, 3])

    def test_pentagon_outer_params(self):
        p = pentagon_outer_params(CodeParams(17, 16**15, 16, 3))
        assert (p.n, p.size, p.d) == (85, 2**77, 3)
        with pytest.raises(ValueError):
            pentagon_outer_params(CodeParams(17, 16**16, 16, 1))


class TestPentagonPartition:
    def test_structure(self, pent):
        assert pent.r == 16 and pent.n == 5 and pent.equal_size == 2
        assert pent.subcode_distances == [3] * 16
        assert pent.union_distance == 1
        assert pent.graph_distance == 3
        assert pent.union_code.size == 32

    def test_every_subcode_verifies(self, pent):
        for c in pent.subcodes:
            assert cws_distance_verify(CwsCode(pent.graph, c), 3)

    def test_labels(self, pent):
        assert pent.alphabet.q == 16
        assert pent.subcode_of([0, 0, 0, 0, 0]) == 0
        assert pent.subcode_of([1, 1, 1, 1, 1]) == 0


class TestPentagonFifteen:
    def test_size_and_formula(self, pent15):
        assert pent15.params.size == 128
        assert pent15.formula_distance == 3
        assert pent15.params.n == 15

    def test_outer_zero_block(self, pent15):
        words = pent15.words_for_outer([0, 0, 0])
        z, o = "00000", "11111"
        expected = [a + b + c for a in (z, o) for b in (z, o) for c in (z, o)]
        assert ["".join(map(str, w)) for w in words] == expected

    def test_blockwise_labels(self, pent15):
        outer = pent15.outer.words()
        for w, t in zip(pent15.word_code.words(), pent15.labels):
            assert pent15.block_labels(w) == tuple(outer[t])

    def test_certify(self, pent15):
        lo, hi = pent15.certify()
        assert lo.passed and not hi.passed
        assert hi.witness_weight == 3
        assert pent15.exact_distance == 3


class TestConcatenateGeneral:
    def test_degenerate_single_block(self, pent):
        gc = concatenate(pent, ClassicalCode.explicit(make_field(2, 4), [[0], [5]], 1))
        assert gc.params.n == 5 and gc.params.size == 4
        assert gc.formula_distance == 1
        assert not gc.verify(2)

    def test_alphabet_mismatch(self, pent):
        with pytest.raises(ValueError, match="symbols"):
            concatenate(pent, repetition_code(GF2, 3))

    def test_params_mode(self, pent):
        gc = concatenate(pent, CodeParams(17, 16**15, 16, 3), mode="params")
        assert gc.word_code is None
        assert (gc.params.n, gc.params.size, gc.params.d) == (85, 2**77, 3)

    def test_unequal_sizes(self):
        g = pentagon()
        base = repetition_code(GF2, 5)
        cs = cosets(base, 2)
        small = ClassicalCode.explicit(GF2, [cs[1].words()[0]])
        inner = InnerPartition.build(g, [cs[0], small], make_field(2))
        outer = ClassicalCode.explicit(GF2, [[0, 0], [0, 1], [1, 1]])
        gc = concatenate(inner, outer)
        assert gc.params.size == 4 + 2 + 1 == gc.word_code.size

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_size_identity_and_lower_bound(self, seed):
        gc = random_instance(np.random.default_rng(seed), max_words=1024)
        assert gc.word_code.size == gc.params.size
        assert check(gc).ok


class TestRing10:
    def test_cyclic_candidates(self):
        cands = cyclic_candidates(GF3, 10, 6)
        assert len(cands) == 2
        for c in cands:
            assert c.k == 6

    def test_cyclic_candidates_fail(self):
        reps = search_cyclic_inner(ring(10, GF3), 6)
        assert len(reps) == 2
        for _, rep in reps:
            assert not rep.passed and rep.witness_weight == 2

    def test_partition(self):
        part = build_ring10_partition()
        assert part.r == 81 and part.equal_size == 729
        assert sum(part.sizes) == 3**10
        assert min(part.subcode_distances) >= 3
        assert part.union_distance == 1
        assert part.graph_distance == 3

    def test_searched_code_is_perfect(self):
        part = build_ring10_partition()
        base = part.subcodes[0]
        assert base.k == 6 and base.size == 729
        rep = cws_distance_verify(CwsCode(part.graph, base), 3)
        assert rep.passed
        assert not cws_distance_verify(CwsCode(part.graph, base), 4)
        # perfect: the 80 single-site images hit every nonzero syndrome once
        images = induced_error_set(part.graph, 1)
        assert len(images) == 80 and not images.zero_hit
        syn = {tuple(v) for v in base.syndromes(images.patterns).tolist()}
        assert len(syn) == 80 and (0, 0, 0, 0) not in syn
