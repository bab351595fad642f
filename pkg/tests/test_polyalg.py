from fractions import Fraction

import numpy as np
import pytest

from matchpoly import (
    BipartiteGraph,
    MultilinearPoly,
    ResourceLimitError,
    TruthTable,
    deg,
    deg2,
    dualize,
    evaluate,
    interpolate,
    l1_norm,
    monomial_count,
    to_fourier,
    to_json_dict,
    to_text,
    to_truth_table,
)

from helpers import oracle_evaluate, oracle_has_pm

BPM2_TERMS = {0b1001: 1, 0b0110: 1, 0b1111: -1}


def bpm2_table() -> TruthTable:
    bits = [1 if oracle_has_pm(2, m) else 0 for m in range(16)]
    return TruthTable(2, np.array(bits, dtype=np.uint8))


def table_from_bits(n, value):
    """TruthTable whose bit at mask m is bit m of the integer ``value``."""
    size = 1 << (n * n)
    return TruthTable(n, np.array([(value >> m) & 1 for m in range(size)],
                                  dtype=np.uint8))


class TestTruthTable:
    def test_length_enforced(self):
        with pytest.raises(ValueError):
            TruthTable(2, np.zeros(8, dtype=np.uint8))

    def test_values_enforced(self):
        with pytest.raises(ValueError):
            TruthTable(1, np.array([0, 2], dtype=np.uint8))

    def test_dual_swaps_roles(self):
        t = bpm2_table()
        d = t.dual()
        assert all(d[m] == 1 - t[15 ^ m] for m in range(16))


class TestInterpolate:
    def test_bpm2_polynomial(self):
        p = interpolate(bpm2_table())
        assert p.terms == BPM2_TERMS

    def test_all_zeros(self):
        p = interpolate(table_from_bits(2, 0))
        assert len(p) == 0

    def test_and_of_all_bits(self):
        t = table_from_bits(2, 1 << 15)  # 1 only on the full mask
        p = interpolate(t)
        assert p.terms == {0b1111: 1}

    def test_roundtrip_exhaustive_n2(self):
        # every Boolean function of the 4 edge variables
        bit_positions = np.arange(16)
        for value in range(1 << 16):
            bits = ((value >> bit_positions) & 1).astype(np.uint8)
            t = TruthTable(2, bits)
            assert to_truth_table(interpolate(t)) == t, value

    def test_roundtrip_api_sampled(self):
        rng = np.random.default_rng(7)
        for n, count in ((2, 300), (3, 40), (4, 6)):
            size = 1 << (n * n)
            for _ in range(count):
                bits = rng.integers(0, 2, size=size).astype(np.uint8)
                t = TruthTable(n, bits)
                assert to_truth_table(interpolate(t)) == t

    def test_uniqueness(self):
        # identical functions yield identical term maps
        t = bpm2_table()
        assert interpolate(t) == interpolate(TruthTable(2, t.bits.copy()))


class TestEvaluate:
    def test_bpm2_at_k22(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        assert evaluate(p, BipartiteGraph.full(2)) == 1

    def test_constant_at_empty(self):
        p = MultilinearPoly.from_terms(2, {0: 7, 0b11: 2})
        assert evaluate(p, BipartiteGraph.empty(2)) == 7

    def test_full_agreement_with_truth_table(self):
        t = table_from_bits(3, 0x1234_5678_9ABC_DEF0_1122_3344_5566_7788_99AA_BBCC_DDEE_FF00_1234_5678_9ABC_DEF5)
        p = interpolate(t)
        for m in range(0, 512, 7):
            assert evaluate(p, m) == t[m]

    def test_oracle_random_terms(self):
        rng = np.random.default_rng(11)
        terms = {int(m): int(c) for m, c in
                 zip(rng.choice(512, size=40, replace=False),
                     rng.integers(-5, 6, size=40)) if c}
        p = MultilinearPoly.from_terms(3, terms)
        for m in list(rng.integers(0, 512, size=50)):
            assert evaluate(p, int(m)) == oracle_evaluate(terms, int(m))

    def test_mismatched_n_rejected(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        with pytest.raises(ValueError):
            evaluate(p, BipartiteGraph.empty(3))


class TestDualize:
    def test_dual_agrees_pointwise(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        d = dualize(p)
        for m in range(16):
            assert evaluate(d, m) == 1 - evaluate(p, 15 ^ m)

    def test_involution_sampled_api(self):
        rng = np.random.default_rng(13)
        for n, count in ((2, 256), (3, 40)):
            size = 1 << (n * n)
            for _ in range(count):
                t = TruthTable(n, rng.integers(0, 2, size=size).astype(np.uint8))
                p = interpolate(t)
                assert dualize(dualize(p)) == p

    def test_involution_exhaustive_n2(self):
        # every Boolean function of the 4 edge variables; the second dualize
        # may skip the 0/1 re-check (the dual of a Boolean function is one)
        bit_positions = np.arange(16)
        for value in range(1 << 16):
            bits = ((value >> bit_positions) & 1).astype(np.uint8)
            p = interpolate(TruthTable(2, bits))
            assert dualize(dualize(p), assume_boolean=True) == p, value

    def test_constant_one_dualizes_to_zero(self):
        p = MultilinearPoly.from_terms(2, {0: 1})
        assert len(dualize(p)) == 0

    def test_rejects_non_boolean(self):
        p = MultilinearPoly.from_terms(2, {0b1: 2})
        with pytest.raises(ValueError):
            dualize(p)


class TestFourier:
    def test_bpm2_constant_term(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        f = to_fourier(p)
        assert f.coeff(0) == Fraction(1, 8)

    def test_bpm2_full_set(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        assert to_fourier(p).coeff(0b1111) == Fraction(1, 8)

    def test_constant_zero_function(self):
        f = to_fourier(MultilinearPoly.zero(2))
        assert f.coeff(0) == 1 and len(f) == 1

    def test_constant_one_function(self):
        f = to_fourier(MultilinearPoly.from_terms(2, {0: 1}))
        assert f.coeff(0) == -1 and len(f) == 1

    def test_pointwise_exhaustive_n2(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        f = to_fourier(p)
        for neg in range(16):
            assert f.evaluate_signs(neg) == 1 - 2 * evaluate(p, neg)

    def test_parseval_n2(self):
        rng = np.random.default_rng(17)
        for _ in range(25):
            t = TruthTable(2, rng.integers(0, 2, size=16).astype(np.uint8))
            f = to_fourier(interpolate(t))
            total = sum(Fraction(num, 1 << f.shared_exponent) ** 2
                        for _, num in f.items())
            assert total == 1

    def test_shared_exponent_normalized(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        f = to_fourier(p)
        assert f.shared_exponent <= 3
        assert any(num % 2 for _, num in f.items()) or f.shared_exponent == 0


class TestDegrees:
    def test_bpm2_full_degree(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        assert deg(p) == 4
        assert deg2(p) == 4

    def test_even_coefficient_invisible_mod_2(self):
        p = MultilinearPoly.from_terms(2, {0b11: 2})
        assert deg(p) == 2
        assert deg2(p) is None

    def test_empty(self):
        assert deg(MultilinearPoly.zero(2)) is None
        assert deg2(MultilinearPoly.zero(2)) is None

    def test_deg2_full_iff_odd_support_exhaustive_n2(self):
        for value in range(0, 1 << 16, 257):  # every 257th table, incl. 0
            t = table_from_bits(2, value)
            p = interpolate(t)
            full = deg2(p) == 4
            assert full == (bin(value).count("1") % 2 == 1), value

    def test_deg2_full_iff_odd_support_random_n3(self):
        rng = np.random.default_rng(19)
        for _ in range(30):
            bits = rng.integers(0, 2, size=512).astype(np.uint8)
            p = interpolate(TruthTable(3, bits))
            assert (deg2(p) == 9) == (int(bits.sum()) % 2 == 1)


class TestCountsNorms:
    def test_bpm2(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        assert monomial_count(p) == 3
        assert l1_norm(p) == 3

    def test_empty(self):
        assert monomial_count(MultilinearPoly.zero(2)) == 0
        assert l1_norm(MultilinearPoly.zero(2)) == 0

    def test_mixed(self):
        p = MultilinearPoly.from_terms(2, {0: -2, 3: 5})
        assert monomial_count(p) == 2
        assert l1_norm(p) == 7


class TestRendering:
    def test_text_is_degree_then_mask_sorted(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        assert to_text(p) == ("+ x_{1,2} x_{2,1}\n"
                              "+ x_{1,1} x_{2,2}\n"
                              "- x_{1,1} x_{1,2} x_{2,1} x_{2,2}\n")

    def test_text_zero(self):
        assert to_text(MultilinearPoly.zero(2)) == "0\n"

    def test_text_magnitudes_and_constant(self):
        p = MultilinearPoly.from_terms(2, {0: -3, 0b1: 2})
        assert to_text(p) == "- 3\n+ 2 x_{1,1}\n"

    def test_dyadic_text(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        lines = to_text(to_fourier(p)).splitlines()
        assert lines[0] == "+ 1/8"

    def test_json_shape(self):
        p = MultilinearPoly.from_terms(2, BPM2_TERMS)
        doc = to_json_dict(p, "primal")
        assert doc["n"] == 2 and doc["basis"] == "primal"
        assert [t["mask"] for t in doc["terms"]] == ["0x6", "0x9", "0xf"]
        assert doc["terms"][1]["edges"] == [[1, 1], [2, 2]]
        assert "shared_exponent" not in doc

    def test_json_fourier_shape(self):
        f = to_fourier(MultilinearPoly.from_terms(2, BPM2_TERMS))
        doc = to_json_dict(f, "fourier")
        assert doc["shared_exponent"] == f.shared_exponent
        assert doc["terms"][0]["mask"] == "0x0"


class TestValidation:
    def test_zero_coefficients_rejected(self):
        with pytest.raises(ValueError):
            MultilinearPoly(2, np.array([1]), np.array([0]))

    def test_unsorted_masks_rejected(self):
        with pytest.raises(ValueError):
            MultilinearPoly(2, np.array([3, 1]), np.array([1, 1]))

    def test_out_of_range_mask_rejected(self):
        with pytest.raises(ValueError):
            MultilinearPoly(2, np.array([16]), np.array([1]))

    def test_from_terms_drops_zeros(self):
        p = MultilinearPoly.from_terms(2, {1: 0, 2: 5})
        assert p.terms == {2: 5}
