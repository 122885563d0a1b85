"""
ハッシュサービスのテストモジュール

H, H₂, Ĥ, Ĥ₂ の値、準同型性、位置法則、乗算回数、
分割評価、パディング、パラメータ構築を検証します。
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.config.lab_config import LabSettings
from src.core.exceptions import ValidationError
from src.data_models.affine_models import AffineMap
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams, OperationCounter
from src.services.affine_group_service import compose, encode_bits, to_output
from src.services.hash_service import (
    HASH_FUNCTIONS,
    build_hash_params,
    default_c_rnd,
    hash_H,
    hash_H2,
    hash_hatH,
    hash_hatH2,
    hatH_multiplication_count,
    multiplication_count,
    pad_short_message,
    parallel_hash_hatH,
    parallel_product_map,
    parse_c_rnd,
    product_map,
    shifted_hat_product,
)
from src.services.oracle_service import naive_hash, naive_hatH

P1009 = PrimeModulus(p=1009)
PARAMS_1009 = {
    t: HashParams(p=P1009, t=t, g=AffineMap.of(123, 456, P1009), c_rnd=default_c_rnd(P1009))
    for t in (2, 3, 5, 8)
}

bit_strings = st.text(alphabet="01", max_size=40).map(lambda bits: BitString(bits=bits))
periods = st.sampled_from(sorted(PARAMS_1009))


class TestHashH:
    """H のテストクラス"""

    @pytest.mark.parametrize("bits,pair", [("", (1, 0)), ("01", (6, 3)), ("0110", (36, 27))])
    def test_product_map(self, p101, bits, pair):
        assert product_map(BitString(bits=bits), p101).pair() == pair

    @pytest.mark.parametrize("bits,pair", [("", (1, 0)), ("01", (9, 3)), ("10", (10, 4)), ("0110", (63, 27))])
    def test_hash_H(self, p101, bits, pair):
        assert hash_H(BitString(bits=bits), p101).pair() == pair

    def test_balanced_four_bit_words_do_not_collide(self, p101):
        words = ["0011", "0101", "0110", "1001", "1010", "1100"]
        seconds = sorted(product_map(BitString(bits=w), p101).s.value for w in words)
        assert seconds == [19, 21, 22, 27, 28, 31]

    @given(bit_strings, bit_strings)
    def test_concatenation_homomorphism(self, x, y):
        assert product_map(x + y, P1009) == compose(product_map(x, P1009), product_map(y, P1009))

    @given(bit_strings)
    def test_exponent_law(self, m):
        zeros, ones = m.split_counts()
        assert product_map(m, P1009).r.value == (pow(2, zeros, 1009) * pow(3, ones, 1009)) % 1009

    @given(bit_strings)
    def test_matches_naive_oracle(self, m):
        assert hash_H(m, P1009) == naive_hash(m, P1009)


class TestMultiplicationCount:
    """乗算回数のテストクラス"""

    @pytest.mark.parametrize("length", [0, 1, 100, 323])
    def test_at_most_two_per_bit(self, p101, length):
        m = BitString(bits="01" * (length // 2) + "1" * (length % 2))
        count = multiplication_count(m, p101)
        assert count <= 2 * length
        assert count == length

    def test_default_modulus(self):
        assert multiplication_count(BitString(bits="0110")) == 4

    def test_counter_records_additions(self, p101):
        counter = OperationCounter()
        hash_H(BitString(bits="011"), p101, counter)
        assert counter.additions == 3

    def test_counter_accumulates(self, p101):
        counter = OperationCounter()
        hash_H(BitString(bits="011"), p101, counter)
        hash_H(BitString(bits="01"), p101, counter)
        assert (counter.multiplications, counter.additions) == (5, 5)

    def test_hatH_costs_extra_per_insertion(self, params101):
        m = BitString(bits="0110101")
        assert hatH_multiplication_count(m, params101) == 7 + 2 * 3

    def test_shift_moves_insertions(self, params101):
        """t=2: 位置 1..3 では g が1回、位置 2..4 では2回入る"""
        m = BitString(bits="011")
        unshifted, shifted = OperationCounter(), OperationCounter()
        shifted_hat_product(m, params101, 0, unshifted)
        shifted_hat_product(m, params101, 1, shifted)
        assert (unshifted.multiplications, unshifted.additions) == (3 + 2, 3 + 1)
        assert (shifted.multiplications, shifted.additions) == (3 + 4, 3 + 2)

    @given(bit_strings, periods)
    def test_hatH_count_tracks_insertions(self, m, t):
        counter = OperationCounter()
        hash_hatH(m, PARAMS_1009[t], counter)
        insertions = len(m) // t
        assert counter.multiplications == len(m) + 2 * insertions
        assert counter.additions == len(m) + insertions

    def test_segmented_count_includes_folding(self, p101):
        m = BitString(bits="0110100111010001101")
        counter = OperationCounter()
        parallel_product_map(m, p101, segments=3, workers=1, counter=counter)
        assert counter.multiplications == len(m) + 2 * 3
        assert counter.additions == len(m) + 3

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [10**3, 10**6])
    def test_bound_at_acceptance_sizes(self, safe_p512, n):
        rng = np.random.default_rng(n)
        m = BitString(bits="".join("1" if bit else "0" for bit in rng.integers(0, 2, size=n)))
        counter = OperationCounter()
        hash_H(m, safe_p512, counter)
        assert counter.multiplications <= 2 * n
        assert counter.additions <= 2 * n


class TestHashH2:
    """H₂ のテストクラス"""

    def test_zero_c_rnd(self, p101, zero_c_rnd_params101):
        m = BitString(bits="01")
        expected = hash_H(m + encode_bits(AffineMap.of(6, 3, p101)), p101)
        assert hash_H2(m, zero_c_rnd_params101) == expected

    def test_empty_message(self, p101, params101):
        suffix = encode_bits(AffineMap.identity(p101)) ^ params101.c_rnd
        assert hash_H2(BitString(), params101) == hash_H(suffix, p101)

    def test_deterministic(self, params101):
        m = BitString(bits="0110")
        assert hash_H2(m, params101) == hash_H2(m, params101)


class TestHatH:
    """Ĥ と Ĥ₂ のテストクラス"""

    def test_values(self, p101, params101):
        assert hash_hatH(BitString(bits="10"), params101).pair() == (36, 22)
        assert hash_hatH(BitString(bits="0"), params101).pair() == (2, 1)
        assert hash_hatH(BitString(), params101) == AffineMap.identity(p101)

    def test_short_message_equals_plain_product(self, p101):
        params = HashParams(p=p101, t=8, g=AffineMap.of(6, 3, p101), c_rnd=default_c_rnd(p101))
        m = BitString(bits="0110100")
        assert hash_hatH(m, params) == product_map(m, p101)

    @given(bit_strings, periods)
    def test_matches_naive_oracle(self, m, t):
        params = PARAMS_1009[t]
        assert hash_hatH(m, params) == naive_hatH(m, params)

    @given(bit_strings, bit_strings, periods)
    def test_positional_law(self, x, y, t):
        params = PARAMS_1009[t]
        expected = compose(hash_hatH(x, params), shifted_hat_product(y, params, len(x)))
        assert hash_hatH(x + y, params) == expected

    def test_shift_is_taken_mod_t(self, params101):
        m = BitString(bits="0110")
        assert shifted_hat_product(m, params101, 5) == shifted_hat_product(m, params101, 1)

    def test_negative_shift(self, params101):
        with pytest.raises(ValidationError, match="non-negative"):
            shifted_hat_product(BitString(bits="0"), params101, -1)

    def test_hatH2_zero_c_rnd(self, zero_c_rnd_params101):
        m = BitString(bits="10")
        expected = hash_hatH(m + encode_bits(AffineMap.of(36, 22, zero_c_rnd_params101.p)), zero_c_rnd_params101)
        assert hash_hatH2(m, zero_c_rnd_params101) == expected

    def test_hatH2_empty_message(self, p101, zero_c_rnd_params101):
        expected = hash_hatH(encode_bits(AffineMap.identity(p101)), zero_c_rnd_params101)
        assert hash_hatH2(BitString(), zero_c_rnd_params101) == expected

    @settings(max_examples=50)
    @given(bit_strings, periods)
    def test_hatH2_definition(self, m, t):
        params = PARAMS_1009[t]
        suffix = encode_bits(hash_hatH(m, params)) ^ params.c_rnd
        assert hash_hatH2(m, params) == hash_hatH(m + suffix, params)


class TestParallel:
    """分割評価のテストクラス"""

    @pytest.mark.parametrize("segments", [1, 2, 3, 7, 64])
    def test_segmented_product_equals_sequential(self, p101, segments):
        m = BitString(bits="0110100111010001101")
        assert parallel_product_map(m, p101, segments=segments, workers=1) == product_map(m, p101)

    @pytest.mark.parametrize("segments", [1, 3, 5])
    def test_segmented_hatH_equals_sequential(self, segments):
        params = PARAMS_1009[3]
        m = BitString(bits="01101001110100011010111")
        assert parallel_hash_hatH(m, params, segments=segments, workers=1) == hash_hatH(m, params)

    def test_empty_message(self, p101):
        assert parallel_product_map(BitString(), p101, workers=1) == AffineMap.identity(p101)

    def test_process_pool(self, p36):
        m = BitString(bits="0110100111" * 40)
        assert parallel_product_map(m, p36, segments=4, workers=2) == product_map(m, p36)


class TestPadding:
    """パディングのテストクラス"""

    def test_short_message_is_padded(self):
        padded = pad_short_message(BitString(bits="0110"))
        assert len(padded) == 512
        assert padded.bits.startswith("01101")
        assert padded.bits[5:] == "0" * 507

    def test_threshold_boundary(self):
        assert len(pad_short_message(BitString(bits="1" * 323))) == 512
        long_message = BitString(bits="1" * 324)
        assert pad_short_message(long_message) == long_message

    def test_pad_length_too_small(self):
        with pytest.raises(ValidationError, match="pad length"):
            pad_short_message(BitString(bits="0110"), threshold=10, length=4)


class TestParameters:
    """パラメータ構築のテストクラス"""

    def test_default_c_rnd(self, p101):
        c_rnd = default_c_rnd(p101)
        assert len(c_rnd) == 14
        # √2 = 1.0110101000001001111...
        assert c_rnd.bits == "01101010000010"

    def test_parse_c_rnd(self, p101):
        assert parse_c_rnd("", p101) == default_c_rnd(p101)
        assert parse_c_rnd("0x3", p101).bits == "0" * 12 + "11"
        with pytest.raises(ValidationError, match="hexadecimal"):
            parse_c_rnd("xyz", p101)
        with pytest.raises(ValidationError, match="does not fit"):
            parse_c_rnd("ffff", p101)

    def test_build_from_g_pair(self):
        params = build_hash_params(LabSettings(p="101", t=2, g_word=None, g_r=6, g_s=3))
        assert params.g.pair() == (6, 3)
        assert params.g_word is None

    def test_build_from_g_word(self):
        params = build_hash_params(LabSettings(p="101", t=2, g_word="0110"))
        assert params.g.pair() == (36, 27)
        assert params.g_word.bits == "0110"

    def test_build_from_g_inverse_word(self):
        params = build_hash_params(LabSettings(p="101", t=2, g_word=None, g_inverse_word="01"))
        assert params.g.pair() == (17, 50)

    def test_build_requires_g(self):
        with pytest.raises(ValidationError, match="g must be given"):
            build_hash_params(LabSettings(p="101", g_word=None))

    def test_build_rejects_generator_as_g(self):
        with pytest.raises(ValidationError, match="invalid hash parameters"):
            build_hash_params(LabSettings(p="101", g_word="0"))

    def test_build_rejects_zero_g_r(self):
        with pytest.raises(ValidationError, match="nonzero"):
            build_hash_params(LabSettings(p="101", g_word=None, g_r=101, g_s=3))

    def test_default_settings(self):
        params = build_hash_params(LabSettings())
        assert params.p.p == 2**521 - 1
        assert len(params.c_rnd) == 2 * 521

    def test_hash_functions_table(self, params101):
        m = BitString(bits="10")
        assert HASH_FUNCTIONS["H"](m, params101) == to_output(product_map(m, params101.p))
        assert HASH_FUNCTIONS["hatH"](m, params101).pair() == (36, 22)
        assert set(HASH_FUNCTIONS) == {"H", "H2", "hatH", "hatH2"}
