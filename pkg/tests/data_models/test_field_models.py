"""
素体モデルのテストモジュール

PrimeModulus の素数判定と FieldElement の演算を検証します。
"""

import pytest
from pydantic import ValidationError as PydanticValidationError

from src.core.exceptions import ModulusMismatchError, NotInvertibleError
from src.data_models.field_models import FieldElement, PrimeModulus, parse_int_text


class TestPrimeModulus:
    """PrimeModulus のテストクラス"""

    @pytest.mark.parametrize("text", [101, "101", "0x65", " 1_01 "])
    def test_accepts_decimal_and_hex(self, text):
        assert PrimeModulus(p=text).p == 101

    @pytest.mark.parametrize("value", [100, 91, 2**61 + 1])
    def test_rejects_composites(self, value):
        with pytest.raises(PydanticValidationError, match="not prime"):
            PrimeModulus(p=value)

    @pytest.mark.parametrize("value", [2, 3, 1, -7])
    def test_rejects_small_values(self, value):
        with pytest.raises(PydanticValidationError, match="greater than 3"):
            PrimeModulus(p=value)

    def test_rejects_garbage_text(self):
        with pytest.raises(PydanticValidationError):
            PrimeModulus(p="zz")

    def test_bit_length(self):
        assert PrimeModulus(p=101).bit_length == 7
        assert PrimeModulus(p=2**127 - 1).bit_length == 127

    def test_element_reduces(self, p101):
        assert p101.element(205).value == 3
        assert p101.element(-1).value == 100


class TestFieldElement:
    """FieldElement のテストクラス"""

    def test_non_canonical_value_rejected(self, p101):
        with pytest.raises(PydanticValidationError, match="canonical"):
            FieldElement(value=101, modulus=p101)

    def test_arithmetic(self, p101):
        a, b = p101.element(6), p101.element(100)
        assert (a + b).value == 5
        assert (p101.element(3) - 5).value == 99
        assert (a * 17).value == 1
        assert (-a).value == 95
        assert (7 - a).value == 1
        assert (2 * a).value == 12

    def test_power(self, p101):
        assert (p101.element(2) ** 10).value == 14
        assert (p101.element(2) ** 0).value == 1
        assert (p101.element(2) ** -1).value == 51

    def test_inverse(self, p101):
        assert p101.element(6).inverse().value == 17
        assert p101.element(3).inverse().value == 34

    def test_zero_not_invertible(self, p101):
        with pytest.raises(NotInvertibleError):
            p101.element(0).inverse()

    def test_modulus_mismatch(self, p101):
        other = PrimeModulus(p=103).element(1)
        with pytest.raises(ModulusMismatchError):
            p101.element(1) + other

    def test_is_zero_and_int(self, p101):
        assert p101.element(101).is_zero()
        assert int(p101.element(42)) == 42
        assert str(p101.element(42)) == "42"

    def test_frozen(self, p101):
        element = p101.element(5)
        with pytest.raises(PydanticValidationError):
            element.value = 6


def test_parse_int_text():
    assert parse_int_text("0xff") == 255
    assert parse_int_text("255") == 255
    assert parse_int_text(7) == 7
    with pytest.raises(ValueError, match="not a decimal"):
        parse_int_text("0xzz")
