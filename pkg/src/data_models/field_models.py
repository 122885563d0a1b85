"""
素体モデル

奇素数 p を法とする剰余（FieldElement）と、その法（PrimeModulus）の
Pydanticモデルを定義します。全ての値は構築後に不変です。
"""

from typing import Any

import gmpy2
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.exceptions import ModulusMismatchError, NotInvertibleError

MILLER_RABIN_ROUNDS = 64


def parse_int_text(value: Any) -> Any:
    """10進または 0x 付き16進の文字列を整数にする（それ以外はそのまま返す）"""
    if isinstance(value, str):
        text = value.strip().replace("_", "")
        try:
            return int(text, 16) if text.lower().startswith("0x") else int(text, 10)
        except ValueError:
            raise ValueError(f"not a decimal or 0x-hex integer: {value!r}")
    return value


class PrimeModulus(BaseModel):
    """奇素数の法 p（p > 3）。構築時に一度だけ素数判定する。"""
    p: int = Field(..., description="奇素数 p >= 5")

    model_config = ConfigDict(frozen=True)

    @field_validator('p', mode='before')
    @classmethod
    def parse_p(cls, v):
        return parse_int_text(v)

    @field_validator('p')
    @classmethod
    def validate_prime(cls, v):
        if v < 5:
            raise ValueError('p must be a prime greater than 3')
        if not gmpy2.is_prime(v, MILLER_RABIN_ROUNDS):
            raise ValueError(f'p is not prime: {v}')
        return v

    @property
    def bit_length(self) -> int:
        """⌈log₂ p⌉（p は2の冪ではないので p.bit_length() と一致）"""
        return self.p.bit_length()

    def element(self, value: int) -> "FieldElement":
        """整数を標準代表元 [0, p) に簡約して FieldElement を作る"""
        return FieldElement(value=value % self.p, modulus=self)

    def __int__(self) -> int:
        return self.p


class FieldElement(BaseModel):
    """𝔽_p の元。value は常に標準代表元 0 <= value < p。"""
    value: int = Field(..., description="標準代表元")
    modulus: PrimeModulus = Field(..., description="法")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_canonical(self):
        if not 0 <= self.value < self.modulus.p:
            raise ValueError(f'value {self.value} is not a canonical residue mod {self.modulus.p}')
        return self

    @property
    def p(self) -> int:
        return self.modulus.p

    def _coerce(self, other: Any) -> int:
        if isinstance(other, FieldElement):
            if other.modulus.p != self.modulus.p:
                raise ModulusMismatchError(details={"left": self.modulus.p, "right": other.modulus.p})
            return other.value
        if isinstance(other, int):
            return other % self.modulus.p
        return NotImplemented

    def __add__(self, other: Any) -> "FieldElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        total = self.value + v
        if total >= self.modulus.p:
            total -= self.modulus.p
        return FieldElement(value=total, modulus=self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        diff = self.value - v
        if diff < 0:
            diff += self.modulus.p
        return FieldElement(value=diff, modulus=self.modulus)

    def __rsub__(self, other: Any) -> "FieldElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "FieldElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(value=(self.value * v) % self.modulus.p, modulus=self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(value=(-self.value) % self.modulus.p, modulus=self.modulus)

    def __pow__(self, exp: int) -> "FieldElement":
        if exp < 0:
            return self.inverse() ** (-exp)
        return FieldElement(value=int(gmpy2.powmod(self.value, exp, self.modulus.p)), modulus=self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise NotInvertibleError(details={"p": self.modulus.p})
        return FieldElement(value=int(gmpy2.invert(self.value, self.modulus.p)), modulus=self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)
