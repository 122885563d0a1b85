"""
アフィン写像モデル

𝔽_p 上の可逆なアフィン写像 x ↦ rx + s（AffineMap）と、
そのハッシュ値 (r + s, s)（HashOutput）のPydanticモデルを定義します。
"""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.exceptions import ValidationError
from src.data_models.field_models import FieldElement, PrimeModulus, parse_int_text


class AffineMap(BaseModel):
    """𝔽_p 上の可逆なアフィン写像 x ↦ rx + s（行列 [[r, s], [0, 1]]）"""
    r: FieldElement = Field(..., description="線形係数（0 以外）")
    s: FieldElement = Field(..., description="定数項")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_map(self):
        if self.r.modulus.p != self.s.modulus.p:
            raise ValueError('r and s must share one modulus')
        if self.r.value == 0:
            raise ValueError('linear coefficient r must be nonzero')
        return self

    @classmethod
    def of(cls, r: int, s: int, modulus: PrimeModulus) -> "AffineMap":
        return cls(r=modulus.element(r), s=modulus.element(s))

    @classmethod
    def identity(cls, modulus: PrimeModulus) -> "AffineMap":
        return cls.of(1, 0, modulus)

    @property
    def modulus(self) -> PrimeModulus:
        return self.r.modulus

    def pair(self) -> Tuple[int, int]:
        return self.r.value, self.s.value

    def __call__(self, x: int) -> int:
        return (self.r.value * x + self.s.value) % self.modulus.p

    def render(self) -> str:
        return f"{self.r.value},{self.s.value}"

    def render_hex(self) -> str:
        return f"{self.r.value:x},{self.s.value:x}"

    @classmethod
    def parse(cls, text: str, modulus: PrimeModulus) -> "AffineMap":
        """r,s 形式（10進または 0x 16進）を解析する"""
        r, s = _parse_pair(text)
        if not (0 <= r < modulus.p and 0 <= s < modulus.p):
            raise ValidationError("map components must lie in [0, p)", {"input": text})
        if r == 0:
            raise ValidationError("linear coefficient r must be nonzero", {"input": text})
        return cls.of(r, s, modulus)

    def __str__(self) -> str:
        return f"({self.render()})"


class HashOutput(BaseModel):
    """アフィン写像 (r, s) のハッシュ値 (r + s, s)"""
    first: FieldElement = Field(..., description="r + s mod p")
    second: FieldElement = Field(..., description="定数項 s")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_output(self):
        if self.first.modulus.p != self.second.modulus.p:
            raise ValueError('first and second must share one modulus')
        return self

    @classmethod
    def of(cls, first: int, second: int, modulus: PrimeModulus) -> "HashOutput":
        return cls(first=modulus.element(first), second=modulus.element(second))

    @property
    def modulus(self) -> PrimeModulus:
        return self.first.modulus

    def pair(self) -> Tuple[int, int]:
        return self.first.value, self.second.value

    def render(self) -> str:
        return f"{self.first.value},{self.second.value}"

    def render_hex(self) -> str:
        return f"{self.first.value:x},{self.second.value:x}"

    @classmethod
    def parse(cls, text: str, modulus: PrimeModulus) -> "HashOutput":
        """first,second 形式を解析する"""
        first, second = _parse_pair(text)
        if not (0 <= first < modulus.p and 0 <= second < modulus.p):
            raise ValidationError("digest components must lie in [0, p)", {"input": text})
        return cls.of(first, second, modulus)

    def __str__(self) -> str:
        return self.render()


def _parse_pair(text: str) -> Tuple[int, int]:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2:
        raise ValidationError("expected two comma-separated integers", {"input": text})
    try:
        return parse_int_text(parts[0]), parse_int_text(parts[1])
    except ValueError:
        raise ValidationError("expected two comma-separated integers", {"input": text})
