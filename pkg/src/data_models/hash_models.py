"""
ハッシュモデル

入力ビット列（BitString）とハッシュパラメータ（HashParams）を定義します。
"""

from typing import Iterator, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.exceptions import ValidationError
from src.data_models.affine_models import AffineMap
from src.data_models.field_models import PrimeModulus


class BitString(BaseModel):
    """記号 0/1 の順序付き列"""
    bits: str = Field(default="", pattern=r"^[01]*$", description="'0'/'1' の文字列")

    model_config = ConfigDict(frozen=True)

    @classmethod
    def of(cls, bits: str) -> "BitString":
        return cls(bits=bits)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        """value を length ビットのビッグエンディアンで表す"""
        if value < 0 or value.bit_length() > length:
            raise ValidationError("value does not fit in the requested width", {"value": value, "length": length})
        return cls(bits=format(value, "b").zfill(length) if length else "")

    @classmethod
    def parse(cls, text: str) -> "BitString":
        """'0'/'1' テキストまたは "len:hex" 形式を解析"""
        text = text.strip()
        if ":" in text:
            length_text, hex_text = text.split(":", 1)
            try:
                length = int(length_text)
                value = int(hex_text, 16) if hex_text else 0
            except ValueError:
                raise ValidationError("malformed len:hex message", {"input": text[:64]})
            if length < 0:
                raise ValidationError("negative message length", {"input": text[:64]})
            return cls.from_int(value, length)
        if text.strip("01"):
            raise ValidationError("message must contain only '0' and '1'", {"input": text[:64]})
        return cls(bits=text)

    def to_int(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    def to_hex(self) -> str:
        """"len:hex" 形式"""
        return f"{len(self.bits)}:{self.to_int():x}"

    def count_zeros(self) -> int:
        return self.bits.count("0")

    def count_ones(self) -> int:
        return self.bits.count("1")

    def split_counts(self) -> Tuple[int, int]:
        return self.count_zeros(), self.count_ones()

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:  # type: ignore[override]
        return (1 if ch == "1" else 0 for ch in self.bits)

    def __getitem__(self, item) -> "BitString":
        return BitString(bits=self.bits[item])

    def __add__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString(bits=self.bits + other.bits)

    def __xor__(self, other: "BitString") -> "BitString":
        if not isinstance(other, BitString):
            return NotImplemented
        if len(self) != len(other):
            raise ValidationError("xor operands must have equal length", {"left": len(self), "right": len(other)})
        if not self.bits:
            return BitString()
        value = self.to_int() ^ other.to_int()
        return BitString.from_int(value, len(self))

    def __str__(self) -> str:
        return self.bits


class HashParams(BaseModel):
    """H, H₂, Ĥ, Ĥ₂ の評価に必要なパラメータ (p, t, g, c_rnd)"""
    p: PrimeModulus = Field(..., description="法")
    t: int = Field(..., description="g 挿入周期（t > 1）")
    g: AffineMap = Field(..., description="挿入する群元 g ∈ G \\ {e, f0, f1}")
    c_rnd: BitString = Field(..., description="長さ 2⌈log₂ p⌉ の定数ビット列")
    g_word: Optional[BitString] = Field(None, description="g = H(g_word) として与えられた場合の語")

    model_config = ConfigDict(frozen=True)

    @field_validator('t')
    @classmethod
    def validate_t(cls, v):
        if v <= 1:
            raise ValueError('t must be an integer greater than 1')
        return v

    @model_validator(mode='after')
    def validate_params(self):
        p = self.p.p
        if self.g.modulus.p != p:
            raise ValueError('g must be defined over the same modulus as p')
        if self.g.pair() in ((1, 0), (2, 1), (3, 1)):
            raise ValueError('g must differ from the identity, f0 and f1')
        expected = 2 * self.p.bit_length
        if len(self.c_rnd) != expected:
            raise ValueError(f'c_rnd must have length {expected}, got {len(self.c_rnd)}')
        return self

    @property
    def width(self) -> int:
        """符号化の1成分あたりのビット幅"""
        return self.p.bit_length


class OperationCounter(BaseModel):
    """計測用の演算カウンタ（乗算・加算・表参照）"""
    multiplications: int = Field(default=0, description="体の乗算回数")
    additions: int = Field(default=0, description="体の加減算回数")
    lookups: int = Field(default=0, description="ソート済み表の探索回数")

    def record(self, multiplications: int = 0, additions: int = 0, lookups: int = 0) -> None:
        self.multiplications += multiplications
        self.additions += additions
        self.lookups += lookups

    @property
    def total(self) -> int:
        return self.multiplications + self.additions + self.lookups
