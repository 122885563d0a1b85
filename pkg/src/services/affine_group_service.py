"""
アフィン群サービス

𝔽_p 上の可逆アフィン写像 x ↦ rx+s の合成・逆元・生成元と、
ハッシュ出力 (r+s, s) およびビット列への固定幅符号化を提供します。
"""

import logging

from src.core.exceptions import ModulusMismatchError, NotAnImageError, NotInvertibleError, ValidationError
from src.data_models.affine_models import AffineMap, HashOutput
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString

logger = logging.getLogger(__name__)

GENERATOR_COEFFICIENTS = {0: 2, 1: 3}


def generator(bit: int, modulus: PrimeModulus) -> AffineMap:
    """生成元 f0(x)=2x+1, f1(x)=3x+1"""
    if bit not in GENERATOR_COEFFICIENTS:
        raise ValidationError("generator index must be 0 or 1", {"bit": bit})
    return AffineMap.of(GENERATOR_COEFFICIENTS[bit], 1, modulus)


def compose(left: AffineMap, right: AffineMap) -> AffineMap:
    """行列積 [[rL,sL],[0,1]]·[[rR,sR],[0,1]] = (rL·rR, rL·sR + sL)"""
    p = left.modulus.p
    if right.modulus.p != p:
        raise ModulusMismatchError(details={"left": p, "right": right.modulus.p})
    r_l, s_l = left.pair()
    r_r, s_r = right.pair()
    return AffineMap.of(r_l * r_r, r_l * s_r + s_l, left.modulus)


def inverse(a: AffineMap) -> AffineMap:
    """(r⁻¹, −r⁻¹·s)"""
    r_inv = a.r.inverse()
    return AffineMap(r=r_inv, s=-(r_inv * a.s))


def to_output(a: AffineMap) -> HashOutput:
    return HashOutput(first=a.r + a.s, second=a.s)


def from_output(o: HashOutput) -> AffineMap:
    """(first − second, second) に復号

    Raises:
        NotAnImageError: 線形部分が 0 になる場合
    """
    r = o.first - o.second
    if r.is_zero():
        raise NotAnImageError("not a valid hash output", {"output": o.render()})
    return AffineMap(r=r, s=o.second)


def encode_bits(a: AffineMap) -> BitString:
    """r ∥ s を各 ⌈log₂ p⌉ ビットのビッグエンディアンで連結"""
    width = a.modulus.bit_length
    r, s = a.pair()
    return BitString.from_int((r << width) | s, 2 * width)


def decode_bits(b: BitString, modulus: PrimeModulus) -> AffineMap:
    """encode_bits の逆変換

    Raises:
        ValidationError: 長さが 2⌈log₂ p⌉ でない、成分が p 以上、または r = 0 の場合
    """
    width = modulus.bit_length
    if len(b) != 2 * width:
        raise ValidationError(
            "encoded map has the wrong length",
            {"expected": 2 * width, "actual": len(b)},
        )
    value = b.to_int()
    r, s = value >> width, value & ((1 << width) - 1)
    if r >= modulus.p or s >= modulus.p:
        raise ValidationError("encoded component out of range", {"r": r, "s": s, "p": modulus.p})
    if r == 0:
        raise NotInvertibleError("encoded map has zero linear part", {"bits": b.to_hex()})
    return AffineMap.of(r, s, modulus)


def xor_bits(a: BitString, b: BitString) -> BitString:
    return a ^ b
