"""
素体演算サービス

𝔽_p 上の冪乗・逆元、安全素数判定、素数の解析と生成を提供します。
p ≈ 2^512 を想定しているため、全て任意精度整数で計算します。
"""

import logging
from typing import Optional, Union

import gmpy2
import numpy as np

from src.core.exceptions import ValidationError
from src.data_models.field_models import MILLER_RABIN_ROUNDS, FieldElement, PrimeModulus

logger = logging.getLogger(__name__)


def mod_pow(base: FieldElement, exp: int) -> FieldElement:
    """base^exp mod p

    Args:
        base: 底
        exp: 非負の指数（0 なら 1 を返す）

    Returns:
        FieldElement: base^exp
    """
    if exp < 0:
        raise ValidationError("exponent must be non-negative", {"exp": exp})
    return base ** exp


def mod_inv(a: FieldElement) -> FieldElement:
    """a^-1 mod p

    Raises:
        NotInvertibleError: a = 0 の場合
    """
    return a.inverse()


def is_probable_prime(n: int) -> bool:
    """64ラウンドの Miller-Rabin 判定"""
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n, MILLER_RABIN_ROUNDS))


def is_safe_prime(p: int) -> bool:
    """p と (p-1)/2 が共に素数なら True"""
    if p < 5 or p % 2 == 0:
        return False
    return is_probable_prime(p) and is_probable_prime((p - 1) // 2)


def parse_prime(text: Union[str, int]) -> PrimeModulus:
    """10進数または0x接頭辞の16進数テキストから PrimeModulus を構築

    Raises:
        ValidationError: 整数として読めない、または素数でない場合
    """
    try:
        modulus = PrimeModulus(p=text)
    except ValueError as e:
        raise ValidationError("invalid prime modulus", {"input": str(text), "error": str(e)})
    if not is_safe_prime(modulus.p):
        logger.debug(f"Modulus {modulus.p} is not a safe prime")
    return modulus


def next_prime(n: int) -> int:
    """n より大きい最小の素数"""
    return int(gmpy2.next_prime(n))


def _random_odd(bits: int, rng: np.random.Generator) -> int:
    """最上位ビットが立った bits ビットのランダムな奇数"""
    raw = int.from_bytes(rng.bytes((bits + 7) // 8), "big")
    raw &= (1 << bits) - 1
    return raw | (1 << (bits - 1)) | 1


def generate_prime(bits: int, seed: Optional[int] = 0) -> int:
    """シードから再現可能な bits ビットの素数を生成"""
    if bits < 3:
        raise ValidationError("prime must have at least 3 bits", {"bits": bits})
    rng = np.random.default_rng(seed)
    while True:
        candidate = next_prime(_random_odd(bits, rng) - 1)
        if candidate.bit_length() == bits and candidate > 3:
            return candidate


def generate_safe_prime(bits: int, seed: Optional[int] = 0) -> int:
    """シードから再現可能な bits ビットの安全素数 p = 2q + 1 を生成"""
    if bits < 3:
        raise ValidationError("safe prime must have at least 3 bits", {"bits": bits})
    if bits == 3:
        return 7
    rng = np.random.default_rng(seed)
    attempts = 0
    while True:
        q = next_prime(_random_odd(bits - 1, rng) - 1)
        attempts += 1
        p = 2 * q + 1
        if p.bit_length() == bits and is_probable_prime(p):
            logger.info(f"Found {bits}-bit safe prime after {attempts} candidate q values")
            return p
