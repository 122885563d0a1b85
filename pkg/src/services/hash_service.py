"""
ハッシュサービス

アフィン写像の Cayley ハッシュ H, H₂ と、g を周期 t で挿入する変種 Ĥ, Ĥ₂ を評価します。

積は左から右への行列積 A_{b1}·A_{b2}⋯A_{bk} で、1ビットあたり
s ← s + r, r ← r·c（c ∈ {2, 3}）の乗算1回と加算1回で更新します。
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple, Union

import gmpy2

from src.config.lab_config import LabSettings
from src.core.exceptions import ValidationError
from src.data_models.affine_models import AffineMap, HashOutput
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams, OperationCounter
from src.services.affine_group_service import compose, encode_bits, inverse, to_output
from src.services.field_service import parse_prime

logger = logging.getLogger(__name__)

_GENERATOR_R = {"0": 2, "1": 3}


def _product_pair(bits: str, p: int) -> Tuple[int, int, int, int]:
    """生成元の積の (r, s) と、実際に行った乗算・加算の回数を返す"""
    p = gmpy2.mpz(p)
    r, s = gmpy2.mpz(1), gmpy2.mpz(0)
    multiplications = additions = 0
    for ch in bits:
        s = (s + r) % p
        additions += 1
        r = (r * _GENERATOR_R[ch]) % p
        multiplications += 1
    return int(r), int(s), multiplications, additions


def _hat_product_pair(bits: str, p: int, t: int, g_r: int, g_s: int, shift: int) -> Tuple[int, int, int, int]:
    """位置 shift+1 から始まる Ĥ の積と演算回数。t | i の位置で g を右から掛ける"""
    p = gmpy2.mpz(p)
    r, s = gmpy2.mpz(1), gmpy2.mpz(0)
    multiplications = additions = 0
    position = shift
    for ch in bits:
        s = (s + r) % p
        additions += 1
        r = (r * _GENERATOR_R[ch]) % p
        multiplications += 1
        position += 1
        if position % t == 0:
            s = (r * g_s + s) % p
            r = (r * g_r) % p
            multiplications += 2
            additions += 1
    return int(r), int(s), multiplications, additions


def product_map(m: BitString, p: PrimeModulus, counter: Optional[OperationCounter] = None) -> AffineMap:
    """生成元の左から右への積。空列は単位元 (1, 0)"""
    r, s, multiplications, additions = _product_pair(m.bits, p.p)
    if counter is not None:
        counter.record(multiplications=multiplications, additions=additions)
    return AffineMap.of(r, s, p)


def hash_H(m: BitString, p: PrimeModulus, counter: Optional[OperationCounter] = None) -> HashOutput:
    """H(m) = (r+s, s)"""
    return to_output(product_map(m, p, counter))


def hash_H2(m: BitString, params: HashParams) -> HashOutput:
    """H₂(m) = H(m ∥ (encode(H(m)) ⊕ c_rnd))"""
    head = product_map(m, params.p)
    suffix = encode_bits(head) ^ params.c_rnd
    return to_output(compose(head, product_map(suffix, params.p)))


def shifted_hat_product(
    m: BitString,
    params: HashParams,
    shift: int = 0,
    counter: Optional[OperationCounter] = None,
) -> AffineMap:
    """m の先頭ビットを位置 shift+1 とみなした Ĥ の積

    Args:
        m: 入力ビット列
        params: ハッシュパラメータ
        shift: 先行する接頭辞の長さ（t を法として扱う）
        counter: 計測用カウンタ

    Returns:
        AffineMap: C_{shift+1}⋯C_{shift+|m|}
    """
    if shift < 0:
        raise ValidationError("shift must be non-negative", {"shift": shift})
    g_r, g_s = params.g.pair()
    r, s, multiplications, additions = _hat_product_pair(m.bits, params.p.p, params.t, g_r, g_s, shift % params.t)
    if counter is not None:
        counter.record(multiplications=multiplications, additions=additions)
    return AffineMap.of(r, s, params.p)


def hash_hatH(m: BitString, params: HashParams, counter: Optional[OperationCounter] = None) -> AffineMap:
    """Ĥ(m) = C_1⋯C_l（C_i = f_{m_i}、t | i なら f_{m_i}·g）"""
    return shifted_hat_product(m, params, 0, counter)


def hash_hatH2(m: BitString, params: HashParams) -> AffineMap:
    """Ĥ₂(m) = Ĥ(m ∥ (encode(Ĥ(m)) ⊕ c_rnd))。接尾辞の位置は |m|+1 から続く"""
    head = hash_hatH(m, params)
    suffix = encode_bits(head) ^ params.c_rnd
    return compose(head, shifted_hat_product(suffix, params, len(m)))


def multiplication_count(m: BitString, p: Optional[PrimeModulus] = None) -> int:
    """hash_H が m に対して使う体の乗算回数（≤ 2|m|）"""
    counter = OperationCounter()
    hash_H(m, p or parse_prime(LabSettings().p), counter)
    return counter.multiplications


def hatH_multiplication_count(m: BitString, params: HashParams) -> int:
    """hash_hatH の乗算回数。g の合成1回につき2回ずつ増える"""
    counter = OperationCounter()
    hash_hatH(m, params, counter)
    return counter.multiplications


def _segments(length: int, segments: int) -> List[Tuple[int, int]]:
    segments = max(1, min(segments, length or 1))
    step, extra = divmod(length, segments)
    bounds = []
    start = 0
    for index in range(segments):
        end = start + step + (1 if index < extra else 0)
        bounds.append((start, end))
        start = end
    return bounds


def _run_segments(func: Callable, jobs: List[tuple], workers: int) -> List[Tuple[int, int, int, int]]:
    if workers <= 1 or len(jobs) <= 1:
        return [func(*job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, *zip(*jobs)))


def _fold_segments(results: List[Tuple[int, int, int, int]], p: PrimeModulus,
                   counter: Optional[OperationCounter]) -> AffineMap:
    """区間ごとの積を順に合成する。合成1回は乗算2回と加算1回"""
    result = AffineMap.identity(p)
    for r, s, multiplications, additions in results:
        result = compose(result, AffineMap.of(r, s, p))
        if counter is not None:
            counter.record(multiplications=multiplications + 2, additions=additions + 1)
    return result


def parallel_product_map(
    m: BitString,
    p: PrimeModulus,
    segments: int = 4,
    workers: int = 4,
    counter: Optional[OperationCounter] = None,
) -> AffineMap:
    """m を連続区間に分割して独立に積を取り、順に合成する"""
    jobs = [(m.bits[start:end], p.p) for start, end in _segments(len(m), segments)]
    logger.debug(f"Hashing {len(m)} bits in {len(jobs)} segments with {workers} workers")
    return _fold_segments(_run_segments(_product_pair, jobs, workers), p, counter)


def parallel_hash_hatH(
    m: BitString,
    params: HashParams,
    segments: int = 4,
    workers: int = 4,
    counter: Optional[OperationCounter] = None,
) -> AffineMap:
    """Ĥ の分割評価。各区間には接頭辞長 mod t をシフトとして渡す"""
    g_r, g_s = params.g.pair()
    jobs = [
        (m.bits[start:end], params.p.p, params.t, g_r, g_s, start % params.t)
        for start, end in _segments(len(m), segments)
    ]
    return _fold_segments(_run_segments(_hat_product_pair, jobs, workers), params.p, counter)


def pad_short_message(m: BitString, threshold: int = 323, length: int = 512) -> BitString:
    """threshold ビット以下の入力に '1' と 0 を付けて length ビットにする"""
    if len(m) > threshold:
        return m
    if length <= len(m):
        raise ValidationError("pad length must exceed the message length", {"length": length, "message": len(m)})
    return BitString(bits=m.bits + "1" + "0" * (length - len(m) - 1))


def default_c_rnd(p: PrimeModulus) -> BitString:
    """√2 の小数部の先頭 2⌈log₂ p⌉ ビット"""
    k = 2 * p.bit_length
    fraction = int(gmpy2.isqrt(2 << (2 * k))) - (1 << k)
    return BitString.from_int(fraction, k)


def parse_c_rnd(text: str, p: PrimeModulus) -> BitString:
    """16進数の c_rnd を 2⌈log₂ p⌉ ビットに展開（空なら既定値）"""
    if not text:
        return default_c_rnd(p)
    cleaned = text.strip().lower()
    if cleaned.startswith("0x"):
        cleaned = cleaned[2:]
    try:
        value = int(cleaned, 16)
    except ValueError:
        raise ValidationError("c_rnd must be hexadecimal", {"c_rnd": text})
    width = 2 * p.bit_length
    if value.bit_length() > width:
        raise ValidationError(f"c_rnd does not fit in {width} bits", {"c_rnd": text})
    return BitString.from_int(value, width)


def build_hash_params(settings: LabSettings) -> HashParams:
    """設定から HashParams を構築

    g は g_word（g = H(word)）、g_inverse_word（g = H(word)⁻¹）、
    g_r/g_s の組のいずれか一つで指定します。
    """
    p = parse_prime(settings.p)
    g_word: Optional[BitString] = None
    if settings.g_word:
        g_word = BitString.parse(settings.g_word)
        g = product_map(g_word, p)
    elif settings.g_inverse_word:
        g = inverse(product_map(BitString.parse(settings.g_inverse_word), p))
    elif settings.g_r is not None and settings.g_s is not None:
        if settings.g_r % p.p == 0:
            raise ValidationError("g_r must be nonzero mod p", {"g_r": settings.g_r})
        g = AffineMap.of(settings.g_r, settings.g_s, p)
    else:
        raise ValidationError("g must be given as g_word, g_inverse_word or g_r and g_s")
    try:
        return HashParams(p=p, t=settings.t, g=g, c_rnd=parse_c_rnd(settings.c_rnd, p), g_word=g_word)
    except ValueError as e:
        raise ValidationError("invalid hash parameters", {"error": str(e)})


HASH_FUNCTIONS: Dict[str, Callable[[BitString, HashParams], Union[AffineMap, HashOutput]]] = {
    "H": lambda m, params: hash_H(m, params.p),
    "H2": hash_H2,
    "hatH": hash_hatH,
    "hatH2": hash_hatH2,
}
