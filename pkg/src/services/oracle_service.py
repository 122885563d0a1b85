"""
オラクルサービス

高速な実装とは独立した素朴な参照実装です。行列の近道を使わず、
生成元の関数を1ビットずつ適用して評価します。テストと selftest コマンド専用で、
攻撃の実行経路からは呼ばれません。
"""

import itertools
import logging
import time
from typing import Dict, Iterator, Optional, Tuple

from src.core.exceptions import SearchExhaustedError, ValidationError
from src.data_models.affine_models import AffineMap, HashOutput
from src.data_models.attack_models import SearchBudget
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams

logger = logging.getLogger(__name__)

_COEFFICIENT = {"0": 2, "1": 3}


def _apply_word(bits: str, x: int, p: int) -> int:
    """f_{b1}(f_{b2}(⋯ f_{bk}(x)))"""
    for ch in reversed(bits):
        x = (_COEFFICIENT[ch] * x + 1) % p
    return x


def naive_hash(m: BitString, p: PrimeModulus) -> HashOutput:
    """x = 0 で s、x = 1 で r + s を得る"""
    at_zero = _apply_word(m.bits, 0, p.p)
    at_one = _apply_word(m.bits, 1, p.p)
    return HashOutput.of(at_one, at_zero, p)


def naive_product(m: BitString, p: PrimeModulus) -> AffineMap:
    out = naive_hash(m, p)
    return AffineMap.of(out.first.value - out.second.value, out.second.value, p)


def naive_hatH(m: BitString, params: HashParams) -> AffineMap:
    """C_1⋯C_l を内側（i = l）から順に関数として適用する"""
    p = params.p.p

    def evaluate(x: int) -> int:
        for i in range(len(m), 0, -1):
            if i % params.t == 0:
                x = params.g(x)
            x = (_COEFFICIENT[m.bits[i - 1]] * x + 1) % p
        return x

    at_zero, at_one = evaluate(0), evaluate(1)
    return AffineMap.of(at_one - at_zero, at_zero, params.p)


def _words(max_length: int, balanced_only: bool = False) -> Iterator[str]:
    """(長さ, 辞書順) で語を列挙する"""
    for length in range(max_length + 1):
        if balanced_only and length % 2:
            continue
        for letters in itertools.product("01", repeat=length):
            word = "".join(letters)
            if balanced_only and word.count("0") != length // 2:
                continue
            yield word


class _Budget:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.candidates = 0
        self.deadline = time.monotonic() + budget.time_limit

    def spend(self) -> bool:
        self.candidates += 1
        return self.candidates <= self.budget.max_candidates and time.monotonic() <= self.deadline


def exhaustive_collision(
    p: PrimeModulus,
    params: Optional[HashParams] = None,
    which: str = "H",
    budget: Optional[SearchBudget] = None,
    same_length: bool = False,
    balanced_only: bool = False,
) -> Tuple[BitString, BitString]:
    """
    最短・辞書順最初の衝突ペアを探す

    Args:
        p: 法
        params: which="hatH" のときのパラメータ
        which: "H" または "hatH"
        budget: 探索予算
        same_length: 同じ長さのペアに限る
        balanced_only: 0 と 1 の個数が等しい語に限る

    Raises:
        SearchExhaustedError: 予算内に見つからない場合
    """
    budget = budget or SearchBudget()
    if which not in ("H", "hatH"):
        raise ValidationError("which must be 'H' or 'hatH'", {"which": which})
    if which == "hatH" and params is None:
        raise ValidationError("hatH collision search needs hash parameters")

    def digest_of(word: BitString) -> tuple:
        if which == "H":
            return naive_hash(word, p).pair()
        return naive_hatH(word, params).pair()

    tracker = _Budget(budget)
    seen: Dict[tuple, str] = {}
    current_length = -1
    for word in _words(budget.max_length, balanced_only):
        if same_length and len(word) != current_length:
            seen.clear()
            current_length = len(word)
        if not tracker.spend():
            break
        digest = digest_of(BitString(bits=word))
        if digest in seen:
            logger.info(f"Collision found after {tracker.candidates} candidates")
            return BitString(bits=seen[digest]), BitString(bits=word)
        seen[digest] = word
    raise SearchExhaustedError(
        f"none found <= {budget.max_length}",
        {"which": which, "candidates": tracker.candidates},
    )


def exhaustive_preimage(target: AffineMap, p: PrimeModulus, budget: Optional[SearchBudget] = None) -> BitString:
    """
    product_map(b) = target となる最短・辞書順最初の b

    Raises:
        SearchExhaustedError: 予算内に見つからない場合
    """
    budget = budget or SearchBudget()
    tracker = _Budget(budget)
    goal = target.pair()
    for word in _words(budget.max_length):
        if not tracker.spend():
            break
        if naive_product(BitString(bits=word), p).pair() == goal:
            return BitString(bits=word)
    raise SearchExhaustedError(f"none found <= {budget.max_length}", {"target": target.render()})
