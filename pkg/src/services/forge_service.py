"""
衝突偽造サービス

g⁻¹ の短い原像 b′（|b′| < t）を、g が掛かる位置の直後に挿入すると
Ĥ(M) = H(u₁)·g·H(b′)·H(u₂)·g·H(b′)⋯ = H(m) となり、g が全て打ち消されます。
これを H の衝突（第二原像攻撃の出力）に適用して Ĥ と Ĥ₂ の衝突を作ります。

挿入スケジュール: u₁ は t ビット、以降の u_k は t − |b′| ビット。完全な区間の後に
b′ を置き、最後の不完全な区間の後には置きません。したがって t の倍数の位置は
必ずいずれかの u_k の最終ビットで、b′ の内側に g は掛かりません。
"""

import logging
import time
from typing import List, Optional, Tuple, Union

import numpy as np

from src.config.lab_config import get_budget_config, lab_config
from src.core.exceptions import (
    InputTooShortError,
    NoInsertablePreimageError,
    NotACollisionError,
    NotAnImageError,
    SolverGaveUpError,
    UnsolvableInstanceError,
    ValidationError,
    VerificationError,
)
from src.data_models.affine_models import AffineMap
from src.data_models.attack_models import AttackTranscript, SearchBudget
from src.data_models.field_models import PrimeModulus
from src.data_models.forge_models import ForgeResult
from src.data_models.hash_models import BitString, HashParams
from src.services.affine_group_service import compose, encode_bits, generator, inverse, to_output
from src.services.attack_service import AttackService, get_attack_service
from src.services.hash_service import (
    hash_H,
    hash_H2,
    hash_hatH,
    hash_hatH2,
    product_map,
    shifted_hat_product,
)

logger = logging.getLogger(__name__)


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def _as_budget(budget: Union[int, SearchBudget, None]) -> SearchBudget:
    if budget is None:
        return SearchBudget(**get_budget_config())
    if isinstance(budget, SearchBudget):
        return budget
    return SearchBudget(max_candidates=budget)


def insertion_count(length: int, b_length: int, t: int) -> int:
    """長さ length のメッセージに挿入される b′ の個数"""
    if not 1 <= b_length < t:
        raise ValidationError("b_prime length must satisfy 1 <= |b_prime| < t", {"b_prime": b_length, "t": t})
    if length < t:
        return 0
    return 1 + (length - t) // (t - b_length)


def insertion_positions(length: int, b_length: int, t: int) -> List[int]:
    """出力中で各 b′ が始まる位置（0始まり）"""
    count = insertion_count(length, b_length, t)
    return [t + k * t for k in range(count)]


def aligned_insert(m: BitString, b_prime: BitString, t: int) -> BitString:
    """u₁ ∥ b′ ∥ u₂ ∥ b′ ∥ … を作る

    Raises:
        ValidationError: |b′| が 1 以上 t 未満でない場合
    """
    count = insertion_count(len(m), len(b_prime), t)
    step = t - len(b_prime)
    parts = []
    consumed = 0
    for k in range(count):
        chunk = t if k == 0 else step
        parts.append(m.bits[consumed:consumed + chunk])
        parts.append(b_prime.bits)
        consumed += chunk
    parts.append(m.bits[consumed:])
    return BitString(bits="".join(parts))


def _enumerate_preimage(target: AffineMap, p: PrimeModulus, max_length: int,
                        budget: SearchBudget) -> Optional[BitString]:
    """長さ 1…max_length の語を (長さ, 辞書順) で調べる"""
    deadline = time.monotonic() + budget.time_limit
    f0, f1 = generator(0, p), generator(1, p)
    level: List[Tuple[str, AffineMap]] = [("", AffineMap.identity(p))]
    candidates = 0
    for _ in range(max_length):
        next_level = []
        for word, value in level:
            for bit, step in (("0", f0), ("1", f1)):
                extended = compose(value, step)
                candidates += 1
                if extended == target:
                    return BitString(bits=word + bit)
                next_level.append((word + bit, extended))
            if candidates >= budget.max_candidates or time.monotonic() > deadline:
                logger.info(f"Preimage enumeration stopped after {candidates} candidates")
                return None
        level = next_level
    return None


def find_g_inverse_preimage(
    g: AffineMap,
    p: PrimeModulus,
    t: int,
    budget: Union[int, SearchBudget, None] = None,
    attack: Optional[AttackService] = None,
) -> BitString:
    """
    product_map(b′) = g⁻¹ かつ |b′| <= t−1 の b′ を探す

    各長さ ℓ = 1…t−1 で第二原像攻撃を試し、見つからなければ
    予算内で全探索します。

    Raises:
        NoInsertablePreimageError: 長さ t 未満の原像が予算内に見つからない場合
    """
    if t < 2:
        raise ValidationError("t must be at least 2", {"t": t})
    budget = _as_budget(budget)
    attack = attack or get_attack_service("exhaustive")
    target = inverse(g)
    digest = to_output(target)
    for length in range(1, t):
        try:
            result = attack.run_second_preimage(digest, length, p, seed=0)
        except (NotAnImageError, UnsolvableInstanceError, SolverGaveUpError, ValidationError) as e:
            logger.debug(f"No swap-form preimage of g^-1 at length {length}: {e.message}")
            continue
        logger.info(f"Found g^-1 preimage of length {length} by the swap attack")
        return BitString(bits=result.message)

    bound = min(t - 1, budget.max_length)
    found = _enumerate_preimage(target, p, bound, budget)
    if found is None:
        raise NoInsertablePreimageError(details={"g": g.render(), "t": t, "searched_length": bound})
    logger.info(f"Found g^-1 preimage of length {len(found)} by enumeration")
    return found


def random_insertable_g(p: PrimeModulus, t: int, rng: np.random.Generator) -> Tuple[AffineMap, BitString]:
    """ランダムな語 w（|w| < t）から g = H(w)⁻¹ を作り (g, w) を返す"""
    if t < 2:
        raise ValidationError("t must be at least 2", {"t": t})
    forbidden = {(1, 0), (2, 1), (3, 1)}
    while True:
        length = int(rng.integers(min(2, t - 1), t))
        word = BitString(bits="".join("1" if bit else "0" for bit in rng.integers(0, 2, size=length)))
        g = inverse(product_map(word, p))
        if g.pair() not in forbidden:
            return g, word


def _check_collision(m: BitString, m_prime: BitString, p: PrimeModulus) -> AffineMap:
    if m == m_prime:
        raise NotACollisionError("messages must differ", {"length": len(m)})
    if len(m) != len(m_prime):
        raise NotACollisionError("messages must have equal length", {"left": len(m), "right": len(m_prime)})
    value = product_map(m, p)
    if value != product_map(m_prime, p):
        raise NotACollisionError(details={"left": value.render(), "right": product_map(m_prime, p).render()})
    return value


def forge_hatH_collision(
    m: BitString,
    m_prime: BitString,
    params: HashParams,
    budget: Union[int, SearchBudget, None] = None,
    b_prime: Optional[BitString] = None,
    transcript: Optional[AttackTranscript] = None,
) -> ForgeResult:
    """
    H の等長衝突 (m, m′) から Ĥ の衝突を作る

    Args:
        m: メッセージ
        m_prime: product_map が m と一致する別のメッセージ
        params: ハッシュパラメータ
        budget: g⁻¹ 原像探索の予算
        b_prime: 既に求めた g⁻¹ の原像（省略時は探索する）
        transcript: 追記する記録

    Returns:
        ForgeResult: Ĥ の等式を検証済みの結果（digest2 は未設定）
    """
    if transcript is None:
        transcript = AttackTranscript()
    h_value = _check_collision(m, m_prime, params.p)

    if b_prime is None:
        start = time.perf_counter()
        b_prime = find_g_inverse_preimage(params.g, params.p, params.t, budget)
        transcript.add("find_g_inverse_preimage", {"g": params.g.render(), "t": params.t},
                       {"b_prime": b_prime.bits}, _elapsed_ms(start))

    start = time.perf_counter()
    m_star = aligned_insert(m, b_prime, params.t)
    m_star_prime = aligned_insert(m_prime, b_prime, params.t)
    transcript.add("aligned_insert", {"length": len(m)},
                   {"length": len(m_star), "insertions": insertion_count(len(m), len(b_prime), params.t)},
                   _elapsed_ms(start))

    start = time.perf_counter()
    digest = hash_hatH(m_star, params)
    digest_prime = hash_hatH(m_star_prime, params)
    verdicts = {"hatH(m_star)": digest == h_value, "hatH(m_star_prime)": digest_prime == h_value}
    transcript.add("verify_hatH", {}, {"digest": digest.render()}, _elapsed_ms(start),
                   verdict="pass" if all(verdicts.values()) else "fail")
    if not all(verdicts.values()):
        raise VerificationError(
            "aligned insertion did not telescope",
            {"expected": h_value.render(), "left": digest.render(), "right": digest_prime.render()},
        )
    return ForgeResult(m_star=m_star, m_star_prime=m_star_prime, digest=digest, b_prime=b_prime,
                       params=params, transcript=transcript, verdicts=verdicts)


def lift_to_hatH2(result: ForgeResult, params: HashParams) -> ForgeResult:
    """
    等長の Ĥ 衝突を Ĥ₂ の衝突に持ち上げる

    Ĥ₂ の値は共通の Ĥ 値 d と長さだけで決まる
    d·P(encode(d) ⊕ c_rnd, |m*|) を予測値とし、両方のメッセージを直接評価して比較します。

    Raises:
        VerificationError: どちらかの Ĥ₂ 値が予測値と一致しない場合
    """
    start = time.perf_counter()
    suffix = encode_bits(result.digest) ^ params.c_rnd
    digest2 = compose(result.digest, shifted_hat_product(suffix, params, len(result.m_star)))
    left = hash_hatH2(result.m_star, params)
    right = hash_hatH2(result.m_star_prime, params)
    verdicts = dict(result.verdicts)
    verdicts["hatH2(m_star)"] = left == digest2
    verdicts["hatH2(m_star_prime)"] = right == digest2
    lifted = verdicts["hatH2(m_star)"] and verdicts["hatH2(m_star_prime)"]
    result.transcript.add("lift_hatH2", {}, {"digest2": digest2.render()}, _elapsed_ms(start),
                          verdict="pass" if lifted else "fail")
    if not lifted:
        raise VerificationError(
            "equal-length hatH collision did not lift to hatH2",
            {"expected": digest2.render(), "left": left.render(), "right": right.render()},
        )
    return ForgeResult(
        m_star=result.m_star,
        m_star_prime=result.m_star_prime,
        digest=result.digest,
        digest2=digest2,
        b_prime=result.b_prime,
        params=params,
        transcript=result.transcript,
        verdicts=verdicts,
    )


def check_H2_lift(m: BitString, m_prime: BitString, params: HashParams) -> bool:
    """H の衝突（長さは異なってもよい）が H₂ の衝突でもあるか"""
    if hash_H(m, params.p) != hash_H(m_prime, params.p):
        raise NotACollisionError(details={"left": len(m), "right": len(m_prime)})
    return hash_H2(m, params) == hash_H2(m_prime, params)


def random_balanced_message(length: int, rng: np.random.Generator) -> BitString:
    """0 と 1 の個数の差が高々1のランダムなビット列"""
    bits = np.zeros(length, dtype=np.int8)
    bits[: length // 2] = 1
    rng.shuffle(bits)
    return BitString(bits="".join("1" if bit else "0" for bit in bits))


class ForgeService:
    """
    衝突偽造サービス

    ランダムな均衡メッセージに第二原像攻撃を行い、得た H の衝突を
    Ĥ と Ĥ₂ の衝突に持ち上げます。
    """

    def __init__(self, attack: Optional[AttackService] = None, retries: Optional[int] = None,
                 budget: Union[int, SearchBudget, None] = None):
        self.attack = attack or get_attack_service()
        self.retries = retries or lab_config.attack_retries
        self.budget = _as_budget(budget)
        self.logger = logging.getLogger(self.__class__.__name__)

    def end_to_end_break(self, params: HashParams, L: int, seed: int = 0) -> ForgeResult:
        """
        長さ L のランダムな均衡メッセージから Ĥ / Ĥ₂ の衝突を作る

        試行 k の乱数は default_rng([seed, k]) から取るため、シードで結果が決まります。

        Raises:
            InputTooShortError: L < 2（入れ替えるブロックがない）
            NoInsertablePreimageError: g⁻¹ の挿入可能な原像がない場合
            SolverGaveUpError: 全ての試行で第二原像が得られなかった場合
        """
        if L < 2:
            raise InputTooShortError(details={"L": L})
        transcript = AttackTranscript(seed=seed)

        start = time.perf_counter()
        b_prime = find_g_inverse_preimage(params.g, params.p, params.t, self.budget)
        transcript.add("find_g_inverse_preimage", {"g": params.g.render(), "t": params.t},
                       {"b_prime": b_prime.bits}, _elapsed_ms(start))

        for attempt in range(self.retries):
            rng = np.random.default_rng([seed, attempt])
            m = random_balanced_message(L, rng)
            attack_seed = int(rng.integers(0, 2**63 - 1))
            try:
                attack = self.attack.run_second_preimage(hash_H(m, params.p), L, params.p,
                                                         seed=attack_seed, avoid=m)
            except (UnsolvableInstanceError, SolverGaveUpError) as e:
                self.logger.info(f"Attempt {attempt + 1}/{self.retries} failed: {e.message}")
                transcript.add("second_preimage", {"attempt": attempt, "length": L}, {}, verdict="gave up")
                continue
            m_prime = BitString(bits=attack.message)
            transcript.add("sample_message", {"attempt": attempt, "length": L}, {"message": m.to_hex()})
            transcript.extend(attack.transcript, prefix="attack.")
            result = forge_hatH_collision(m, m_prime, params, b_prime=b_prime, transcript=transcript)
            lifted = lift_to_hatH2(result, params)
            self.logger.info(f"Forged verified hatH/hatH2 collision of length {len(lifted.m_star)}")
            return lifted
        raise SolverGaveUpError(
            "solver gave up on every sampled message",
            {"L": L, "retries": self.retries, "seed": seed},
        )


def end_to_end_break(params: HashParams, L: int, seed: int = 0) -> ForgeResult:
    """第二原像攻撃から Ĥ / Ĥ₂ の検証済み衝突までを一度に実行する"""
    return ForgeService().end_to_end_break(params, L, seed)
