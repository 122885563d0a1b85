"""
第二原像攻撃サービス

ハッシュ値と長さ L だけから、同じハッシュ値を持つ長さ L のビット列を構成します。

1. r = 2^a·3^b から (a, b) を復元（2^i のソート済み表と r·3^{-b} の走査）
2. 標準語 (01)^n ∥ 余り を作り、その定数項 u を求める
3. ブロック j を "01"→"10" に入れ替えると定数項が 6^j 増えるので、
   Σ x_j·6^j ≡ s − u (mod p) を部分和ソルバーで解く
4. 解に従って入れ替えた語を組み立て、再ハッシュで検証する
"""

import logging
import time
from bisect import bisect_left, bisect_right
from typing import List, Optional, Tuple

from src.core.exceptions import NotAnImageError, ValidationError, VerificationError
from src.data_models.affine_models import AffineMap, HashOutput
from src.data_models.attack_models import (
    AttackTranscript,
    ExponentSplit,
    SecondPreimageResult,
    SolverStrategy,
    SubsetSumInstance,
    SubsetSumSolution,
)
from src.data_models.field_models import FieldElement, PrimeModulus
from src.data_models.hash_models import BitString, OperationCounter
from src.services.affine_group_service import from_output
from src.services.field_service import mod_inv, mod_pow
from src.services.hash_service import hash_H, product_map
from src.services.subset_sum_service import SubsetSumSolver

logger = logging.getLogger(__name__)


def _elapsed_ms(start: float) -> float:
    return round((time.perf_counter() - start) * 1000.0, 3)


def recover_exponents(
    r: FieldElement,
    L: int,
    p: PrimeModulus,
    length_is_bound: bool = False,
    counter: Optional[OperationCounter] = None,
) -> ExponentSplit:
    """
    2^a·3^b ≡ r (mod p) を満たす (a, b) を求める

    {2^i : 0 <= i <= L} をソートし、b = 0, 1, … について r·3^{-b} を二分探索します。
    複数の組が一致した場合は b が最小のもの（同じ b なら a が最大のもの）を返し、
    一致した組の数を multiplicity に入れます。

    Args:
        r: ハッシュ値の線形部分
        L: 長さ（length_is_bound なら上限）
        p: 法
        length_is_bound: True なら a + b <= L を許す
        counter: 計測用カウンタ

    Raises:
        NotAnImageError: どの (a, b) も一致しない場合
    """
    if L < 0:
        raise ValidationError("length must be non-negative", {"L": L})
    modulus = p.p
    if r.modulus.p != modulus:
        raise ValidationError("r is not a residue of the given modulus", {"p": modulus})
    counter = counter if counter is not None else OperationCounter()

    table: List[Tuple[int, int]] = []
    power = 1
    for i in range(L + 1):
        table.append((power, i))
        power = (power * 2) % modulus
    counter.record(multiplications=L + 1)
    table.sort()
    values = [value for value, _ in table]

    three_inv = mod_inv(p.element(3)).value
    v = r.value
    best: Optional[Tuple[int, int]] = None
    matches = 0
    for b in range(L + 1):
        lo = bisect_left(values, v)
        hi = bisect_right(values, v, lo)
        counter.record(lookups=1)
        for index in range(lo, hi):
            i = table[index][1]
            if i + b == L or (length_is_bound and i + b <= L):
                matches += 1
                if best is None or (b == best[1] and i > best[0]):
                    best = (i, b)
        v = (v * three_inv) % modulus
        counter.record(multiplications=1)

    if best is None:
        raise NotAnImageError(
            "value is not an H-image of any length-L string",
            {"r": r.value, "L": L, "length_is_bound": length_is_bound},
        )
    a, b = best
    if matches > 1:
        logger.warning(f"{matches} exponent splits match r; using a={a}, b={b}")
    return ExponentSplit(a=a, b=b, length=a + b, multiplicity=matches)


def canonical_word(split: ExponentSplit) -> BitString:
    """(01)^n の後に余りの文字を |a−b| 個並べた語"""
    return BitString(bits="01" * split.n + split.surplus_bit * abs(split.a - split.b))


def swap_target(y: AffineMap, split: ExponentSplit, p: PrimeModulus) -> SubsetSumInstance:
    """標準語の定数項 u との差 t = s − u を目標とするインスタンス"""
    expected_r = (mod_pow(p.element(2), split.a) * mod_pow(p.element(3), split.b)).value
    if y.r.value != expected_r:
        raise ValidationError(
            "exponent split does not match target",
            {"a": split.a, "b": split.b, "r": y.r.value},
        )
    u = product_map(canonical_word(split), p).s
    return SubsetSumInstance(n=split.n, target=y.s - u, modulus=p)


def assemble_second_preimage(split: ExponentSplit, x: SubsetSumSolution) -> BitString:
    """x_j = 1 のブロック j を "10" に入れ替え、標準語の余りを付ける"""
    if len(x.x) != split.n:
        raise ValidationError("solution length must equal min(a, b)", {"n": split.n, "x": len(x.x)})
    blocks = "".join("10" if bit else "01" for bit in x.x)
    return BitString(bits=blocks + split.surplus_bit * abs(split.a - split.b))


def swap_vector_of(m: BitString, split: ExponentSplit) -> Optional[Tuple[int, ...]]:
    """m が入れ替え形の語ならその x を、そうでなければ None を返す"""
    if len(m) != split.length or m.split_counts() != (split.a, split.b):
        return None
    n = split.n
    tail = m.bits[2 * n:]
    if tail != split.surplus_bit * abs(split.a - split.b):
        return None
    x = []
    for j in range(n):
        block = m.bits[2 * j:2 * j + 2]
        if block == "01":
            x.append(0)
        elif block == "10":
            x.append(1)
        else:
            return None
    return tuple(x)


class AttackService:
    """
    第二原像攻撃サービス

    from_output → recover_exponents → swap_target → 部分和 → 組み立て → 検証
    の各段を実行し、段ごとの記録を残します。
    """

    def __init__(self, solver: Optional[SubsetSumSolver] = None):
        self.solver = solver or SubsetSumSolver.from_config()
        self.logger = logging.getLogger(self.__class__.__name__)

    def run_second_preimage(
        self,
        target: HashOutput,
        L: int,
        p: PrimeModulus,
        seed: int = 0,
        avoid: Optional[BitString] = None,
        length_is_bound: bool = False,
    ) -> SecondPreimageResult:
        """
        第二原像攻撃を実行する

        Args:
            target: 攻撃対象のハッシュ値
            L: メッセージ長（length_is_bound なら上限）
            p: 法
            seed: 部分和ソルバーのシード
            avoid: 結果として返してはならない既知のメッセージ
            length_is_bound: L を長さの上限として扱うか

        Returns:
            SecondPreimageResult: hash_H(m′) = target を検証済みの結果
        """
        transcript = AttackTranscript(seed=seed)
        self.logger.info(f"Starting second-preimage attack with L={L}, p bits={p.bit_length}")

        start = time.perf_counter()
        y = from_output(target)
        transcript.add("decode", {"digest": target.render()}, {"r": y.r.value, "s": y.s.value},
                       _elapsed_ms(start))

        start = time.perf_counter()
        counter = OperationCounter()
        split = recover_exponents(y.r, L, p, length_is_bound=length_is_bound, counter=counter)
        transcript.add(
            "recover_exponents",
            {"L": L, "length_is_bound": length_is_bound},
            {"a": split.a, "b": split.b, "multiplicity": split.multiplicity, "operations": counter.total},
            _elapsed_ms(start),
        )

        start = time.perf_counter()
        instance = swap_target(y, split, p)
        transcript.add("swap_target", {"canonical_length": split.length},
                       {"n": instance.n, "target": instance.target.value}, _elapsed_ms(start))

        start = time.perf_counter()
        exclude = swap_vector_of(avoid, split) if avoid is not None else None
        solution = self.solver.solve(instance, seed=seed, exclude=exclude)
        transcript.add(
            "solve_subset_sum",
            {"strategy": self.solver.pick_strategy(instance.n).value, "seed": seed},
            {"swaps": sum(solution.x)},
            _elapsed_ms(start),
            verdict="verified",
        )

        start = time.perf_counter()
        m_prime = assemble_second_preimage(split, solution)
        verified = hash_H(m_prime, p) == target and len(m_prime) == split.length
        transcript.add("verify", {"length": len(m_prime)}, {"message": m_prime.to_hex()},
                       _elapsed_ms(start), verdict="pass" if verified else "fail")
        if not verified:
            raise VerificationError(
                "second preimage does not re-hash to the target",
                {"target": target.render(), "length": len(m_prime)},
            )
        self.logger.info(f"Second preimage verified ({sum(solution.x)} swaps)")
        return SecondPreimageResult(message=m_prime.bits, split=split, x=solution.x, transcript=transcript)

    def second_preimage(self, target: HashOutput, L: int, p: PrimeModulus, seed: int = 0) -> BitString:
        return BitString(bits=self.run_second_preimage(target, L, p, seed).message)


def get_attack_service(strategy: Optional[str] = None) -> AttackService:
    """設定に従ったソルバーを持つ AttackService を作る"""
    return AttackService(SubsetSumSolver.from_config(strategy=strategy))


def second_preimage(
    target: HashOutput,
    L: int,
    p: PrimeModulus,
    seed: int = 0,
    strategy: SolverStrategy = SolverStrategy.AUTO,
) -> BitString:
    """ハッシュ値と長さだけから検証済みの第二原像を求める"""
    return get_attack_service(SolverStrategy(strategy).value).second_preimage(target, L, p, seed)
