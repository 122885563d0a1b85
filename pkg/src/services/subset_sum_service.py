"""
部分和ソルバーサービス

Σ x_j·6^j ≡ t (mod p) を満たす x ∈ {0,1}^n を求めます。

- exhaustive: 2^n 全探索（n ≤ 24）。解なしを証明できる
- meet-in-middle: 前半と後半の和をソートして突き合わせる（n ≤ 48）
- list-merge: 密なインスタンス向けのシード付き k リスト併合（ヒューリスティック）

どの戦略も、返す解は SubsetSumSolution の構築時に必ず検算されます。
"""

import logging
import math
from bisect import bisect_left, bisect_right
from typing import List, Optional, Sequence, Tuple

import gmpy2
import numpy as np

from src.config.lab_config import get_solver_config
from src.core.exceptions import SolverGaveUpError, UnsolvableInstanceError, ValidationError
from src.data_models.attack_models import SolverStrategy, SubsetSumInstance, SubsetSumSolution

logger = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 24
MEET_IN_MIDDLE_MAX_N = 48
AUTO_EXHAUSTIVE_MAX_N = 20
AUTO_MEET_IN_MIDDLE_MAX_N = 44

# (値, 葉の行番号の列)
_Entry = Tuple[int, Tuple[int, ...]]


def _dtype_for(p: int):
    """2p が int64 に収まるなら int64、そうでなければ任意精度の object"""
    return np.int64 if p.bit_length() <= 61 else object


def _subset_sums(weights: Sequence[int], p: int) -> np.ndarray:
    """全部分和 mod p。添字の2進表記（上位ビットが weights[0]）が辞書順と一致する"""
    dtype = _dtype_for(p)
    sums = np.zeros(1, dtype=dtype)
    for w in reversed(weights):
        shifted = (sums + w) % p
        sums = np.concatenate([sums, shifted])
    return sums


def _index_to_bits(index: int, n: int) -> Tuple[int, ...]:
    return tuple((index >> (n - 1 - j)) & 1 for j in range(n))


def _centered(value: int, p: int) -> int:
    value %= p
    return value - p if value > p // 2 else value


class SubsetSumSolver:
    """
    部分和ソルバー

    戦略と list-merge のパラメータを保持し、インスタンスごとに solve を呼びます。
    """

    def __init__(
        self,
        strategy: SolverStrategy = SolverStrategy.AUTO,
        restarts: int = 32,
        density_factor: int = 4,
        max_list_size: int = 1 << 16,
    ):
        self.strategy = SolverStrategy(strategy)
        self.restarts = restarts
        self.density_factor = density_factor
        self.max_list_size = max_list_size
        self.logger = logging.getLogger(self.__class__.__name__)

    @classmethod
    def from_config(cls, config: Optional[dict] = None, strategy: Optional[str] = None) -> "SubsetSumSolver":
        config = config or get_solver_config()
        return cls(
            strategy=strategy or config["strategy"],
            restarts=config["restarts"],
            density_factor=config["density_factor"],
            max_list_size=config["max_list_size"],
        )

    def pick_strategy(self, n: int) -> SolverStrategy:
        if self.strategy != SolverStrategy.AUTO:
            return self.strategy
        if n <= AUTO_EXHAUSTIVE_MAX_N:
            return SolverStrategy.EXHAUSTIVE
        if n <= AUTO_MEET_IN_MIDDLE_MAX_N:
            return SolverStrategy.MEET_IN_MIDDLE
        return SolverStrategy.LIST_MERGE

    def solve(
        self,
        instance: SubsetSumInstance,
        seed: int = 0,
        exclude: Optional[Sequence[int]] = None,
    ) -> SubsetSumSolution:
        """
        インスタンスを解く

        Args:
            instance: 部分和インスタンス
            seed: list-merge の乱数シード
            exclude: 解として返してはならない x（既知のメッセージの入れ替えベクトル）

        Returns:
            SubsetSumSolution: 検算済みの解

        Raises:
            UnsolvableInstanceError: 厳密な戦略が解なしを示した場合
            SolverGaveUpError: list-merge が再試行回数を使い切った場合
        """
        excluded = tuple(exclude) if exclude is not None else None
        if excluded is not None and len(excluded) != instance.n:
            raise ValidationError("exclude vector length must equal n", {"n": instance.n, "exclude": len(excluded)})
        strategy = self.pick_strategy(instance.n)
        self.logger.info(f"Solving subset sum with n={instance.n} using {strategy.value}")
        if strategy == SolverStrategy.EXHAUSTIVE:
            x = self._solve_exhaustive(instance, excluded)
        elif strategy == SolverStrategy.MEET_IN_MIDDLE:
            x = self._solve_meet_in_middle(instance, excluded)
        else:
            x = self._solve_list_merge(instance, seed, excluded)
        return SubsetSumSolution(x=x, instance=instance)

    def _solve_exhaustive(self, instance: SubsetSumInstance, excluded: Optional[Tuple[int, ...]]) -> Tuple[int, ...]:
        n = instance.n
        if n > EXHAUSTIVE_MAX_N:
            raise ValidationError(f"exhaustive strategy supports n <= {EXHAUSTIVE_MAX_N}", {"n": n})
        sums = _subset_sums(instance.weights(), instance.modulus.p)
        for index in np.flatnonzero(sums == instance.target.value):
            x = _index_to_bits(int(index), n)
            if x != excluded:
                return x
        raise UnsolvableInstanceError(details={"n": n, "target": instance.target.value})

    def _solve_meet_in_middle(
        self, instance: SubsetSumInstance, excluded: Optional[Tuple[int, ...]]
    ) -> Tuple[int, ...]:
        n = instance.n
        if n > MEET_IN_MIDDLE_MAX_N:
            raise ValidationError(f"meet-in-middle strategy supports n <= {MEET_IN_MIDDLE_MAX_N}", {"n": n})
        p = instance.modulus.p
        weights = instance.weights()
        half = n // 2
        left = _subset_sums(weights[:half], p)
        right = _subset_sums(weights[half:], p)

        order = np.argsort(right, kind="stable")
        right_sorted = right[order]
        needed = (instance.target.value - left) % p
        positions = np.searchsorted(right_sorted, needed, side="left")
        in_range = positions < len(right_sorted)
        hits = np.zeros(len(left), dtype=bool)
        hits[in_range] = right_sorted[positions[in_range]] == needed[in_range]

        for i in np.flatnonzero(hits):
            pos = int(positions[i])
            want = needed[i]
            while pos < len(right_sorted) and right_sorted[pos] == want:
                x = _index_to_bits(int(i), half) + _index_to_bits(int(order[pos]), n - half)
                if x != excluded:
                    return x
                pos += 1
        raise UnsolvableInstanceError(details={"n": n, "target": instance.target.value})

    def _plan_tree(self, n: int, p: int) -> Tuple[int, int, int]:
        """(木の高さ h, 葉あたりの重み数 m, リスト長 λ) を決める"""
        height = int(math.floor(math.log2(max(2, math.ceil(math.sqrt(max(n, 1)))))))
        while height >= 1:
            lists = 1 << height
            group = n // lists
            root, exact = gmpy2.iroot(self.density_factor * p, height + 1)
            list_size = int(root) + (0 if exact else 1)
            if group >= math.log2(max(list_size, 2)) + 2 and list_size <= self.max_list_size:
                return height, group, list_size
            height -= 1
        raise SolverGaveUpError(
            "solver gave up: instance too sparse for list-merge",
            {"n": n, "p_bits": p.bit_length()},
        )

    def _merge(self, left: List[_Entry], right: List[_Entry], width: int, p: int, cap: int) -> List[_Entry]:
        """中心化した和 z が |z| <= width となる組を残す"""
        right = sorted(right, key=lambda entry: entry[0])
        values = [entry[0] for entry in right]
        merged: List[_Entry] = []
        for value, path in left:
            for offset in (0, p, -p):
                lo = bisect_left(values, -width - value + offset)
                hi = bisect_right(values, width - value + offset)
                for index in range(lo, hi):
                    merged.append((_centered(value + values[index], p), path + right[index][1]))
                    if len(merged) >= cap:
                        return merged
        return merged

    def _solve_list_merge(
        self, instance: SubsetSumInstance, seed: int, excluded: Optional[Tuple[int, ...]]
    ) -> Tuple[int, ...]:
        n = instance.n
        p = instance.modulus.p
        target = instance.target.value
        height, group, list_size = self._plan_tree(n, p)
        lists = 1 << height
        weights = instance.weights()
        leaf_weights = [weights[i * group:(i + 1) * group] for i in range(lists)]
        widths = [p // (2 * list_size ** level) for level in range(1, height)] + [0]
        cap = 8 * list_size
        rng = np.random.default_rng(seed)
        self.logger.debug(f"list-merge plan: height={height} lists={lists} group={group} list_size={list_size}")

        for attempt in range(self.restarts):
            leaf_rows = [rng.integers(0, 2, size=(list_size, group), dtype=np.int8) for _ in range(lists)]
            level: List[List[_Entry]] = []
            for index, rows in enumerate(leaf_rows):
                entries = []
                for row_index, row in enumerate(rows):
                    total = sum(w for w, bit in zip(leaf_weights[index], row) if bit)
                    if index == lists - 1:
                        total -= target
                    entries.append((_centered(total, p), (row_index,)))
                level.append(entries)

            for width in widths:
                level = [
                    self._merge(level[i], level[i + 1], width, p, cap)
                    for i in range(0, len(level), 2)
                ]

            candidates = []
            for value, path in level[0]:
                if value % p != 0:
                    continue
                x = [0] * n
                for leaf, row_index in enumerate(path):
                    for offset, bit in enumerate(leaf_rows[leaf][row_index]):
                        x[leaf * group + offset] = int(bit)
                candidate = tuple(x)
                if candidate != excluded:
                    candidates.append(candidate)
            if candidates:
                self.logger.info(f"list-merge found {len(candidates)} candidates on attempt {attempt + 1}")
                return min(candidates)
        raise SolverGaveUpError(details={"n": n, "restarts": self.restarts, "list_size": list_size})


def solve_subset_sum(
    instance: SubsetSumInstance,
    strategy: SolverStrategy = SolverStrategy.AUTO,
    seed: int = 0,
    exclude: Optional[Sequence[int]] = None,
) -> SubsetSumSolution:
    """設定値を使ってインスタンスを解く"""
    return SubsetSumSolver.from_config(strategy=SolverStrategy(strategy).value).solve(instance, seed, exclude)
