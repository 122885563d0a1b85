"""
サービスモジュール

有限体演算、アフィン群演算、ハッシュ評価、部分和ソルバー、
第二原像攻撃、衝突偽造、総当たりオラクルを提供します。
"""

from .attack_service import AttackService, get_attack_service
from .forge_service import ForgeService
from .subset_sum_service import SubsetSumSolver

__all__ = [
    "AttackService",
    "get_attack_service",
    "ForgeService",
    "SubsetSumSolver",
]
