"""
ラボ設定管理モジュール

ハッシュパラメータ（p, t, g, c_rnd）、乱数シード、部分和ソルバーと
オラクル探索の予算を管理します。
環境変数（CAYLEY_LAB_ 接頭辞）、フラットな key=value 設定ファイル、
CLIフラグの順に上書きされます。
"""

import logging
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings

from src.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

# 2^521 - 1 (Mersenne prime, >= the recommended 512-bit size)
DEFAULT_PRIME_TEXT = "0x1" + "f" * 130

SOLVER_STRATEGIES = ("auto", "exhaustive", "meet-in-middle", "list-merge")

# g の指定形式（一つだけ使う）
G_FORMS = ("g_word", "g_inverse_word", "g_r", "g_s")


class LabSettings(BaseSettings):
    """ラボ設定クラス"""

    # ハッシュパラメータ
    p: str = Field(
        default=DEFAULT_PRIME_TEXT,
        description="素数 p（10進数または0x接頭辞の16進数）"
    )
    t: int = Field(
        default=8,
        description="g を挿入する周期 t（t > 1）"
    )
    g_r: Optional[int] = Field(
        default=None,
        description="g の線形係数 r（g_s と組で指定）"
    )
    g_s: Optional[int] = Field(
        default=None,
        description="g の定数項 s"
    )
    g_word: Optional[str] = Field(
        default="0111001",
        description="g を生成元の語として指定（g = H(word)、g ∈ G が保証される）"
    )
    g_inverse_word: Optional[str] = Field(
        default=None,
        description="g = H(word)^-1 として指定（word が g^-1 の挿入可能な原像になる）"
    )
    c_rnd: str = Field(
        default="",
        description="c_rnd の16進数表現（空なら √2 の小数部ビット）"
    )

    # 乱数とソルバー設定
    seed: int = Field(
        default=0,
        description="全ての乱択処理の元になる64ビットシード"
    )
    strategy: str = Field(
        default="auto",
        description="部分和ソルバーの戦略"
    )
    list_merge_restarts: int = Field(
        default=32,
        description="list-merge の再試行回数"
    )
    list_merge_density_factor: int = Field(
        default=4,
        description="根での期待解数（リスト長の決定に使用）"
    )
    list_merge_max_list_size: int = Field(
        default=1 << 16,
        description="list-merge の葉リスト長の上限"
    )
    attack_retries: int = Field(
        default=8,
        description="end-to-end 攻撃で新しいメッセージを試す回数"
    )

    # 探索予算
    budget_max_length: int = Field(
        default=16,
        description="オラクル探索の最大長"
    )
    budget_max_candidates: int = Field(
        default=1 << 20,
        description="オラクル探索の最大候補数"
    )
    budget_time_limit: float = Field(
        default=60.0,
        description="オラクル探索の制限時間（秒）"
    )

    # パディングとベンチマーク
    pad_threshold: int = Field(
        default=323,
        description="この長さ以下のメッセージをパディングする"
    )
    pad_length: int = Field(
        default=512,
        description="パディング後の長さ"
    )
    bench_workers: int = Field(
        default=4,
        description="並列ハッシュのワーカー数"
    )

    # 出力設定
    record_timings: bool = Field(
        default=False,
        description="トランスクリプトに経過時間を書き込むか"
    )
    log_level: str = Field(
        default="INFO",
        description="ログレベル"
    )

    @field_validator('t')
    @classmethod
    def validate_t(cls, v):
        if v <= 1:
            raise ValueError('t must be an integer greater than 1')
        return v

    @field_validator('strategy')
    @classmethod
    def validate_strategy(cls, v):
        if v not in SOLVER_STRATEGIES:
            raise ValueError(f'strategy must be one of {", ".join(SOLVER_STRATEGIES)}')
        return v

    @field_validator(
        'list_merge_restarts', 'list_merge_density_factor', 'list_merge_max_list_size',
        'attack_retries', 'budget_max_length', 'budget_max_candidates', 'bench_workers',
    )
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError('value must be positive')
        return v

    @field_validator('budget_time_limit')
    @classmethod
    def validate_time_limit(cls, v):
        if v <= 0:
            raise ValueError('time limit must be positive')
        return v

    model_config = {
        "env_prefix": "CAYLEY_LAB_",
        "env_file": ".env",
        "case_sensitive": False,
    }


def load_config_file(path: str) -> Dict[str, str]:
    """フラットな key=value 設定ファイルを読み込む

    Args:
        path: 設定ファイルのパス

    Returns:
        空でない値のみを含む辞書
    """
    try:
        with open(path, encoding="utf-8"):
            pass
    except OSError as e:
        raise ValidationError(f"cannot read config file {path}", {"error": str(e)})
    values = dotenv_values(path)
    loaded = {key.strip().lower(): value for key, value in values.items() if value not in (None, "")}
    logger.info(f"Loaded {len(loaded)} keys from config file {path}")
    return loaded


def build_settings(
    config_file: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> LabSettings:
    """設定ファイルとCLIフラグから LabSettings を構築

    優先順位: フラグ > 設定ファイル > 環境変数 > デフォルト
    """
    merged: Dict[str, Any] = {}
    if config_file:
        merged.update(load_config_file(config_file))
    given = {key: value for key, value in (overrides or {}).items() if value is not None}
    if any(key in given for key in G_FORMS):
        for key in G_FORMS:
            merged.pop(key, None)
    merged.update(given)
    # g は一つの形式だけで指定する
    if any(key in merged for key in ("g_r", "g_s", "g_inverse_word")) and "g_word" not in merged:
        merged["g_word"] = None
    return LabSettings(**merged)


# グローバル設定インスタンス
lab_config = LabSettings()


def get_solver_config(settings: Optional[LabSettings] = None) -> dict:
    """部分和ソルバー設定を取得"""
    settings = settings or lab_config
    return {
        "strategy": settings.strategy,
        "restarts": settings.list_merge_restarts,
        "density_factor": settings.list_merge_density_factor,
        "max_list_size": settings.list_merge_max_list_size,
    }


def get_budget_config(settings: Optional[LabSettings] = None) -> dict:
    """オラクル探索予算を取得"""
    settings = settings or lab_config
    return {
        "max_length": settings.budget_max_length,
        "max_candidates": settings.budget_max_candidates,
        "time_limit": settings.budget_time_limit,
    }


def get_padding_config(settings: Optional[LabSettings] = None) -> dict:
    """パディング設定を取得"""
    settings = settings or lab_config
    return {
        "threshold": settings.pad_threshold,
        "length": settings.pad_length,
    }
