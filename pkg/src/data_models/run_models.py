"""
実行設定モデル

CLI の1回の実行に必要な全ての設定（ハッシュパラメータ、シード、
ソルバー戦略、探索予算、出力先）をまとめます。
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.data_models.attack_models import SearchBudget, SolverStrategy
from src.data_models.hash_models import HashParams


class RunConfig(BaseModel):
    """再現可能な1回の実行の設定。シードが全ての乱択を決める"""
    params: HashParams = Field(..., description="ハッシュパラメータ")
    seed: int = Field(default=0, ge=0, lt=1 << 64, description="64ビットシード")
    strategy: SolverStrategy = Field(default=SolverStrategy.AUTO, description="部分和ソルバーの戦略")
    budget: SearchBudget = Field(default_factory=SearchBudget, description="探索予算")
    output_path: Optional[str] = Field(None, description="結果の出力先（省略時は標準出力）")
    record_timings: bool = Field(default=False, description="トランスクリプトに経過時間を含めるか")
    pad: bool = Field(default=False, description="短いメッセージをパディングするか")

    model_config = ConfigDict(frozen=True)
