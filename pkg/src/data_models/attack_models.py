"""
攻撃モデル

指数分割、部分和問題のインスタンスと解、探索予算、攻撃トランスクリプトの
Pydanticモデルを定義します。
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.data_models.field_models import FieldElement, PrimeModulus


class SolverStrategy(str, Enum):
    """部分和ソルバーの戦略"""
    AUTO = "auto"
    EXHAUSTIVE = "exhaustive"
    MEET_IN_MIDDLE = "meet-in-middle"
    LIST_MERGE = "list-merge"


class ExponentSplit(BaseModel):
    """ハッシュの線形部分 r = 2^a·3^b から復元した 0 と 1 の個数"""
    a: int = Field(..., ge=0, description="0 の個数")
    b: int = Field(..., ge=0, description="1 の個数")
    length: int = Field(..., ge=0, description="全長 L = a + b")
    multiplicity: int = Field(default=1, ge=1, description="条件を満たした (a, b) の組の数")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_length(self):
        if self.a + self.b != self.length:
            raise ValueError(f'a + b must equal L ({self.a} + {self.b} != {self.length})')
        return self

    @property
    def n(self) -> int:
        """入れ替え可能なブロック数 min(a, b)"""
        return min(self.a, self.b)

    @property
    def surplus_bit(self) -> str:
        return "0" if self.a >= self.b else "1"


class SubsetSumInstance(BaseModel):
    """Σ x_j·6^j ≡ target (mod p), j = 0…n−1"""
    n: int = Field(..., ge=0, description="重みの数")
    target: FieldElement = Field(..., description="目標値 t")
    modulus: PrimeModulus = Field(..., description="法")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_modulus(self):
        if self.target.modulus.p != self.modulus.p:
            raise ValueError('target must be a residue of the instance modulus')
        return self

    def weights(self) -> List[int]:
        """6^j mod p (j = 0…n−1)"""
        p = self.modulus.p
        out = []
        w = 1
        for _ in range(self.n):
            out.append(w)
            w = (w * 6) % p
        return out


class SubsetSumSolution(BaseModel):
    """検証済みの 0/1 解。構築時に必ず和を検算する"""
    x: Tuple[int, ...] = Field(..., description="長さ n の 0/1 列")
    instance: SubsetSumInstance = Field(..., description="対応するインスタンス")

    model_config = ConfigDict(frozen=True)

    @field_validator('x')
    @classmethod
    def validate_bits(cls, v):
        if any(bit not in (0, 1) for bit in v):
            raise ValueError('solution entries must be 0 or 1')
        return v

    @model_validator(mode='after')
    def validate_sum(self):
        inst = self.instance
        if len(self.x) != inst.n:
            raise ValueError(f'solution length {len(self.x)} does not match n = {inst.n}')
        total = sum(w for w, bit in zip(inst.weights(), self.x) if bit) % inst.modulus.p
        if total != inst.target.value:
            raise ValueError('solution does not hit the target')
        return self


class SearchBudget(BaseModel):
    """オラクル探索と g⁻¹ 原像探索の予算"""
    max_length: int = Field(default=16, gt=0, description="探索する最大長")
    max_candidates: int = Field(default=1 << 20, gt=0, description="評価する最大候補数")
    time_limit: float = Field(default=60.0, gt=0, description="制限時間（秒）")

    model_config = ConfigDict(frozen=True)


class StageRecord(BaseModel):
    """パイプラインの1段の記録"""
    stage: str = Field(..., description="段の名前")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="入力")
    outputs: Dict[str, Any] = Field(default_factory=dict, description="出力")
    elapsed_ms: float = Field(default=0.0, description="経過時間（ミリ秒）")
    verdict: Optional[str] = Field(None, description="検証結果")


class AttackTranscript(BaseModel):
    """攻撃と偽造の段ごとの記録"""
    header: str = Field(default="cayley-affine-lab/1", description="書式バージョン")
    seed: Optional[int] = Field(None, description="乱数シード")
    stages: List[StageRecord] = Field(default_factory=list, description="段の記録")

    def add(self, stage: str, inputs: Optional[Dict[str, Any]] = None,
            outputs: Optional[Dict[str, Any]] = None, elapsed_ms: float = 0.0,
            verdict: Optional[str] = None) -> StageRecord:
        record = StageRecord(stage=stage, inputs=inputs or {}, outputs=outputs or {},
                             elapsed_ms=elapsed_ms, verdict=verdict)
        self.stages.append(record)
        return record

    def extend(self, other: "AttackTranscript", prefix: str = "") -> None:
        for record in other.stages:
            self.stages.append(record.model_copy(update={"stage": prefix + record.stage}))


class SecondPreimageResult(BaseModel):
    """検証済みの第二原像と、その導出過程"""
    message: str = Field(..., pattern=r"^[01]*$", description="第二原像 m′")
    split: ExponentSplit = Field(..., description="復元した指数分割")
    x: Tuple[int, ...] = Field(..., description="入れ替えベクトル")
    transcript: AttackTranscript = Field(default_factory=AttackTranscript, description="段ごとの記録")
