"""
偽造モデル

Ĥ / Ĥ₂ の衝突ペアと、その検証結果を保持する ForgeResult を定義します。
ハッシュ値の再計算による検証は forge_service が行い、ここでは形だけを確認します。
"""

from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.data_models.affine_models import AffineMap
from src.data_models.attack_models import AttackTranscript
from src.data_models.hash_models import BitString, HashParams

VERDICT_KEYS = ("hatH(m_star)", "hatH(m_star_prime)", "hatH2(m_star)", "hatH2(m_star_prime)")


class ForgeResult(BaseModel):
    """検証済みの Ĥ 衝突（および Ĥ₂ 衝突）"""
    m_star: BitString = Field(..., description="衝突するメッセージ m*")
    m_star_prime: BitString = Field(..., description="衝突するメッセージ m*′")
    digest: AffineMap = Field(..., description="共通の Ĥ 値")
    digest2: Optional[AffineMap] = Field(None, description="共通の Ĥ₂ 値（lift_to_hatH2 後）")
    b_prime: BitString = Field(..., description="挿入した g⁻¹ の原像 b′")
    params: HashParams = Field(..., description="ハッシュパラメータ")
    transcript: AttackTranscript = Field(default_factory=AttackTranscript, description="段ごとの記録")
    verdicts: Dict[str, bool] = Field(default_factory=dict, description="等式検証の結果")

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def validate_collision(self):
        if self.m_star == self.m_star_prime:
            raise ValueError('m_star and m_star_prime must differ')
        if len(self.m_star) != len(self.m_star_prime):
            raise ValueError('forged messages must have equal length')
        return self

    @property
    def lifted(self) -> bool:
        return self.digest2 is not None

    @property
    def all_verified(self) -> bool:
        return self.lifted and all(self.verdicts.get(key, False) for key in VERDICT_KEYS)
