"""
攻撃モデルのテストモジュール

ExponentSplit、部分和インスタンスと解、探索予算、トランスクリプト、
実行設定の不変条件を検証します。
"""

import pytest
from pydantic import ValidationError as PydanticValidationError

from src.data_models.attack_models import (
    AttackTranscript,
    ExponentSplit,
    SearchBudget,
    SolverStrategy,
    SubsetSumInstance,
    SubsetSumSolution,
)
from src.data_models.field_models import PrimeModulus
from src.data_models.run_models import RunConfig


class TestExponentSplit:
    """ExponentSplit のテストクラス"""

    def test_properties(self):
        split = ExponentSplit(a=3, b=5, length=8)
        assert split.n == 3
        assert split.surplus_bit == "1"
        assert split.multiplicity == 1
        assert ExponentSplit(a=2, b=2, length=4).surplus_bit == "0"

    def test_length_must_match(self):
        with pytest.raises(PydanticValidationError, match="a \\+ b must equal L"):
            ExponentSplit(a=2, b=2, length=5)

    def test_negative_counts_rejected(self):
        with pytest.raises(PydanticValidationError):
            ExponentSplit(a=-1, b=2, length=1)


class TestSubsetSum:
    """SubsetSumInstance / SubsetSumSolution のテストクラス"""

    def test_weights(self, p101):
        instance = SubsetSumInstance(n=8, target=p101.element(7), modulus=p101)
        assert instance.weights() == [1, 6, 36, 14, 84, 100, 95, 65]

    def test_target_modulus_must_match(self, p101):
        with pytest.raises(PydanticValidationError, match="instance modulus"):
            SubsetSumInstance(n=2, target=PrimeModulus(p=103).element(1), modulus=p101)

    def test_solution_is_checked(self, p101):
        instance = SubsetSumInstance(n=2, target=p101.element(7), modulus=p101)
        assert SubsetSumSolution(x=(1, 1), instance=instance).x == (1, 1)
        with pytest.raises(PydanticValidationError, match="does not hit the target"):
            SubsetSumSolution(x=(0, 1), instance=instance)
        with pytest.raises(PydanticValidationError, match="does not match n"):
            SubsetSumSolution(x=(1,), instance=instance)
        with pytest.raises(PydanticValidationError, match="0 or 1"):
            SubsetSumSolution(x=(2, 0), instance=instance)


def test_search_budget_defaults_and_bounds():
    budget = SearchBudget()
    assert (budget.max_length, budget.max_candidates, budget.time_limit) == (16, 1 << 20, 60.0)
    with pytest.raises(PydanticValidationError):
        SearchBudget(max_length=0)
    with pytest.raises(PydanticValidationError):
        SearchBudget(time_limit=-1)


def test_transcript_add_and_extend():
    transcript = AttackTranscript(seed=3)
    transcript.add("decode", {"digest": "63,27"}, {"r": 36})
    other = AttackTranscript()
    other.add("verify", verdict="pass")
    transcript.extend(other, prefix="attack.")
    assert transcript.header == "cayley-affine-lab/1"
    assert [record.stage for record in transcript.stages] == ["decode", "attack.verify"]
    assert transcript.stages[1].verdict == "pass"
    assert other.stages[0].stage == "verify"


class TestRunConfig:
    """RunConfig のテストクラス"""

    def test_defaults(self, params101):
        config = RunConfig(params=params101)
        assert config.seed == 0
        assert config.strategy == SolverStrategy.AUTO
        assert config.output_path is None
        assert config.record_timings is False

    @pytest.mark.parametrize("seed", [-1, 1 << 64])
    def test_seed_is_64_bit(self, params101, seed):
        with pytest.raises(PydanticValidationError):
            RunConfig(params=params101, seed=seed)

    def test_strategy_from_text(self, params101):
        assert RunConfig(params=params101, strategy="list-merge").strategy == SolverStrategy.LIST_MERGE
