"""
共通オプション

全サブコマンドに共通のフラグと、フラグ・設定ファイルからの RunConfig 構築。
優先順位はフラグ > 設定ファイル > 環境変数 > デフォルトです。
"""

import argparse
import logging
from typing import Any, Dict, Tuple

from src.config.lab_config import SOLVER_STRATEGIES, LabSettings, build_settings, get_budget_config
from src.core.exceptions import ValidationError
from src.data_models.attack_models import SearchBudget, SolverStrategy
from src.data_models.field_models import parse_int_text
from src.data_models.run_models import RunConfig
from src.services.hash_service import build_hash_params

logger = logging.getLogger(__name__)


def common_parser() -> argparse.ArgumentParser:
    """サブコマンドの親パーサー（全てのデフォルトは None で、設定ファイルを上書きしない）"""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("parameters")
    group.add_argument("--config", help="flat key=value configuration file")
    group.add_argument("--p", help="prime modulus (decimal or 0x-hex)")
    group.add_argument("--t", type=int, help="g insertion period t > 1")
    group.add_argument("--g", help='g as "r,s"')
    group.add_argument("--g-word", help="g as the product of a generator word")
    group.add_argument("--g-inverse-word", help="g as the inverse of the product of a generator word")
    group.add_argument("--c-rnd", help="c_rnd constant as hex")
    group.add_argument("--seed", type=int, help="seed for every randomized step")
    group.add_argument("--strategy", choices=SOLVER_STRATEGIES, help="subset-sum solver strategy")
    group.add_argument("--budget-max-length", type=int, help="oracle and preimage search length bound")
    group.add_argument("--budget-max-candidates", type=int, help="oracle search candidate bound")
    group.add_argument("--budget-time-limit", type=float, help="oracle search time limit in seconds")
    group.add_argument("--retries", type=int, help="fresh messages tried by forge")

    output = parser.add_argument_group("output")
    output.add_argument("--out", help="write the result to this file instead of stdout")
    output.add_argument("--timings", action="store_true", default=None, help="include stage timings")
    output.add_argument("--pad", action="store_true", default=None, help="pad messages of <= 323 bits to 512")
    output.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="log level")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {
        "p": args.p,
        "t": args.t,
        "g_word": args.g_word,
        "g_inverse_word": args.g_inverse_word,
        "c_rnd": args.c_rnd,
        "seed": args.seed,
        "strategy": args.strategy,
        "budget_max_length": args.budget_max_length,
        "budget_max_candidates": args.budget_max_candidates,
        "budget_time_limit": args.budget_time_limit,
        "attack_retries": args.retries,
        "record_timings": args.timings,
        "log_level": args.log_level,
    }
    if args.g:
        parts = [part.strip() for part in args.g.split(",")]
        if len(parts) != 2:
            raise ValidationError('--g expects "r,s"', {"g": args.g})
        try:
            overrides["g_r"], overrides["g_s"] = parse_int_text(parts[0]), parse_int_text(parts[1])
        except ValueError:
            raise ValidationError('--g expects two integers "r,s"', {"g": args.g})
    return overrides


def load_settings(args: argparse.Namespace) -> LabSettings:
    try:
        return build_settings(getattr(args, "config", None), _overrides(args))
    except ValueError as e:
        raise ValidationError("invalid configuration", {"error": str(e).splitlines()[0]})


def load_run_config(args: argparse.Namespace) -> Tuple[LabSettings, RunConfig]:
    """フラグと設定ファイルから (LabSettings, RunConfig) を作る"""
    settings = load_settings(args)
    config = RunConfig(
        params=build_hash_params(settings),
        seed=settings.seed,
        strategy=SolverStrategy(settings.strategy),
        budget=SearchBudget(**get_budget_config(settings)),
        output_path=args.out,
        record_timings=settings.record_timings,
        pad=bool(args.pad),
    )
    logger.debug(f"Run config: p bits={config.params.p.bit_length}, t={config.params.t}, seed={config.seed}")
    return settings, config
