"""forge サブコマンド: Ĥ と Ĥ₂ の検証済み衝突ペアを作る"""

import argparse
import logging

import numpy as np

from src.cli.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED, handle_cli_exceptions
from src.cli.message_io import format_message, write_output
from src.cli.options import load_run_config
from src.cli.transcript import render_transcript
from src.data_models.forge_models import VERDICT_KEYS
from src.data_models.hash_models import HashParams
from src.services.attack_service import get_attack_service
from src.services.forge_service import ForgeService, random_insertable_g

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("forge", parents=[common], help="forge hatH / hatH2 collisions")
    parser.add_argument("--length", type=int, required=True, help="length L of the sampled message")
    parser.add_argument("--random-g", action="store_true",
                        help="draw g = H(w)^-1 for a random word w shorter than t")
    parser.set_defaults(handler=cmd_forge)


@handle_cli_exceptions("forge")
def cmd_forge(args: argparse.Namespace) -> int:
    """end_to_end_break を実行し、4つの等式検証が全て通れば 0 を返す"""
    settings, config = load_run_config(args)
    params = config.params
    if args.random_g:
        g, word = random_insertable_g(params.p, params.t, np.random.default_rng([config.seed, 1 << 32]))
        params = HashParams(p=params.p, t=params.t, g=g, c_rnd=params.c_rnd)
        logger.info(f"Using random g = H({word.bits})^-1")

    service = ForgeService(
        attack=get_attack_service(config.strategy.value),
        retries=settings.attack_retries,
        budget=config.budget,
    )
    result = service.end_to_end_break(params, args.length, seed=config.seed)
    results = [
        ("m_star", format_message(result.m_star)),
        ("m_star_prime", format_message(result.m_star_prime)),
        ("length", len(result.m_star)),
        ("b_prime", result.b_prime.bits),
        ("digest_hatH", result.digest.render()),
        ("digest_hatH2", result.digest2.render() if result.digest2 else "none"),
    ]
    results.extend((f"verdict {key}", "pass" if result.verdicts.get(key) else "fail") for key in VERDICT_KEYS)
    text = render_transcript(
        "forge",
        [("seed", config.seed), ("p", params.p.p), ("t", params.t), ("g", params.g.render()),
         ("c_rnd", result.params.c_rnd.to_hex()), ("L", args.length)],
        result.transcript,
        results,
        config.record_timings,
    )
    write_output(text, config.output_path)
    return EXIT_OK if result.all_verified else EXIT_VERIFICATION_FAILED
