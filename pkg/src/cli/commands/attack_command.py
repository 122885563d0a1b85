"""second-preimage サブコマンド: ハッシュ値と長さだけから第二原像を求める"""

import argparse
import logging

from src.cli.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED, handle_cli_exceptions
from src.cli.message_io import format_message, read_message, write_output
from src.cli.options import load_run_config
from src.cli.transcript import render_transcript
from src.core.exceptions import ValidationError
from src.data_models.affine_models import HashOutput
from src.data_models.hash_models import BitString
from src.services.attack_service import get_attack_service
from src.services.hash_service import hash_H

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("second-preimage", parents=[common], help="second preimage from a digest and a length")
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--digest", help='target H digest "first,second"')
    target.add_argument("--message", help="message whose digest is attacked (discarded before the attack)")
    parser.add_argument("--length", type=int, help="message length L (required with --digest)")
    parser.add_argument("--length-is-bound", action="store_true", help="treat L as an upper bound")
    parser.set_defaults(handler=cmd_second_preimage)


@handle_cli_exceptions("second-preimage")
def cmd_second_preimage(args: argparse.Namespace) -> int:
    _, config = load_run_config(args)
    p = config.params.p
    original = None
    if args.digest is not None:
        if args.length is None:
            raise ValidationError("--length is required with --digest")
        target = HashOutput.parse(args.digest, p)
        length = args.length
    else:
        original = read_message(args.message)
        target = hash_H(original, p)
        length = args.length if args.length is not None else len(original)
        logger.info(f"Computed target digest from a {len(original)}-bit message; message discarded")

    attack = get_attack_service(config.strategy.value)
    result = attack.run_second_preimage(target, length, p, seed=config.seed,
                                        length_is_bound=args.length_is_bound)
    m_prime = BitString(bits=result.message)
    verified = hash_H(m_prime, p) == target
    results = [
        ("message", format_message(m_prime)),
        ("length", len(m_prime)),
        ("digest", hash_H(m_prime, p).render()),
        ("verified", "pass" if verified else "fail"),
    ]
    if original is not None:
        results.append(("differs_from_input", "yes" if m_prime != original else "no"))
    text = render_transcript(
        "second-preimage",
        [("seed", config.seed), ("p", p.p), ("target", target.render()), ("L", length)],
        result.transcript,
        results,
        config.record_timings,
    )
    write_output(text, config.output_path)
    return EXIT_OK if verified else EXIT_VERIFICATION_FAILED
