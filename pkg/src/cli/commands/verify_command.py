"""verify サブコマンド: 2つのメッセージを4つのハッシュで再計算して比較する"""

import argparse

from src.cli.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED, handle_cli_exceptions
from src.cli.message_io import format_message, read_message, write_output
from src.cli.options import load_run_config
from src.cli.transcript import render_transcript
from src.services.hash_service import HASH_FUNCTIONS


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="re-hash two messages and compare")
    parser.add_argument("message", help="first message")
    parser.add_argument("message_prime", help="second message")
    parser.add_argument("--expect", choices=sorted(HASH_FUNCTIONS), default="H",
                        help="function whose collision is claimed (decides the exit code)")
    parser.set_defaults(handler=cmd_verify)


@handle_cli_exceptions("verify")
def cmd_verify(args: argparse.Namespace) -> int:
    _, config = load_run_config(args)
    m = read_message(args.message)
    m_prime = read_message(args.message_prime)
    verdicts = {}
    results = []
    for name in ("H", "H2", "hatH", "hatH2"):
        left = HASH_FUNCTIONS[name](m, config.params)
        right = HASH_FUNCTIONS[name](m_prime, config.params)
        verdicts[name] = left == right
        results.append((name, f"{left.render()} {'==' if verdicts[name] else '!='} {right.render()}"))
    distinct = m != m_prime
    results.append(("distinct", "yes" if distinct else "no"))
    results.append(("claim", f"{args.expect} collision {'holds' if verdicts[args.expect] and distinct else 'fails'}"))
    text = render_transcript(
        "verify",
        [("p", config.params.p.p), ("t", config.params.t), ("g", config.params.g.render()),
         ("message", format_message(m)), ("message_prime", format_message(m_prime))],
        results=results,
    )
    write_output(text, config.output_path)
    return EXIT_OK if verdicts[args.expect] and distinct else EXIT_VERIFICATION_FAILED
