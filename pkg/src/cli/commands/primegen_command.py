"""primegen サブコマンド: シードから再現可能な（安全）素数を出力する"""

import argparse

from src.cli.exceptions import EXIT_OK, handle_cli_exceptions
from src.cli.message_io import write_output
from src.services.field_service import generate_prime, generate_safe_prime, is_safe_prime


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("primegen", parents=[common], help="generate a reproducible prime")
    parser.add_argument("--bits", type=int, required=True, help="bit length of the prime")
    parser.add_argument("--safe", action="store_true", help="generate a safe prime p = 2q + 1")
    parser.set_defaults(handler=cmd_primegen)


@handle_cli_exceptions("primegen")
def cmd_primegen(args: argparse.Namespace) -> int:
    seed = args.seed or 0
    prime = generate_safe_prime(args.bits, seed) if args.safe else generate_prime(args.bits, seed)
    text = f"{prime}\nhex: {prime:#x}\nsafe: {'yes' if is_safe_prime(prime) else 'no'}\n"
    write_output(text, args.out)
    return EXIT_OK
