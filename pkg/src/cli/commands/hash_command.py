"""hash サブコマンド: H, H2, hatH, hatH2 のいずれかでメッセージをハッシュする"""

import argparse
import logging

from src.cli.exceptions import EXIT_OK, handle_cli_exceptions
from src.cli.message_io import read_message, write_output
from src.cli.options import load_run_config
from src.config.lab_config import get_padding_config
from src.services.hash_service import HASH_FUNCTIONS, pad_short_message

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("hash", parents=[common], help="hash a message")
    parser.add_argument("function", choices=sorted(HASH_FUNCTIONS), help="hash function")
    parser.add_argument("message", help="bits, len:hex or @path")
    parser.set_defaults(handler=cmd_hash)


@handle_cli_exceptions("hash")
def cmd_hash(args: argparse.Namespace) -> int:
    """ダイジェストを "first,second" の10進と16進で出力する"""
    settings, config = load_run_config(args)
    message = read_message(args.message)
    if config.pad:
        message = pad_short_message(message, **get_padding_config(settings))
    digest = HASH_FUNCTIONS[args.function](message, config.params)
    logger.info(f"Hashed {len(message)} bits with {args.function}")
    write_output(f"{digest.render()}\nhex: {digest.render_hex()}\n", config.output_path)
    return EXIT_OK
