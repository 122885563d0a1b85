"""
cayley-affine-lab エントリーポイント

アフィン写像 Cayley ハッシュ（H, H₂, Ĥ, Ĥ₂）の評価、第二原像攻撃、
衝突偽造、検証、ベンチマークをサブコマンドとして提供します。
"""

import argparse
import logging
import sys
from typing import List, Optional

from src.cli.commands import COMMAND_MODULES
from src.cli.options import common_parser
from src.config.lab_config import lab_config

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-affine-lab",
        description="Affine-map Cayley hashes and their cryptanalysis: hash, attack, forge, verify.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_parser()
    for module in COMMAND_MODULES:
        module.register(subparsers, common)
    return parser


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or lab_config.log_level).upper(), logging.INFO),
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
