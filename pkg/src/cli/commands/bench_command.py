"""bench サブコマンド: H の処理速度と乗算回数（≤ 2n）を計測する"""

import argparse
import logging
import time
from typing import List

import numpy as np
import pandas as pd

from src.cli.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED, handle_cli_exceptions
from src.cli.message_io import write_output
from src.cli.options import load_run_config
from src.core.exceptions import ValidationError
from src.data_models.hash_models import BitString, OperationCounter
from src.services.affine_group_service import to_output
from src.services.hash_service import hash_H, parallel_product_map

logger = logging.getLogger(__name__)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("bench", parents=[common], help="hash throughput and multiplication counts")
    parser.add_argument("--sizes", default="0,1000,100000", help="comma-separated message sizes in bits")
    parser.add_argument("--segments", type=int, default=4, help="segments for the parallel path")
    parser.add_argument("--workers", type=int, help="worker processes for the parallel path")
    parser.set_defaults(handler=cmd_bench)


def parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError("--sizes expects comma-separated integers", {"sizes": text})
    if any(size < 0 for size in sizes):
        raise ValidationError("sizes must be non-negative", {"sizes": text})
    return sizes


def bench_table(sizes: List[int], p, seed: int, segments: int, workers: int) -> pd.DataFrame:
    """サイズごとに逐次・並列の両方で計測した表"""
    rng = np.random.default_rng(seed)
    rows = []
    for size in sizes:
        message = BitString(bits="".join("1" if bit else "0" for bit in rng.integers(0, 2, size=size)))
        counter = OperationCounter()
        start = time.perf_counter()
        digest = hash_H(message, p, counter)
        seconds = time.perf_counter() - start

        start = time.perf_counter()
        parallel_digest = to_output(parallel_product_map(message, p, segments, workers))
        parallel_seconds = time.perf_counter() - start

        rows.append({
            "bits": size,
            "seconds": round(seconds, 6),
            "bits_per_second": round(size / seconds) if seconds > 0 else 0,
            "multiplications": counter.multiplications,
            "additions": counter.additions,
            "within_2n": counter.multiplications <= 2 * size and counter.additions <= 2 * size,
            "parallel_seconds": round(parallel_seconds, 6),
            "parallel_matches": parallel_digest == digest,
        })
        logger.info(f"Benchmarked {size} bits in {seconds:.3f}s")
    return pd.DataFrame(rows)


@handle_cli_exceptions("bench")
def cmd_bench(args: argparse.Namespace) -> int:
    settings, config = load_run_config(args)
    workers = args.workers if args.workers is not None else settings.bench_workers
    table = bench_table(parse_sizes(args.sizes), config.params.p, config.seed, args.segments, workers)
    write_output(table.to_string(index=False) + "\n", config.output_path)
    ok = bool(table["within_2n"].all() and table["parallel_matches"].all()) if len(table) else True
    return EXIT_OK if ok else EXIT_VERIFICATION_FAILED
