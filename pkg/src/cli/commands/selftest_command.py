"""selftest サブコマンド: 高速実装を素朴なオラクルと小さなサイズで突き合わせる"""

import argparse
import itertools
import logging
from typing import Dict, Tuple

import pandas as pd

from src.cli.exceptions import EXIT_OK, EXIT_VERIFICATION_FAILED, handle_cli_exceptions
from src.cli.message_io import write_output
from src.core.exceptions import UnsolvableInstanceError
from src.data_models.affine_models import AffineMap
from src.data_models.attack_models import ExponentSplit, SolverStrategy, SubsetSumInstance
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams
from src.services.attack_service import canonical_word
from src.services.field_service import mod_pow
from src.services.hash_service import default_c_rnd, hash_H, hash_hatH, product_map
from src.services.oracle_service import naive_hash, naive_hatH
from src.services.subset_sum_service import SubsetSumSolver

logger = logging.getLogger(__name__)

SELFTEST_PRIMES = (101, 1009)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("selftest", parents=[common], help="oracle equivalence checks")
    parser.add_argument("--max-length", type=int, default=8, help="check all strings up to this length")
    parser.set_defaults(handler=cmd_selftest)


def _hash_checks(p: PrimeModulus, max_length: int) -> Dict[str, Tuple[int, int]]:
    params = HashParams(p=p, t=3, g=AffineMap.of(6, 3, p), c_rnd=default_c_rnd(p))
    counts = {"H == naive_hash": [0, 0], "hatH == naive_hatH": [0, 0], "exponent law": [0, 0]}
    two, three = p.element(2), p.element(3)
    for length in range(max_length + 1):
        for letters in itertools.product("01", repeat=length):
            m = BitString(bits="".join(letters))
            expected_r = (mod_pow(two, m.count_zeros()) * mod_pow(three, m.count_ones())).value
            checks = {
                "H == naive_hash": hash_H(m, p) == naive_hash(m, p),
                "hatH == naive_hatH": hash_hatH(m, params) == naive_hatH(m, params),
                "exponent law": product_map(m, p).r.value == expected_r,
            }
            for name, ok in checks.items():
                counts[name][0] += int(ok)
                counts[name][1] += 1
    return {f"{name} (p={p.p})": (passed, total) for name, (passed, total) in counts.items()}


def _swap_delta_check(p: PrimeModulus, max_n: int) -> Tuple[int, int]:
    passed = total = 0
    for n in range(1, max_n + 1):
        split = ExponentSplit(a=n, b=n, length=2 * n)
        base = canonical_word(split)
        u = product_map(base, p).s.value
        for j in range(n):
            swapped = BitString(bits=base.bits[:2 * j] + "10" + base.bits[2 * j + 2:])
            passed += int(product_map(swapped, p).s == mod_pow(p.element(6), j) + u)
            total += 1
    return passed, total


def _solver_agreement(p: PrimeModulus, max_n: int) -> Tuple[int, int]:
    exhaustive = SubsetSumSolver(SolverStrategy.EXHAUSTIVE)
    meet = SubsetSumSolver(SolverStrategy.MEET_IN_MIDDLE)
    passed = total = 0
    for n in range(max_n + 1):
        for target in range(p.p):
            instance = SubsetSumInstance(n=n, target=p.element(target), modulus=p)
            outcomes = []
            for solver in (exhaustive, meet):
                try:
                    solver.solve(instance)
                    outcomes.append(True)
                except UnsolvableInstanceError:
                    outcomes.append(False)
            passed += int(outcomes[0] == outcomes[1])
            total += 1
    return passed, total


def selftest_table(max_length: int) -> pd.DataFrame:
    results: Dict[str, Tuple[int, int]] = {}
    for prime in SELFTEST_PRIMES:
        results.update(_hash_checks(PrimeModulus(p=prime), max_length))
    p101 = PrimeModulus(p=101)
    results["swap delta (p=101)"] = _swap_delta_check(p101, 8)
    results["exhaustive == meet-in-middle (p=101)"] = _solver_agreement(p101, 8)
    rows = [{"check": name, "passed": passed, "total": total, "ok": passed == total}
            for name, (passed, total) in results.items()]
    return pd.DataFrame(rows)


@handle_cli_exceptions("selftest")
def cmd_selftest(args: argparse.Namespace) -> int:
    table = selftest_table(args.max_length)
    write_output(table.to_string(index=False) + "\n", args.out)
    failed = int((~table["ok"]).sum())
    if failed:
        logger.error(f"{failed} selftest checks failed")
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK
