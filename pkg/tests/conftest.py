"""
共通フィクスチャ

小さな素数 p=101 の標準パラメータと、シードから再現可能に生成した
20/32/36 ビットの素数、512 ビットの安全素数を提供します。
"""

import pytest

from src.data_models.affine_models import AffineMap
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams
from src.services.field_service import generate_prime, generate_safe_prime
from src.services.hash_service import default_c_rnd


@pytest.fixture(scope="session")
def p101() -> PrimeModulus:
    return PrimeModulus(p=101)


@pytest.fixture(scope="session")
def params101(p101) -> HashParams:
    """t=2, g=(6,3), c_rnd は √2 の既定値"""
    return HashParams(p=p101, t=2, g=AffineMap.of(6, 3, p101), c_rnd=default_c_rnd(p101))


@pytest.fixture(scope="session")
def zero_c_rnd_params101(p101) -> HashParams:
    return HashParams(p=p101, t=2, g=AffineMap.of(6, 3, p101), c_rnd=BitString(bits="0" * 14))


@pytest.fixture(scope="session")
def p20() -> PrimeModulus:
    return PrimeModulus(p=generate_prime(20, seed=20))


@pytest.fixture(scope="session")
def p32() -> PrimeModulus:
    return PrimeModulus(p=generate_prime(32, seed=32))


@pytest.fixture(scope="session")
def p36() -> PrimeModulus:
    return PrimeModulus(p=generate_prime(36, seed=36))


@pytest.fixture(scope="session")
def safe_p512() -> PrimeModulus:
    return PrimeModulus(p=generate_safe_prime(512, seed=512))
