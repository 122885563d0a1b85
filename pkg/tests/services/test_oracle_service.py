import itertools
from collections import defaultdict

import numpy as np
import pytest

from src.core.exceptions import SearchExhaustedError, ValidationError
from src.data_models.affine_models import AffineMap
from src.data_models.attack_models import SearchBudget
from src.data_models.field_models import PrimeModulus
from src.data_models.hash_models import BitString, HashParams
from src.services.hash_service import default_c_rnd, hash_H, hash_H2, hash_hatH
from src.services.oracle_service import (
    exhaustive_collision,
    exhaustive_preimage,
    naive_hash,
    naive_hatH,
    naive_product,
)


def test_naive_evaluators(p101, params101):
    assert naive_hash(BitString(bits="01"), p101).pair() == (9, 3)
    assert naive_hash(BitString(), p101).pair() == (1, 0)
    assert naive_product(BitString(bits="0110"), p101).pair() == (36, 27)
    assert naive_hatH(BitString(bits="10"), params101).pair() == (36, 22)
    assert naive_hatH(BitString(bits="0"), params101).pair() == (2, 1)


@pytest.mark.parametrize("pair,word", [((1, 0), ""), ((2, 1), "0"), ((6, 3), "01"), ((6, 4), "10")])
def test_exhaustive_preimage(p101, pair, word):
    assert exhaustive_preimage(AffineMap.of(*pair, p101), p101).bits == word


def test_exhaustive_preimage_exhausted(p101):
    with pytest.raises(SearchExhaustedError, match="none found <= 1"):
        exhaustive_preimage(AffineMap.of(17, 50, p101), p101, SearchBudget(max_length=1))


def test_exhaustive_collision_H(p101):
    m, m_prime = exhaustive_collision(p101, budget=SearchBudget(max_length=14))
    assert m != m_prime
    assert len(m) <= len(m_prime)
    assert hash_H(m, p101) == hash_H(m_prime, p101)


def test_exhaustive_collision_same_length(p101):
    m, m_prime = exhaustive_collision(p101, same_length=True, budget=SearchBudget(max_length=14))
    assert len(m) == len(m_prime)
    assert hash_H(m, p101) == hash_H(m_prime, p101)


def test_balanced_four_bit_words_exhausted(p101):
    with pytest.raises(SearchExhaustedError, match="none found <= 4"):
        exhaustive_collision(p101, same_length=True, balanced_only=True, budget=SearchBudget(max_length=4))


def test_exhaustive_collision_hatH(p101, params101):
    m, m_prime = exhaustive_collision(p101, params101, which="hatH", budget=SearchBudget(max_length=14))
    assert m != m_prime
    assert hash_hatH(m, params101) == hash_hatH(m_prime, params101)


def test_candidate_budget(p101):
    with pytest.raises(SearchExhaustedError):
        exhaustive_collision(p101, budget=SearchBudget(max_length=14, max_candidates=10))


def test_invalid_arguments(p101):
    with pytest.raises(ValidationError, match="'H' or 'hatH'"):
        exhaustive_collision(p101, which="H2")
    with pytest.raises(ValidationError, match="needs hash parameters"):
        exhaustive_collision(p101, which="hatH")


def _all_strings(max_length):
    for length in range(max_length + 1):
        for letters in itertools.product("01", repeat=length):
            yield BitString(bits="".join(letters))


@pytest.mark.slow
@pytest.mark.parametrize("prime", [101, 1009])
def test_hash_H_matches_naive_on_every_short_string(prime):
    p = PrimeModulus(p=prime)
    for m in _all_strings(12):
        assert hash_H(m, p) == naive_hash(m, p)


@pytest.mark.slow
def test_hash_H_matches_naive_at_512_bits(safe_p512):
    rng = np.random.default_rng(4096)
    for _ in range(200):
        m = BitString(bits="".join("1" if bit else "0" for bit in rng.integers(0, 2, size=4096)))
        assert hash_H(m, safe_p512) == naive_hash(m, safe_p512)


@pytest.mark.parametrize("prime,max_length", [(5, 8), (101, 14)])
def test_every_H_collision_is_an_H2_collision(prime, max_length):
    """長さが違っても H が一致すれば H₂ も一致する"""
    p = PrimeModulus(p=prime)
    params = HashParams(p=p, t=2, g=AffineMap.of(4, 3, p), c_rnd=default_c_rnd(p))
    classes = defaultdict(set)
    for m in _all_strings(max_length):
        classes[hash_H(m, p).pair()].add(hash_H2(m, params).pair())
    assert all(len(digests2) == 1 for digests2 in classes.values())
    assert len(classes) < 2 ** (max_length + 1) - 1


def test_oracle_collisions_lift_to_H2():
    p5 = PrimeModulus(p=5)
    params = HashParams(p=p5, t=2, g=AffineMap.of(4, 3, p5), c_rnd=default_c_rnd(p5))
    for same_length in (False, True):
        m, m_prime = exhaustive_collision(p5, same_length=same_length, budget=SearchBudget(max_length=8))
        assert hash_H(m, p5) == hash_H(m_prime, p5)
        assert hash_H2(m, params) == hash_H2(m_prime, params)
