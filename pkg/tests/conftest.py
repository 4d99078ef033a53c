"""
Test configuration and fixtures for congruence-lab tests
"""

import pytest

from congruence_lab.cache import ResidueCache
from congruence_lab.congruences import CheckRegistry
from congruence_lab.identities import IdentityRegistry
from congruence_lab.sequences import SequenceEngine


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-range sweeps (deselect with -m \"not slow\")")


# Golden tables
EULERIAN_ROWS = {
    1: [1],
    2: [1, 1],
    3: [1, 4, 1],
    4: [1, 11, 11, 1],
    5: [1, 26, 66, 26, 1],
    6: [1, 57, 302, 302, 57, 1],
    7: [1, 120, 1191, 2416, 1191, 120, 1],
}

EULER_NUMBERS = [1, 0, -1, 0, 5, 0, -61, 0, 1385, 0, -50521, 0, 2702765]

EHAT_NUMBERS = [1, 1, -1, -2, 5, 16, -61, -272, 1385, 7936, -50521, -353792, 2702765]

ZIGZAG_NUMBERS = [1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765]

GENOCCHI_NUMBERS = [1, -1, 0, 1, 0, -3, 0, 17, 0, -155, 0, 2073]  # G_1..G_12

TANGENT_NUMBERS = {1: 1, 3: 2, 5: 16, 7: 272, 9: 7936, 11: 353792}

SMALL_PRIMES = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


@pytest.fixture
def engine():
    """Fresh engine with no disk cache"""
    return SequenceEngine()


@pytest.fixture
def registry(engine):
    """Check registry on the fresh engine"""
    return CheckRegistry(engine)


@pytest.fixture
def identity_registry(engine):
    """Identity registry on the fresh engine"""
    return IdentityRegistry(engine)


@pytest.fixture
def cache_dir(tmp_path):
    """Empty residue cache directory"""
    path = tmp_path / "cache"
    path.mkdir()
    return path


@pytest.fixture
def residue_cache(cache_dir):
    """Residue cache rooted in a temporary directory"""
    return ResidueCache(cache_dir)


@pytest.fixture
def cached_engine(residue_cache):
    """Engine persisting modular tables to the temporary cache"""
    return SequenceEngine(residue_cache)


@pytest.fixture
def eulerian_rows():
    return EULERIAN_ROWS


@pytest.fixture
def small_primes():
    return SMALL_PRIMES
