"""Shared fixtures: fixture paths, small example games and backend switching."""

from pathlib import Path

import pytest

from paramsoc import kernels
from paramsoc.io import parse_profile
from paramsoc.hedonic import HedonicInstance, Partition
from paramsoc.profiles import PreferenceProfile

FIXTURES = Path(__file__).parent / "fixtures"

FRIEND_ARCS = [(0, 1), (1, 0), (0, 2), (2, 0), (3, 1), (2, 3)]
ADDITIVE_UTILS = {(0, 2): -2, (2, 0): 1, (2, 3): -1, (0, 1): 2, (1, 3): 1, (1, 2): -1}


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    with kernels.using_backend(request.param):
        yield request.param


@pytest.fixture
def linear_committee_profile() -> PreferenceProfile:
    return parse_profile((FIXTURES / "committee_5x4.linear").read_text())


@pytest.fixture
def approval_committee_profile() -> PreferenceProfile:
    return parse_profile((FIXTURES / "committee_5x5.approval").read_text())


@pytest.fixture
def small_rankings() -> PreferenceProfile:
    return parse_profile((FIXTURES / "rankings_4x3.linear").read_text())


@pytest.fixture
def friends_fa() -> HedonicInstance:
    return HedonicInstance.friends(4, FRIEND_ARCS, "fa")


@pytest.fixture
def friends_ea() -> HedonicInstance:
    return HedonicInstance.friends(4, FRIEND_ARCS, "ea")


@pytest.fixture
def additive4() -> HedonicInstance:
    return HedonicInstance.additive(4, ADDITIVE_UTILS)


def part(*blocks) -> Partition:
    """Partition from 1-based agent lists."""
    return Partition.from_lists([[a - 1 for a in b] for b in blocks])
