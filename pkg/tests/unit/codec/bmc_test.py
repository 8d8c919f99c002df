from random import Random

import pytest

from pyqiemi.codec import Level, bmc_decode, bmc_encode
from pyqiemi.exceptions import BmcDecodeError

L, H = Level.Low, Level.High


def test_encode_one():
    assert bmc_encode([1], initial_level=H) == [L, H]


def test_encode_zero():
    assert bmc_encode([0], initial_level=H) == [L, L]


def test_encode_one_zero():
    assert bmc_encode([1, 0], initial_level=H) == [L, H, L, L]


def test_decode_example():
    assert bmc_decode([L, H, L, L]) == [1, 0]


@pytest.mark.parametrize("initial_level", [L, H])
def test_round_trip(initial_level):
    rng = Random(1)
    for length in range(65):
        bits = [rng.randint(0, 1) for _ in range(length)]
        assert bmc_decode(bmc_encode(bits, initial_level=initial_level)) == bits


def test_boundary_transition_always_present():
    rng = Random(2)
    bits = [rng.randint(0, 1) for _ in range(200)]
    levels = bmc_encode(bits, initial_level=L)
    assert levels[0] != L
    assert all(levels[i] != levels[i - 1] for i in range(2, len(levels), 2))


def test_missing_boundary_transition():
    with pytest.raises(BmcDecodeError) as error:
        bmc_decode([H, L, L, H])
    assert error.value.bit_index == 1


def test_known_initial_level_is_checked():
    with pytest.raises(BmcDecodeError) as error:
        bmc_decode([H, L], initial_level=H)
    assert error.value.bit_index == 0


def test_lenient_decode_truncates():
    assert bmc_decode([H, L, L, H, L, H], strict=False) == [1]


def test_odd_trailing_half_bit_ignored():
    assert bmc_decode([L, H, L]) == [1]
