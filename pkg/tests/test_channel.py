import math

import numpy as np
import pytest

from pcgmdd import ChannelParams, hard_decision, modulate, stream_rng, transmit


def qfunc(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def test_modulate_mapping():
    out = modulate(np.array([[0, 1], [1, 0]]))
    assert np.array_equal(out, [[1.0, -1.0], [-1.0, 1.0]])
    assert np.all(modulate(np.zeros((4, 4))) == 1.0)


def test_hard_decision_mapping():
    assert hard_decision(np.array([3.2, -0.1, 0.0])).tolist() == [0, 1, 0]


def test_sigma2_formula():
    params = ChannelParams(4.0, 0.8716)
    assert params.sigma2 == pytest.approx(1.0 / (2 * 0.8716 * 10**0.4))
    assert params.sigma2 == pytest.approx(0.2284, abs=5e-5)


def test_transmit_deterministic():
    bits = np.zeros((8, 8), dtype=np.uint8)
    params = ChannelParams(3.0, 0.5)
    a = transmit(bits, params, stream_rng(42, 7))
    b = transmit(bits, params, stream_rng(42, 7))
    assert np.array_equal(a, b)
    c = transmit(bits, params, stream_rng(42, 8))
    assert not np.array_equal(a, c)


def test_noiseless_limit_signs():
    bits = np.indices((16, 16)).sum(axis=0) % 2
    params = ChannelParams(60.0, 0.9)  # essentially noiseless
    llrs = transmit(bits, params, stream_rng(0, 0))
    assert np.array_equal(hard_decision(llrs), bits)


def test_empirical_ber_matches_qfunction():
    params = ChannelParams(2.0, 0.5)
    sigma = math.sqrt(params.sigma2)
    bits = np.zeros((1000, 1000), dtype=np.uint8)
    llrs = transmit(bits, params, stream_rng(5, 0))
    ber = float(np.mean(hard_decision(llrs)))
    expected = qfunc(1.0 / sigma)
    se = math.sqrt(expected * (1 - expected) / bits.size)
    assert abs(ber - expected) < 3 * se


def test_noise_variance():
    params = ChannelParams(3.0, 0.7)
    rng = stream_rng(6, 0)
    # recover noise from LLRs of the all-zero word: z = L*sigma2/2 - 1
    llrs = transmit(np.zeros(10_000_000, dtype=np.uint8), params, rng)
    z = llrs * params.sigma2 / 2.0 - 1.0
    assert abs(float(np.var(z)) / params.sigma2 - 1.0) < 0.01


def test_stream_rng_skippable():
    """Frame streams are independent of how many earlier frames were drawn."""
    a = stream_rng(9, (0, 5)).normal(size=4)
    stream_rng(9, (0, 0)).normal(size=1000)
    b = stream_rng(9, (0, 5)).normal(size=4)
    assert np.array_equal(a, b)
