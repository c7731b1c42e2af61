"""Binary-input AWGN channel: BPSK mapping, noise, LLRs, hard decisions."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ChannelParams:
    """Operating point of the binary-input AWGN channel.

    The noise variance is sigma^2 = (2 R Eb/N0)^-1 with Eb/N0 in linear
    scale; ``rate`` is the code rate the energy per information bit refers to.
    """

    eb_n0_db: float
    rate: float

    @property
    def sigma2(self):
        eb_n0 = 10.0 ** (self.eb_n0_db / 10.0)
        return 1.0 / (2.0 * self.rate * eb_n0)


def stream_rng(seed, stream_id):
    """Independent, skippable random stream for one (seed, stream_id) pair.

    Streams are indexed rather than sequential, so frame j is reproducible
    without generating frames 0..j-1.
    """
    if np.ndim(stream_id) == 0:
        stream_id = (int(stream_id),)
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(stream_id))
    return np.random.default_rng(ss)


def modulate(bits):
    """BPSK mapping 0 -> +1, 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


def transmit(bits, params, rng):
    """Channel LLRs L = 2(x + z)/sigma^2 for one transmitted bit array."""
    x = modulate(bits)
    sigma2 = params.sigma2
    z = rng.normal(0.0, np.sqrt(sigma2), size=x.shape)
    return 2.0 * (x + z) / sigma2


def hard_decision(llrs):
    """Sign-to-bit map B(.): positive LLR -> 0, negative -> 1, and B(0) = 0."""
    return (np.asarray(llrs) < 0).astype(np.uint8)
