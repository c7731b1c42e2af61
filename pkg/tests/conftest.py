import numpy as np
import pytest

from pcgmdd import ComponentCode, ProductCode


@pytest.fixture(scope="session")
def bch15():
    return ComponentCode(4, 2)


@pytest.fixture(scope="session")
def codewords15(bch15):
    """Exhaustive (15,7,5) codebook, the independent oracle for decoding tests."""
    words = np.zeros((128, 15), dtype=np.uint8)
    for i in range(128):
        msg = np.array([(i >> j) & 1 for j in range(7)], dtype=np.uint8)
        words[i] = bch15.encode(msg)
    return words


@pytest.fixture(scope="session")
def codeword_ints15(codewords15):
    """Codebook as 15-bit integers for fast popcount distance checks."""
    weights = 1 << np.arange(15, dtype=np.int64)
    return [int(np.dot(w.astype(np.int64), weights)) for w in codewords15]


@pytest.fixture(scope="session")
def pc15(bch15):
    return ProductCode(bch15)


def min_distance_to_code(word_int, codeword_ints):
    return min((word_int ^ c).bit_count() for c in codeword_ints)


def bits_to_int(bits):
    weights = 1 << np.arange(len(bits), dtype=np.int64)
    return int(np.dot(np.asarray(bits, dtype=np.int64), weights))
