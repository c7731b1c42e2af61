"""Generalized minimum distance decoding of one component word.

A GMD decode runs one plain BDD attempt plus t error-erasure attempts with
progressively fewer erasures of the least reliable positions, then picks the
candidate minimizing either the reliability-weighted generalized distance or
the plain Hamming distance.
"""

import numpy as np

from .bch import FAILURE, DecodeOutcome

HAMMING = "hamming"
GENERALIZED = "generalized"


def erasure_sizes(d_min):
    """Erasure counts for the t error-erasure trials, largest first.

    {d_min-1, d_min-3, ..., 2} for odd d_min, {d_min-1, d_min-3, ..., 3}
    for even d_min; t entries either way.
    """
    if d_min < 2:
        raise ValueError("d_min must be >= 2")
    return list(range(d_min - 1, 1, -2))


def normalized_reliabilities(reliabilities):
    """Per-position reliabilities scaled so the largest equals 1."""
    reliabilities = np.abs(np.asarray(reliabilities, dtype=np.float64))
    peak = reliabilities.max()
    if peak == 0.0:
        return reliabilities
    return reliabilities / peak


def reliability_order(reliabilities, d_min):
    """The d_min-1 least reliable positions, least reliable first.

    Ties in |reliability| rank the lower index as less reliable.
    """
    reliabilities = np.abs(np.asarray(reliabilities, dtype=np.float64))
    return np.argsort(reliabilities, kind="stable")[: d_min - 1]


def generalized_distance(word, codeword, alphas):
    """Reliability-weighted distance: sum(1-a) over agreements + sum(1+a) over differences."""
    word = np.asarray(word)
    codeword = np.asarray(codeword)
    alphas = np.asarray(alphas, dtype=np.float64)
    diff = word != codeword
    return float(np.sum(1.0 - alphas[~diff]) + np.sum(1.0 + alphas[diff]))


def gmdd_decode(code, word, order, metric=HAMMING, alphas=None):
    """GMD decoding of one component word.

    ``order`` lists the d_min-1 least reliable positions, least reliable
    first. With metric="hamming" the final selection minimizes the Hamming
    distance to the input word; with metric="generalized" it minimizes the
    generalized distance using ``alphas`` (normalized reliabilities).

    Hamming ties select the candidate produced by the trial with fewer
    erasures, remaining ties the lexicographically smaller codeword.
    """
    word = np.asarray(word, dtype=np.uint8)
    order = np.asarray(order, dtype=np.int64)
    if order.shape != (code.d_min - 1,):
        raise ValueError(f"order must list exactly d_min-1 = {code.d_min - 1} positions")
    if metric == GENERALIZED:
        if alphas is None:
            raise ValueError("generalized metric requires alphas")
        alphas = np.asarray(alphas, dtype=np.float64)
    elif metric != HAMMING:
        raise ValueError(f"unknown metric {metric!r}")

    # candidate codeword -> smallest erasure count that produced it
    candidates = {}

    def add(outcome, n_erasures):
        if outcome.ok:
            key = outcome.codeword.tobytes()
            if key not in candidates or n_erasures < candidates[key][1]:
                candidates[key] = (outcome.codeword, n_erasures)

    add(code.bdd_decode(word), 0)
    for m in erasure_sizes(code.d_min):
        add(code.erasure_decode(word, order[:m]), m)

    if not candidates:
        return FAILURE

    def sort_key(entry):
        codeword, n_erasures = entry
        if metric == HAMMING:
            dist = int(np.count_nonzero(word != codeword))
        else:
            dist = generalized_distance(word, codeword, alphas)
        return (dist, n_erasures, codeword.tobytes())

    best, _ = min(candidates.values(), key=sort_key)
    return DecodeOutcome(best)
