"""Iterative product decoders: iBDD, ideal iBDD, iBDD-SR, BMP-GMDD, iGMDD-SR.

All decoders alternate row and column component decoding, starting with the
rows. The binary-message decoders (iBDD, iBDD-SR, BMP-GMDD) pass only a hard
decision matrix between phases; BMP-GMDD additionally passes, per component
word, an ordered list of the d_min-1 least reliable positions. Combined
reliabilities never cross the row/column boundary except in iGMDD-SR.
"""

from dataclasses import dataclass, field

import numpy as np

from . import gmdd
from .channel import hard_decision


@dataclass(frozen=True)
class DecoderSchedule:
    """Iteration plan: ell_max total iterations, the last ``appended_ibdd`` of
    which are plain iBDD, and one positive scaling factor per remaining
    iteration (monotonically non-decreasing)."""

    ell_max: int
    appended_ibdd: int = 0
    weights: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if self.ell_max < 1:
            raise ValueError("ell_max must be >= 1")
        if not 0 <= self.appended_ibdd <= self.ell_max:
            raise ValueError("appended_ibdd must be in [0, ell_max]")
        if len(self.weights) != self.ell_max - self.appended_ibdd:
            raise ValueError(
                f"need {self.ell_max - self.appended_ibdd} weights, "
                f"got {len(self.weights)}"
            )
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        if any(b < a for a, b in zip(self.weights, self.weights[1:])):
            raise ValueError("weights must be monotonically non-decreasing")


@dataclass
class DecodeReport:
    final_array: np.ndarray
    iterations_run: int
    converged: bool
    failure_counts: list = field(default_factory=list)


def map_outcome(outcome, position_bit):
    """Map one decoded bit to +1 (bit 0) / -1 (bit 1), or 0 on decoder failure."""
    if not outcome.ok:
        return 0
    return 1 if position_bit == 0 else -1


def scaled_combine(mu_bar, channel_llr, w):
    """Combined reliability w * mu_bar + L."""
    return w * mu_bar + channel_llr


def _outcome_soft(outcome, n):
    """Vector of map_outcome values for a whole component word."""
    if not outcome.ok:
        return np.zeros(n)
    return 1.0 - 2.0 * outcome.codeword.astype(np.float64)


def _bdd_phase(comp, psi, transmitted=None):
    """One plain-iBDD half-iteration over the rows of psi, in place.

    With ``transmitted`` given (genie mode), a decoded word differing from
    the transmitted one is demoted to a failure. Returns the failure count.
    """
    failures = 0
    for i in range(psi.shape[0]):
        out = comp.bdd_decode(psi[i])
        if not out.ok:
            failures += 1
            continue
        if transmitted is not None and not np.array_equal(out.codeword, transmitted[i]):
            failures += 1
            continue
        psi[i] = out.codeword
    return failures


def _sr_phase(comp, psi, llrs, w):
    """One iBDD-SR half-iteration: BDD, then re-slice w*mu_bar + L, in place."""
    n_rows, n = psi.shape
    failures = 0
    for i in range(n_rows):
        out = comp.bdd_decode(psi[i])
        if not out.ok:
            failures += 1
        mu = scaled_combine(_outcome_soft(out, n), llrs[i], w)
        psi[i] = hard_decision(mu)
    return failures


def _bmp_phase(comp, psi, in_lists, llrs, w):
    """One BMP-GMDD half-iteration over the rows of psi, in place.

    Returns (failure count, outgoing lists for the cross orientation). The
    combined reliabilities are local to the phase; only psi bits and the
    position lists leave this function.
    """
    n_rows, n = psi.shape
    mu = np.empty((n_rows, n))
    failures = 0
    for i in range(n_rows):
        out = gmdd.gmdd_decode(comp, psi[i], in_lists[i], gmdd.HAMMING)
        if not out.ok:
            failures += 1
        mu[i] = scaled_combine(_outcome_soft(out, n), llrs[i], w)
        psi[i] = hard_decision(mu[i])
    out_lists = [
        gmdd.reliability_order(mu[:, j], comp.d_min) for j in range(n)
    ]
    return failures, out_lists


def _igmdd_phase(comp, soft, llrs, w, alphas_from_channel):
    """One iGMDD-SR half-iteration over the rows of the soft matrix, in place."""
    n_rows, n = soft.shape
    failures = 0
    for i in range(n_rows):
        incoming = soft[i]
        order = gmdd.reliability_order(incoming, comp.d_min)
        source = llrs[i] if alphas_from_channel else incoming
        alphas = gmdd.normalized_reliabilities(source)
        out = gmdd.gmdd_decode(
            comp, hard_decision(incoming), order, gmdd.GENERALIZED, alphas
        )
        if not out.ok:
            failures += 1
        soft[i] = scaled_combine(_outcome_soft(out, n), llrs[i], w)
    return failures


def ibdd(pc, channel_bits, ell_max, early_exit=True):
    """Iterative bounded distance decoding with hard-decision message passing."""
    psi = np.array(channel_bits, dtype=np.uint8)
    return _run_ibdd(pc, psi, ell_max, early_exit, transmitted=None)


def ibdd_ideal(pc, channel_bits, transmitted, ell_max, early_exit=True):
    """iBDD with a genie that suppresses miscorrections (simulation-only)."""
    psi = np.array(channel_bits, dtype=np.uint8)
    transmitted = np.asarray(transmitted, dtype=np.uint8)
    return _run_ibdd(pc, psi, ell_max, early_exit, transmitted=transmitted)


def _run_ibdd(pc, psi, ell_max, early_exit, transmitted):
    comp = pc.component
    col_truth = transmitted.T if transmitted is not None else None
    iterations = 0
    converged = False
    failure_counts = []
    for _ in range(ell_max):
        fails = _bdd_phase(comp, psi, transmitted)
        fails += _bdd_phase(comp, psi.T, col_truth)
        iterations += 1
        failure_counts.append(fails)
        if pc.is_codeword(psi):
            converged = True
            if early_exit:
                break
    return DecodeReport(psi, iterations, converged, failure_counts)


def ibdd_sr(pc, llrs, schedule, early_exit=True):
    """iBDD with scaled reliability: BDD outcomes re-sliced against the channel."""
    llrs = np.asarray(llrs, dtype=np.float64)
    comp = pc.component
    psi = hard_decision(llrs)
    iterations = 0
    converged = False
    failure_counts = []
    for w in schedule.weights:
        fails = _sr_phase(comp, psi, llrs, w)
        fails += _sr_phase(comp, psi.T, llrs.T, w)
        iterations += 1
        failure_counts.append(fails)
        if pc.is_codeword(psi):
            converged = True
            if early_exit:
                return DecodeReport(psi, iterations, converged, failure_counts)
    return _finish_with_ibdd(
        pc, psi, schedule, iterations, converged, failure_counts, early_exit
    )


def bmp_gmdd(pc, llrs, schedule, early_exit=True):
    """Binary message passing decoding based on GMDD of the component codes.

    Component decoding is Hamming-metric GMDD; each phase passes onward the
    hard decisions B(w*mu_bar + L) and, per cross-orientation component word,
    the ordered list of the d_min-1 least reliable positions ranked by the
    combined reliabilities |mu|. First-iteration lists come from the channel
    reliabilities. The trailing ``appended_ibdd`` iterations are plain iBDD.
    """
    llrs = np.asarray(llrs, dtype=np.float64)
    comp = pc.component
    psi = hard_decision(llrs)
    row_lists = [
        gmdd.reliability_order(llrs[i], comp.d_min) for i in range(pc.n)
    ]
    iterations = 0
    converged = False
    failure_counts = []
    for w in schedule.weights:
        fails, col_lists = _bmp_phase(comp, psi, row_lists, llrs, w)
        cfails, row_lists = _bmp_phase(comp, psi.T, col_lists, llrs.T, w)
        iterations += 1
        failure_counts.append(fails + cfails)
        if pc.is_codeword(psi):
            converged = True
            if early_exit:
                return DecodeReport(psi, iterations, converged, failure_counts)
    return _finish_with_ibdd(
        pc, psi, schedule, iterations, converged, failure_counts, early_exit
    )


def igmdd_sr(pc, llrs, schedule, early_exit=True, alphas_from_channel=False):
    """iGMDD-SR: GMDD components with generalized-distance selection and
    soft message passing of the combined reliabilities."""
    llrs = np.asarray(llrs, dtype=np.float64)
    comp = pc.component
    soft = llrs.copy()
    iterations = 0
    converged = False
    failure_counts = []
    for w in schedule.weights:
        fails = _igmdd_phase(comp, soft, llrs, w, alphas_from_channel)
        fails += _igmdd_phase(comp, soft.T, llrs.T, w, alphas_from_channel)
        iterations += 1
        failure_counts.append(fails)
        if pc.is_codeword(hard_decision(soft)):
            converged = True
            if early_exit:
                return DecodeReport(
                    hard_decision(soft), iterations, converged, failure_counts
                )
    psi = hard_decision(soft)
    return _finish_with_ibdd(
        pc, psi, schedule, iterations, converged, failure_counts, early_exit
    )


def _finish_with_ibdd(pc, psi, schedule, iterations, converged, failure_counts,
                      early_exit):
    """Run the trailing plain-iBDD iterations on the evolved psi state."""
    comp = pc.component
    for _ in range(schedule.appended_ibdd):
        if converged and early_exit:
            break
        fails = _bdd_phase(comp, psi)
        fails += _bdd_phase(comp, psi.T)
        iterations += 1
        failure_counts.append(fails)
        if pc.is_codeword(psi):
            converged = True
            if early_exit:
                break
    if not converged:
        converged = pc.is_codeword(psi)
    return DecodeReport(psi, iterations, converged, failure_counts)
