import numpy as np
import pytest

import pcgmdd.decoders as dec
from pcgmdd import (
    ChannelParams,
    DecoderSchedule,
    bmp_gmdd,
    hard_decision,
    ibdd,
    ibdd_ideal,
    ibdd_sr,
    igmdd_sr,
    stream_rng,
    transmit,
)
from pcgmdd.bch import FAILURE, DecodeOutcome
from pcgmdd.decoders import map_outcome, scaled_combine

from conftest import bits_to_int


def noisy_frame(pc, ebn0_db, seed, frame=0):
    params = ChannelParams(ebn0_db, pc.rate)
    rng = stream_rng(seed, (0, frame))
    msg = rng.integers(0, 2, (pc.k, pc.k), dtype=np.uint8)
    array = pc.encode(msg)
    llrs = transmit(array, params, rng)
    return array, llrs


def schedule_for(pc, ebn0_db, ell_max=10, appended=2):
    scale = 2.0 / ChannelParams(ebn0_db, pc.rate).sigma2
    num = ell_max - appended
    return DecoderSchedule(
        ell_max, appended, tuple(scale * (0.4 + 0.2 * i) for i in range(num))
    )


def test_map_outcome():
    decoded = DecodeOutcome(np.zeros(4, dtype=np.uint8))
    assert map_outcome(decoded, 0) == 1
    assert map_outcome(decoded, 1) == -1
    assert map_outcome(FAILURE, 0) == 0
    assert map_outcome(FAILURE, 1) == 0


def test_scaled_combine():
    assert scaled_combine(0, -1.3, 2.0) == pytest.approx(-1.3)
    assert scaled_combine(1, -0.5, 2.0) == pytest.approx(1.5)
    # component decision overridden by a strong channel LLR
    mu = scaled_combine(-1, 3.0, 1.0)
    assert mu == pytest.approx(2.0)
    assert hard_decision(np.array([mu]))[0] == 0


def test_schedule_validation():
    DecoderSchedule(10, 2, [1] * 8)
    with pytest.raises(ValueError):
        DecoderSchedule(10, 2, [1] * 7)  # wrong weight count
    with pytest.raises(ValueError):
        DecoderSchedule(10, 2, [2, 1] + [3] * 6)  # not monotone
    with pytest.raises(ValueError):
        DecoderSchedule(10, 2, [0] + [1] * 7)  # non-positive weight
    with pytest.raises(ValueError):
        DecoderSchedule(4, 5, [])


def test_ibdd_error_free(pc15):
    rng = np.random.default_rng(40)
    array = pc15.encode(rng.integers(0, 2, (7, 7), dtype=np.uint8))
    report = ibdd(pc15, array, 10)
    assert report.converged
    assert report.iterations_run == 1
    assert np.array_equal(report.final_array, array)


def test_ibdd_single_error(pc15):
    rng = np.random.default_rng(41)
    array = pc15.encode(rng.integers(0, 2, (7, 7), dtype=np.uint8))
    corrupted = array.copy()
    corrupted[3, 11] ^= 1
    report = ibdd(pc15, corrupted, 10)
    assert report.converged and np.array_equal(report.final_array, array)


def test_ibdd_stall_pattern(pc15):
    """3x3 error core: every touched row/column sees 3 > t errors."""
    rng = np.random.default_rng(42)
    array = pc15.encode(rng.integers(0, 2, (7, 7), dtype=np.uint8))
    corrupted = array.copy()
    for i in (1, 5, 9):
        for j in (2, 6, 10):
            corrupted[i, j] ^= 1
    report = ibdd(pc15, corrupted, 10)
    assert not np.array_equal(report.final_array, array)


def miscorrectable_row(bch15, codewords15):
    """A word at distance 3 from codeword a but within BDD radius of codeword b."""
    a = codewords15[1]
    for b in codewords15:
        v = a ^ b
        if v.sum() == 5:
            word = a.copy()
            flip = np.flatnonzero(v)[:3]
            word[flip] ^= 1
            return a, b, word
    raise AssertionError("no weight-5 difference found")


def test_ibdd_ideal_blocks_miscorrection(pc15, bch15, codewords15):
    a, b, word = miscorrectable_row(bch15, codewords15)
    out = bch15.bdd_decode(word)
    assert out.ok and np.array_equal(out.codeword, b)  # genuine miscorrection

    # place the corrupted row into an otherwise clean codeword array
    rng = np.random.default_rng(43)
    msg = rng.integers(0, 2, (7, 7), dtype=np.uint8)
    msg[2] = a[:7]
    array = pc15.encode(msg)
    assert np.array_equal(array[2], a)  # systematic row embedding
    corrupted = array.copy()
    corrupted[2] = word
    plain = ibdd(pc15, corrupted.copy(), 1, early_exit=False)
    genie = ibdd_ideal(pc15, corrupted.copy(), array, 1, early_exit=False)
    # the genie counts the miscorrected row as a failure, plain iBDD does not
    assert genie.failure_counts[0] > plain.failure_counts[0]
    assert np.array_equal(genie.final_array, array)


def test_ibdd_ideal_error_free_matches_ibdd(pc15):
    rng = np.random.default_rng(44)
    array = pc15.encode(rng.integers(0, 2, (7, 7), dtype=np.uint8))
    a = ibdd(pc15, array, 5)
    b = ibdd_ideal(pc15, array, array, 5)
    assert np.array_equal(a.final_array, b.final_array)
    assert a.converged and b.converged


def test_ideal_dominates_ibdd(pc15):
    wins_ideal = wins_plain = 0
    for f in range(150):
        array, llrs = noisy_frame(pc15, 2.0, seed=45, frame=f)
        hd = hard_decision(llrs)
        wins_plain += np.array_equal(ibdd(pc15, hd, 10).final_array, array)
        wins_ideal += np.array_equal(
            ibdd_ideal(pc15, hd, array, 10).final_array, array
        )
    assert wins_ideal >= wins_plain


def test_ibdd_sr_large_weight_limit(pc15):
    """Huge w: successful components emit their BDD bits, failures emit B(L)."""
    array, llrs = noisy_frame(pc15, 2.0, seed=46)
    schedule = DecoderSchedule(1, 0, [1e6])
    comp = pc15.component
    report = ibdd_sr(pc15, llrs, schedule, early_exit=False)
    # reconstruct the expected first row phase by hand
    psi = hard_decision(llrs)
    expect = psi.copy()
    for i in range(pc15.n):
        out = comp.bdd_decode(psi[i])
        expect[i] = out.codeword if out.ok else hard_decision(llrs[i])
    # then the column phase on the row output
    for j in range(pc15.n):
        out = comp.bdd_decode(expect[:, j])
        expect[:, j] = out.codeword if out.ok else hard_decision(llrs[:, j])
    assert np.array_equal(report.final_array, expect)


def test_ibdd_sr_all_failures_pass_channel_through(pc15, monkeypatch):
    array, llrs = noisy_frame(pc15, 2.0, seed=47)
    monkeypatch.setattr(
        type(pc15.component), "bdd_decode", lambda self, w: FAILURE
    )
    schedule = DecoderSchedule(1, 0, [2.0])
    report = ibdd_sr(pc15, llrs, schedule, early_exit=False)
    assert np.array_equal(report.final_array, hard_decision(llrs))


def test_noiseless_convergence_all_decoders(pc15):
    rng = np.random.default_rng(48)
    array = pc15.encode(rng.integers(0, 2, (7, 7), dtype=np.uint8))
    llrs = 50.0 * (1.0 - 2.0 * array.astype(np.float64))
    schedule = schedule_for(pc15, 2.0)
    for report in (
        ibdd(pc15, hard_decision(llrs), 10),
        ibdd_sr(pc15, llrs, schedule),
        bmp_gmdd(pc15, llrs, schedule),
        igmdd_sr(pc15, llrs, schedule),
    ):
        assert report.converged
        assert np.array_equal(report.final_array, array)


def test_bmp_beyond_bdd_row_correction(pc15, bch15, codewords15, codeword_ints15):
    """A row with t+1 channel errors inside the least reliable positions is
    corrected in the first row phase."""
    from test_gmdd import make_beyond_bdd_fixtures

    rng = np.random.default_rng(49)
    word, order, w = make_beyond_bdd_fixtures(
        rng, codewords15, codeword_ints15, 1
    )[0]
    msg = rng.integers(0, 2, (7, 7), dtype=np.uint8)
    msg[0] = w[:7]
    array = pc15.encode(msg)
    assert np.array_equal(array[0], w)
    # reliability layout: erroneous row positions least reliable, all else strong
    llrs = 20.0 * (1.0 - 2.0 * array.astype(np.float64))
    row_llr = 8.0 * (1.0 - 2.0 * word.astype(np.float64))
    row_llr[order] *= 0.05  # the 4 listed positions are least reliable
    llrs[0] = row_llr
    schedule = DecoderSchedule(10, 2, [30.0] * 8)
    report = bmp_gmdd(pc15, llrs, schedule)
    assert report.converged
    assert np.array_equal(report.final_array, array)
    assert not bch15.bdd_decode(hard_decision(llrs[0])).ok


def test_bmp_degenerate_schedule_equals_ibdd(pc15):
    """appended_ibdd = ell_max turns BMP-GMDD into iBDD from B(L)."""
    for f in range(10):
        array, llrs = noisy_frame(pc15, 2.0, seed=50, frame=f)
        schedule = DecoderSchedule(10, 10, [])
        a = bmp_gmdd(pc15, llrs, schedule)
        b = ibdd(pc15, hard_decision(llrs), 10)
        assert np.array_equal(a.final_array, b.final_array)
        assert a.iterations_run == b.iterations_run


def test_bmp_scale_invariance(pc15):
    """Scaling L and w by the same positive constant changes nothing."""
    array, llrs = noisy_frame(pc15, 1.5, seed=51)
    weights = tuple(2.0 + 0.5 * i for i in range(8))
    c = 7.3
    a = bmp_gmdd(pc15, llrs, DecoderSchedule(10, 2, weights))
    b = bmp_gmdd(
        pc15, c * llrs, DecoderSchedule(10, 2, tuple(c * w for w in weights))
    )
    assert np.array_equal(a.final_array, b.final_array)
    assert a.failure_counts == b.failure_counts


def test_bmp_gmdd_call_counts(pc15, monkeypatch):
    """n GMDD calls per phase, each making t+1 component decoding attempts."""
    import pcgmdd.gmdd as gmdd_mod

    gmdd_calls = []
    orig = gmdd_mod.gmdd_decode
    monkeypatch.setattr(
        dec.gmdd, "gmdd_decode",
        lambda *a, **k: (gmdd_calls.append(1), orig(*a, **k))[1],
    )
    array, llrs = noisy_frame(pc15, 2.0, seed=52)
    schedule = DecoderSchedule(1, 0, [3.0])
    bmp_gmdd(pc15, llrs, schedule, early_exit=False)
    assert len(gmdd_calls) == 2 * pc15.n  # one row phase + one column phase


def test_binary_message_contract(pc15):
    """The inter-phase interface of a BMP phase is bits plus position lists."""
    array, llrs = noisy_frame(pc15, 2.0, seed=53)
    psi = hard_decision(llrs)
    lists = [np.argsort(np.abs(llrs[i]), kind="stable")[:4] for i in range(15)]
    fails, out_lists = dec._bmp_phase(pc15.component, psi, lists, llrs, 3.0)
    assert psi.dtype == np.uint8
    assert set(np.unique(psi)) <= {0, 1}
    assert len(out_lists) == 15
    for lst in out_lists:
        assert lst.shape == (4,)
        assert np.issubdtype(lst.dtype, np.integer)
        assert len(set(lst.tolist())) == 4


def test_early_exit_soundness(pc15):
    for f in range(30):
        array, llrs = noisy_frame(pc15, 2.5, seed=54, frame=f)
        schedule = schedule_for(pc15, 2.5)
        report = bmp_gmdd(pc15, llrs, schedule)
        if report.converged:
            assert pc15.is_codeword(report.final_array)
        assert report.iterations_run <= schedule.ell_max


def test_igmdd_equal_magnitude_matches_bmp_component(pc15, bch15):
    """With equal-magnitude incoming reliabilities, the generalized-distance
    selection equals the Hamming selection."""
    from pcgmdd.gmdd import GENERALIZED, HAMMING, gmdd_decode

    rng = np.random.default_rng(55)
    for _ in range(200):
        word = rng.integers(0, 2, 15, dtype=np.uint8)
        order = rng.permutation(15)[:4]
        h = gmdd_decode(bch15, word, order, HAMMING)
        g = gmdd_decode(bch15, word, order, GENERALIZED, np.ones(15))
        assert h.ok == g.ok
        if h.ok:
            assert np.array_equal(h.codeword, g.codeword)


def test_failure_pass_through_is_channel_hard_decision(pc15, monkeypatch):
    """With mu_bar = 0 everywhere the update reduces every message to B(L)."""
    array, llrs = noisy_frame(pc15, 2.0, seed=56)
    monkeypatch.setattr(dec.gmdd, "gmdd_decode", lambda *a, **k: FAILURE)
    schedule = DecoderSchedule(1, 0, [5.0])
    report = bmp_gmdd(pc15, llrs, schedule, early_exit=False)
    assert np.array_equal(report.final_array, hard_decision(llrs))
