"""Monte Carlo BER/FER harness and scaling-factor optimization.

Frames are independent work units: frame j of sweep point p draws from the
random stream keyed by (seed, p, j), so results are bit-identical regardless
of worker count or scheduling order.
"""

import csv
import dataclasses
import json
import subprocess
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import decoders
from .bch import ComponentCode
from .channel import ChannelParams, hard_decision, stream_rng, transmit
from .product import ProductCode

DECODER_NAMES = ("ibdd", "ibdd-ideal", "ibdd-sr", "bmp-gmdd", "igmdd-sr", "none")
_SCHEDULED = ("ibdd-sr", "bmp-gmdd", "igmdd-sr")

_BATCH_FRAMES = 64  # stop-rule granularity, independent of worker count


class ConfigError(ValueError):
    """Inconsistent simulation configuration."""


@dataclass(frozen=True)
class SweepConfig:
    m: int
    t_design: int
    extended: bool
    decoder: str
    ebn0_db: tuple
    ell_max: int = 10
    appended_ibdd: int = 2
    weights: tuple = ()
    seed: int = 0
    min_errors: int = 100
    max_frames: int = 10_000
    all_zero: bool = False
    early_exit: bool = True
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "ebn0_db", tuple(float(x) for x in self.ebn0_db))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))


@dataclass
class BerRecord:
    eb_n0_db: float
    frames: int
    frame_errors: int
    bits: int
    bit_errors: int
    ber: float
    fer: float
    seconds: float


def _validate(config):
    if config.decoder not in DECODER_NAMES:
        raise ConfigError(f"unknown decoder {config.decoder!r}")
    if not config.ebn0_db:
        raise ConfigError("empty Eb/N0 grid")
    if any(b <= a for a, b in zip(config.ebn0_db, config.ebn0_db[1:])):
        raise ConfigError("Eb/N0 grid must be strictly increasing")
    if config.min_errors < 1 or config.max_frames < 1:
        raise ConfigError("stop rule must be positive")
    if config.workers < 1:
        raise ConfigError("workers must be >= 1")
    if config.decoder in _SCHEDULED:
        try:
            _schedule(config)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    elif config.decoder in ("ibdd", "ibdd-ideal") and config.weights:
        raise ConfigError(f"{config.decoder} takes no weights")


def _schedule(config):
    return decoders.DecoderSchedule(
        config.ell_max, config.appended_ibdd, config.weights
    )


_PC_CACHE = {}


def _product_code(m, t_design, extended):
    key = (m, t_design, extended)
    if key not in _PC_CACHE:
        _PC_CACHE[key] = ProductCode(ComponentCode(m, t_design, extended=extended))
    return _PC_CACHE[key]


def _simulate_frames(config, point_idx, ebn0_db, start, count):
    """Simulate frames [start, start+count); returns (bits, bit_errors, frame_errors)."""
    if config.decoder == "none":
        return _simulate_uncoded(config, point_idx, ebn0_db, start, count)
    pc = _product_code(config.m, config.t_design, config.extended)
    params = ChannelParams(ebn0_db, pc.rate)
    schedule = _schedule(config) if config.decoder in _SCHEDULED else None
    k = pc.k
    bits = bit_errors = frame_errors = 0
    for frame in range(start, start + count):
        rng = stream_rng(config.seed, (point_idx, frame))
        if config.all_zero:
            message = np.zeros((k, k), dtype=np.uint8)
            array = np.zeros((pc.n, pc.n), dtype=np.uint8)
        else:
            message = rng.integers(0, 2, size=(k, k), dtype=np.uint8)
            array = pc.encode(message)
        llrs = transmit(array, params, rng)
        if config.decoder == "ibdd":
            report = decoders.ibdd(
                pc, hard_decision(llrs), config.ell_max, early_exit=config.early_exit
            )
        elif config.decoder == "ibdd-ideal":
            report = decoders.ibdd_ideal(
                pc, hard_decision(llrs), array, config.ell_max,
                early_exit=config.early_exit,
            )
        elif config.decoder == "ibdd-sr":
            report = decoders.ibdd_sr(pc, llrs, schedule, early_exit=config.early_exit)
        elif config.decoder == "bmp-gmdd":
            report = decoders.bmp_gmdd(pc, llrs, schedule, early_exit=config.early_exit)
        else:
            report = decoders.igmdd_sr(pc, llrs, schedule, early_exit=config.early_exit)
        errs = int(np.count_nonzero(report.final_array[:k, :k] != message))
        bits += k * k
        bit_errors += errs
        frame_errors += errs > 0
    return bits, bit_errors, frame_errors


def _simulate_uncoded(config, point_idx, ebn0_db, start, count):
    """Uncoded BPSK reference (rate 1): hard decisions straight off the channel."""
    n = 1 << config.m
    params = ChannelParams(ebn0_db, 1.0)
    bits = bit_errors = frame_errors = 0
    for frame in range(start, start + count):
        rng = stream_rng(config.seed, (point_idx, frame))
        message = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        llrs = transmit(message, params, rng)
        errs = int(np.count_nonzero(hard_decision(llrs) != message))
        bits += n * n
        bit_errors += errs
        frame_errors += errs > 0
    return bits, bit_errors, frame_errors


def run_sweep(config):
    """Simulate every grid point until the stop rule; one BerRecord each."""
    _validate(config)
    records = []
    pool = (
        ProcessPoolExecutor(max_workers=config.workers)
        if config.workers > 1
        else None
    )
    try:
        for point_idx, ebn0 in enumerate(config.ebn0_db):
            t0 = time.perf_counter()
            bits = bit_errors = frame_errors = frames = 0
            while bit_errors < config.min_errors and frames < config.max_frames:
                count = min(_BATCH_FRAMES, config.max_frames - frames)
                for b, be, fe in _run_batch(pool, config, point_idx, ebn0,
                                            frames, count):
                    bits += b
                    bit_errors += be
                    frame_errors += fe
                frames += count
            records.append(
                BerRecord(
                    eb_n0_db=ebn0,
                    frames=frames,
                    frame_errors=frame_errors,
                    bits=bits,
                    bit_errors=bit_errors,
                    ber=bit_errors / bits if bits else 0.0,
                    fer=frame_errors / frames if frames else 0.0,
                    seconds=time.perf_counter() - t0,
                )
            )
    finally:
        if pool is not None:
            pool.shutdown()
    return records


def _run_batch(pool, config, point_idx, ebn0, start, count):
    if pool is None:
        yield _simulate_frames(config, point_idx, ebn0, start, count)
        return
    chunks = []
    per = -(-count // config.workers)
    offset = 0
    while offset < count:
        size = min(per, count - offset)
        chunks.append(
            pool.submit(
                _simulate_frames, config, point_idx, ebn0, start + offset, size
            )
        )
        offset += size
    for fut in chunks:
        yield fut.result()


@dataclass(frozen=True)
class WeightOptimizationConfig:
    m: int
    t_design: int
    extended: bool
    decoder: str
    eb_n0_db: float
    grid: tuple
    ell_max: int = 10
    appended_ibdd: int = 2
    monotone: bool = True
    frames: int = 200
    seed: int = 0
    max_passes: int = 4
    workers: int = 1


@dataclass
class WeightOptimizationResult:
    weights: tuple
    ber: float
    stderr: float


def optimize_weights(config):
    """Coordinate ascent over the candidate grid, minimizing Monte Carlo BER.

    All evaluations reuse the same frame set (common random numbers). With
    the monotone flag set, only non-decreasing weight vectors are visited.
    """
    if config.decoder not in _SCHEDULED:
        raise ConfigError(f"decoder {config.decoder!r} takes no weights")
    grid = tuple(sorted(float(g) for g in config.grid))
    if not grid or grid[0] <= 0:
        raise ConfigError("candidate grid must be positive and non-empty")
    num = config.ell_max - config.appended_ibdd
    if num < 1:
        raise ConfigError("schedule leaves no weighted iterations")

    cache = {}

    def evaluate(weights):
        key = tuple(weights)
        if key not in cache:
            sweep = SweepConfig(
                m=config.m,
                t_design=config.t_design,
                extended=config.extended,
                decoder=config.decoder,
                ebn0_db=(config.eb_n0_db,),
                ell_max=config.ell_max,
                appended_ibdd=config.appended_ibdd,
                weights=key,
                seed=config.seed,
                min_errors=10 ** 12,  # fixed frame budget: never stop on errors
                max_frames=config.frames,
                workers=config.workers,
            )
            record = run_sweep(sweep)[0]
            cache[key] = record
        return cache[key]

    weights = [grid[len(grid) // 2]] * num
    best = evaluate(weights)
    for _ in range(config.max_passes):
        changed = False
        for i in range(num):
            for g in grid:
                if config.monotone:
                    if i > 0 and g < weights[i - 1]:
                        continue
                    if i < num - 1 and g > weights[i + 1]:
                        continue
                if g == weights[i]:
                    continue
                trial = weights.copy()
                trial[i] = g
                record = evaluate(trial)
                if record.ber < best.ber:
                    weights = trial
                    best = record
                    changed = True
        if not changed:
            break
    stderr = (
        np.sqrt(best.ber * (1.0 - best.ber) / best.bits) if best.bits else 0.0
    )
    return WeightOptimizationResult(tuple(weights), best.ber, float(stderr))


CSV_HEADER = ["ebn0_db", "frames", "frame_errors", "bits", "bit_errors",
              "ber", "fer", "seconds"]


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [r.eb_n0_db, r.frames, r.frame_errors, r.bits, r.bit_errors,
                 f"{r.ber:.6e}", f"{r.fer:.6e}", f"{r.seconds:.3f}"]
            )


def _git_describe():
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True, text=True, timeout=10,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return "unknown"


def write_manifest(config, path):
    """JSON run manifest: full config, seed, and build identifier."""
    payload = {
        "config": dataclasses.asdict(config),
        "seed": config.seed,
        "build": _git_describe(),
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
