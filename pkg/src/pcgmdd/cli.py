"""Command line interface: sweep, optimize-weights, dataflow, demo."""

import argparse
import os
import sys

import numpy as np

from . import analysis, decoders, sim
from .bch import ComponentCode
from .channel import ChannelParams, hard_decision, stream_rng, transmit
from .product import ProductCode


def _add_code_args(parser):
    parser.add_argument("--m", type=int, default=8, help="field extension degree")
    parser.add_argument("--t", type=int, default=2, dest="t_design",
                        help="designed error-correcting capability")
    parser.add_argument("--extended", action="store_true",
                        help="extend the BCH code by an overall parity bit")


def _add_schedule_args(parser):
    parser.add_argument("--iters", type=int, default=10, help="total iterations")
    parser.add_argument("--appended-ibdd", type=int, default=2,
                        help="trailing plain-iBDD iterations")
    parser.add_argument("--weights", type=str, default="",
                        help="comma-separated per-iteration scaling factors")


def _parse_floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pcgmdd",
        description="Product-code decoder simulations and data-flow accounting",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Monte Carlo BER/FER sweep over Eb/N0")
    _add_code_args(sweep)
    sweep.add_argument("--decoder", choices=sim.DECODER_NAMES, default="bmp-gmdd")
    sweep.add_argument("--ebn0-list", type=str, required=True,
                       help="comma-separated Eb/N0 grid in dB")
    _add_schedule_args(sweep)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--min-errors", type=int, default=100,
                       help="bit errors to accumulate per point")
    sweep.add_argument("--max-frames", type=int, default=10_000)
    sweep.add_argument("--workers", type=int, default=1)
    sweep.add_argument("--all-zero", action="store_true",
                       help="transmit the all-zero codeword (fast path)")
    sweep.add_argument("--out", type=str, required=True, help="output CSV path")
    sweep.add_argument("--no-plot", action="store_true",
                       help="skip rendering the waterfall figure")

    opt = sub.add_parser("optimize-weights",
                         help="Monte Carlo scaling-factor optimization")
    _add_code_args(opt)
    opt.add_argument("--decoder", choices=("ibdd-sr", "bmp-gmdd", "igmdd-sr"),
                     default="bmp-gmdd")
    opt.add_argument("--ebn0", type=float, required=True,
                     help="objective Eb/N0 in dB")
    opt.add_argument("--grid", type=str, required=True,
                     help="comma-separated candidate weight values")
    opt.add_argument("--iters", type=int, default=10)
    opt.add_argument("--appended-ibdd", type=int, default=2)
    opt.add_argument("--frames", type=int, default=200,
                     help="frames per candidate evaluation")
    opt.add_argument("--seed", type=int, default=0)
    opt.add_argument("--workers", type=int, default=1)
    opt.add_argument("--no-monotone", action="store_true",
                     help="drop the non-decreasing weight constraint")

    flow = sub.add_parser("dataflow", help="message-size accounting per decoding")
    flow.add_argument("--n", type=int, required=True, help="component code length")
    flow.add_argument("--dmin", type=int, required=True)
    flow.add_argument("--soft-bits", type=int, default=4,
                      help="bits per soft message for the iGMDD-SR comparison")

    demo = sub.add_parser("demo", help="trace a single decoded frame")
    _add_code_args(demo)
    demo.add_argument("--decoder", choices=sim.DECODER_NAMES[:-1], default="bmp-gmdd")
    demo.add_argument("--ebn0", type=float, default=4.0)
    _add_schedule_args(demo)
    demo.add_argument("--seed", type=int, default=0)

    return parser


def _default_weights(args, sigma2):
    """Ramp of scaling factors on the channel-LLR scale, used when none given."""
    num = args.iters - args.appended_ibdd
    base = 2.0 / sigma2
    return tuple(base * (0.4 + 0.2 * i) for i in range(num))


def _cmd_sweep(args):
    weights = _parse_floats(args.weights)
    if args.decoder in ("ibdd-sr", "bmp-gmdd", "igmdd-sr") and not weights:
        comp = ComponentCode(args.m, args.t_design, extended=args.extended)
        rate = comp.k ** 2 / comp.n ** 2
        sigma2 = ChannelParams(float(args.ebn0_list.split(",")[0]), rate).sigma2
        weights = _default_weights(args, sigma2)
        print(f"using default weights: {', '.join(f'{w:.3f}' for w in weights)}")
    config = sim.SweepConfig(
        m=args.m,
        t_design=args.t_design,
        extended=args.extended,
        decoder=args.decoder,
        ebn0_db=_parse_floats(args.ebn0_list),
        ell_max=args.iters,
        appended_ibdd=args.appended_ibdd,
        weights=weights,
        seed=args.seed,
        min_errors=args.min_errors,
        max_frames=args.max_frames,
        all_zero=args.all_zero,
        workers=args.workers,
    )
    records = sim.run_sweep(config)
    sim.write_csv(records, args.out)
    base, _ = os.path.splitext(args.out)
    sim.write_manifest(config, base + ".json")
    if not args.no_plot:
        from .plotting import render_waterfall

        render_waterfall(records, base + ".png", title=args.decoder)
    for r in records:
        print(f"{r.eb_n0_db:6.2f} dB  frames={r.frames:<8d} "
              f"ber={r.ber:.3e}  fer={r.fer:.3e}  ({r.seconds:.1f}s)")
    print(f"wrote {args.out}")
    return 0


def _cmd_optimize(args):
    config = sim.WeightOptimizationConfig(
        m=args.m,
        t_design=args.t_design,
        extended=args.extended,
        decoder=args.decoder,
        eb_n0_db=args.ebn0,
        grid=_parse_floats(args.grid),
        ell_max=args.iters,
        appended_ibdd=args.appended_ibdd,
        monotone=not args.no_monotone,
        frames=args.frames,
        seed=args.seed,
        workers=args.workers,
    )
    result = sim.optimize_weights(config)
    print("weights:", ", ".join(f"{w:g}" for w in result.weights))
    print(f"BER estimate: {result.ber:.3e} +/- {result.stderr:.1e}")
    return 0


def _cmd_dataflow(args):
    report = analysis.dataflow_report(args.n, args.dmin, args.soft_bits)
    print(f"hard-decision bits per component word: {report.hard_bits}")
    print(f"reliability-list bits per component word: {report.list_bits}")
    print(f"overhead vs hard-only exchange: {report.overhead_percent:.6g}%")
    print(f"soft exchange ({report.soft_flow_factor}-bit messages): "
          f"~{report.soft_flow_factor}x the hard-decision flow")
    return 0


def _cmd_demo(args):
    pc = ProductCode(ComponentCode(args.m, args.t_design, extended=args.extended))
    params = ChannelParams(args.ebn0, pc.rate)
    rng = stream_rng(args.seed, 0)
    message = rng.integers(0, 2, size=(pc.k, pc.k), dtype=np.uint8)
    array = pc.encode(message)
    llrs = transmit(array, params, rng)
    channel_errors = int(np.count_nonzero(hard_decision(llrs) != array))
    print(f"product code ({pc.n},{pc.k})^2, rate {pc.rate:.4f}, "
          f"Eb/N0 {args.ebn0} dB (sigma^2 = {params.sigma2:.4f})")
    print(f"channel bit errors in frame: {channel_errors} / {pc.n * pc.n}")

    weights = _parse_floats(args.weights)
    if args.decoder in ("ibdd-sr", "bmp-gmdd", "igmdd-sr"):
        if not weights:
            weights = _default_weights(args, params.sigma2)
        schedule = decoders.DecoderSchedule(args.iters, args.appended_ibdd, weights)
    if args.decoder == "ibdd":
        report = decoders.ibdd(pc, hard_decision(llrs), args.iters)
    elif args.decoder == "ibdd-ideal":
        report = decoders.ibdd_ideal(pc, hard_decision(llrs), array, args.iters)
    elif args.decoder == "ibdd-sr":
        report = decoders.ibdd_sr(pc, llrs, schedule)
    elif args.decoder == "bmp-gmdd":
        report = decoders.bmp_gmdd(pc, llrs, schedule)
    else:
        report = decoders.igmdd_sr(pc, llrs, schedule)

    for it, fails in enumerate(report.failure_counts, start=1):
        print(f"iteration {it}: {fails} component decoding failures")
    residual = int(np.count_nonzero(report.final_array != array))
    print(f"converged: {report.converged} after {report.iterations_run} iterations; "
          f"residual bit errors: {residual}")
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "optimize-weights":
            return _cmd_optimize(args)
        if args.command == "dataflow":
            return _cmd_dataflow(args)
        return _cmd_demo(args)
    except (sim.ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"internal assertion failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
