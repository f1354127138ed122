"""Command line front end: interpolate one pair, benchmark a folder, or
generate synthetic triplets."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys

from .bench import run_benchmark, summarize, write_report, zero_timings
from .dataset import Triplet, load_png, load_triplet_dir, save_png
from .estimate import COST_KINDS, SearchParams
from .synthesis import METHODS, interpolate
from .synthetic import KINDS, gen_synthetic

log = logging.getLogger(__name__)

_PARAM_FIELDS = {f.name: f.type for f in dataclasses.fields(SearchParams)}


def _parse_config(path):
    """Read a flat `key = value` file into a dict of SearchParams overrides."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected `key = value`")
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            if key not in _PARAM_FIELDS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _coerce(key, text, f"{path}:{lineno}")
    return values


def _coerce(key, text, where):
    kind = _PARAM_FIELDS[key]
    try:
        if kind is bool or kind == "bool":
            low = text.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind is int or kind == "int":
            return int(text)
        if kind is float or kind == "float":
            return float(text)
        return text
    except ValueError:
        raise ValueError(f"{where}: bad value {text!r} for {key}") from None


def _add_search_flags(parser):
    grp = parser.add_argument_group("motion search")
    grp.add_argument("--config", help="flat key = value file of search settings")
    grp.add_argument("--levels", type=int, help="pyramid depth for the base search")
    grp.add_argument("--radius", type=int, help="integer search radius per level")
    grp.add_argument("--patch", type=int, help="odd matching patch size")
    grp.add_argument("--cost", choices=COST_KINDS, help="matching cost")
    grp.add_argument("--refine-levels", type=int, dest="refine_levels",
                     help="pyramid depth for per-side refinement")
    grp.add_argument("--beta", type=float, help="reliability falloff rate")
    grp.add_argument("--gamma", type=float, help="fusion error falloff rate")
    grp.add_argument("--sigma", type=float, help="fusion tap spread")
    grp.add_argument("--no-subpixel", action="store_true",
                     help="skip the parabolic sub-texel fit")


def _build_params(args):
    """defaults < config file < explicit flags."""
    values = {}
    if args.config:
        values.update(_parse_config(args.config))
    for name in _PARAM_FIELDS:
        if name == "subpixel":
            continue
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    if getattr(args, "no_subpixel", False):
        values["subpixel"] = False
    return SearchParams(**{**dataclasses.asdict(SearchParams()), **values}).validate()


def _cmd_interpolate(args):
    params = _build_params(args)
    frame0 = load_png(args.frame0)
    frame1 = load_png(args.frame1)
    if frame0.shape != frame1.shape:
        log.error("frame shapes differ: %s vs %s", frame0.shape, frame1.shape)
        return 1
    out = interpolate(frame0, frame1, args.t, params, args.method)
    save_png(args.out, out)
    log.info("wrote %s (%dx%d, method=%s, t=%g)",
             args.out, out.shape[1], out.shape[0], args.method, args.t)
    return 0


def _cmd_bench(args):
    params = _build_params(args)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    triplets = load_triplet_dir(args.dataset)
    if not triplets:
        log.error("no triplets under %s", args.dataset)
        return 1
    rows = run_benchmark(triplets, methods, params, threads=args.threads)
    if not args.timing:
        rows = zero_timings(rows)
    write_report(rows, args.report)
    for line in summarize(rows):
        log.info("%s", line)
    log.info("wrote %s (%d rows)", args.report, len(rows))
    return 0


def _cmd_synth(args):
    kinds = [k.strip() for k in args.kind.split(",") if k.strip()]
    for k in kinds:
        if k not in KINDS:
            log.error("unknown kind %r; choose from %s", k, KINDS)
            return 1
    os.makedirs(args.out, exist_ok=True)
    made = 0
    for kind in kinds:
        for i in range(args.count):
            trip, _ = gen_synthetic(args.seed + i, kind, size=args.size)
            folder = os.path.join(args.out, trip.id)
            os.makedirs(folder, exist_ok=True)
            save_png(os.path.join(folder, "im1.png"), trip.frame0)
            save_png(os.path.join(folder, "im2.png"), trip.gt)
            save_png(os.path.join(folder, "im3.png"), trip.frame1)
            made += 1
    log.info("wrote %d triplets under %s", made, args.out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="midframe",
        description="Interpolate the frame between two video frames using "
        "bilateral motion search and occlusion aware fusion.",
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log debug detail to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("interpolate", help="write the frame between two inputs")
    p_int.add_argument("--frame0", required=True, help="earlier frame (PNG)")
    p_int.add_argument("--frame1", required=True, help="later frame (PNG)")
    p_int.add_argument("--out", required=True, help="output PNG path")
    p_int.add_argument("--t", type=float, default=0.5,
                       help="time of the output frame, strictly inside (0, 1)")
    p_int.add_argument("--method", choices=METHODS, default="full")
    _add_search_flags(p_int)
    p_int.set_defaults(func=_cmd_interpolate)

    p_bench = sub.add_parser("bench", help="score methods over a triplet folder")
    p_bench.add_argument("--dataset", required=True,
                         help="folder of triplet subfolders (im1.png, im2.png, im3.png)")
    p_bench.add_argument("--report", default="report.csv", help="CSV output path")
    p_bench.add_argument("--methods", default="full",
                         help="comma separated subset of " + ",".join(METHODS))
    p_bench.add_argument("--threads", type=int, default=1,
                         help="worker processes")
    p_bench.add_argument("--timing", action="store_true",
                         help="record wall times (off keeps reports reproducible)")
    _add_search_flags(p_bench)
    p_bench.set_defaults(func=_cmd_bench)

    p_synth = sub.add_parser("synth", help="generate synthetic triplet folders")
    p_synth.add_argument("--out", required=True, help="folder to create triplets under")
    p_synth.add_argument("--kind", default=",".join(KINDS),
                         help="comma separated subset of " + ",".join(KINDS))
    p_synth.add_argument("--count", type=int, default=10,
                         help="triplets per kind")
    p_synth.add_argument("--seed", type=int, default=0, help="first seed")
    p_synth.add_argument("--size", type=int, default=128, help="frame edge, px")
    p_synth.set_defaults(func=_cmd_synth)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
