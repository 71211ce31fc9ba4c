"""``fastzz`` command line: compute, validate, generate, bench.

Exit codes: 0 success, 1 internal error, 2 input error, 3 oracle mismatch.
"""
from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager

from . import bench, filtration
from .barcode import convert_barcode
from .conversion import convert_filt
from .filtration import FiltrationError, close_filtration, parse_ops, validate, write_ops
from .intervals import endpoint_type, write_barcode
from .oracle import DEFAULT_MAX_LENGTH, oracle_barcode
from .reduction import reduce

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"fastzz: {msg}", file=sys.stderr)


@contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _read_filtration(path: str) -> filtration.ZigzagFiltration:
    try:
        if path == "-":
            return parse_ops(sys.stdin)
        with open(path, encoding="ascii") as fh:
            return parse_ops(fh)
    except OSError as e:
        raise InputError(str(e)) from None
    except (FiltrationError, UnicodeDecodeError) as e:
        raise InputError(f"{path}: {e}") from None


def cmd_compute(args) -> int:
    timings = {}
    t = time.perf_counter()
    f = _read_filtration(args.input)
    timings["parse"] = time.perf_counter() - t
    t = time.perf_counter()
    report = validate(f)
    timings["validate"] = time.perf_counter() - t
    if not report:
        raise InputError(f"invalid filtration: {report}")
    f = close_filtration(f)

    t = time.perf_counter()
    D, reg = convert_filt(f)
    timings["convert"] = time.perf_counter() - t
    t = time.perf_counter()
    result = reduce(D)
    timings["reduce"] = time.perf_counter() - t
    t = time.perf_counter()
    bars = convert_barcode(result, reg)
    timings["map"] = time.perf_counter() - t

    for iv in bars:
        if endpoint_type(f, iv.b, iv.d) != iv.type:
            raise RuntimeError(f"interval {iv} contradicts the op directions")

    if args.oracle_check:
        if len(f) > args.oracle_limit:
            raise InputError(f"--oracle-check needs length <= {args.oracle_limit}, got {len(f)}")
        expected = oracle_barcode(f, max_length=args.oracle_limit)
        if expected != bars:
            missing = sorted(set(expected) - set(bars))
            extra = sorted(set(bars) - set(expected))
            first = (missing or extra or [None])[0]
            _err(f"oracle mismatch: first differing interval {first} "
                 f"({'missing from' if missing else 'extra in'} pipeline output)")
            return EXIT_MISMATCH

    shown = bars
    if args.max_dim is not None:
        shown = [iv for iv in shown if iv.dim <= args.max_dim]
    if args.closed_only:
        shown = [iv for iv in shown if iv.type == "CC"]
    with _open_out(args.output) as out:
        write_barcode(shown, out)

    if args.stats:
        print(f"m {len(f)}", file=sys.stderr)
        print(f"n {reg.n}", file=sys.stderr)
        print(f"max_complex {report.max_size}", file=sys.stderr)
        print(f"repetitiveness {f.repetitiveness():.4f}", file=sys.stderr)
        for phase, secs in timings.items():
            print(f"time_{phase}_s {secs:.6f}", file=sys.stderr)
        print(f"peak_rss_mb {bench.peak_rss_mb():.1f}", file=sys.stderr)
        if args.oracle_check:
            print("oracle_check OK", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    f = _read_filtration(args.input)
    report = validate(f)
    print(report)
    return EXIT_OK if report else EXIT_INPUT


def _generate(args, length: int | None = None) -> filtration.ZigzagFiltration:
    fam = args.family
    try:
        if fam == "clique":
            if args.events is None and length is None:
                raise InputError("clique family needs --events")
            return filtration.gen_clique_family(
                args.vertices, args.events if length is None else None, args.max_dim,
                args.seed, args.density, max_length=length,
            )
        if fam == "random":
            return filtration.gen_random_zigzag(args.vertices, length or args.length, args.max_dim, args.seed)
        if fam == "updown-shuffle":
            return filtration.gen_updown_shuffle(args.vertices, args.edge_prob, args.max_dim, args.seed)
    except FiltrationError as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown family {fam!r}")


def cmd_generate(args) -> int:
    f = _generate(args)
    report = validate(f)
    if not report:
        raise RuntimeError(f"generator produced an invalid filtration: {report}")
    with _open_out(args.output) as out:
        write_ops(f, out)
    info = sys.stderr if args.output in (None, "-") else sys.stdout
    print(f"length {len(f)}", file=info)
    print(f"repetitiveness {f.repetitiveness():.4f}", file=info)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.input:
        sources = [(args.input, _read_filtration(args.input))]
    else:
        if not args.sizes:
            raise InputError("bench needs --sizes or --input")
        try:
            sizes = [int(float(s)) for s in args.sizes.split(",")]
        except ValueError:
            raise InputError(f"bad --sizes {args.sizes!r}") from None
        sources = [(args.family, None)] * len(sizes)
    rows = []
    with _open_out(args.output) as out:
        for k, (family, f) in enumerate(sources):
            if f is None:
                f = _generate(args, length=sizes[k])
            rows.append(bench.bench_one(f, family, repeat=args.repeat))
            bench.write_csv(rows[-1:], out, header=(k == 0))
            out.flush()

    ok = True
    for small, large, ratio in bench.linear_scaling(rows):
        good = bench.within_slack(ratio)
        ok &= good
        print(f"linear convert+map {small} -> {large}: ratio {ratio:.3f} "
              f"{'PASS' if good else 'FAIL'}", file=sys.stderr)
    for r in rows:
        if r.m >= 10**6 and (r.total_s > bench.SOFT_TIME_LIMIT or r.peak_rss_mb > bench.SOFT_MEMORY_MB):
            print(f"soft target missed at m={r.m}: {r.total_s:.1f} s, {r.peak_rss_mb:.0f} MB",
                  file=sys.stderr)
    return EXIT_OK if ok else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fastzz", description="Zigzag persistence barcodes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the barcode of a filtration file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--max-dim", type=int, help="only report intervals up to this dimension")
    p.add_argument("--oracle-check", action="store_true", help="compare against the brute-force oracle")
    p.add_argument("--oracle-limit", type=int, default=DEFAULT_MAX_LENGTH)
    p.add_argument("--stats", action="store_true", help="print sizes, timings and memory to stderr")
    p.add_argument("--closed-only", action="store_true", help="only report closed-closed intervals")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("validate", help="check that every prefix is a simplicial complex")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_validate)

    def generator_args(p, length_default=None, seed_required=True):
        p.add_argument("--family", choices=["clique", "updown-shuffle", "random"], default="clique")
        p.add_argument("--seed", type=int, required=seed_required)
        p.add_argument("--vertices", type=int, default=50)
        p.add_argument("--max-dim", type=int, default=2)
        p.add_argument("--events", type=int, help="edge events (clique)")
        p.add_argument("--density", type=float, default=0.1, help="target edge density (clique)")
        p.add_argument("--length", type=int, default=length_default, help="target length (random)")
        p.add_argument("--edge-prob", type=float, default=0.3, help="edge probability (updown-shuffle)")
        p.add_argument("-o", "--output")

    p = sub.add_parser("generate", help="write a generated filtration")
    generator_args(p, length_default=100)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="time the pipeline phases, one CSV row per run")
    generator_args(p, seed_required=False)
    p.set_defaults(seed=7, vertices=2000, density=0.005)
    p.add_argument("--sizes", help="comma-separated target lengths, e.g. 1e4,1e5,1e6")
    p.add_argument("-i", "--input", help="bench a filtration file instead")
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        _err(str(e))
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001
        _err(f"internal error: {e!r}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
