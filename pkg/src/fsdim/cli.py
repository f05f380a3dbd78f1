"""Command-line surface: fsdim <subcommand>.

Exit codes: 0 for any computed answer (unreachable and cap_exceeded are
answers, not failures), 1 for domain errors, 2 for usage errors. All
randomness flows through one seeded generator, so every command is a pure
function of its flags and input files.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import dimension, separator
from .digits import RealSpec, delta_exponent, parse_delta
from .errors import FsdimError
from .fst import Fst, format_fst, make_block_huffman, make_identity, make_periodic_decoder, parse_fst
from .infocontent import CostResult, kt
from .precision import PrecisionQuery, kdelta, kdelta_profile

DEFAULT_BURST_WARNING = 64


def gen_pool(seed: int, count: int, max_states: int, base: int, max_burst: int) -> list[tuple[str, Fst]]:
    """Deterministic pseudo-random pool of complete transducers.

    Every (state, symbol) pair gets a uniform next state and an output of
    uniform length 0..max_burst with uniform digits.
    """
    if count < 1:
        raise FsdimError(f"count must be >= 1, got {count}")
    rng = random.Random(seed)
    pool = []
    for i in range(count):
        states = rng.randint(1, max_states)
        rows = []
        for _ in range(states):
            row = []
            for _ in range(base):
                nxt = rng.randrange(states)
                out = tuple(rng.randrange(base) for _ in range(rng.randint(0, max_burst)))
                row.append((nxt, out))
            rows.append(tuple(row))
        pool.append((f"pool_{seed}_{i}.fst", Fst(base, states, rng.randrange(states), tuple(rows))))
    return pool


def _load_fst(path: str) -> Fst:
    with open(path, "r", encoding="ascii") as fh:
        return parse_fst(fh.read())


def _load_family(directory: str) -> list[tuple[str, Fst]]:
    names = sorted(f for f in os.listdir(directory) if f.endswith(".fst"))
    if not names:
        raise FsdimError(f"no .fst files in {directory}")
    return [(name, _load_fst(os.path.join(directory, name))) for name in names]


def _emit(args, text_line: str, json_obj: dict) -> None:
    out = json.dumps(json_obj, sort_keys=True) if args.json else text_line
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _cost_json(res: CostResult) -> dict:
    obj = {"status": res.status}
    if res.found:
        obj.update(cost=res.cost, witness_input=res.witness_input,
                   witness_output=res.witness_output)
    return obj


def _profile_csv(rows) -> str:
    lines = ["n,cost,ratio,running_inf,flags"]
    for r in rows:
        cost = "" if r.flags else r.cost
        ratio = "" if r.flags else f"{float(r.ratio):.6f}"
        lines.append(f"{r.n},{cost},{ratio},{float(r.running_inf):.6f},{r.flags}")
    return "\n".join(lines) + "\n"


def _report_out(args, report) -> None:
    _emit(args, f"estimate={float(report.estimate):.6f}"
          + (f" verdict={report.verdict!r}" if report.verdict else ""),
          report.to_json_dict())


def cmd_fst_validate(args) -> int:
    t = _load_fst(args.fst)
    burst = t.max_burst()
    if burst > args.burst_limit:
        print(f"warning: max output burst {burst} exceeds {args.burst_limit}; "
              "searches may be slow", file=sys.stderr)
    _emit(args, f"ok,{t.state_count},{burst}",
          {"status": "ok", "states": t.state_count, "max_burst": burst})
    return 0


def cmd_fst_gen(args) -> int:
    if args.kind == "identity":
        t = make_identity(args.base)
    elif args.kind == "periodic":
        t = make_periodic_decoder(args.pattern, args.copies, args.base)
    elif args.kind == "huffman":
        spec = RealSpec.parse(args.train)
        stream = spec.stream(args.base)
        prefix_len = (args.train_len // args.block_len) * args.block_len
        t = make_block_huffman(stream, prefix_len, args.block_len, args.base)
    else:
        raise FsdimError(f"unknown generator kind {args.kind!r}")
    text = format_fst(t)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_kt(args) -> int:
    t = _load_fst(args.fst)
    res = kt(t, args.w, cap=args.cap)
    _emit(args, res.line(), _cost_json(res))
    return 0


def cmd_kdelta(args) -> int:
    t = _load_fst(args.fst)
    x = RealSpec.parse(args.x)
    if args.n is not None:
        n = args.n
        delta = Fraction(1, args.base ** n)
    else:
        delta = parse_delta(args.delta, args.base)
        n = delta_exponent(delta, args.base)
    cap_in = args.cap_in if args.cap_in is not None else 4 * ((n if n is not None else 14) + 2)
    cap_out = args.cap_out if args.cap_out is not None else max(1, t.max_burst()) * cap_in
    q = PrecisionQuery(x, args.base, delta, cap_in, cap_out)
    res = kdelta(t, q)
    _emit(args, res.line(), _cost_json(res))
    return 0


def cmd_profile(args) -> int:
    family = _load_family(args.fsts)
    x = RealSpec.parse(args.x)
    rows = kdelta_profile([t for _, t in family], x, args.base, args.nmax)
    csv = _profile_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return 0


def cmd_dim(args) -> int:
    family = _load_family(args.fsts)
    frac = Fraction(args.window_frac) if args.window_frac else Fraction(1, 2)
    if args.what == "point":
        report = dimension.dim_point_estimate(family, RealSpec.parse(args.x[0]),
                                              args.base, args.nmax, frac)
    elif args.what == "seq":
        stream = RealSpec.parse(args.x[0]).stream(args.base)
        report = dimension.dim_seq_estimate(family, stream, args.nmax, frac)
    else:
        xs = [RealSpec.parse(s) for s in args.x]
        report = dimension.dim_set_estimate(family, xs, args.base, args.nmax, frac)
    _report_out(args, report)
    return 0


def cmd_normality(args) -> int:
    report = dimension.normality_report(RealSpec.parse(args.x), args.base, args.nmax,
                                        max_block_len=args.k,
                                        threshold=Fraction(args.threshold).limit_denominator(10**6))
    _report_out(args, report)
    return 0


def cmd_sedim(args) -> int:
    f = separator.parse_enumerator(args.f, args.base)
    family = _load_family(args.fsts)
    xs = [RealSpec.parse(s) for s in args.x]
    report = separator.dimf_estimate(family, f, xs, args.base, args.nmax,
                                     max_input_len=args.max_input_len)
    _report_out(args, report)
    return 0


def cmd_pool(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    pool = gen_pool(args.seed, args.count, args.max_states, args.base, args.max_burst)
    for name, t in pool:
        with open(os.path.join(args.out, name), "w", encoding="ascii") as fh:
            fh.write(format_fst(t))
    print(f"wrote {len(pool)} files to {args.out}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fsdim",
                                     description="finite-state information content and dimension estimates")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--out", help="write the result to a file")

    p = sub.add_parser("fst", help="transducer file utilities")
    fst_sub = p.add_subparsers(dest="fst_command", required=True)
    pv = fst_sub.add_parser("validate")
    pv.add_argument("--fst", required=True)
    pv.add_argument("--burst-limit", type=int, default=DEFAULT_BURST_WARNING)
    common(pv)
    pv.set_defaults(func=cmd_fst_validate)
    pg = fst_sub.add_parser("gen")
    pg.add_argument("--kind", required=True, choices=["identity", "periodic", "huffman"])
    pg.add_argument("--base", type=int, default=2)
    pg.add_argument("--pattern", default="")
    pg.add_argument("--copies", type=int, default=1)
    pg.add_argument("--train", default="champernowne", help="real spec to train huffman on")
    pg.add_argument("--train-len", type=int, default=1024)
    pg.add_argument("--block-len", type=int, default=2)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_fst_gen)

    p = sub.add_parser("kt", help="shortest input producing an exact output")
    p.add_argument("--fst", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--cap", type=int, default=64)
    common(p)
    p.set_defaults(func=cmd_kt)

    p = sub.add_parser("kdelta", help="cheapest output within delta of a real")
    p.add_argument("--fst", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--base", type=int, default=2)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int)
    group.add_argument("--delta")
    p.add_argument("--cap-in", type=int)
    p.add_argument("--cap-out", type=int)
    common(p)
    p.set_defaults(func=cmd_kdelta)

    p = sub.add_parser("profile", help="per-precision cost profile")
    p.add_argument("--fsts", required=True, help="directory of .fst files")
    p.add_argument("--x", required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("dim", help="dimension upper-bound estimates")
    p.add_argument("what", choices=["point", "seq", "set"])
    p.add_argument("--fsts", required=True)
    p.add_argument("--x", action="append", required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--window-frac")
    common(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("normality", help="compression-evidence report")
    p.add_argument("--x", required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--k", type=int, default=4, help="largest huffman block length")
    p.add_argument("--threshold", type=float, default=0.95)
    common(p)
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("sedim", help="separator-enumerator dimension estimate")
    p.add_argument("--f", required=True, help="canonical | blockperm:m:PERMFILE | targeted:SPEC")
    p.add_argument("--fsts", required=True)
    p.add_argument("--x", action="append", required=True)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--max-input-len", type=int, default=separator.DEFAULT_MAX_INPUT_LEN)
    common(p)
    p.set_defaults(func=cmd_sedim)

    p = sub.add_parser("pool", help="seeded random transducer pool")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--max-states", type=int, default=4)
    p.add_argument("--base", type=int, default=2)
    p.add_argument("--max-burst", type=int, default=2)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_pool)

    return parser


def dispatch(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FsdimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())
