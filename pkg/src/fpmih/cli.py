"""Command line entry point.

    fpmih figure fig14 --out fig14.csv
    fpmih simulate --config run.cfg --seed 7 --out metrics.csv
    fpmih validate
    fpmih codec decode frame.hex

Exit status: 0 on success, 1 for usage and configuration errors, 2 when a
validation check fails or a codec input is rejected.
"""

import argparse
import sys
from pathlib import Path

from .config import known_keys, load_config
from .figures import FIGURES, UnknownFigure, figure_csv
from .mih.codec import CodecError, decode_message, encode_message, from_hex, to_hex
from .mih.text import SpecError, listing, parse_spec
from .simulator.run import collect_sweep, metrics_csv, run_scenario
from .simulator.scenario import ConfigInvalid
from .validate import report, run_checks

EXIT_OK, EXIT_USAGE, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {v}")
    return v


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: cannot read input ({exc.strerror or exc})") from None


def cmd_figure(args):
    cfg = load_config(args.config)
    try:
        text = figure_csv(args.figure_id, cfg)
    except UnknownFigure as exc:
        raise UsageError(exc.args[0]) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(text, args.out)
    return EXIT_OK


def _transcript_path(out, explicit, index=None):
    if explicit:
        base = Path(explicit)
    elif out and out != "-":
        base = Path(out).with_suffix(".transcript.txt")
    else:
        return None
    if index is None:
        return base
    return base.with_name(f"{base.stem.split('.')[0]}.{index}{''.join(base.suffixes)}")


def cmd_simulate(args):
    cfg = load_config(args.config)
    over = {} if args.seed is None else {"seed": args.seed}
    scenarios = cfg.scenarios(**over)
    if len(scenarios) == 1:
        res = run_scenario(scenarios[0])
        _emit(metrics_csv([res.metrics]), args.out)
        path = _transcript_path(args.out, args.transcript)
        if path is not None:
            path.write_text(res.transcript.dumps())
        return EXIT_OK
    if _transcript_path(args.out, args.transcript) is None:
        _emit(metrics_csv(collect_sweep(scenarios, args.workers)), args.out)
        return EXIT_OK
    records = []
    for i, sc in enumerate(scenarios):
        res = run_scenario(sc)
        records.append(res.metrics)
        _transcript_path(args.out, args.transcript, i).write_text(res.transcript.dumps())
    _emit(metrics_csv(records), args.out)
    return EXIT_OK


def cmd_validate(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = cfg.__class__({**cfg.values, "seed": args.seed}, cfg.sizes, cfg.sweep, cfg.source)
    checks = run_checks(cfg)
    _emit(report(checks), args.out)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_INVALID


def cmd_codec(args):
    text = _read_input(args.input)
    try:
        if args.action == "encode":
            out = to_hex(encode_message(parse_spec(text)))
        else:
            try:
                data = from_hex(text)
            except ValueError as exc:
                raise SpecError(str(exc)) from None
            out = listing(decode_message(data))
    except (CodecError, SpecError) as exc:
        print(f"codec {args.action}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(out, args.out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--seed", type=_u64, help="override the scenario seed")

    p = _Parser(prog="fpmih", description="Handover delay, signaling cost and MIH codec tools.",
                epilog="config keys: " + ", ".join(known_keys()))
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("figure", parents=[common], help="write figure data as CSV")
    f.add_argument("figure_id", help=", ".join(FIGURES))
    f.set_defaults(func=cmd_figure)

    s = sub.add_parser("simulate", parents=[common], help="run the simulator, write metrics CSV")
    s.add_argument("--transcript", help="transcript file (default: <out>.transcript.txt)")
    s.add_argument("--workers", type=int, default=None, help="threads for sweeps")
    s.set_defaults(func=cmd_simulate)

    v = sub.add_parser("validate", parents=[common], help="simulator vs closed-form checks")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("codec", parents=[common], help="encode a field listing or decode hex")
    c.add_argument("action", choices=("encode", "decode"))
    c.add_argument("input", nargs="?", help="input file (default: stdin)")
    c.set_defaults(func=cmd_codec)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigInvalid, UsageError) as exc:
        print(f"fpmih {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
