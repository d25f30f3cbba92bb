"""Command-line entry point: ``causalcodes {capacity,encode,decode,attack,experiment}``."""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .capacity import MODELS, capacity_exact
from .erasure import DecodeFailure
from .harness import ExperimentConfig, default_seed, run_experiment, traced_trial
from .params import DEFAULT_PRIME
from .serialize import read_word, write_word


def _code_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--codec", choices=("additive", "overwrite", "baseline_rs"), default="additive")
    parser.add_argument("--n", type=int, required=True, help="packets per codeword")
    parser.add_argument("--p", type=float, required=True, help="jammer's fraction of packets")
    parser.add_argument("--d", type=float, default=0.0, help="delay as a fraction of n")
    parser.add_argument("--q", type=int, default=DEFAULT_PRIME, help="prime field size")
    parser.add_argument("--s", type=int, default=2, help="block dimension of the hash")
    parser.add_argument("--rate", type=float, default=None, help="baseline_rs rate")


def _config(args, **extra) -> ExperimentConfig:
    data = {k: getattr(args, k) for k in ("n", "p", "d", "q", "s", "codec", "rate")}
    data.update(extra)
    return ExperimentConfig.from_dict(data)


def _cmd_capacity(args) -> int:
    c = capacity_exact(args.model, args.p, args.d)
    print(f"{float(c):.6g}")
    return 0


def _cmd_encode(args) -> int:
    config = _config(args)
    codec = config.build_codec()
    field = config.params.field
    rng = np.random.default_rng(args.seed)
    lanes = codec.layout.data_len if hasattr(codec, "layout") else 1
    if args.message:
        message = read_word(args.message, lanes, field)
        if message.shape[0] != codec.k:
            raise SystemExit(f"message file holds {message.shape[0]} rows, the code needs {codec.k}")
    else:
        message = field.random(rng, (codec.k, lanes))
        if args.message_out:
            write_word(args.message_out, message)
    write_word(args.out, codec.encode(message, rng))
    print(f"encoded k={codec.k} rows of {lanes} into n={codec.n} packets of {codec.packet_len}", file=sys.stderr)
    return 0


def _cmd_decode(args) -> int:
    config = _config(args)
    codec = config.build_codec()
    received = read_word(args.input, codec.packet_len, config.params.field)
    try:
        message = codec.decode(received)
    except DecodeFailure as exc:
        print(f"decode failure: {exc}", file=sys.stderr)
        return 1
    write_word(args.out, message)
    return 0


def _cmd_attack(args) -> int:
    config = ExperimentConfig.load(args.spec)
    codec = config.build_codec()
    report, trace = traced_trial(config, codec, args.trial)
    if args.trace:
        with open(args.trace, "w") as fh:
            trace.write(fh)
    print(json.dumps({"trial": report.trial, "success": report.success, "failure_kind": report.failure_kind,
                      "budget_used": report.budget_used, "corrupted": list(trace.corrupted),
                      "candidates": report.candidates, "seed": report.seed}))
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig.load(args.config)
    report = run_experiment(config)
    report.write(args.out)
    summary = report.summary()
    lo, hi = summary["error_rate_wilson95"]
    print(f"{summary['trials']} trials, error rate {summary['error_rate']:.4g} (95% CI {lo:.3g}..{hi:.3g})")
    if "ambiguity_rate" in summary:
        print(f"ambiguity rate {summary['ambiguity_rate']:.4g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="causalcodes", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    cap = sub.add_parser("capacity", help="capacity of a jamming model")
    cap.add_argument("--model", choices=MODELS, required=True)
    cap.add_argument("--p", type=float, required=True)
    cap.add_argument("--d", type=float, default=0.0)
    cap.set_defaults(func=_cmd_capacity)

    enc = sub.add_parser("encode", help="encode a message file (or a random message)")
    _code_args(enc)
    enc.add_argument("--message", help="message file; random if omitted")
    enc.add_argument("--message-out", help="where to save the random message")
    enc.add_argument("--out", required=True)
    enc.add_argument("--seed", type=int, default=default_seed())
    enc.set_defaults(func=_cmd_encode)

    dec = sub.add_parser("decode", help="decode a received word file")
    _code_args(dec)
    dec.add_argument("--in", dest="input", required=True)
    dec.add_argument("--out", required=True)
    dec.set_defaults(func=_cmd_decode)

    att = sub.add_parser("attack", help="one traced transmission")
    att.add_argument("--spec", required=True, help="experiment config file (JSON)")
    att.add_argument("--trial", type=int, default=0)
    att.add_argument("--trace", help="write a JSON-lines trace here")
    att.set_defaults(func=_cmd_attack)

    exp = sub.add_parser("experiment", help="run a Monte-Carlo experiment")
    exp.add_argument("--config", required=True, help="experiment config file (JSON)")
    exp.add_argument("--out", required=True, help="CSV report path")
    exp.set_defaults(func=_cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
