"""``strandsim`` command line.

Exit codes: 0 success, 1 ``scan`` flagged at least one window, 2 bad input.
JSON output is wrapped in an envelope whose ``parameters`` block replays the
run exactly through ``strandsim replay``.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import secrets
import sys

from . import __version__
from .bio_io import read_fasta
from .circuit_text import dump_circuit
from .comparison import DEFAULT_SHOTS, compare_exact, compare_sampled
from .encoding import NucleotideSeq, build_comparison_circuit
from .exceptions import StrandSimError
from .lowering import lower_circuit, lower_mcry, lower_toffoli
from .scan import DEFAULT_WINDOW, reports_to_csv, scan_sequences
from .validation import MAX_SEED, check_seed

SEED_ENV = "STRANDSIM_SEED"
BAR_WIDTH = 40


class CLIError(StrandSimError):
    pass


def envelope(command: str, parameters: dict, result) -> dict:
    return {
        "tool": "strandsim",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "result": result,
    }


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def resolve_seed(seed: int | None) -> int:
    """Explicit seed, else ``$STRANDSIM_SEED``, else a fresh random one (echoed in output)."""
    if seed is not None:
        return check_seed(seed)
    env = os.environ.get(SEED_ENV)
    if env not in (None, ""):
        try:
            return check_seed(int(env, 0))
        except ValueError as exc:
            raise CLIError(f"{SEED_ENV} is not a valid unsigned 64-bit integer: {env!r}") from exc
    return secrets.randbelow(MAX_SEED + 1)


def _load_one(seq: str | None, fasta: str | None, name: str, skip_invalid: bool = False) -> NucleotideSeq:
    if (seq is None) == (fasta is None):
        raise CLIError(f"give exactly one of --{name} or its FASTA option")
    if seq is not None:
        return NucleotideSeq(name, seq)
    records = read_fasta(fasta, skip_invalid=skip_invalid)
    if not records:
        raise CLIError(f"{fasta}: no usable FASTA records")
    return records[0].sequence


def ascii_histogram(counts: dict[str, int], shots: int, width: int = BAR_WIDTH) -> list[str]:
    lines = []
    for key in sorted(set(counts) | {"0", "1"}):
        c = counts.get(key, 0)
        bar = "#" * round(width * c / shots)
        lines.append(f"  {key} | {bar:<{width}} {c:>7d} ({c / shots:.6f})")
    return lines


# --- compare ---------------------------------------------------------------


def cmd_compare(args) -> int:
    ref = _load_one(args.seq1, args.fasta1, "seq1", args.skip_invalid)
    cmp = _load_one(args.seq2, args.fasta2, "seq2", args.skip_invalid)
    params = {
        "seq1": args.seq1,
        "fasta1": args.fasta1,
        "seq2": args.seq2,
        "fasta2": args.fasta2,
        "exact": args.exact,
        "shots": None if args.exact else args.shots,
        "seed": None,
        "skip_invalid": args.skip_invalid,
        "format": args.format,
    }
    if args.exact:
        res = compare_exact(ref, cmp)
    else:
        params["seed"] = resolve_seed(args.seed)
        res = compare_sampled(ref, cmp, shots=args.shots, seed=params["seed"])
    if args.format == "json":
        _emit_json(envelope("compare", params, res.to_dict()))
        return 0
    out = [
        f"method      {res.method}",
        f"qubits      {res.n_qubits}",
    ]
    if res.method == "sampled":
        out += [f"shots       {res.shots}", f"seed        {res.seed}"]
    out += [f"p1          {res.p1:.6f}", f"similarity  {res.similarity:.6f}"]
    if res.histogram is not None:
        out.append("strip qubit counts:")
        out += ascii_histogram(res.histogram.counts, res.histogram.total_shots)
    print("\n".join(out))
    return 0


# --- scan ------------------------------------------------------------------


def cmd_scan(args) -> int:
    a = _load_one(args.seq_a, args.fasta_a, "seq-a", args.skip_invalid)
    b = _load_one(args.seq_b, args.fasta_b, "seq-b", args.skip_invalid)
    mode = "sampled" if args.shots is not None else "exact"
    seed = resolve_seed(args.seed) if mode == "sampled" else 0
    params = {
        "seq_a": args.seq_a,
        "fasta_a": args.fasta_a,
        "seq_b": args.seq_b,
        "fasta_b": args.fasta_b,
        "window": args.window,
        "stride": args.stride,
        "threshold": args.threshold,
        "exact": mode == "exact",
        "shots": args.shots,
        "seed": seed if mode == "sampled" else None,
        "jobs": args.jobs,
        "skip_invalid": args.skip_invalid,
        "out": args.out,
    }
    reports = scan_sequences(
        a,
        b,
        window_size=args.window,
        stride=args.stride,
        mode=mode,
        shots=args.shots or DEFAULT_SHOTS,
        threshold=args.threshold,
        seed=seed,
        n_jobs=args.jobs,
    )
    if args.out == "json":
        _emit_json(envelope("scan", params, [r.row() for r in reports]))
    else:
        print(f"# strandsim {__version__} scan {json.dumps(params, sort_keys=True)}", file=sys.stderr)
        sys.stdout.write(reports_to_csv(reports))
    return 1 if any(r.flagged for r in reports) else 0


# --- lower -----------------------------------------------------------------


def _report_lines(rep) -> list[str]:
    lines = [
        f"# single_qubit_count {rep.single_qubit_count}",
        f"# cnot_count {rep.cnot_count}",
        f"# depth {rep.depth}",
    ]
    if rep.equivalent is not None:
        lines += [
            f"# equivalent {'true' if rep.equivalent else 'false'}",
            f"# max_deviation {rep.max_deviation:.6e}",
        ]
    return lines


def cmd_lower(args) -> int:
    params = {
        "gate": args.gate,
        "controls": args.controls if args.gate == "mcry" else None,
        "open": args.open if args.gate == "mcry" else None,
        "angle": args.angle if args.gate == "mcry" else None,
        "verify": args.verify,
        "format": args.format,
    }
    if args.gate == "ccx":
        rep = lower_toffoli(0, 1, 2, verify=args.verify)
    else:
        if args.angle is None:
            raise CLIError("--angle is required for --gate mcry")
        open_set = set(args.open or [])
        if any(not 0 <= k < args.controls for k in open_set):
            raise CLIError(f"--open indices must be in [0, {args.controls})")
        controls = [(k, k not in open_set) for k in range(args.controls)]
        rep = lower_mcry(controls, args.controls, args.angle, verify=args.verify)
    if args.format == "json":
        result = rep.to_dict()
        result["circuit"] = dump_circuit(rep.lowered)
        _emit_json(envelope("lower", params, result))
    else:
        sys.stdout.write(dump_circuit(rep.lowered))
        print("\n".join(_report_lines(rep)))
    return 0


# --- encode ----------------------------------------------------------------


def cmd_encode(args) -> int:
    circuit, layout = build_comparison_circuit(NucleotideSeq("seq1", args.seq1), NucleotideSeq("seq2", args.seq2))
    params = {"seq1": args.seq1, "seq2": args.seq2, "lowered": args.lowered, "format": args.format}
    rep = lower_circuit(circuit) if args.lowered else None
    shown = rep.lowered if rep else circuit
    if args.format == "json":
        result = {
            "n_qubits": shown.n_qubits,
            "labels": list(layout.labels),
            "gate_counts": shown.count_ops(),
            "circuit": dump_circuit(shown),
        }
        if rep:
            result.update(rep.to_dict())
        _emit_json(envelope("encode", params, result))
    else:
        sys.stdout.write(dump_circuit(shown))
        if rep:
            print("\n".join(_report_lines(rep)))
    return 0


# --- replay ----------------------------------------------------------------


def parameters_to_argv(command: str, parameters: dict) -> list[str]:
    """Rebuild the command line that produced an envelope."""
    argv = [command]
    for key, value in parameters.items():
        flag = "--" + key.replace("_", "-")
        if value is None or value is False:
            continue
        if value is True:
            argv.append(flag)
        elif isinstance(value, list):
            argv += [flag] + [str(v) for v in value]
        else:
            argv += [flag, repr(value) if isinstance(value, float) else str(value)]
    return argv


def cmd_replay(args) -> int:
    with open(args.envelope, encoding="utf-8") as fh:
        env = json.load(fh)
    if env.get("tool") != "strandsim" or "command" not in env:
        raise CLIError(f"{args.envelope}: not a strandsim JSON envelope")
    return main(parameters_to_argv(env["command"], env.get("parameters", {})))


# --- parser ----------------------------------------------------------------


def _finite_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text}")
    return value


def _u64(text: str) -> int:
    try:
        return check_seed(int(text, 0))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strandsim", description="Quantum strip-qubit DNA sequence comparison.")
    p.add_argument("--version", action="version", version=f"strandsim {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compare", help="compare two sequences")
    c.add_argument("--seq1")
    c.add_argument("--fasta1", help="FASTA file; the first record is used")
    c.add_argument("--seq2")
    c.add_argument("--fasta2")
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="read P1 from the statevector")
    mode.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
    c.add_argument("--seed", type=_u64, help=f"unsigned 64-bit seed (fallback: ${SEED_ENV})")
    c.add_argument("--skip-invalid", action="store_true", help="drop FASTA records with non-ACGT symbols")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("scan", help="windowed mutation scan of two equal-length sequences")
    s.add_argument("--fasta-a")
    s.add_argument("--fasta-b")
    s.add_argument("--seq-a")
    s.add_argument("--seq-b")
    s.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    s.add_argument("--stride", type=int)
    s.add_argument("--threshold", type=_finite_float)
    smode = s.add_mutually_exclusive_group()
    smode.add_argument("--exact", action="store_true", help="default")
    smode.add_argument("--shots", type=int)
    s.add_argument("--seed", type=_u64)
    s.add_argument("--jobs", type=int, default=1, help="worker threads (0 = one per CPU)")
    s.add_argument("--skip-invalid", action="store_true")
    s.add_argument("--out", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_scan)

    lo = sub.add_parser("lower", help="lower CCX or a multi-controlled RY to U/CNOT")
    lo.add_argument("--gate", choices=("ccx", "mcry"), required=True)
    lo.add_argument("--controls", type=int, default=3)
    lo.add_argument("--open", type=int, nargs="*", help="indices of controls that fire on |0>")
    lo.add_argument("--angle", type=_finite_float)
    lo.add_argument("--verify", action="store_true")
    lo.add_argument("--format", choices=("text", "json"), default="text")
    lo.set_defaults(func=cmd_lower)

    e = sub.add_parser("encode", help="print the comparison circuit")
    e.add_argument("--seq1", required=True)
    e.add_argument("--seq2", required=True)
    e.add_argument("--lowered", action="store_true")
    e.add_argument("--format", choices=("circuit", "json"), default="circuit")
    e.set_defaults(func=cmd_encode)

    r = sub.add_parser("replay", help="re-run the command recorded in a JSON envelope")
    r.add_argument("envelope")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StrandSimError, OSError, UnicodeDecodeError) as exc:
        print(f"strandsim {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
