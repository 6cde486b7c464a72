"""Command-line front end: encode, decode, bounds, simulate, selftest.

Data (matrices, CSV) goes to stdout or --out; diagnostics go to stderr.
Exit codes: 0 success, 1 decoding failure or failed selftest, 2 usage, input
or IO error.
"""

import argparse
import logging
import math
import sys
from contextlib import contextmanager
from typing import List, Optional

import numpy as np

from bounds import BoundsInput, fer_curve
from collab_decoder import DetectedFailure, decode, decode_incremental
from config import config
from errors import DimensionError, IrsError
from gf import default_primitive_poly, field_new
from indep_decoder import decode_columns
from irs import (BernoulliRows, DependentRows, FixedF, decode_matrix_bytes, encode_irs,
                 encode_matrix_bytes)
from rs_code import RsSpec, Variant, make_spec
from selftest import run_selftest
from sim import CodeParams, SimConfig, run, sweep, write_bounds_csv, write_csv, write_stats_csv

logger = logging.getLogger(__name__)

DEFAULT_GRID = "1e-3:1e-1:log10x7"


# ----- argument helpers ------------------------------------------------------

def parse_hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex integer: {text!r}") from None


def parse_grid(text: str) -> List[float]:
    """start:stop:step, start:stop:log10xN, or a comma list of probabilities."""
    try:
        if ":" in text:
            start_s, stop_s, step_s = text.split(":")
            start, stop = float(start_s), float(stop_s)
            if step_s.startswith("log10x"):
                count = int(step_s[len("log10x"):])
                if count < 1 or start <= 0 or stop < start:
                    raise ValueError("log grid needs 0 < start <= stop and N >= 1")
                values = np.logspace(math.log10(start), math.log10(stop), count).tolist()
            else:
                step = float(step_s)
                if step <= 0 or stop < start:
                    raise ValueError("linear grid needs step > 0 and start <= stop")
                count = int(math.floor((stop - start) / step + 1e-9)) + 1
                values = [round(start + i * step, 12) for i in range(count)]
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}: {e}") from None

    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError(f"grid {text!r} must hold probabilities in [0, 1]")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field-bits", type=int, default=config.FIELD_BITS, help="w for GF(2^w)")
    common.add_argument("--poly", type=parse_hex, default=None, help="primitive polynomial as hex")
    common.add_argument("--k", type=int, default=config.K, help="code dimension")
    common.add_argument("--variant", choices=[v.value for v in Variant], default=config.VARIANT)
    common.add_argument("--shorten", type=int, default=None, help="shortening s (shortened variant)")
    common.add_argument("--l", type=int, default=None, help="interleaving depth")
    common.add_argument("--seed", type=int, default=config.SEED)
    common.add_argument("--out", default="-", help="output path, - for stdout")
    common.add_argument("--format", choices=["text", "raw"], default="text", help="matrix file format")
    common.add_argument("--log-level", default=config.LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])

    parser = argparse.ArgumentParser(prog="irs", description="Collaborative decoding of interleaved RS codes")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enc = sub.add_parser("encode", parents=[common], help="encode a k x l information matrix")
    p_enc.add_argument("--in", dest="input", default="-", help="input path, - for stdin")

    p_dec = sub.add_parser("decode", parents=[common], help="decode a received matrix")
    p_dec.add_argument("--in", dest="input", default="-", help="input path, - for stdin")
    p_dec.add_argument("--report", action="store_true", help="print f and the corrected rows to stderr")
    p_dec.add_argument("--incremental", action="store_true", help="use incremental submatrix elimination")
    p_dec.add_argument("--check-cols", type=int, default=config.CHECK_COLS)
    p_dec.add_argument("--decoder", choices=["collab", "indep"], default="collab")

    p_bnd = sub.add_parser("bounds", parents=[common], help="analytical FER and FER_e bounds as CSV")
    p_bnd.add_argument("--n", type=int, default=None, help="transmitted rows N (overrides the code flags)")
    p_bnd.add_argument("--q", type=int, default=None, help="field size (with --n)")
    p_bnd.add_argument("--grid", type=parse_grid, default=parse_grid(DEFAULT_GRID))

    p_sim = sub.add_parser("simulate", parents=[common], help="Monte-Carlo FER estimation")
    p_sim.add_argument("--trials", type=int, default=config.TRIALS)
    p_sim.add_argument("--workers", type=int, default=config.WORKERS)
    p_sim.add_argument("--mode", choices=["fixed", "bernoulli", "dependent"], default="bernoulli")
    p_sim.add_argument("--f", type=int, default=None, help="erroneous rows (fixed/dependent modes)")
    p_sim.add_argument("--independent", action="store_true", help="re-draw error rows until independent")
    p_sim.add_argument("--p", type=float, default=None, help="row error probability (bernoulli mode)")
    p_sim.add_argument("--grid", type=parse_grid, default=None, help="p_i grid (bernoulli mode)")
    p_sim.add_argument("--decoder", choices=["collab", "indep"], default="collab")
    p_sim.add_argument("--incremental", action="store_true")
    p_sim.add_argument("--check-cols", type=int, default=config.CHECK_COLS)
    p_sim.add_argument("--no-progress", action="store_true")

    sub.add_parser("selftest", parents=[common], help="run the embedded invariant checks")
    return parser


# ----- IO --------------------------------------------------------------------

def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_output(path: str, payload: bytes) -> None:
    if path == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return
    with open(path, "wb") as fh:
        fh.write(payload)


@contextmanager
def _text_output(path: str):
    if path == "-":
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _spec_from_args(args) -> RsSpec:
    bits = args.field_bits
    if args.poly is not None:
        poly = args.poly
    elif bits == config.FIELD_BITS:
        poly = config.PRIMITIVE_POLY
    else:
        poly = default_primitive_poly(bits)
    shorten = args.shorten
    if shorten is None:
        shorten = config.SHORTEN if args.variant == Variant.SHORTENED.value else 0
    return make_spec(field_new(bits, poly), args.k, args.variant, shorten)


def _read_matrix(args, spec: RsSpec, rows: int, what: str) -> np.ndarray:
    matrix, q = decode_matrix_bytes(_read_input(args.input), args.format)
    if q != spec.q:
        raise DimensionError(f"{what} is over GF({q}), the code is over GF({spec.q})")
    if matrix.shape[0] != rows:
        raise DimensionError(f"{what} has {matrix.shape[0]} rows, expected {rows}")
    if args.l is not None and matrix.shape[1] != args.l:
        raise DimensionError(f"{what} has {matrix.shape[1]} columns, expected l={args.l}")
    return matrix


# ----- subcommands -----------------------------------------------------------

def _decoder_from_args(args) -> str:
    if args.decoder == "indep" and args.incremental:
        raise ValueError("--incremental applies to the collaborative decoder, not --decoder indep")
    if args.decoder == "indep":
        return "indep"
    return "incremental" if args.incremental else "collab"


def cmd_encode(args) -> int:
    spec = _spec_from_args(args)
    info = _read_matrix(args, spec, spec.k, "information matrix")
    word = encode_irs(info, spec)
    _write_output(args.out, encode_matrix_bytes(word.data, spec.q, args.format))
    return 0


def cmd_decode(args) -> int:
    decoder = _decoder_from_args(args)
    spec = _spec_from_args(args)
    received = _read_matrix(args, spec, spec.n, "received matrix")
    l = received.shape[1]

    if decoder == "indep":
        outcome = decode_columns(received, spec)
    elif decoder == "incremental":
        outcome = decode_incremental(received, spec, l, args.check_cols)
    else:
        outcome = decode(received, spec, l)

    if isinstance(outcome, DetectedFailure):
        print(f"❌ Decoding failure: {outcome.reason.value}" + (f" ({outcome.detail})" if outcome.detail else ""),
              file=sys.stderr)
        return 1

    _write_output(args.out, encode_matrix_bytes(outcome.codeword.data, spec.q, args.format))
    if args.report:
        print(f"f={outcome.f_hat} rows={','.join(str(r) for r in outcome.support)}", file=sys.stderr)
    return 0


def cmd_bounds(args) -> int:
    l = args.l if args.l is not None else config.INTERLEAVING_DEPTH
    if args.n is not None:
        q = args.q if args.q is not None else 1 << args.field_bits
        base = BoundsInput.for_code(args.n, args.k, l, q)
    else:
        base = BoundsInput.for_spec(_spec_from_args(args), l)
    logger.info(f"Bounds for q={base.q}, l={base.l}, f_max={base.f_max}, N={base.N}")
    with _text_output(args.out) as out:
        write_bounds_csv(fer_curve(base, args.grid), out)
    return 0


def _mode_from_args(args):
    if args.mode == "bernoulli":
        return BernoulliRows(p=args.p if args.p is not None else (args.grid or [0.0])[0])
    if args.f is None:
        raise DimensionError(f"--mode {args.mode} needs --f")
    if args.mode == "dependent":
        return DependentRows(f=args.f)
    return FixedF(f=args.f, independent=args.independent)


def cmd_simulate(args) -> int:
    if args.trials < 1:
        raise DimensionError(f"--trials must be >= 1, got {args.trials}")
    if args.workers < 1:
        raise DimensionError(f"--workers must be >= 1, got {args.workers}")

    spec = _spec_from_args(args)
    decoder = _decoder_from_args(args)
    sim_config = SimConfig(
        code=CodeParams.from_spec(spec),
        l=args.l if args.l is not None else config.INTERLEAVING_DEPTH,
        mode=_mode_from_args(args),
        trials=args.trials,
        master_seed=args.seed,
        decoder=decoder,
        check_cols=args.check_cols,
    )
    show_progress = False if args.no_progress else None

    if args.mode == "bernoulli":
        grid = args.grid if args.grid is not None else [sim_config.mode.p]
        rows = sweep(sim_config, grid, workers=args.workers, show_progress=show_progress)
        with _text_output(args.out) as out:
            write_csv(rows, out)
    else:
        stats = run(sim_config, workers=args.workers, show_progress=show_progress)
        with _text_output(args.out) as out:
            write_stats_csv(stats, out)
    return 0


def cmd_selftest(args) -> int:
    with _text_output(args.out) as out:
        ok = run_selftest(seed=args.seed, stream=out)
    return 0 if ok else 1


COMMANDS = {
    "encode": cmd_encode,
    "decode": cmd_decode,
    "bounds": cmd_bounds,
    "simulate": cmd_simulate,
    "selftest": cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    config.print_config_summary()

    try:
        return COMMANDS[args.command](args)
    except (IrsError, OSError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
