"""Command-line front door: one subcommand per harness or inspection, plus `sweep`.

Exit codes: 0 success, 1 verdict-level failure (for example no admissible setting),
2 usage error.
"""
import argparse
import asyncio
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.config import config
from app.exceptions import UsageError, VerdictError
from app.experiments import ExperimentRecord, default_collection
from app.logger import logger
from app.utils.seeding import derive_seeds


EXIT_OK, EXIT_VERDICT, EXIT_USAGE = 0, 1, 2

# Global flags and the experiment keyword each one feeds
GLOBAL_FLAGS = {"n": "N", "nx": "n_X", "seed": "seed", "max_candidates": "max_candidates"}
OUTPUT_FLAGS = {"command", "format", "out", "timing"}

SWEEPABLE = ("chsh", "si-census", "mz", "sg", "uncertainty", "qubit", "bell", "kqubit", "measure")


def comma_list(text: str) -> List[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected a comma-separated list")
    return items


def pair_list(text: str) -> List[Tuple[int, int]]:
    try:
        pairs = json.loads(text)
        return [(int(m), int(n)) for m, n in pairs]
    except (ValueError, TypeError) as e:
        raise argparse.ArgumentTypeError(f"expected JSON [[m, n], ...]: {e}")


def n_values(text: str) -> List[int]:
    """"8,16,32" or a doubling range "8:4096"."""
    try:
        if ":" in text:
            start, stop = (int(v) for v in text.split(":"))
            values = []
            while start <= stop:
                values.append(start)
                start *= 2
            return values
        return [int(v) for v in comma_list(text)]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad N values {text!r}: {e}")


def common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--n", type=int, help="Quarter length N")
    parent.add_argument("--nx", type=int, help="Number of null symbols n_X")
    parent.add_argument("--seed", type=int, default=config.ensemble.seed, help="Master seed")
    parent.add_argument(
        "--format",
        choices=["json", "csv", "text"],
        default=config.output.format,
        help="Record format (default: %(default)s)",
    )
    parent.add_argument("--out", type=str, help="Write the record to this file")
    parent.add_argument("--max-candidates", type=int, help="Cap on enumerated exact settings")
    parent.add_argument("--timing", action="store_true", help="Include wall time in the record")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bithilbert",
        description="Bit-string ensembles for a discretised qubit Hilbert space",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parent = common_parent()

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[parent], help=help_text)

    p = add("qubit", "Single-qubit string B(theta, phi)")
    p.add_argument("--m", type=int, default=0, help="Amplitude index, cos(theta) = 1 - m/N")
    p.add_argument("--phase", type=int, default=0, help="Phase index, phi = 2 pi phase/p")

    p = add("kqubit", "K-qubit state from a parameter tree")
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--tree", type=pair_list, help="JSON [[m, n], ...] in pre-order")
    p.add_argument("--save", type=str, help="Write <save>.bits and <save>.json")

    p = add("bell", "Bell pair and its correlation")
    p.add_argument("--ma", dest="m_a", type=int, default=0)
    p.add_argument("--mb", dest="m_b", type=int, default=0)

    p = add("chsh", "CHSH S value on the 1/N grid")
    p.add_argument("--alice", type=comma_list, help="Alice's two settings in turns")
    p.add_argument("--bob", type=comma_list, help="Bob's two settings in turns")

    p = add("si-census", "Statistical-independence census over epsilon-disks")
    p.add_argument("--variant", choices=["chsh", "bell"], default="chsh")
    p.add_argument("--epsilon", type=str)
    p.add_argument("--pool", type=comma_list, help="Vertex angles in turns instead of the realised geometry")
    p.add_argument("--pool-max-denominator", type=int)
    p.add_argument("--exception-pool", action="store_true", help="Pool of exception angles only")

    p = add("mz", "Mach-Zehnder complementarity")
    p.add_argument("--phi", type=str, default="0", help="Nominal phase in turns")
    p.add_argument("--mode", choices=["interference", "which-way"], default="interference")
    p.add_argument("--epsilon", type=str)

    p = add("sg", "Sequential Stern-Gerlach non-commutativity")
    p.add_argument("--disks", type=comma_list, help="Three disks as cos:turns")
    p.add_argument("--epsilon", type=str)
    p.add_argument("--runs", type=int, default=1)

    p = add("uncertainty", "Uncertainty relation for a skeleton point")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--phase", type=int, default=0)
    p.add_argument("--sweep", action="store_true", help="Check every skeleton point")
    p.add_argument("--hbar-units", action="store_true")

    p = add("ghz", "Linear vs circular polarisation admissibility")
    p.add_argument("--phi", type=str, help="Angle in turns")
    p.add_argument("--cos2phi", type=str, help="Rational cos(2 phi)")

    p = add("niven", "Classify the cosine of a rational angle")
    p.add_argument("angle", type=str, help="Angle in turns, e.g. 1/5")

    p = add("triangle", "Impossible-triangle verdict")
    p.add_argument("--r-ab", type=str, default="3/5")
    p.add_argument("--r-bc", type=str, default="4/5")
    p.add_argument("--phi-b", type=str, default="1/7")

    p = add("quadruple", "CHSH quadruple verdict")
    p.add_argument("--r00", type=str, default="3/5")
    p.add_argument("--r01", type=str, default="5/13")
    p.add_argument("--r10", type=str, default="8/17")
    p.add_argument("--phi0", type=str, default="1/7")
    p.add_argument("--phi1", type=str, default="1/11")
    p.add_argument("--dependent", action="store_true", help="Vertex angles are not independent")

    p = add("evolve", "Run a unitary program and invert it")
    p.add_argument("--program", type=str, default="[]", help="JSON [[m, n], ...]")
    p.add_argument("--start", type=str, help="Run-length text of the start string")

    p = add("measure", "Measurement as seeded disorder")
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--phase", type=int, default=0)

    p = add("padic", "p-adic distance between trajectory labels")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--base", type=int)

    p = add("scale", "Ensemble size, classical limit and K_max")
    p.add_argument("--energy-ratio", type=str)
    p.add_argument("--mass-ug", type=str)
    p.add_argument("--wavelength", type=str, help="Photon wavelength in metres")
    p.add_argument("--length", dest="max_length", type=str, help="Longest string L")
    p.add_argument("--universe-factor", type=str, default="1")

    p = sub.add_parser("sweep", help="One CSV row per N for a harness")
    p.add_argument("target", choices=SWEEPABLE)
    p.add_argument("--ns", type=n_values, required=True, help='"8,16,32" or doubling "8:4096"')
    p.add_argument("--seed", type=int, default=config.ensemble.seed)
    p.add_argument("--out", type=str)
    return parser


def experiment_input(args: argparse.Namespace) -> Dict[str, Any]:
    """Map parsed flags to experiment keywords, dropping unset ones."""
    values = {}
    for key, value in vars(args).items():
        if key in OUTPUT_FLAGS or value is None:
            continue
        values[GLOBAL_FLAGS.get(key, key)] = value
    if values.pop("dependent", False):
        values["independent"] = False
    return values


def output_path(out: Optional[str], name: str, fmt: str) -> Optional[Path]:
    if out:
        return Path(out)
    if config.output.directory:
        directory = Path(config.output.directory)
        directory.mkdir(parents=True, exist_ok=True)
        return directory / f"{name}.{fmt}"
    return None


def emit(text: str, path: Optional[Path]):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        path.write_text(text)
        logger.info(f"wrote {path}")


def usage_error(parser: argparse.ArgumentParser, message: str) -> int:
    parser.print_usage(sys.stderr)
    print(f"{parser.prog}: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def run_one(argv: Sequence[str], parser: argparse.ArgumentParser) -> Tuple[int, Optional[ExperimentRecord], argparse.Namespace]:
    args = parser.parse_args(argv)
    collection = default_collection()
    record = collection.execute(name=args.command, experiment_input=experiment_input(args))
    return (EXIT_OK if record else EXIT_VERDICT), record, args


def sweep_rows(target: str, ns: List[int], seed: int, extra: List[str], parser) -> List[Tuple[int, int, Any]]:
    """Run one row per N concurrently; results come back in N order."""
    seeds = derive_seeds(seed, len(ns))

    async def run_all():
        tasks = [
            asyncio.to_thread(
                run_one,
                [target, *extra, "--n", str(N), "--seed", str(row_seed)],
                parser,
            )
            for N, row_seed in zip(ns, seeds)
        ]
        return await asyncio.gather(*tasks, return_exceptions=True)

    results = asyncio.run(run_all())
    return list(zip(ns, seeds, results))


def run_sweep(argv: Sequence[str], parser: argparse.ArgumentParser) -> int:
    sweep_parser = argparse.ArgumentParser(prog=f"{parser.prog} sweep", add_help=False)
    sweep_parser.add_argument("target", choices=SWEEPABLE)
    sweep_parser.add_argument("--ns", type=n_values, required=True)
    sweep_parser.add_argument("--seed", type=int, default=config.ensemble.seed)
    sweep_parser.add_argument("--out", type=str)
    args, extra = sweep_parser.parse_known_args(argv)
    ns = args.ns
    if not ns:
        return usage_error(sweep_parser, "empty range of N values")
    if any(N < 1 for N in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
        return usage_error(sweep_parser, "N values must be positive and increasing")
    if any(flag in ("--n", "--seed", "--format", "--out") for flag in extra):
        return usage_error(sweep_parser, "--n, --seed, --format and --out are set by the sweep")
    # Reject bad target flags here rather than in a worker thread
    parser.parse_args([args.target, *extra, "--n", str(ns[0])])

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["N", "seed", "experiment", "headline", "value", "error"])
    path = output_path(args.out, f"sweep_{args.target}", "csv")
    code = EXIT_OK
    for N, row_seed, result in sweep_rows(args.target, ns, args.seed, extra, parser):
        if isinstance(result, BaseException):
            code = EXIT_VERDICT if isinstance(result, VerdictError) else EXIT_USAGE
            message = getattr(result, "message", str(result))
            logger.error(f"sweep row N={N} failed: {message}")
            break
        row_code, record, _ = result
        writer.writerow(
            [N, row_seed, record.experiment, record.headline, json.dumps(record.headline_value()), record.error or ""]
        )
        if row_code != EXIT_OK:
            code = row_code
            break
    emit(buf.getvalue(), path)
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the chosen subcommand and emit its record; returns the exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        if argv and argv[0] == "sweep":
            return run_sweep(argv[1:], parser)
        code, record, args = run_one(argv, parser)
    except SystemExit as e:
        # argparse has already printed the usage synopsis
        return EXIT_USAGE if e.code else EXIT_OK
    except UsageError as e:
        return usage_error(parser, e.message)
    except ValidationError as e:
        return usage_error(parser, str(e))
    except VerdictError as e:
        logger.error(e.message)
        return EXIT_VERDICT

    emit(record.render(args.format, args.timing), output_path(args.out, record.experiment, args.format))
    return code


def main():
    sys.exit(run())
