"""Command line interface.

Subcommands: points, matrix, coherence, weil-check, rip, strip, recover,
experiment. Exit codes: 0 success, 1 validation error (including unknown
flags and bad config files), 2 numerical degeneracy. Randomized commands
require an explicit --seed; nothing draws silent entropy.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import frames
from .decoders import BpConfig, OmpConfig, basis_pursuit, omp
from .exceptions import DegeneracyError
from .experiments import ExperimentConfig, run_eigen_experiment, run_success_experiment
from .lattice import FrequencyLattice, mixed_radix_lattice
from .sampling import (DETERMINISTIC, UNIFORM_CONTINUOUS, UNIFORM_LATTICE, SamplingMatrix,
                       SamplingSet, build_matrix, deterministic_points,
                       random_points_continuous, random_points_lattice)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits with code 1 on usage errors (2 is reserved
    for numerical degeneracy)."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write_output(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out in (None, "-"):
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="sparsetrig",
                     description="Deterministic sampling and sparse recovery of "
                                 "trigonometric polynomials")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("points", help="emit a sampling set as JSON")
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument("--model", choices=[DETERMINISTIC, UNIFORM_CONTINUOUS, UNIFORM_LATTICE],
                   default=DETERMINISTIC)
    p.add_argument("--modulus", type=int, help="lattice modulus for uniform-lattice")
    p.add_argument("--seed", type=int, help="required for random models")
    p.add_argument("--out", default="-")

    p = sub.add_parser("matrix", help="emit a sampling matrix as JSON")
    p.add_argument("--q", type=int, help="lattice degree (uniform [-q, q]^d)")
    p.add_argument("--d", type=int, help="dimension")
    p.add_argument("--n", type=int, help="number of deterministic points")
    p.add_argument("--points", help="serialized sampling set JSON to use instead of --n")
    p.add_argument("--mixed-radix", type=_int_list, metavar="P1,P2,...",
                   help="use the mixed-radix lattice for these descending primes")
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--out", default="-")

    p = sub.add_parser("coherence", help="coherence report for a deterministic matrix")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mixed-radix", type=_int_list, metavar="P1,P2,...")
    p.add_argument("--out", default="-")

    p = sub.add_parser("weil-check", help="exponential sum magnitude vs bound")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--coeffs", type=_int_list, required=True, metavar="M1,M2,...")
    p.add_argument("--out", default="-")

    p = sub.add_parser("rip", help="brute-force restricted isometry certificate")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("strip", help="Monte-Carlo statistical isometry estimate")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default="-")

    p = sub.add_parser("recover", help="one-shot decode of a provided instance")
    p.add_argument("--matrix", help="serialized sampling matrix JSON")
    p.add_argument("--q", type=int, help="build a deterministic matrix instead")
    p.add_argument("--d", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--y", required=True, help="JSON file with the samples as [re, im] pairs")
    p.add_argument("--decoder", choices=["omp", "bp"], default="omp")
    p.add_argument("--max-sparsity", type=int)
    p.add_argument("--tol", type=float, default=0.0)
    p.add_argument("--out", default="-")

    p = sub.add_parser("experiment", help="run a configured experiment")
    p.add_argument("kind", choices=["success", "eigen"])
    p.add_argument("--config", required=True, help="TOML config file")
    p.add_argument("--output", help="override the config's output path")

    return parser


def _cmd_points(args) -> dict:
    if args.model == DETERMINISTIC:
        points = deterministic_points(args.n, args.d)
    else:
        if args.seed is None:
            raise ValueError("--seed is required for random models")
        if args.model == UNIFORM_LATTICE:
            if args.modulus is None:
                raise ValueError("--modulus is required for the uniform-lattice model")
            points = random_points_lattice(args.n, args.d, args.modulus, args.seed)
        else:
            points = random_points_continuous(args.n, args.d, args.seed)
    return points.to_json()


def _lattice_from_args(args) -> FrequencyLattice:
    if getattr(args, "mixed_radix", None):
        return mixed_radix_lattice(args.mixed_radix)
    if args.q is None or args.d is None:
        raise ValueError("--q and --d are required without --mixed-radix")
    return FrequencyLattice.uniform(args.q, args.d)


def _cmd_matrix(args) -> dict:
    lattice = _lattice_from_args(args)
    if args.points is not None:
        with open(args.points) as fh:
            points = SamplingSet.from_json(json.load(fh))
    else:
        if args.n is None:
            raise ValueError("--n or --points is required")
        points = deterministic_points(args.n, lattice.dimension)
    return build_matrix(points, lattice, normalized=args.normalized).to_json()


def _cmd_coherence(args) -> dict:
    lattice = _lattice_from_args(args)
    matrix = build_matrix(deterministic_points(args.n, lattice.dimension),
                          lattice, normalized=True)
    return frames.coherence(matrix).to_json()


def _cmd_rip(args) -> dict:
    matrix = build_matrix(deterministic_points(args.n, args.d),
                          FrequencyLattice.uniform(args.q, args.d), normalized=True)
    return frames.rip_bruteforce(matrix, args.k).to_json()


def _cmd_strip(args) -> dict:
    matrix = build_matrix(deterministic_points(args.n, args.d),
                          FrequencyLattice.uniform(args.q, args.d), normalized=True)
    return frames.strip_estimate(matrix, args.k, args.delta, args.trials,
                                 args.seed).to_json()


def _cmd_recover(args) -> dict:
    if args.matrix is not None:
        with open(args.matrix) as fh:
            matrix = SamplingMatrix.from_json(json.load(fh))
    else:
        if args.q is None or args.d is None or args.n is None:
            raise ValueError("--matrix or all of --q/--d/--n are required")
        matrix = build_matrix(deterministic_points(args.n, args.d),
                              FrequencyLattice.uniform(args.q, args.d))
    with open(args.y) as fh:
        pairs = json.load(fh)
    y = np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)
    if args.decoder == "omp":
        cap = args.max_sparsity if args.max_sparsity is not None else matrix.shape[0]
        result = omp(matrix, y, OmpConfig(max_sparsity=cap, tol=args.tol))
    else:
        result = basis_pursuit(matrix, y, BpConfig())
    return result.to_json()


def _cmd_experiment(args) -> None:
    cfg = ExperimentConfig.from_toml(args.config)
    if args.output is not None:
        cfg = ExperimentConfig.from_dict({**_config_dict(cfg), "output": args.output})
    if cfg.output is None:
        raise ValueError("config key 'output' is required for experiments")
    if args.kind == "success":
        run_success_experiment(cfg)
    else:
        run_eigen_experiment(cfg)
    print(cfg.output)


def _config_dict(cfg: ExperimentConfig) -> dict:
    from dataclasses import asdict
    data = asdict(cfg)
    data["m_values"] = list(data["m_values"])
    data["models"] = list(data["models"])
    return data


def cli_main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "points":
            _write_output(_cmd_points(args), args.out)
        elif args.command == "matrix":
            _write_output(_cmd_matrix(args), args.out)
        elif args.command == "coherence":
            _write_output(_cmd_coherence(args), args.out)
        elif args.command == "weil-check":
            _write_output(frames.weil_sum_check(args.p, args.coeffs).to_json(), args.out)
        elif args.command == "rip":
            _write_output(_cmd_rip(args), args.out)
        elif args.command == "strip":
            _write_output(_cmd_strip(args), args.out)
        elif args.command == "recover":
            _write_output(_cmd_recover(args), args.out)
        elif args.command == "experiment":
            _cmd_experiment(args)
    except DegeneracyError as exc:
        print(f"sparsetrig: numerical degeneracy: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        print(f"sparsetrig: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
