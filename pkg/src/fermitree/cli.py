"""Command line front end.

Subcommands:
    map        export a Majorana mapping as JSON
    stats      weight statistics over a range of mode counts (CSV)
    verify     run the algebraic checks on a mapping, exit 1 on failure
    tomograph  sample Bell shots and estimate k-RDM elements
    qudit-sic  validate a fiducial state and its Heisenberg-Weyl POVM

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 register too large for dense simulation.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .baselines import bravyi_kitaev, jordan_wigner, weight_stats
from .fermion import (
    attenuation_bound,
    exact_fermionic_rdm,
    sampled_fermionic_rdm,
)
from .pauli import PauliString
from .qudit import (
    fiducial_overlaps,
    hw_sic_elements,
    load_fiducial,
    qubit_fiducial,
    qutrit_fiducial,
    validate_fiducial,
)
from .statesim import (
    CapacityError,
    DenseState,
    attach_ancillas,
    expectation,
    random_state,
    sample_bell_shots,
)
from .ternary import (
    build_mapping,
    load_mapping,
    mapping_to_dict,
    verify_mapping,
    verify_table,
    weight_lower_bound,
)
from .tomography import estimate_all_k_rdms, estimates_to_rows

KINDS = ("ternary", "jw", "bk")


def _build_table(kind: str, modes: int):
    if kind == "ternary":
        return build_mapping(modes).majorana_table
    if kind == "jw":
        return jordan_wigner(modes)
    if kind == "bk":
        return bravyi_kitaev(modes)
    raise ValueError(f"unknown mapping kind {kind!r}")


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_map(args: argparse.Namespace) -> int:
    if args.kind == "ternary":
        payload = mapping_to_dict(build_mapping(args.modes))
    else:
        table = _build_table(args.kind, args.modes)
        payload = {
            "kind": args.kind,
            "n_modes": args.modes,
            "num_qubits": args.modes,
            "majorana_table": [str(op) for op in table],
        }
    payload["tool_version"] = __version__
    _emit(payload, args.output)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    if args.modes_from < 1 or args.modes_to < args.modes_from:
        raise ValueError("need 1 <= modes-from <= modes-to")
    kinds = [k.strip() for k in args.kinds.split(",")]
    for kind in kinds:
        if kind not in KINDS:
            raise ValueError(f"unknown mapping kind {kind!r}")
    lines = ["n,kind,mean_weight,max_weight"]
    for n in range(args.modes_from, args.modes_to + 1):
        for kind in kinds:
            stats = weight_stats(_build_table(kind, n))
            lines.append(f"{n},{kind},{stats.mean_weight},{stats.max_weight}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.input:
        mapping = load_mapping(args.input)
        label = f"ternary mapping from {args.input}"
        report = verify_mapping(mapping)
        n_modes = mapping.n_modes
    elif args.modes is None:
        raise ValueError("need --modes or --input")
    elif args.kind == "ternary":
        mapping = build_mapping(args.modes)
        label = f"ternary mapping, n={args.modes}"
        report = verify_mapping(mapping)
        n_modes = args.modes
    else:
        table = _build_table(args.kind, args.modes)
        label = f"{args.kind} mapping, n={args.modes}"
        report = verify_table(table)
        n_modes = args.modes

    bound = weight_lower_bound(n_modes)
    bound_ok = report.mean_weight >= bound - 1e-12
    print(f"{label}: {report.n_operators} operators")
    print(f"  anticommutation: {'ok' if not report.anticommutation_failures else report.anticommutation_failures}")
    print(f"  squares to +I:   {'ok' if not report.square_failures else report.square_failures}")
    if report.identity_product_ok is not None:
        phase = report.identity_product_phase_power
        print(f"  path product:    {'identity, phase i^' + str(phase) if report.identity_product_ok else 'NOT identity'}")
    print(f"  mean weight:     {report.mean_weight:.6f} (lower bound {bound:.6f})")
    print(f"  max weight:      {report.max_weight}")
    passed = report.passed and bound_ok
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


def _prepare_state(kind: str, num_qubits: int, seed: int) -> DenseState:
    if kind == "random":
        return random_state(num_qubits, 2, np.random.default_rng(seed))
    if kind == "zero":
        return DenseState.zero_state(num_qubits)
    if kind == "ghz":
        return DenseState.ghz(num_qubits)
    raise ValueError(f"unknown state kind {kind!r}")


def cmd_tomograph(args: argparse.Namespace) -> int:
    config = {
        "command": "tomograph",
        "k": args.k,
        "shots": args.shots,
        "seed": args.seed,
        "state": args.state,
        "tool_version": __version__,
    }
    if args.fermionic:
        if args.modes is None:
            raise ValueError("--fermionic needs --modes")
        config.update({"modes": args.modes, "mapping": args.kind})
        table = _build_table(args.kind, args.modes)
        system = _prepare_state(args.state, args.modes, args.seed)
        estimates = sampled_fermionic_rdm(
            system, table, args.k, args.shots, args.seed, workers=args.workers
        )
        exact = exact_fermionic_rdm(system, table, args.k)
        rows = []
        max_att = 0.0
        for est in estimates:
            ex = exact[est.indices]
            rows.append(
                {
                    "indices": list(est.indices),
                    "value_re": est.value.real,
                    "value_im": est.value.imag,
                    "std_error": est.std_error,
                    "pauli": est.pauli,
                    "weight": est.weight,
                    "attenuation": est.attenuation,
                    "exact_re": ex.real,
                    "exact_im": ex.imag,
                    "abs_error": abs(est.value - ex),
                }
            )
            max_att = max(max_att, est.attenuation)
        payload = {
            **config,
            "estimates": rows,
            "max_attenuation": max_att,
            "attenuation_bound": attenuation_bound(table, args.k),
        }
    else:
        if args.qubits is None:
            raise ValueError("need --qubits (or --fermionic with --modes)")
        config["qubits"] = args.qubits
        system = _prepare_state(args.state, args.qubits, args.seed)
        stream = sample_bell_shots(
            attach_ancillas(system), args.shots, args.seed, workers=args.workers
        )
        estimates = estimate_all_k_rdms(stream, args.k)
        rows = estimates_to_rows(estimates)
        for row, est in zip(rows, estimates):
            pauli = PauliString.from_map(
                {q: letter.upper() for q, letter in zip(est.qubits, est.letters)}
            )
            ex = expectation(system, pauli).real
            row["exact"] = ex
            row["abs_error"] = abs(est.value - ex)
        payload = {**config, "estimates": rows}
        if args.shots_output:
            stream.to_jsonl(args.shots_output)
    _emit(payload, args.output)
    return 0


def cmd_qudit_sic(args: argparse.Namespace) -> int:
    if args.fiducial:
        fiducial = load_fiducial(args.fiducial)
        if args.dimension is not None and args.dimension != fiducial.dimension:
            raise ValueError(
                f"--dimension {args.dimension} contradicts file ({fiducial.dimension})"
            )
    else:
        dimension = 2 if args.dimension is None else args.dimension
        if dimension == 2:
            fiducial = qubit_fiducial()
        elif dimension == 3:
            fiducial = qutrit_fiducial()
        else:
            raise ValueError(
                "built-in fiducials exist for D=2,3; otherwise pass --fiducial"
            )

    report = validate_fiducial(fiducial)
    elements = hw_sic_elements(fiducial)
    d = fiducial.dimension
    total = sum(elements)
    sum_residual = float(np.max(np.abs(total - np.eye(d))))
    overlaps = fiducial_overlaps(fiducial)
    payload = {
        "command": "qudit-sic",
        "tool_version": __version__,
        "dimension": d,
        "target_magnitude": report.target_magnitude,
        "min_magnitude": report.min_magnitude,
        "max_magnitude": report.max_magnitude,
        "exact_sic": report.exact_sic,
        "informationally_complete": report.informationally_complete,
        "povm_sum_residual": sum_residual,
        "calibration_factors": {
            f"{f},{g}": [v.real, v.imag] for (f, g), v in sorted(overlaps.items())
        },
    }
    _emit(payload, args.output)
    ok = report.informationally_complete and sum_residual < 1e-10
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermitree",
        description="Ternary-tree Majorana mappings and Bell-basis RDM estimation.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="export a Majorana mapping as JSON")
    p_map.add_argument("--kind", choices=KINDS, default="ternary")
    p_map.add_argument("--modes", type=int, required=True)
    p_map.add_argument("--output")
    p_map.set_defaults(func=cmd_map)

    p_stats = sub.add_parser("stats", help="weight statistics as CSV")
    p_stats.add_argument("--kinds", default=",".join(KINDS))
    p_stats.add_argument("--modes-from", type=int, default=1)
    p_stats.add_argument("--modes-to", type=int, required=True)
    p_stats.add_argument("--output")
    p_stats.set_defaults(func=cmd_stats)

    p_verify = sub.add_parser("verify", help="check a mapping's Majorana algebra")
    p_verify.add_argument("--kind", choices=KINDS, default="ternary")
    p_verify.add_argument("--modes", type=int)
    p_verify.add_argument("--input", help="ternary mapping JSON to verify instead")
    p_verify.set_defaults(func=cmd_verify)

    p_tomo = sub.add_parser("tomograph", help="estimate k-RDM elements from Bell shots")
    p_tomo.add_argument("--qubits", type=int)
    p_tomo.add_argument("--k", type=int, default=1)
    p_tomo.add_argument("--shots", type=int, required=True)
    p_tomo.add_argument("--seed", type=int, required=True)
    p_tomo.add_argument(
        "--workers", type=int, default=1,
        help="parallel sampling threads; never changes the output",
    )
    p_tomo.add_argument("--state", choices=("random", "zero", "ghz"), default="random")
    p_tomo.add_argument("--fermionic", action="store_true")
    p_tomo.add_argument("--modes", type=int)
    p_tomo.add_argument("--kind", choices=KINDS, default="ternary")
    p_tomo.add_argument("--output")
    p_tomo.add_argument("--shots-output", help="also write the raw shot stream (JSONL)")
    p_tomo.set_defaults(func=cmd_tomograph)

    p_sic = sub.add_parser("qudit-sic", help="validate a fiducial and its POVM")
    p_sic.add_argument("--dimension", type=int)
    p_sic.add_argument("--fiducial", help="fiducial JSON file")
    p_sic.add_argument("--output")
    p_sic.set_defaults(func=cmd_qudit_sic)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
