"""Command-line front end: gate dumps, sweeps, oracle runs, fidelity, parameters.

Subcommands map one-to-one onto the package's claims:

* ``gate``     exact gate matrices with invariants and output concurrences
* ``sweep``    entangling power across (p_a + p_b)/c ratios (CSV)
* ``oracle``   propagated versus analytic exchange phases (CSV)
* ``fidelity`` infidelity under momentum spread (CSV)
* ``params``   SI parameter estimation report (JSON)

All randomness is seeded; CSV output uses a fixed column order, 17
significant digits and LF line endings, so identical invocations produce
identical files.  Each output file is accompanied by a ``<file>.manifest.json``
recording the command, parameters, seed and tool version.

Exit codes: 0 success, 2 usage/validation, 3 numerical quality, 4 I/O.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .entanglement import (
    concurrence,
    makhlin_invariants,
    optimality_sweep,
    sweep_to_csv,
)
from .gates import (
    BASIS_ORDER,
    CollisionConfig,
    SpinlessEncoding,
    TwoQubitGate,
    boson_gate,
    fermion_gate,
    gate_to_json,
    spinless_gate,
    spinless_gate_idealized,
)
from .oracle import (
    NumericalQualityError,
    comparison_table,
    rows_to_csv,
    spread_averaged_gate,
)
from .physparams import bundled_rb87_path, load_setup, setup_report

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

_FAMILIES = ("boson", "fermion", "spinless", "spinless-ideal")


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _manifest(command: str, parameters: dict, seed: int | None) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _write_output(path: str | None, text: str, manifest: dict) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
        with open(path + ".manifest.json", "w", newline="") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc}") from exc


class _IOFailure(RuntimeError):
    pass


def _build_gate(args: argparse.Namespace) -> TwoQubitGate:
    if args.family == "spinless-ideal":
        return spinless_gate_idealized()
    if args.family == "spinless":
        if args.lambda0 is None or args.lambda1 is None or args.c is None:
            raise ValueError("spinless family requires --lambda0, --lambda1 and --c")
        return spinless_gate(SpinlessEncoding(args.lambda0, args.lambda1), args.c)
    if args.pa is None or args.pb is None or args.c is None:
        raise ValueError(f"{args.family} family requires --pa, --pb and --c")
    cfg = CollisionConfig(p_a=args.pa, p_b=args.pb, c=args.c)
    return boson_gate(cfg) if args.family == "boson" else fermion_gate(cfg)


def cmd_gate(args: argparse.Namespace) -> int:
    gate = _build_gate(args)
    inv = makhlin_invariants(gate)
    basis_concurrences = {}
    for i, label in enumerate(BASIS_ORDER):
        out = gate.matrix[:, i]
        basis_concurrences[label] = concurrence(out / np.linalg.norm(out))
    payload = {
        "family": args.family,
        "basis_order": list(BASIS_ORDER),
        "matrix": json.loads(gate_to_json(gate))["matrix"],
        "makhlin_g1": [inv.g1.real, inv.g1.imag],
        "makhlin_g2": inv.g2,
        "unitarity_defect": gate.unitarity_defect(),
        "basis_input_concurrence": basis_concurrences,
    }
    params = {k: getattr(args, k) for k in ("family", "pa", "pb", "c", "lambda0", "lambda1")}
    payload["manifest"] = _manifest("gate", params, seed=None)
    _write_output(args.output, json.dumps(payload, indent=2) + "\n",
                  payload["manifest"])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.points < 1:
        raise ValueError("--points must be >= 1")
    if args.ratio_min <= 0 or args.ratio_max < args.ratio_min:
        raise ValueError("need 0 < ratio-min <= ratio-max")
    if args.points == 1:
        ratios = [args.ratio_min]
    else:
        ratios = list(np.geomspace(args.ratio_min, args.ratio_max, args.points))
    rows = optimality_sweep(ratios, samples=args.samples, seed=args.seed,
                            family=args.family)
    params = {"family": args.family, "ratio_min": args.ratio_min,
              "ratio_max": args.ratio_max, "points": args.points,
              "samples": args.samples}
    _write_output(args.output, sweep_to_csv(rows), _manifest("sweep", params, args.seed))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    ratios = [float(r) for r in args.ratios.split(",") if r.strip()]
    widths = None
    if args.widths:
        widths = [float(w) for w in args.widths.split(",") if w.strip()]
    rows = comparison_table(ratios, preset_name=args.preset, widths=widths)
    params = {"ratios": ratios, "widths": widths, "preset": args.preset}
    _write_output(args.output, rows_to_csv(rows), _manifest("oracle", params, seed=None))
    return EXIT_OK


def cmd_fidelity(args: argparse.Namespace) -> int:
    deltas = [float(d) for d in args.delta_p.split(",") if d.strip()]
    if not deltas:
        raise ValueError("--delta-p list must not be empty")
    cfg = CollisionConfig(p_a=args.ratio / 2, p_b=args.ratio / 2, c=1.0)
    lines = ["delta_p_over_c,fidelity,infidelity"]
    for dp in deltas:
        res = spread_averaged_gate(cfg, dp, family=args.family,
                                   quadrature_order=args.order)
        lines.append(",".join(_fmt(v) for v in (dp, res.fidelity, res.infidelity)))
    params = {"family": args.family, "ratio": args.ratio, "delta_p": deltas,
              "order": args.order}
    _write_output(args.output, "\n".join(lines) + "\n",
                  _manifest("fidelity", params, seed=None))
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    path = args.config if args.config else str(bundled_rb87_path())
    try:
        setup = load_setup(path)
    except FileNotFoundError as exc:
        raise _IOFailure(f"config file not found: {path}") from exc
    report = setup_report(setup)
    report["manifest"] = _manifest("params", {"config": path}, seed=None)
    _write_output(args.output, json.dumps(report, indent=2) + "\n", report["manifest"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scatgate",
                                     description="Scattering-gate toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gate", help="dump one gate with quality metrics (JSON)")
    p.add_argument("family", choices=_FAMILIES)
    p.add_argument("--pa", type=float, help="right-mover momentum magnitude")
    p.add_argument("--pb", type=float, help="left-mover momentum magnitude")
    p.add_argument("--c", type=float, help="contact coupling")
    p.add_argument("--lambda0", type=float, help="logical-0 momentum (spinless)")
    p.add_argument("--lambda1", type=float, help="logical-1 momentum (spinless)")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_gate)

    p = sub.add_parser("sweep", help="entangling power over a ratio range (CSV)")
    p.add_argument("family", choices=("boson", "fermion"))
    p.add_argument("--ratio-min", type=float, required=True)
    p.add_argument("--ratio-max", type=float, required=True)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle", help="propagation versus analytic phase (CSV)")
    p.add_argument("--ratios", required=True,
                   help="comma-separated c/(2k) values, e.g. 0.1,1,10")
    p.add_argument("--widths", help="comma-separated barrier widths (optional)")
    p.add_argument("--preset", choices=("fast", "accurate"), default="fast")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fidelity", help="gate infidelity under momentum spread (CSV)")
    p.add_argument("family", choices=("boson", "fermion"))
    p.add_argument("--ratio", type=float, default=1.0,
                   help="(p_a + p_b)/c of the central gate")
    p.add_argument("--delta-p", required=True,
                   help="comma-separated spreads in units of c")
    p.add_argument("--order", type=int, default=24, help="Gauss-Hermite order")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("params", help="SI parameter estimation report (JSON)")
    p.add_argument("--config", help="key=value config path (default: bundled Rb-87)")
    p.add_argument("--output", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_params)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalQualityError as exc:
        print(f"numerical-quality failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
