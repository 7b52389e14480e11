"""Command-line front end: run, verify, and reconstruct catalog scenarios.

Exit codes: 0 success, 2 configuration error, 3 null projection,
4 verification failure.  Logging is controlled by the QWPROJ_LOG
environment variable (off | info | debug, default off).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import re
import sys
from pathlib import Path

from . import catalog, hilbert, reconstruction
from .errors import NullProjection, QwprojError
from .projection import induced_walk, project_state, verify_commutation
from .spaces import lattice_quotient, reachable_window
from .walk import evolve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NULL_PROJECTION = 3
EXIT_VERIFICATION = 4

_PHI_PATTERN = re.compile(r"^(-?)(\d+(?:\.\d+)?)?\s*pi(?:\s*/\s*(\d+(?:\.\d+)?))?$")


def parse_phi(text: str) -> float:
    """Parse a phase: plain float or pi fractions like 'pi', 'pi/3', '2pi/3'."""
    text = text.strip()
    m = _PHI_PATTERN.match(text)
    if m:
        sign = -1.0 if m.group(1) else 1.0
        mult = float(m.group(2)) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        return sign * mult * math.pi / den
    return float(text)


def _configure_logging() -> None:
    level_name = os.environ.get("QWPROJ_LOG", "off").lower()
    levels = {"off": None, "info": logging.INFO, "debug": logging.DEBUG}
    if level_name not in levels:
        raise QwprojError(f"QWPROJ_LOG must be off, info, or debug, not {level_name!r}")
    level = levels[level_name]
    if level is not None:
        logging.basicConfig(
            level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
        )


def _load_initial_state(space, text: str):
    if text.lstrip().startswith("{"):
        data = json.loads(text)
    else:
        data = json.loads(Path(text).read_text())
    return hilbert.from_json_dict(space, data)


def _write_text(path: str, content: str) -> None:
    Path(path).write_text(content)
    logger.info("wrote %s", path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwproj",
        description="Coined quantum walks, graph-quotient projections, and reconstruction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario=True):
        if scenario:
            p.add_argument("--scenario", required=True, help="catalog scenario name")
            p.add_argument("--n-circle", type=int, default=None, help="circle size for line_to_circle")
            p.add_argument("--k", type=int, default=None, help="jump size for lattice_to_jumps")
        p.add_argument("--steps", type=int, default=30, help="number of walk steps")
        p.add_argument("--phi", type=parse_phi, default=None, help="projection phase (accepts pi fractions)")
        p.add_argument("--init", default=None, help="initial state: JSON file path or inline JSON")
        p.add_argument("--tol", type=float, default=None, help="tolerance override")

    p_run = sub.add_parser("run", help="evolve the projected walk and export results")
    common(p_run)
    p_run.add_argument("--out-state", default=None, help="final state dump (JSON)")
    p_run.add_argument("--out-dist", default=None, help="position distribution (CSV)")

    p_verify = sub.add_parser("verify", help="check projected evolution against evolved projection")
    common(p_verify)
    p_verify.add_argument("--out-report", default=None, help="commutation report (JSON)")

    p_rec = sub.add_parser("reconstruct", help="recover a planar walk from its phase projections")
    common(p_rec, scenario=False)
    p_rec.add_argument("--k", type=int, required=True, help="quotient coefficient k")
    p_rec.add_argument("--l", type=int, required=True, help="quotient coefficient l")
    p_rec.add_argument("--phi-samples", type=int, default=None, help="grid size (default: auto)")
    p_rec.add_argument("--out-state", default=None, help="recovered state dump (JSON)")
    p_rec.add_argument("--out-report", default=None, help="reconstruction report (JSON)")
    return parser


def _scenario_from_args(args) -> catalog.ScenarioDescriptor:
    return catalog.scenario(
        args.scenario, k=args.k, n_circle=args.n_circle, phi=args.phi
    )


def _initial_state(desc: catalog.ScenarioDescriptor, args):
    if args.init is not None:
        return _load_initial_state(desc.walk.space, args.init)
    return desc.distinguished_states["origin"]()


def cmd_run(args) -> int:
    if args.steps < 0:
        print("error: --steps must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    if args.out_state is None and args.out_dist is None:
        print("error: run needs --out-state and/or --out-dist", file=sys.stderr)
        return EXIT_CONFIG
    desc = _scenario_from_args(args)
    phi = desc.phi if args.phi is None else args.phi
    psi0 = _initial_state(desc, args)
    projected = project_state(desc.pmap, phi, psi0, normalize=True)
    spec = induced_walk(desc.walk, desc.pmap, phi)
    final = evolve(spec, projected, args.steps)
    logger.info(
        "ran %s for %d steps: %d support positions", desc.name, args.steps, len(final.support)
    )
    if args.out_state:
        _write_text(args.out_state, hilbert.state_to_json(final))
    if args.out_dist:
        _write_text(args.out_dist, hilbert.distribution_csv(final))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.steps < 0:
        print("error: --steps must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    desc = _scenario_from_args(args)
    phi = desc.phi if args.phi is None else args.phi
    tol = 1e-10 if args.tol is None else args.tol
    if tol <= 0:
        print("error: --tol must be > 0", file=sys.stderr)
        return EXIT_CONFIG
    psi0 = _initial_state(desc, args)
    report = verify_commutation(desc.walk, desc.pmap, phi, psi0, args.steps, tol=tol)
    text = json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"
    if args.out_report:
        _write_text(args.out_report, text)
    status = "passed" if report.passed else "FAILED"
    print(
        f"{desc.name}: {status}, max residual {report.max_residual:.3e} "
        f"over {report.steps} steps (tol {tol:.1e})"
    )
    return EXIT_OK if report.passed else EXIT_VERIFICATION


def cmd_reconstruct(args) -> int:
    if args.steps < 0:
        print("error: --steps must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    tol = 1e-10 if args.tol is None else args.tol
    if tol <= 0:
        print("error: --tol must be > 0", file=sys.stderr)
        return EXIT_CONFIG
    pmap = lattice_quotient(args.k, args.l)  # NotCoprime -> config error
    parent = catalog.scenario("grover2d_to_lazy").walk
    if args.init is not None:
        psi0 = _load_initial_state(parent.space, args.init)
    else:
        psi0 = catalog.scenario("grover2d_to_lazy").distinguished_states["origin"]()
    n = args.steps
    reference = evolve(parent, psi0, n)
    if args.phi_samples is None:
        plan = reconstruction.plan_reconstruction(reference, pmap)
        samples = plan.phi_samples
    else:
        samples = args.phi_samples
        if samples < 1:
            print("error: --phi-samples must be >= 1", file=sys.stderr)
            return EXIT_CONFIG
    candidates = reachable_window(parent.space, psi0.support, n)
    family = reconstruction.phase_projection_family(parent, pmap, psi0, n, samples)
    recovered = reconstruction.reconstruct_support(family, pmap, candidates)
    max_error = hilbert.max_abs_difference(recovered, reference)
    passed = max_error < tol
    report = {
        "k": args.k,
        "l": args.l,
        "steps": n,
        "phi_samples": samples,
        "max_error": max_error,
        "passed": passed,
        "recovered_state": hilbert.to_json_dict(recovered),
    }
    if args.out_report:
        _write_text(args.out_report, json.dumps(report, sort_keys=True, indent=2) + "\n")
    if args.out_state:
        _write_text(args.out_state, hilbert.state_to_json(recovered))
    status = "passed" if passed else "FAILED"
    print(
        f"reconstruction k={args.k} l={args.l}: {status}, "
        f"max amplitude error {max_error:.3e} with {samples} phases"
    )
    return EXIT_OK if passed else EXIT_VERIFICATION


def main(argv=None) -> int:
    try:
        _configure_logging()
    except QwprojError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    commands = {"run": cmd_run, "verify": cmd_verify, "reconstruct": cmd_reconstruct}
    try:
        return commands[args.command](args)
    except NullProjection as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NULL_PROJECTION
    except (QwprojError, json.JSONDecodeError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def console_entry() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
