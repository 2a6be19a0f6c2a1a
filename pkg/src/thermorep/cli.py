"""Command-line front end.

Subcommands
-----------
construct   build a state, write the state JSON and its certificate
certify     rebuild the certificate of a state JSON written by ``construct``
enumerate   stream configurations as JSON lines
bounds      CSV sweep of a closed-form kinetic bound over S or Nbar
identities  exhaustive check of the counting identities
orbitals    CSV of per-orbital kinetic energies, Lieb bounds and Gram deviations

Exit status: 0 on success, 2 when a certificate or identity check fails, 1 on usage
or input errors (message on standard error).
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from pathlib import Path

import numpy as np

from .configurations import (
    CANONICAL,
    GRAND,
    FockConfig,
    Ordering,
    iter_canonical,
    iter_grand_canonical,
    max_momentum,
    sum_of_squares,
    verify_counting_identities,
)
from .densities import named_density
from .errors import ThermorepError
from .grid import dirichlet_energy
from .orbitals import gram, gram_deviation, orbital_kinetic, orbital_kinetic_bound
from .representability import (
    DENSITY_TOL,
    canonical_bound,
    certify,
    construct_canonical,
    construct_gc_density_entropy,
    construct_gc_full,
    gc_bound_thm3,
    gc_entropy_kinetic_bound,
)
from .states import state_from_dict, state_to_dict

__all__ = ["main", "run", "build_parser"]

ROOT_TOL = 1e-10
MIN_POINTS = 201
STATE_VERSION = "1.0"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with exit status 1 for usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_density(p):
    p.add_argument("--density", default="gaussian:1",
                   help="gaussian:SIGMA | exponential:RATE | cosine-bump:WIDTH | path to an x,rho CSV")
    p.add_argument("--span", type=float, default=8.0, help="grid covers [-span, span] (named densities)")
    p.add_argument("--points", type=int, default=2001, help="odd number of grid nodes, at least 201")


def _add_statistics(p):
    p.add_argument("--statistics", choices=["fermion", "boson"], default="fermion")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thermorep", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("construct", help="build a state and its certificate")
    p.add_argument("--ensemble", choices=["canonical", "gc-entropy", "gc-full"], required=True)
    _add_statistics(p)
    _add_density(p)
    p.add_argument("--N", type=int, help="particle number (canonical)")
    p.add_argument("--Nbar", type=float, help="mean particle number (gc-full)")
    p.add_argument("--S", type=float, required=True, help="target entropy")
    p.add_argument("--ordering", choices=[o.value for o in Ordering], default=Ordering.SHELL.value)
    p.add_argument("--root-tol", type=float, default=ROOT_TOL, help="allowed entropy residual")
    p.add_argument("--quad-tol", type=float, default=DENSITY_TOL, help="allowed L1 density residual")
    p.add_argument("--state-out", type=Path, help="state JSON path (default: not written)")
    p.add_argument("--out", type=Path, help="certificate JSON path (default: standard output)")

    p = sub.add_parser("certify", help="recompute the certificate of a state JSON")
    p.add_argument("state", type=Path)
    p.add_argument("--out", type=Path, help="certificate JSON path (default: standard output)")

    p = sub.add_parser("enumerate", help="stream configurations as JSON lines")
    p.add_argument("--ensemble", choices=[CANONICAL, GRAND], default=CANONICAL)
    _add_statistics(p)
    p.add_argument("--N", type=int, help="particle number (canonical)")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--ordering", choices=[o.value for o in Ordering], default=Ordering.SHELL.value)

    p = sub.add_parser("bounds", help="CSV sweep of a closed-form kinetic bound")
    p.add_argument("--ensemble", choices=["canonical", "gc-entropy", "gc-full"], required=True)
    _add_statistics(p)
    _add_density(p)
    p.add_argument("--sweep", choices=["S", "Nbar"], default="S")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--num", type=int, default=50)
    p.add_argument("--N", type=int, help="particle number (canonical)")
    p.add_argument("--Nbar", type=float, help="fixed mean particle number when sweeping S (gc-full)")
    p.add_argument("--S", type=float, help="fixed entropy when sweeping Nbar (gc-full)")
    p.add_argument("--out", type=Path, help="CSV path (default: standard output)")

    p = sub.add_parser("identities", help="verify the counting identities by enumeration")
    p.add_argument("--Nmax", type=int, default=6)
    p.add_argument("--lmax", type=int, default=5)

    p = sub.add_parser("orbitals", help="CSV of per-orbital kinetic energies and Gram deviations")
    _add_density(p)
    p.add_argument("--N", type=float, default=1.0, help="mass of the density")
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--out", type=Path, help="CSV path (default: standard output)")
    return parser


# ---------------------------------------------------------------------------
# helpers

def _density_ref(args, mass):
    if args.points < MIN_POINTS or args.points % 2 == 0:
        raise UsageError(f"--points must be odd and at least {MIN_POINTS}, got {args.points}")
    if not args.span > 0:
        raise UsageError("--span must be positive")
    return {"spec": args.density, "span": args.span, "points": args.points, "mass": mass}


def _load_density(ref):
    return named_density(ref["spec"], mass=ref["mass"], span=ref["span"], points=ref["points"])


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _need(args, name, ensemble):
    if getattr(args, name) is None:
        raise UsageError(f"--{name} is required for --ensemble {ensemble}")
    return getattr(args, name)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands

def _construct(args):
    tol = {"entropy_tol": args.root_tol, "density_tol": args.quad_tol}
    if args.ensemble == "canonical":
        N = _need(args, "N", "canonical")
        ref = _density_ref(args, N)
        state, cert = construct_canonical(_load_density(ref), N, args.S, args.statistics, args.ordering, **tol)
    elif args.ensemble == "gc-entropy":
        ref = _density_ref(args, 1.0)
        state, cert = construct_gc_density_entropy(_load_density(ref), args.S, args.statistics, **tol)
    else:
        Nbar = _need(args, "Nbar", "gc-full")
        ref = _density_ref(args, 1.0)
        state, cert = construct_gc_full(_load_density(ref), Nbar, args.S, args.statistics, args.ordering, **tol)
    if args.state_out is not None:
        doc = {"version": STATE_VERSION, **state_to_dict(state, ref)}
        doc["construction"] = {
            "ensemble": cert.ensemble,
            "targets": {k: cert.targets[k] for k in ("N", "Nbar", "S") if k in cert.targets},
            "parameters": cert.parameters,
            "tolerances": tol,
        }
        args.state_out.write_text(json.dumps(doc, indent=2) + "\n")
    _write(cert.to_json() + "\n", args.out)
    return 0 if cert.passed else 2


def _certify(args):
    try:
        doc = json.loads(args.state.read_text())
        ref = doc["density_ref"]
        info = doc["construction"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read state file {args.state}: {exc}") from exc
    state = state_from_dict(doc, _load_density(ref))
    cert = certify(state, info["ensemble"], info["targets"], info["parameters"], **info.get("tolerances", {}))
    _write(cert.to_json() + "\n", args.out)
    return 0 if cert.passed else 2


def _enumerate(args):
    if args.count < 1:
        raise UsageError("--count must be positive")
    if args.ensemble == CANONICAL:
        N = _need(args, "N", CANONICAL)
        if N < 1:
            raise UsageError("--N must be positive")
        it = iter_canonical(N, args.statistics, args.ordering)
    else:
        it = iter_grand_canonical(args.statistics)
    out = sys.stdout
    for index, cfg in enumerate(itertools.islice(it, args.count), 1):
        if not isinstance(cfg, FockConfig):
            cfg = FockConfig.canonical(cfg)
        line = {
            "index": index,
            "sectors": {str(n): list(m) for n, m in cfg.sectors},
            "J": max_momentum(cfg),
            "sum_sq": sum_of_squares(cfg),
        }
        out.write(json.dumps(line) + "\n")
    return 0


def _bounds(args):
    if args.num < 2:
        raise UsageError("--num must be at least 2")
    grid = np.linspace(args.start, args.stop, args.num)
    if args.ensemble == "canonical":
        if args.sweep != "S":
            raise UsageError("the canonical bound is swept over S only")
        N = _need(args, "N", "canonical")
        d = dirichlet_energy(_load_density(_density_ref(args, N)))
        rows = [(x, canonical_bound(N, x, args.statistics, d)) for x in grid]
    elif args.ensemble == "gc-entropy":
        if args.sweep != "S":
            raise UsageError("the gc-entropy bound is swept over S only")
        d = dirichlet_energy(_load_density(_density_ref(args, 1.0)))
        rows = [(x, gc_entropy_kinetic_bound(x, d)) for x in grid]
    else:
        d = dirichlet_energy(_load_density(_density_ref(args, 1.0)))
        if args.sweep == "S":
            Nbar = _need(args, "Nbar", "gc-full")
            rows = [(x, gc_bound_thm3(Nbar, x, d)) for x in grid if x > 0]
        else:
            S = _need(args, "S", "gc-full")
            rows = [(x, gc_bound_thm3(x, S, d)) for x in grid if x > 0]
    _write(_csv_text([args.sweep, "bound"], [(repr(float(x)), repr(float(b))) for x, b in rows]), args.out)
    return 0


def _identities(args):
    report = verify_counting_identities(args.Nmax, args.lmax)
    print(report.format())
    return 0 if report.passed else 2


def _orbitals(args):
    if args.kmax < 0:
        raise UsageError("--kmax must be nonnegative")
    rho = _load_density(_density_ref(args, args.N))
    ks = list(range(-args.kmax, args.kmax + 1))
    g = gram(rho, ks)
    d = dirichlet_energy(rho)
    rows = []
    for i, k in enumerate(ks):
        row = np.abs(np.delete(g[i], i))
        dev = float(row.max()) if row.size else 0.0
        rows.append((k, repr(orbital_kinetic(rho, k)), repr(float(orbital_kinetic_bound(k, rho.mass, d))),
                     repr(dev), repr(float(abs(g[i, i] - 1)))))
    _write(_csv_text(["k", "kinetic", "bound", "gram_offdiag", "norm_error"], rows), args.out)
    print(f"# max off-diagonal {gram_deviation(g)!r}", file=sys.stderr)
    return 0


_COMMANDS = {
    "construct": _construct,
    "certify": _certify,
    "enumerate": _enumerate,
    "bounds": _bounds,
    "identities": _identities,
    "orbitals": _orbitals,
}


def main(argv=None) -> int:
    """Run the command line; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ThermorepError, ValueError, OSError) as exc:
        print(f"thermorep {args.command}: error: {exc}", file=sys.stderr)
        return 1


run = main
