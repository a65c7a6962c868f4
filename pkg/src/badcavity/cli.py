"""Command-line front end: ``badcavity <command> ...``.

Exit status is 0 on success, 2 for usage and parameter errors, 1 for
circuit errors (parse, wiring, routing).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .cavity import (CavityParams, reflection_pair, reflection_spectrum,
                     regime_check)
from .circuit_text import load_circuit, serialize_circuit
from .circuits import run as run_circuit
from .errors import (CircuitParseError, ParameterError, RoutingError,
                     WiringError)
from .metrics import (DEFAULT_NODES_CNOT, DEFAULT_NODES_TOFFOLI, average_cnot,
                      average_toffoli)
from .state import HybridState
from .sweep import DEFAULT_POINTS, DEFAULT_RANGE, fmt, sweep


class UsageError(Exception):
    pass


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}")
    return tuple(_complex(p) for p in parts)


def _nodes(args):
    if args.quad_nodes is not None:
        if args.quad_nodes < 2:
            raise UsageError("--quad-nodes must be >= 2")
        return args.quad_nodes, args.quad_nodes
    return DEFAULT_NODES_CNOT, DEFAULT_NODES_TOFFOLI


def _params(args):
    try:
        return CavityParams(args.g, args.kappa, args.gamma, args.omega_c, args.omega_0)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _emit_csv(args, text):
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    if not args.json and not args.csv:
        sys.stdout.write(text)


def _cplx(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_sweep(args):
    nc, nt = _nodes(args)
    if args.points < 2:
        raise UsageError("--points must be >= 2")
    if not 0 < args.x_min < args.x_max:
        raise UsageError(f"need 0 < x-min < x-max, got {args.x_min}, {args.x_max}")
    table = sweep(args.x_min, args.x_max, args.points, not args.linear, nc, nt,
                  workers=args.workers)
    _emit_csv(args, table.to_csv())
    if args.json:
        print(table.to_json())


def cmd_point(args):
    p = _params(args)
    nc, nt = _nodes(args)
    r, r0 = reflection_pair(p, args.omega_p)
    report = regime_check(p, args.margin)
    cm, tm = average_cnot(r, nc), average_toffoli(r, nt)
    fc, pc = cm
    ft, pt = tm
    if args.json:
        print(json.dumps({
            "params": {"g": p.g, "kappa": p.kappa, "gamma": p.gamma,
                       "omega_c": p.omega_c, "omega_0": p.omega_0, "omega_p": args.omega_p},
            "x": p.coupling_ratio(),
            "r": _cplx(r), "r0": _cplx(r0),
            "regime": report.as_dict(),
            "base_nodes": {"cnot": nc, "toffoli": nt},
            "nodes": {"cnot": cm.nodes, "toffoli": tm.nodes},
            "F_C": fc, "P_C": pc, "F_T": ft, "P_T": pt,
        }, indent=2))
        return
    ok = lambda b: "yes" if b else "no"
    print(f"g/sqrt(kappa*gamma) = {fmt(p.coupling_ratio())}")
    print(f"r  = {fmt(r.real)} {'+' if r.imag >= 0 else '-'} {fmt(abs(r.imag))}i")
    print(f"r0 = {fmt(r0.real)} {'+' if r0.imag >= 0 else '-'} {fmt(abs(r0.imag))}i")
    print(f"kappa = {fmt(report.kappa)}, g^2/kappa = {fmt(report.g2_over_kappa)}, "
          f"gamma = {fmt(report.gamma)} (margin {fmt(report.margin)})")
    print(f"  kappa >> g^2/kappa: {ok(report.cavity_fast)}   "
          f"g^2/kappa >> gamma: {ok(report.cooperative)}")
    print(f"CNOT     F = {fc:.4f}  P = {pc:.4f}")
    print(f"Toffoli  F = {ft:.4f}  P = {pt:.4f}")


def cmd_check(args):
    report = regime_check(_params(args), args.margin)
    if args.json:
        print(json.dumps(report.as_dict(), indent=2))
    else:
        for k, v in report.as_dict().items():
            print(f"{k:15s} {v if isinstance(v, bool) else fmt(v)}")
    return 0


def cmd_spectrum(args):
    p = _params(args)
    try:
        spec = reflection_spectrum(p, args.start, args.stop, args.points)
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    cols = ("omega_p", "re_r", "im_r", "abs_r", "arg_r", "re_r0", "im_r0")
    rows = [
        (w, r.real, r.imag, abs(r), np.angle(r), r0.real, r0.imag)
        for w, r, r0 in zip(spec.omega_p, spec.r, spec.r0)
    ]
    _emit_csv(args, ",".join(cols) + "\n"
              + "".join(",".join(fmt(v) for v in row) + "\n" for row in rows))
    if args.json:
        print(json.dumps({"columns": list(cols),
                          "rows": [[float(fmt(v)) for v in row] for row in rows]}, indent=2))


def _state_terms(state):
    return [
        {"pol": k.pol, "loc": k.loc, "atoms": "".join(map(str, k.atoms)), **_cplx(v)}
        for k, v in sorted(state.items()) if v != 0
    ]


def _ket(state):
    terms = [f"({fmt(v.real)}{'+' if v.imag >= 0 else '-'}{fmt(abs(v.imag))}j)"
             f"|{k.pol},{''.join(map(str, k.atoms))}>_{k.loc}"
             for k, v in sorted(state.items()) if abs(v) > 1e-15]
    return " + ".join(terms) or "0"


def cmd_run(args):
    circuit = load_circuit(args.file)
    if args.basis:
        b = args.basis.upper()
        if len(b) != circuit.atom_count + 1 or b[0] not in "RL" or set(b[1:]) - {"0", "1"}:
            raise UsageError(f"--basis must look like L{'0' * circuit.atom_count}")
        photon = (1, 0) if b[0] == "R" else (0, 1)
        atoms = [(1, 0) if c == "0" else (0, 1) for c in b[1:]]
    else:
        photon = args.photon or (1, 0)
        atoms = args.atom or [(1, 0)] * circuit.atom_count
    if len(atoms) != circuit.atom_count:
        raise UsageError(f"circuit has {circuit.atom_count} atoms, got {len(atoms)} --atom")
    if args.normalize:
        photon = tuple(np.array(photon) / np.linalg.norm(photon))
        atoms = [tuple(np.array(a) / np.linalg.norm(a)) for a in atoms]
    inp = HybridState.product(circuit.locations, circuit.input_port, photon, atoms)
    try:
        res = run_circuit(circuit, inp, (args.r, args.r0))
    except ParameterError as exc:
        raise UsageError(str(exc)) from None

    if args.json:
        print(json.dumps({
            "out": _state_terms(res.out_state),
            "out_norm": res.out_state.total_norm(),
            "discard": _state_terms(res.discard_state),
            "discard_norm": res.discard_state.total_norm(),
            "absorbed": res.absorbed,
            "checkpoints": {k: _state_terms(v) for k, v in res.checkpoint_states.items()},
        }, indent=2))
        return
    print(f"out      {_ket(res.out_state)}")
    print(f"         norm^2 = {fmt(res.out_state.total_norm())}")
    if circuit.discard_port:
        print(f"discard  {_ket(res.discard_state)}")
        print(f"         norm^2 = {fmt(res.discard_state.total_norm())}")
    print(f"absorbed {fmt(res.absorbed)}")
    for label, st in res.checkpoint_states.items():
        print(f"[{label}] {_ket(st)}")


def cmd_parse(args):
    circuit = load_circuit(args.file)
    if args.canonical:
        sys.stdout.write(serialize_circuit(circuit))
    else:
        print(f"ok: {len(circuit.elements)} elements, {circuit.atom_count} atom(s), "
              f"{len(circuit.locations)} locations")


# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--csv", metavar="PATH", help="write the CSV table to PATH")
    common.add_argument("--quad-nodes", type=int, metavar="N",
                        help="base quadrature nodes per angle (default: "
                             f"{DEFAULT_NODES_CNOT} CNOT, {DEFAULT_NODES_TOFFOLI} Toffoli); "
                             "multiplied by up to 8 (CNOT) or 2 (Toffoli) when |r| is small")
    common.add_argument("--margin", type=float, default=2.0,
                        help="factor required for each '>>' in the regime check")

    cav = argparse.ArgumentParser(add_help=False)
    cav.add_argument("g", type=float)
    cav.add_argument("kappa", type=float)
    cav.add_argument("gamma", type=float)
    cav.add_argument("--omega-c", type=float, default=0.0, help="cavity detuning")
    cav.add_argument("--omega-0", type=float, default=0.0, help="atomic detuning")

    parser = argparse.ArgumentParser(prog="badcavity", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="averages vs coupling ratio")
    p.add_argument("--x-min", type=float, default=DEFAULT_RANGE[0])
    p.add_argument("--x-max", type=float, default=DEFAULT_RANGE[1])
    p.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p.add_argument("--linear", action="store_true", help="linear instead of log spacing")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("point", parents=[common, cav], help="evaluate one parameter set")
    p.add_argument("--omega-p", type=float, default=0.0, help="probe detuning")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("check", parents=[common, cav], help="bad-cavity regime check")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("spectrum", parents=[common, cav], help="reflection spectrum")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, default=801)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("run", parents=[common], help="run a circuit file")
    p.add_argument("file")
    p.add_argument("--photon", type=_pair, help="amplitudes of R,L")
    p.add_argument("--atom", type=_pair, action="append",
                   help="amplitudes of |0>,|1> (repeat per atom)")
    p.add_argument("--basis", help="basis input such as L10")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--r", type=_complex, default=1.0, help="coupled reflection amplitude")
    p.add_argument("--r0", type=_complex, default=-1.0, help="empty-cavity amplitude")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("parse", parents=[common], help="validate a circuit file")
    p.add_argument("file")
    p.add_argument("--canonical", action="store_true", help="print the canonical form")
    p.set_defaults(func=cmd_parse)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"badcavity {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (CircuitParseError, WiringError, RoutingError) as exc:
        print(f"{getattr(args, 'file', '')}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"badcavity {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
