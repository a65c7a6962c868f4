"""
Line-oriented circuit description format.

::

    # comment
    atoms 1
    port in in
    port out out
    port discard discard
    path p1
    cpbs in=in,vac out=p1,p2
    hwp path=p1
    sigmax path=p1
    atomh atom=0
    cavity path=p2 atom=0
    mirror from=p2 to=p3
    checkpoint psi1

Element lines are applied in file order.  ``checkpoint`` records the state
after everything above it.  Reflection amplitudes are not part of the file;
they are bound when the circuit is run.  Spaces around ``=`` and ``,`` are
ignored.
"""

from __future__ import annotations

import re

from .circuits import CircuitSpec
from .elements import (CPBS, AtomHadamard, CavityScatter, PhotonHadamard,
                       PhotonSigmaX, Relabel)
from .errors import (AtomIndexError, CircuitSyntaxError, DuplicatePortError,
                     UnknownElementError, UnregisteredLocationError)

__all__ = ["parse_circuit", "serialize_circuit", "load_circuit"]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*$")
_INT = re.compile(r"\d+$")

# keyword -> {key: number of comma-separated values}
_ELEMENT_KEYS = {
    "cpbs": {"in": 2, "out": 2},
    "hwp": {"path": 1},
    "sigmax": {"path": 1},
    "atomh": {"atom": 1},
    "cavity": {"path": 1, "atom": 1},
    "mirror": {"from": 1, "to": 1},
}


class _Line:
    """One source line with position lookup for diagnostics."""

    def __init__(self, lineno, raw):
        self.lineno = lineno
        self.raw = raw
        self.text = raw.split("#", 1)[0]

    def col(self, token, start=0):
        i = self.raw.find(token, start)
        return i + 1 if i >= 0 else 1

    def fail(self, cls, message, token=None):
        col = self.col(token) if token is not None else self.col(self.text.strip()[:1] or " ")
        raise cls(message, self.lineno, col)


def _tokens(text):
    return re.sub(r"\s*([=,])\s*", r"\1", text.strip()).split()


def _name(line, token):
    if not _NAME.match(token):
        line.fail(CircuitSyntaxError, f"invalid name {token!r}", token)
    return token


def _parse_element(line, kw, args):
    spec = _ELEMENT_KEYS[kw]
    values = {}
    for arg in args:
        key, eq, val = arg.partition("=")
        if not eq or not val:
            line.fail(CircuitSyntaxError, f"expected key=value, got {arg!r}", arg)
        if key not in spec:
            line.fail(CircuitSyntaxError, f"{kw} takes no {key!r} argument", arg)
        if key in values:
            line.fail(CircuitSyntaxError, f"repeated {key!r} argument", arg)
        parts = val.split(",")
        if len(parts) != spec[key] or not all(parts):
            line.fail(CircuitSyntaxError,
                      f"{key}= expects {spec[key]} comma-separated value(s)", arg)
        values[key] = parts
    missing = [k for k in spec if k not in values]
    if missing:
        line.fail(CircuitSyntaxError, f"{kw} is missing {', '.join(missing)}=", kw)
    return values


def parse_circuit(text: str) -> CircuitSpec:
    """Parse and validate a circuit description.

    Raises a subclass of :class:`~badcavity.errors.CircuitParseError`
    carrying the 1-based line and column of the problem.
    """
    atom_count = None
    ports = {}
    paths = []
    declared = {}
    elements = []
    checkpoints = []
    # (line, token, location) checked after all declarations are seen
    refs = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _Line(lineno, raw)
        toks = _tokens(line.text)
        if not toks:
            continue
        kw, args = toks[0], toks[1:]

        if kw == "atoms":
            if atom_count is not None:
                line.fail(CircuitSyntaxError, "atom count declared twice", kw)
            if len(args) != 1 or not _INT.match(args[0]):
                line.fail(CircuitSyntaxError, "expected 'atoms <n>'", kw)
            atom_count = int(args[0])
        elif kw == "port":
            if len(args) != 2:
                line.fail(CircuitSyntaxError, "expected 'port in|out|discard <name>'", kw)
            role, name = args
            if role not in ("in", "out", "discard"):
                line.fail(CircuitSyntaxError, f"unknown port role {role!r}", role)
            if role in ports:
                line.fail(DuplicatePortError, f"{role} port already declared as "
                          f"{ports[role]!r} on line {declared[ports[role]]}", role)
            _name(line, name)
            if name in declared:
                line.fail(DuplicatePortError,
                          f"{name!r} already declared on line {declared[name]}",
                          line.col(name, line.col(role)))
            ports[role] = name
            declared[name] = lineno
        elif kw == "path":
            if len(args) != 1:
                line.fail(CircuitSyntaxError, "expected 'path <name>'", kw)
            name = _name(line, args[0])
            if name in declared:
                line.fail(CircuitSyntaxError,
                          f"{name!r} already declared on line {declared[name]}", name)
            paths.append(name)
            declared[name] = lineno
        elif kw == "checkpoint":
            if len(args) != 1:
                line.fail(CircuitSyntaxError, "expected 'checkpoint <label>'", kw)
            label = _name(line, args[0])
            if label in {c[0] for c in checkpoints}:
                line.fail(CircuitSyntaxError, f"checkpoint {label!r} repeated", label)
            checkpoints.append((label, len(elements)))
        elif kw in _ELEMENT_KEYS:
            if atom_count is None:
                line.fail(CircuitSyntaxError, "'atoms <n>' must come before elements", kw)
            vals = _parse_element(line, kw, args)
            for key, parts in vals.items():
                for p in parts:
                    if key == "atom":
                        if not _INT.match(p):
                            line.fail(CircuitSyntaxError, f"atom index {p!r} is not an integer", p)
                        if int(p) >= atom_count:
                            line.fail(AtomIndexError,
                                      f"atom {p} but only {atom_count} atom(s) declared", p)
                    else:
                        refs.append((line, p, _name(line, p)))
            try:
                elements.append(_make(kw, vals))
            except ValueError as exc:
                line.fail(CircuitSyntaxError, str(exc), kw)
        else:
            line.fail(UnknownElementError, f"unknown keyword {kw!r}", kw)

    if atom_count is None:
        raise CircuitSyntaxError("missing 'atoms <n>' declaration")
    for role in ("in", "out"):
        if role not in ports:
            raise CircuitSyntaxError(f"missing 'port {role}' declaration")
    for line, token, loc in refs:
        if loc not in declared:
            line.fail(UnregisteredLocationError, f"{loc!r} is not a declared path or port", token)
    try:
        return CircuitSpec(
            atom_count=atom_count,
            input_port=ports["in"],
            out_port=ports["out"],
            discard_port=ports.get("discard"),
            paths=tuple(paths),
            elements=tuple(elements),
            checkpoints=tuple(checkpoints),
        )
    except ValueError as exc:
        raise CircuitSyntaxError(str(exc)) from None


def _make(kw, v):
    if kw == "cpbs":
        return CPBS(*v["in"], *v["out"])
    if kw == "hwp":
        return PhotonHadamard(v["path"][0])
    if kw == "sigmax":
        return PhotonSigmaX(v["path"][0])
    if kw == "atomh":
        return AtomHadamard(int(v["atom"][0]))
    if kw == "cavity":
        return CavityScatter(v["path"][0], int(v["atom"][0]))
    if kw == "mirror":
        return Relabel(v["from"][0], v["to"][0])
    raise AssertionError(kw)


def _format_element(el):
    if isinstance(el, CPBS):
        return f"cpbs in={el.in_a},{el.in_b} out={el.out_a},{el.out_b}"
    if isinstance(el, PhotonHadamard):
        return f"hwp path={el.loc}"
    if isinstance(el, PhotonSigmaX):
        return f"sigmax path={el.loc}"
    if isinstance(el, AtomHadamard):
        return f"atomh atom={el.atom}"
    if isinstance(el, CavityScatter):
        return f"cavity path={el.loc} atom={el.atom}"
    if isinstance(el, Relabel):
        return f"mirror from={el.src} to={el.dst}"
    raise TypeError(f"cannot serialize {el!r}")


def serialize_circuit(spec: CircuitSpec) -> str:
    """Canonical text form: declarations first, then elements and checkpoints."""
    out = [f"atoms {spec.atom_count}",
           f"port in {spec.input_port}",
           f"port out {spec.out_port}"]
    if spec.discard_port:
        out.append(f"port discard {spec.discard_port}")
    out += [f"path {p}" for p in spec.paths]
    marks = {}
    for label, pos in spec.checkpoints:
        marks.setdefault(pos, []).append(label)
    for i in range(len(spec.elements) + 1):
        out += [f"checkpoint {label}" for label in marks.get(i, ())]
        if i < len(spec.elements):
            out.append(_format_element(spec.elements[i]))
    return "\n".join(out) + "\n"


def load_circuit(path) -> CircuitSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh.read())
