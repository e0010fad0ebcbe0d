"""
Command line interface.

Every command reads a source document (see :mod:`weylinv.lang`), runs one
computation and prints text or JSON.  With ``--format json`` the output is
one object with the keys of :data:`OUTPUT_SCHEMA`.  Failures print a JSON
line ``{"kind": ..., "message": ...}`` on stderr and exit nonzero:
1 for mathematical failures, 2 for bad input or usage.
"""

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction

from . import lang
from .algebra import AlgebraSignature, Element, format_monomial, format_scalar
from .automorphism import (
    Certified,
    apply_endo,
    certify_automorphism,
    degree_bound,
    degree_of,
    dual_degree,
    dual_derivations,
    invert,
    taylor_expand,
)
from .errors import PreconditionViolated, VerificationFailed, WeylError
from .faces import Equal, faces_distinguish
from .series import SeriesEndomorphism, series_invert
from .structure import CommutatorMatrix, canonical_form, darboux_basis
from . import linalg

FORMAT_ENV = "WEYLINV_FORMAT"

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "weylinv command output",
    "type": "object",
    "required": ["command", "inputs", "result", "witnesses", "timings"],
    "additionalProperties": False,
    "properties": {
        "command": {
            "enum": ["invert", "verify", "certify", "degree", "faces", "darboux", "series-invert", "taylor"]
        },
        "inputs": {"type": "object"},
        "result": {"type": "object"},
        "witnesses": {"type": "array", "items": {"type": "object"}},
        "timings": {
            "type": "object",
            "description": "wall-clock durations in integer microseconds",
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
    },
}

ERROR_SCHEMA = {
    "type": "object",
    "required": ["kind", "message"],
    "properties": {"kind": {"type": "string"}, "message": {"type": "string"}},
}


class InputError(Exception):
    kind = "InputError"


class UsageError(InputError):
    kind = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Clock:
    def __init__(self):
        self.timings = {}

    def run(self, label, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[label] = int((time.perf_counter() - t0) * 1e6)


class Outcome:
    def __init__(self, command, inputs):
        self.command = command
        self.inputs = inputs
        self.result = {}
        self.witnesses = []
        self.text = []
        self.error = None
        self.clock = _Clock()

    def payload(self):
        return {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "timings": self.clock.timings,
        }


def _load(path, clock):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return clock.run("parse", lang.parse, text)


def _map(doc, name, check=True):
    if name not in doc.maps:
        raise InputError(f"no map named {name!r}")
    return doc.endomorphism(name, check=check)


def _images(sigma):
    return {sigma.signature.name(i): lang.format_element(im) for i, im in enumerate(sigma.images)}


def cmd_invert(args, out):
    doc = _load(args.file, out.clock)
    sigma = _map(doc, args.map)
    tau = out.clock.run("invert", invert, sigma, cap_override=args.cap)
    out.result = {
        "map": args.map,
        "inverse": _images(tau),
        "degree": int(degree_of(sigma)),
        "inverse_degree": int(degree_of(tau)),
        "bound": degree_bound(sigma) if args.cap is None else args.cap,
        "verified": True,
    }
    out.text.append(lang.render(tau, name=f"{args.map}_inv"))


def cmd_verify(args, out):
    doc = _load(args.file, out.clock)
    sigma = _map(doc, args.map)
    tau = _map(doc, args.inverse)
    sig = sigma.signature
    bad = []

    def check():
        for i in range(sig.s):
            x = Element.generator(sig, i)
            for label, f, g in (("sigma(tau(x))", sigma, tau), ("tau(sigma(x))", tau, sigma)):
                got = apply_endo(f, g.images[i])
                if got != x:
                    bad.append({"generator": sig.name(i), "composite": label, "value": lang.format_element(got)})

    out.clock.run("verify", check)
    out.result = {"map": args.map, "inverse": args.inverse, "verified": not bad}
    out.witnesses = bad
    if bad:
        w = bad[0]
        out.text.append(f"not inverse: {w['composite']} = {w['value']} at {w['generator']}")
        out.error = VerificationFailed(f"{args.inverse} is not inverse to {args.map}")
    else:
        out.text.append(f"{args.inverse} is the inverse of {args.map}")


def _jsonable(value):
    if isinstance(value, Element):
        return lang.format_element(value)
    if isinstance(value, Fraction):
        return format_scalar(value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value


def cmd_certify(args, out):
    doc = _load(args.file, out.clock)
    sigma = _map(doc, args.map, check=True)
    verdict = out.clock.run("certify", certify_automorphism, sigma)
    if isinstance(verdict, Certified):
        out.result = {"map": args.map, "verdict": "Certified", "bound": verdict.bound}
        out.text.append(f"Certified (B = {verdict.bound})")
    else:
        out.result = {"map": args.map, "verdict": "NotCertified", "reason": verdict.reason}
        witness = verdict.witness
        if isinstance(witness, tuple) and len(witness) == 2 and all(isinstance(k, int) for k in witness):
            sig = sigma.signature
            out.witnesses = [{"derivation": witness[0] + 1, "generator": sig.name(witness[1])}]
        elif witness is not None:
            out.witnesses = [{"value": _jsonable(witness)}]
        out.text.append(f"NotCertified: {verdict.reason}")


def cmd_degree(args, out):
    doc = _load(args.file, out.clock)
    sigma = _map(doc, args.map)
    sig = sigma.signature
    d = int(degree_of(sigma))
    bound = degree_bound(sigma)
    out.result = {"map": args.map, "s": sig.s, "degree": d, "bound": bound}
    out.text.append(f"deg sigma = {d}")
    out.text.append(f"bound (deg sigma)^(s-1) = {bound}")
    if args.dual:
        def work():
            duals = dual_derivations(sigma)
            degs = {sig.name(i): int(dual_degree(sigma, Element.generator(sig, i), cap=bound, duals=duals)) for i in range(sig.s)}
            return degs, invert(sigma)

        degs, tau = out.clock.run("dual", work)
        inv_deg = int(degree_of(tau))
        out.result.update(
            dual_degrees=degs,
            inverse_degree=inv_deg,
            bound_satisfied=inv_deg <= bound,
            exact_law=inv_deg == max(degs.values()),
        )
        for name, k in degs.items():
            out.text.append(f"deg' {name} = {k}")
        out.text.append(f"deg sigma^-1 = {inv_deg}")
        out.text.append(f"deg sigma^-1 <= (deg sigma)^(s-1): {'satisfied' if inv_deg <= bound else 'violated'}")


def cmd_faces(args, out):
    if len(args.map) != 2:
        raise UsageError("faces needs exactly two --map options")
    doc = _load(args.file, out.clock)
    sigma, tau = (_map(doc, name) for name in args.map)
    verdict = out.clock.run("faces", faces_distinguish, sigma, tau, side=args.side)
    # with a single generator the faces only see the constant term
    determines = sigma.signature.s >= 2
    out.result = {"maps": list(args.map), "side": args.side, "faces_determine_map": determines}
    if isinstance(verdict, Equal):
        out.result["verdict"] = "Equal"
        out.text.append("Equal" if determines else "Equal faces (one generator: the maps may still differ)")
        return
    sig = sigma.signature
    w = {
        "face": sig.name(verdict.face),
        "generator": None if verdict.generator is None else sig.name(verdict.generator),
        "probe": lang.format_element(verdict.probe),
        "values": [str(verdict.left_value), str(verdict.right_value)],
    }
    out.result["verdict"] = "Witness"
    out.witnesses = [w]
    out.text.append(
        f"Witness: face {w['face']} at {w['probe']}: {w['values'][0]} vs {w['values'][1]}"
    )


_RATIONAL = re.compile(r"^[-+]?\d+(/\d+)?$")


def read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    rows = []
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        row = []
        for col, tok in enumerate(line.split(), 1):
            if not _RATIONAL.match(tok):
                raise InputError(f"{path}:{lineno}: entry {col} is not an exact rational: {tok!r}")
            try:
                row.append(Fraction(tok))
            except ZeroDivisionError:
                raise InputError(f"{path}:{lineno}: zero denominator") from None
        rows.append(row)
    if any(len(r) != len(rows) for r in rows):
        raise InputError(f"{path}: matrix is not square")
    return rows


def cmd_darboux(args, out):
    rows = out.clock.run("parse", read_matrix, args.matrix)
    L = CommutatorMatrix(rows)
    basis = out.clock.run("darboux", darboux_basis, L)
    J = [list(r) for r in basis.change_of_basis]
    check = linalg.matmul(linalg.matmul(linalg.transpose(J), L.rows()), J) == canonical_form(basis.n, basis.m)
    out.result = {
        "n": basis.n,
        "m": basis.m,
        "J": [[format_scalar(x) for x in r] for r in J],
        "canonical": check,
    }
    out.text.append(f"n={basis.n} m={basis.m}")
    out.text.append("J =")
    out.text.extend(" ".join(format_scalar(x) for x in r) for r in J)


def cmd_series_invert(args, out):
    doc = _load(args.file, out.clock)
    if doc.signature.n:
        raise PreconditionViolated("series-invert needs a commutative algebra (n=0)")
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    images = doc.maps.get(args.map)
    if images is None:
        raise InputError(f"no map named {args.map!r}")
    sigma = SeriesEndomorphism.from_polynomials(images, args.order)
    tau = out.clock.run("invert", series_invert, sigma)
    sig = AlgebraSignature(0, sigma.m)
    out.result = {
        "map": args.map,
        "order": args.order,
        "inverse": {sig.name(i): im.format() for i, im in enumerate(tau.images)},
        "verified": True,
    }
    out.text.append(lang.render(tau, name=f"{args.map}_inv"))


def cmd_taylor(args, out):
    doc = _load(args.file, out.clock)
    if args.element not in doc.elements:
        raise InputError(f"no element named {args.element!r}")
    a = doc.elements[args.element]
    names = a.signature.names()
    coeffs = out.clock.run("taylor", taylor_expand, a)
    table = [
        {"alpha": list(alpha), "monomial": format_monomial(alpha, names) or "1", "coefficient": format_scalar(c)}
        for alpha, c in sorted(coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
    ]
    out.result = {"element": args.element, "coefficients": table, "matches": coeffs == dict(a.terms)}
    for row in table:
        out.text.append(f"{row['monomial']}\t{row['coefficient']}")


COMMANDS = {
    "invert": cmd_invert,
    "verify": cmd_verify,
    "certify": cmd_certify,
    "degree": cmd_degree,
    "faces": cmd_faces,
    "darboux": cmd_darboux,
    "series-invert": cmd_series_invert,
    "taylor": cmd_taylor,
}


def build_parser():
    default_format = os.environ.get(FORMAT_ENV, "text")
    if default_format not in ("text", "json"):
        default_format = "text"
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=default_format)
    p = _Parser(prog="weylinv", description="Inversion and recognition tools for A_n (x) P_m.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invert", parents=[common], help="inverse automorphism")
    s.add_argument("file")
    s.add_argument("--map", required=True)
    s.add_argument("--cap", type=int, help="override the degree bound used as budget")

    s = sub.add_parser("verify", parents=[common], help="check that two maps are mutually inverse")
    s.add_argument("file")
    s.add_argument("--map", required=True)
    s.add_argument("--inverse", required=True)

    s = sub.add_parser("certify", parents=[common], help="automorphism verdict")
    s.add_argument("file")
    s.add_argument("--map", required=True)

    s = sub.add_parser("degree", parents=[common], help="degree and degree bound")
    s.add_argument("file")
    s.add_argument("--map", required=True)
    s.add_argument("--dual", action="store_true", help="also report deg' of each generator and deg of the inverse")

    s = sub.add_parser("faces", parents=[common], help="compare two automorphisms by faces")
    s.add_argument("file")
    s.add_argument("--map", action="append", required=True)
    s.add_argument("--side", choices=("left", "right"), default="right")

    s = sub.add_parser("darboux", parents=[common], help="Darboux basis of an antisymmetric matrix")
    s.add_argument("--matrix", required=True)

    s = sub.add_parser("series-invert", parents=[common], help="truncated inverse of a power-series map")
    s.add_argument("file")
    s.add_argument("--map", required=True)
    s.add_argument("--order", type=int, required=True)

    s = sub.add_parser("taylor", parents=[common], help="coefficients via the projection formula")
    s.add_argument("file")
    s.add_argument("--element", required=True)
    return p


def _inputs(args):
    return {k.replace("_", "-"): v for k, v in vars(args).items() if k not in ("command", "format") and v is not None}


def _fail(kind, message):
    print(json.dumps({"kind": kind, "message": message}), file=sys.stderr)


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _fail(exc.kind, str(exc))
        return 2
    out = Outcome(args.command, _inputs(args))
    try:
        COMMANDS[args.command](args, out)
    except WeylError as exc:
        _fail(exc.kind, str(exc))
        return 1
    except InputError as exc:
        _fail(exc.kind, str(exc))
        return 2
    if args.format == "json":
        print(json.dumps(out.payload(), indent=2, sort_keys=True), file=stdout)
    else:
        print("\n".join(out.text), file=stdout)
    stdout.flush()
    if out.error is not None:
        _fail(out.error.kind, str(out.error))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
