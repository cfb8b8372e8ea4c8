"""Command-line front end.

Every subcommand prints one JSON report on stdout. Exit status is 0 when all
checked identities hold, 2 when one is violated and 1 on bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import attainment as att
from . import factorizations as fac
from .errors import MinModError, Singular
from .fileio import digest, is_spec_path, read_matrix, read_problem, read_spec
from .linalg import is_hermitian, norm2, svd
from .moduli import (
    distance_to_spectrum_check,
    gram_modulus_check,
    moduli,
    power_modulus_check,
    reduced_minimum_modulus,
    remark_inverse_check,
)
from .operators import DiagonalOperator, validate_spectrum
from .report import Report
from .sturm import sl_eigenvalues

DEFAULT_TOLERANCES = {
    "identity_rtol": 1e-8,
    "witness_rtol": 1e-8,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _Checks:
    """Collects asserted identities and records the ones that fail."""

    def __init__(self, tol: dict):
        self.tol = tol
        self.violations: list[dict] = []

    def pair(self, name: str, pair, key: str = "identity_rtol") -> dict:
        a, b = float(pair[0]), float(pair[1])
        err = abs(a - b) / max(1.0, abs(a), abs(b))
        if not err <= self.tol[key]:
            self.violations.append({"check": name, "error": err, "tolerance": self.tol[key]})
        return {"values": [a, b], "relative_error": err}

    def residuals(self, group: str, res: dict, key: str = "identity_rtol") -> dict:
        for name, r in res.items():
            if not r <= self.tol[key]:
                self.violations.append({"check": f"{group}: {name}", "error": r, "tolerance": self.tol[key]})
        return res

    def flag(self, name: str, ok: bool) -> bool:
        if not ok:
            self.violations.append({"check": name, "error": None, "tolerance": None})
        return ok


def _operator(path):
    if is_spec_path(path):
        return DiagonalOperator(validate_spectrum(read_spec(path)))
    return read_matrix(path)


def _plain(obj):
    if dataclasses.is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "value") and hasattr(obj, "name"):  # enum
        return obj.value
    return obj


def _cmd_moduli(args, chk):
    T = _operator(args.input)
    out = {"report": moduli(T).as_dict()}
    out["distance_to_spectrum"] = chk.pair("m(T)=dist(0,sigma(|T|))", distance_to_spectrum_check(T))
    out["gram"] = chk.pair("m(T*T)=m(T)^2", gram_modulus_check(T))
    if isinstance(T, DiagonalOperator):
        return out
    if is_hermitian(T):
        out["square"] = chk.pair("m(T^2)=m(T)^2", power_modulus_check(T, 2))
    gamma = out["report"]["gamma"]
    if gamma is not None:
        out["gamma_pinv_norm"] = chk.pair("gamma(T)*||T+||=1", (gamma * norm2(fac.pseudoinverse(T)), 1.0))
    if T.shape[0] == T.shape[1] and svd(T).rank == T.shape[1]:
        out["inverse_norm"] = chk.pair("m(T)=1/||T^-1||", remark_inverse_check(T))
    return out


def _cmd_pinv(args, chk):
    T = read_matrix(args.input)
    out = {"pinv": fac.pseudoinverse(T)}
    out["penrose_residuals"] = chk.residuals("penrose", fac.penrose_residuals(T))
    out["identity_residuals"] = chk.residuals("pinv identity", fac.pinv_identity_residuals(T))
    out["modulus_identities"] = chk.residuals("pinv modulus", fac.mp_modulus_identities(T))
    gamma = reduced_minimum_modulus(T)
    if gamma is not None:
        out["gamma_pinv_norm"] = chk.pair("gamma(T)*||T+||=1", (gamma * norm2(out["pinv"]), 1.0))
    return out


def _cmd_polar(args, chk):
    T = read_matrix(args.input)
    r = fac.polar(T)
    diag = fac.polar_diagnostics(T, r)
    return {"V": r.V, "modulus": r.modulus, "diagnostics": chk.residuals("polar", diag)}


def _cmd_transform(args, chk):
    T = read_matrix(args.input)
    r = fac.bounded_transform(T)
    diag = fac.transform_diagnostics(T, r)
    norm_F = diag.pop("||F||")
    chk.residuals("transform", diag)
    pairs = fac.transform_moduli_check(T)
    out = {
        "F": r.F,
        "Q": r.Q,
        "norm_F": norm_F,
        "m_F": pairs["forward"][0],
        "diagnostics": diag,
        "forward_pair": chk.pair("m(F)=m(T)/sqrt(1+m(T)^2)", pairs["forward"]),
        "backward_pair": chk.pair("m(T)^2=m(F)^2/(1-m(F)^2)", pairs["backward"]),
    }
    back = fac.inverse_transform(r.F)
    out["round_trip_residual"] = chk.residuals(
        "transform", {"inverse round trip": float(np.linalg.norm(back - T)) / max(1.0, norm2(T))}
    )["inverse round trip"]
    return out


def _cmd_attain(args, chk):
    T = _operator(args.input)
    cert = att.is_min_attaining(T)
    out = {"attains": cert.attains, "m": cert.m_value, "witness": cert.witness}
    if isinstance(cert.witness, np.ndarray):
        rel = cert.residual / max(1.0, cert.m_value)
        out["witness_residual"] = chk.residuals("witness", {"|T|x=m x": rel}, "witness_rtol")["|T|x=m x"]
    return out


def _cmd_am(args, chk):
    spec = validate_spectrum(read_spec(args.input))
    out = {"verdict": att.classify_am(spec).as_dict()}
    cert = att.is_min_attaining(DiagonalOperator(spec))
    out["min_attaining"] = {"attains": cert.attains, "m": cert.m_value, "witness": cert.witness}
    return out


def _cmd_restrict(args, chk):
    if args.subspace is None:
        raise _UsageError("restrict needs --subspace <file>")
    T = read_matrix(args.input)
    M = read_matrix(args.subspace)
    out = {"restricted_min": att.restricted_min(T, M)}
    try:
        out["duality_pair"] = chk.pair("m(T|M)=1/||T^-1|T(M)||", att.restriction_duality_check(T, M))
    except Singular:
        out["duality_pair"] = None
    return out


def _cmd_sturm(args, chk):
    if args.k is None:
        raise _UsageError("sturm needs -k <int>")
    return sl_eigenvalues(read_problem(args.input), args.k).as_dict()


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise _UsageError(f"bad --sizes {text!r}") from exc
    if not sizes or min(sizes) < 1:
        raise _UsageError("--sizes needs positive integers")
    return sizes


def _cmd_audit(args, chk):
    spec = validate_spectrum(read_spec(args.input))
    rep = att.am_truncation_audit(spec, _parse_sizes(args.sizes), trials=args.trials, seed=args.seed)
    chk.flag("truncation audit consistency", rep.consistent)
    return _plain(rep)


COMMANDS = {
    "moduli": (_cmd_moduli, "minimum and reduced minimum modulus of a matrix or spectrum"),
    "pinv": (_cmd_pinv, "Moore-Penrose inverse with Penrose and identity residuals"),
    "polar": (_cmd_polar, "polar decomposition T = V|T|"),
    "transform": (_cmd_transform, "bounded transform F = T(I+T*T)^-1/2"),
    "attain": (_cmd_attain, "minimum attainment certificate"),
    "am": (_cmd_am, "absolute minimum attainment of a diagonal spectrum"),
    "restrict": (_cmd_restrict, "minimum modulus on a subspace"),
    "sturm": (_cmd_sturm, "eigenvalues of a regular Sturm-Liouville problem"),
    "audit": (_cmd_audit, "finite-section audit of a diagonal spectrum"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tol", type=float, default=1.0, help="scale factor for all identity tolerances")
    common.add_argument("--seed", type=int, default=42)
    parser = _Parser(prog="minmod", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        kind = {"sturm": "problem.json", "am": "spec.json", "audit": "spec.json"}.get(name, "matrix|spec")
        p.add_argument("input", metavar=kind)
        if name == "restrict":
            p.add_argument("--subspace", help="file whose rows span the subspace")
        if name == "sturm":
            p.add_argument("-k", type=int)
        if name == "audit":
            p.add_argument("--sizes", default="8,64,512")
            p.add_argument("--trials", type=int, default=16)
    return parser


def run(argv) -> tuple[int, Report | None]:
    """Execute a command; returns the exit code and the report (None on input error)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.tol > 0:
            raise _UsageError("--tol must be positive")
        tol = {k: v * args.tol for k, v in DEFAULT_TOLERANCES.items()}
        chk = _Checks(tol)
        results = COMMANDS[args.command][0](args, chk)
        paths = [args.input] + ([args.subspace] if getattr(args, "subspace", None) else [])
        rep = Report(args.command, digest(*paths), results, tol, args.seed, chk.violations)
    except (_UsageError, MinModError, OSError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"minmod: error: {exc}", file=sys.stderr)
        return 1, None
    return (2 if rep.violations else 0), rep


def cli_main(argv=None) -> int:
    code, rep = run(sys.argv[1:] if argv is None else argv)
    if rep is not None:
        sys.stdout.write(rep.to_json() + "\n")
    return code


def main():
    sys.exit(cli_main())
