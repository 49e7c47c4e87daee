"""Command-line front end: ``gkzbfun <command> --matrix "r0; r1" [options]``.

Exit codes: 0 success, 2 invalid input, 3 generic sections kept failing.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .bfun import (
    beta_forms,
    corollary_check,
    fourier_bound,
    gkz_bound,
    point_bound,
    validate_matrix,
)
from .diophantine import jbar_generators
from .errors import GenericityError, ValidationError
from .groebner import ORDERS, toric_ideal
from .linform import ParamLinForm, frac_str
from .polyhedra import all_faces, cone_facets, euler_operator, face_functional, homogeneity, is_normal
from .strata import MODES, fourier_strata, gkz_strata, strata_box_check

COMMANDS = ("fourier-b", "gkz-b", "point-b", "strata", "toric-ideal", "facets", "analyze", "check")
NEEDS_T = {"fourier-b", "gkz-b", "strata"}


@dataclass
class ProblemInput:
    matrix: exact.IntMatrix
    beta: str | tuple[Fraction, ...] = "symbolic"
    t: int | None = None
    order: str = "grevlex"
    seed: int = 0
    box: int = 10

    @property
    def d(self) -> int:
        return exact.shape(self.matrix)[0]

    @property
    def n(self) -> int:
        return exact.shape(self.matrix)[1]

    def echo(self) -> dict:
        if self.beta == "symbolic":
            beta = {"mode": "symbolic"}
        else:
            beta = {"mode": "rational", "values": [frac_str(x) for x in self.beta]}
        return {
            "matrix": [list(r) for r in self.matrix],
            "beta": beta,
            "t": self.t,
            "order": self.order,
            "seed": self.seed,
            "box": self.box,
        }


# ---------------------------------------------------------------------------
# parsing


def parse_matrix(text: str) -> exact.IntMatrix:
    rows = [r.replace(",", " ").split() for r in text.split(";")]
    rows = [r for r in rows if r]
    if not rows:
        raise ValidationError("empty matrix")
    try:
        M = [[int(x) for x in r] for r in rows]
    except ValueError as e:
        raise ValidationError(f"matrix entries must be integers: {e}") from None
    if len({len(r) for r in M}) != 1:
        raise ValidationError("matrix rows have different lengths")
    return exact.as_int_matrix(M)


def parse_beta(raw) -> str | tuple[Fraction, ...]:
    if raw is None:
        return "symbolic"
    if isinstance(raw, dict):
        mode = raw.get("mode", "symbolic")
        if mode == "symbolic":
            return "symbolic"
        if mode != "rational":
            raise ValidationError(f"beta mode must be 'symbolic' or 'rational', got {mode!r}")
        raw = raw.get("values", [])
    if isinstance(raw, str):
        if raw.strip() == "symbolic":
            return "symbolic"
        raw = [s for s in raw.split(",") if s.strip()]
    try:
        return tuple(Fraction(str(x).strip()) for x in raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"beta entries must be rationals like 1/3: {e}") from None


def parse_input(args: argparse.Namespace) -> ProblemInput:
    data = {}
    if getattr(args, "file", None):
        try:
            with open(args.file) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read input file: {e}") from None
    if args.matrix is not None:
        matrix = parse_matrix(args.matrix)
    elif "matrix" in data:
        try:
            matrix = exact.as_int_matrix(data["matrix"])
        except (TypeError, ValueError) as e:
            raise ValidationError(f"bad matrix in file: {e}") from None
    else:
        raise ValidationError("no matrix given (use --matrix or --file)")
    beta = parse_beta(args.beta if args.beta is not None else data.get("beta"))
    t = args.t if args.t is not None else data.get("t")
    inp = ProblemInput(matrix, beta, t, args.order, args.seed, args.box)
    if inp.beta != "symbolic" and len(inp.beta) != inp.d:
        raise ValidationError(f"beta has length {len(inp.beta)}, expected d = {inp.d}")
    if t is not None and not (isinstance(t, int) and 0 <= t < inp.n):
        raise ValidationError(f"t must be a column index in 0..{inp.n - 1}, got {t!r}")
    if args.order not in ORDERS:
        raise ValidationError(f"order must be one of {ORDERS}")
    if args.box < 0:
        raise ValidationError("box radius must be non-negative")
    return inp


# ---------------------------------------------------------------------------
# diagnostics


def _euler_lines(A, t):
    lines = []
    d = exact.shape(A)[0]
    beta = ParamLinForm.symbolic_vector(d)
    for f in cone_facets(A):
        k = t if t is not None and t not in f.columns else next(
            j for j in range(exact.shape(A)[1]) if j not in f.columns
        )
        L = face_functional(A, f.columns, k)
        coeffs, bL = euler_operator(A, L, beta)
        terms = [(f"{frac_str(c)}*" if c != 1 else "") + f"θ{j}" for j, c in enumerate(coeffs) if c]
        lines.append((f.columns, k, " + ".join(terms) + f" - ({bL})"))
    return lines


def diagnostics(inp: ProblemInput, want_strata: str | None = None) -> dict:
    A = inp.matrix
    out = {"facets": None, "strata": None, "jbar": None, "normality": None, "homogeneity": None}
    out["facets"] = [f.to_json() for f in cone_facets(A)]
    c = homogeneity(A)
    out["homogeneity"] = None if c is None else [frac_str(x) for x in c]
    out["normality"] = is_normal(A)
    if inp.t is not None:
        if want_strata in (None, "fourier"):
            out["strata"] = [s.to_json() for s in fourier_strata(A, inp.t)]
        else:
            out["strata"] = [s.to_json() for s in gkz_strata(A, inp.t)]
        out["jbar"] = jbar_generators(A, inp.t).to_json()
    return out


# ---------------------------------------------------------------------------
# commands


def _beta_arg(inp):
    return None if inp.beta == "symbolic" else list(inp.beta)


def cmd_bound(inp, args, kind):
    if kind == "fourier-b":
        rb = fourier_bound(inp.matrix, _beta_arg(inp), inp.t)
        mode = "fourier"
    elif kind == "gkz-b":
        rb = gkz_bound(inp.matrix, _beta_arg(inp), inp.t)
        mode = "gkz"
    else:
        rb = point_bound(inp.matrix, seed=inp.seed)
        mode = None
    text = rb.format()
    if kind == "point-b" and "normal_bound" in rb.metadata:
        text += f"\nnormal bound: k <= d = {rb.metadata['normal_bound']}"
    return rb.to_json(), text, mode


def cmd_strata(inp, args):
    mode = args.mode or "fourier"
    fn = fourier_strata if mode == "fourier" else gkz_strata
    strata = fn(inp.matrix, inp.t)
    lines = [f"{len(strata)} strata ({mode}, t={inp.t})"]
    for s in strata:
        cols = ",".join(f"a{j}" for j in s.span_columns)
        lines.append(f"  {list(s.shift)} + N{{{cols}}}" + ("" if s.face_aligned else "  (not face-aligned)"))
    return [s.to_json() for s in strata], "\n".join(lines), mode


def cmd_toric(inp, args):
    G = toric_ideal(inp.matrix, inp.order)
    lines = [f"toric ideal ({inp.order}), {len(G.generators)} generators"]
    lines += ["  " + g.format(G.order) for g in G.generators]
    return {"order": inp.order, "generators": G.to_json()}, "\n".join(lines), None


def cmd_facets(inp, args):
    facets = cone_facets(inp.matrix)
    lines = [f"{len(facets)} facets"]
    for f in facets:
        lines.append(f"  columns {list(f.columns)}  functional {list(f.functional)}")
    return [f.to_json() for f in facets], "\n".join(lines), None


def cmd_analyze(inp, args):
    A = inp.matrix
    c = homogeneity(A)
    faces = all_faces(A)
    eul = _euler_lines(A, inp.t)
    res = {
        "d": inp.d,
        "n": inp.n,
        "faces": [f.to_json() for f in faces],
        "homogeneous": c is not None,
        "normal": is_normal(A),
        "euler_operators": [{"facet": list(F), "normalized_at": k, "operator": s} for F, k, s in eul],
    }
    lines = [f"d = {inp.d}, n = {inp.n}"]
    lines.append("homogeneous: " + ("yes, c = (" + ", ".join(frac_str(x) for x in c) + ")" if c else "no"))
    lines.append(f"normal: {'yes' if res['normal'] else 'no'}")
    lines.append(f"faces: {len(faces)}")
    for f in faces:
        lines.append(f"  {list(f.columns)}" + (" (facet)" if f.is_facet else ""))
    lines.append("Euler operators:")
    lines += [f"  facet {list(F)}, L(a{k}) = 1: {s}" for F, k, s in eul]
    if inp.t is not None:
        rep = corollary_check(A, inp.t)
        res["beta_zero"] = rep.to_json()
        vals = ", ".join(frac_str(x) for x in rep.theta_roots) or "none"
        lines.append(f"Fourier bound at beta = 0 (θ̃ roots): {vals}")
    return res, "\n".join(lines), None


def cmd_check(inp, args):
    ts = [inp.t] if inp.t is not None else list(range(inp.n))
    modes = [args.mode] if args.mode else list(MODES)
    reports = []
    lines = []
    for t in ts:
        for mode in modes:
            strata = (fourier_strata if mode == "fourier" else gkz_strata)(inp.matrix, t)
            rep = strata_box_check(strata, mode, inp.matrix, t, inp.box)
            js = rep.to_json()
            js["t"] = t
            reports.append(js)
            status = "ok" if rep.ok else f"{len(rep.violations)} violations"
            lines.append(
                f"{mode:8s} t={t}: {status} ({rep.degrees_checked} degrees, "
                f"{rep.stratum_points_checked} stratum points, radius {inp.box})"
            )
            lines += ["    " + v for v in rep.violations[:10]]
    ok = all(r["ok"] for r in reports)
    return {"ok": ok, "reports": reports}, "\n".join(lines), None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkzbfun", description="Root bounds for b-functions of A-hypergeometric systems.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--matrix", help='integer matrix, rows separated by ";", e.g. "-1 0 1; 1 1 1"')
        s.add_argument("--file", help="JSON input with keys matrix, beta, t")
        s.add_argument("--t", type=int, help="column index (0-based)")
        s.add_argument("--beta", help='"symbolic" (default) or comma separated rationals, e.g. "1/3,2"')
        s.add_argument("--order", default="grevlex", help="term order for toric-ideal")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--box", type=int, default=10, help="oracle box radius")
        s.add_argument("--mode", choices=MODES, help="strata / check mode")
        s.add_argument("--json", action="store_true", help="machine-readable output")
        s.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    return p


def run(command: str, inp: ProblemInput, args) -> tuple[int, dict, str]:
    if command in NEEDS_T and inp.t is None:
        raise ValidationError(f"{command} needs --t")
    pointed = command != "toric-ideal"
    validate_matrix(inp.matrix, homogeneous=False, pointed=pointed)
    if command in ("fourier-b", "gkz-b"):
        beta_forms(_beta_arg(inp), inp.d)
    t0 = time.perf_counter()
    handlers = {
        "strata": cmd_strata,
        "toric-ideal": cmd_toric,
        "facets": cmd_facets,
        "analyze": cmd_analyze,
        "check": cmd_check,
    }
    if command in ("fourier-b", "gkz-b", "point-b"):
        result, text, mode = cmd_bound(inp, args, command)
    else:
        result, text, mode = handlers[command](inp, args)
    t1 = time.perf_counter()
    diag = diagnostics(inp, mode or getattr(args, "mode", None)) if pointed else None
    t2 = time.perf_counter()
    doc = {
        "input_echo": inp.echo(),
        "result": result,
        "diagnostics": diag,
        "timings": {"command_s": t1 - t0, "diagnostics_s": t2 - t1} if args.timings else None,
    }
    code = 0
    if command == "check" and not result["ok"]:
        code = 1
    return code, doc, text


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inp = parse_input(args)
        code, doc, text = run(args.command, inp, args)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GenericityError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
