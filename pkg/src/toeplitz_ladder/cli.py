"""Command-line front end.

Exit codes: 0 success (all identities pass), 1 verification failure,
2 usage error, 3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Sequence

import mpmath as mp

from . import __version__
from .diffeq import dp2_oracle, dp2_orbit
from .errors import DegenerateWeightError, SingularStepError, ToeplitzLadderError
from .fh_closed import discriminant_resultant, fh_asymptotics, fh_delta, fh_discriminant
from .ladder import DEFAULT_SAMPLE_POINTS
from .opuc import build_toeplitz, delta_product, det_lu, opuc_solve
from .suites import DEFAULT_TOLERANCES, SUITES, run_suite
from .symbols import Bessel, ExpPoles, FisherHartwig, moments

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
JSON_DIGITS, TEXT_DIGITS = 17, 10


class UsageError(Exception):
    """Bad flag combination detected after parsing."""


# ---------------------------------------------------------------------------
# parsing helpers


def _pole(text: str) -> tuple[float, float]:
    try:
        z, g = text.split(":")
        return float(z), float(g)
    except ValueError:
        raise argparse.ArgumentTypeError(f"pole must look like Z:G, got {text!r}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _tol_override(text: str) -> tuple[str, float]:
    try:
        key, val = text.split("=")
        val = float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must look like NAME=VALUE, got {text!r}") from None
    if key not in DEFAULT_TOLERANCES:
        raise argparse.ArgumentTypeError(f"unknown tolerance {key!r}; known: {', '.join(DEFAULT_TOLERANCES)}")
    return key, val


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")


def _add_symbol(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--symbol", choices=("fh", "bessel", "poles"), required=required)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--pole", type=_pole, action="append", metavar="Z:G", help="pole z_a with exponent g_a (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeplitz-ladder",
        description="Toeplitz determinants, orthogonal polynomials on the unit circle and their ladder identities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="Fourier moments w_m, |m| <= M")
    _add_symbol(p)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--digits", type=int, default=None, help="extended precision digits")
    _add_output(p)

    p = sub.add_parser("det", help="Toeplitz determinant Delta_n")
    _add_symbol(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("lu", "product", "closed"), default="lu")
    _add_output(p)

    p = sub.add_parser("opuc", help="k_n, phi_n(0), l_n, r_n, m_n, s_n")
    _add_symbol(p)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", choices=("gram", "levinson"), default="gram")
    p.add_argument("--digits", type=int, default=None)
    _add_output(p)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", choices=SUITES + ("all",), required=True)
    _add_symbol(p, required=False)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--digits", type=int, default=50, help="working digits of the dP2 orbit (0 for double)")
    p.add_argument("--tol", type=_tol_override, action="append", default=[], metavar="NAME=VALUE")
    p.add_argument("--sample-points", type=_complex, nargs="+", default=None)
    _add_output(p)

    p = sub.add_parser("dp2", help="discrete Painleve II orbit for the Bessel weight")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--no-oracle", action="store_true", help="skip the Gram reference values")
    _add_output(p)

    p = sub.add_parser("discriminant", help="discriminant of phi_n for the Fisher-Hartwig symbol")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("resultant", "closed"), default="resultant")
    _add_output(p)

    p = sub.add_parser("asympt", help="exact values next to their large-n asymptotes")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n-max", type=int, required=True)
    _add_output(p)
    return parser


def _symbol(args, required: bool = True):
    kind = getattr(args, "symbol", None)
    if kind is None:
        if required:
            raise UsageError("--symbol is required")
        return None
    if kind == "fh":
        return FisherHartwig(args.alpha, args.beta)
    if kind == "bessel":
        if args.t is None:
            raise UsageError("--symbol bessel needs --t")
        return Bessel(args.t)
    if not args.pole:
        raise UsageError("--symbol poles needs at least one --pole Z:G")
    return ExpPoles(1.0 if args.t is None else args.t, tuple(args.pole))


# ---------------------------------------------------------------------------
# output


def _plain(x: Any) -> Any:
    if isinstance(x, (mp.mpf, mp.mpc)):
        x = complex(x)
    if isinstance(x, complex):
        return [x.real, x.imag] if x.imag != 0 else x.real
    if hasattr(x, "item") and not isinstance(x, (list, dict)):
        return _plain(x.item())
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _fmt(x: Any, digits: int) -> str:
    if isinstance(x, float):
        return f"{x:.{digits}g}"
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, float) for v in x):
        return f"{x[0]:.{digits}g}{x[1]:+.{digits}g}j"
    if isinstance(x, (list, dict)):
        return json.dumps(x)
    return str(x)


def render(payload: dict, fmt: str) -> str:
    """Serialise ``{command, symbol, results, tolerances, pass, version}``."""
    payload = _plain(payload)
    if fmt == "json":
        return json.dumps(payload, indent=1) + "\n"
    rows = payload["results"]
    if fmt == "csv":
        keys: list[str] = []
        for r in rows:
            for k in r:
                if k not in keys:
                    keys.append(k)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_fmt(r.get(k), JSON_DIGITS) if k in r else "" for k in keys])
        return buf.getvalue()
    lines = [f"# {payload['command']} {json.dumps(payload['symbol'])}"]
    for r in rows:
        lines.append("  ".join(f"{k}={_fmt(v, TEXT_DIGITS)}" for k, v in r.items()))
    lines.append(f"pass: {json.dumps(payload['pass'])}")
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict) -> None:
    text = render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _payload(command: str, symbol: dict, results: list, tolerances: dict | None = None, passed: bool = True) -> dict:
    return {
        "command": command,
        "symbol": symbol,
        "results": results,
        "tolerances": tolerances or {},
        "pass": bool(passed),
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# commands


def _cmd_moments(args) -> int:
    spec = _symbol(args)
    seq = moments(spec, args.max_order, dps=args.digits)
    rows = [{"m": r["m"], "re": r["re"], "im": r["im"]} for r in seq.records()]
    _emit(args, _payload("moments", spec.params(), rows))
    return EXIT_OK


def _cmd_det(args) -> int:
    spec = _symbol(args)
    n = args.n
    if args.method == "closed":
        if not isinstance(spec, FisherHartwig):
            raise UsageError("--method closed is available for --symbol fh only")
        value = fh_delta(spec, n)
    elif args.method == "lu":
        res = det_lu(build_toeplitz(moments(spec, max(n, 1)), n))
        if res.singular:
            raise DegenerateWeightError(n)
        value = res.value
    else:
        value = delta_product(opuc_solve(moments(spec, n), n), n)
    if spec.hermitian:
        # Hermitian Toeplitz determinants are real; drop the rounding residue
        value = complex(value).real
    _emit(args, _payload("det", spec.params(), [{"n": n, "method": args.method, "value": value}]))
    return EXIT_OK


def _cmd_opuc(args) -> int:
    spec = _symbol(args)
    seq = opuc_solve(moments(spec, args.n_max, dps=args.digits), args.n_max, method=args.method)
    rows = [{k: v for k, v in r.items() if k != "coeffs" or args.format == "json"} for r in seq.records()]
    _emit(args, _payload("opuc", spec.params(), rows))
    return EXIT_OK


def _cmd_verify(args) -> int:
    spec = _symbol(args, required=False)
    tols = dict(args.tol)
    points = tuple(args.sample_points) if args.sample_points else DEFAULT_SAMPLE_POINTS
    try:
        runs = run_suite(args.suite, spec, args.n_max, points, args.digits or None, tols)
    except ValueError as exc:
        if isinstance(exc, ToeplitzLadderError):
            raise
        raise UsageError(str(exc)) from None
    rows, passed = [], True
    for s, name, rep in runs:
        for rec in rep.to_records():
            rows.append({"suite": name, "symbol": s.params(), **rec})
        passed &= rep.passed
        for f in rep.failures():
            print(
                f"FAIL {name} {s.params()} {f.identity} n={f.n} point={f.point!r} "
                f"relative={f.relative:.3e} tol={f.tolerance:.1e}",
                file=sys.stderr,
            )
    merged = dict(DEFAULT_TOLERANCES)
    merged.update(tols)
    symbol = spec.params() if spec is not None else {"family": "default grid"}
    _emit(args, _payload("verify", symbol, rows, merged, passed))
    return EXIT_OK if passed else EXIT_FAIL


def _cmd_dp2(args) -> int:
    orbit = dp2_orbit(args.t, args.n_max, args.digits)
    if not args.no_oracle:
        orbit.oracle = dp2_oracle(args.t, args.n_max, dps=max(80, 2 * (args.digits or 0)))
    rows = orbit.records()
    symbol = {"family": "bessel", "t": args.t, "precision_digits": args.digits}
    _emit(args, _payload("dp2", symbol, rows))
    return EXIT_OK


def _cmd_discriminant(args) -> int:
    spec = FisherHartwig(args.alpha, args.beta)
    if args.method == "resultant":
        seq = opuc_solve(moments(spec, args.n), args.n)
        value = discriminant_resultant(seq.left[args.n])
    else:
        value = fh_discriminant(spec, args.n)
    _emit(args, _payload("discriminant", spec.params(), [{"n": args.n, "method": args.method, "value": value}]))
    return EXIT_OK


def _cmd_asympt(args) -> int:
    spec = FisherHartwig(args.alpha, args.beta)
    rows = [fh_asymptotics(spec, n).to_dict() for n in range(2, args.n_max + 1)]
    _emit(args, _payload("asympt", spec.params(), rows))
    return EXIT_OK


COMMANDS = {
    "moments": _cmd_moments,
    "det": _cmd_det,
    "opuc": _cmd_opuc,
    "verify": _cmd_verify,
    "dp2": _cmd_dp2,
    "discriminant": _cmd_discriminant,
    "asympt": _cmd_asympt,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run the command; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToeplitzLadderError, SingularStepError, ZeroDivisionError, OverflowError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":  # pragma: no cover
    main()
