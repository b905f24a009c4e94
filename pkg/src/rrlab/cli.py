"""Command-line front end: ``rrlab <command> ...`` prints one JSON report on stdout.

Exit codes: 0 pass, 1 mathematical mismatch, 2 usage error, 3 precision failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import mpmath

from . import __version__
from .errors import (DegenerateSpecialization, IndexOutOfRange, InvalidFamilyParams,
                     NoRelationFound, NonIntegralCoefficients, NoStabilization,
                     NotADiscriminant, NotUpperHalfPlane, PrecisionFailure, UsageError)

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
COMMANDS = ("verify", "expand", "machinery", "eval", "orbit", "minpoly", "selftest")
USAGE_ERRORS = (UsageError, InvalidFamilyParams, IndexOutOfRange, NotUpperHalfPlane,
                NotADiscriminant, DegenerateSpecialization, ValueError)
PRECISION_ERRORS = (PrecisionFailure, NoRelationFound, NonIntegralCoefficients, NoStabilization)


def default_prec() -> int:
    text = os.environ.get("RRLAB_PREC")
    if not text:
        return 256
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"RRLAB_PREC must be an integer, got {text!r}") from None


def emit_report(command: str, params: dict, status: str, details: dict, timings: dict) -> str:
    """The stable report schema; keys appear in a fixed order."""
    doc = {"tool_version": __version__, "command": command, "params": params, "status": status,
           "details": details, "timings": {k: round(v, 4) for k, v in timings.items()}}
    return json.dumps(doc, indent=2, default=str)


# ---------------------------------------------------------------------------
# commands; each returns (status, details)


def _extra(args) -> int | None:
    for name in ("extra", "sigma", "i", "k"):
        v = getattr(args, name, None)
        if v is not None:
            return v
    return None


def cmd_verify(args) -> tuple[str, dict]:
    from .identities import verify
    rep = verify(args.family, args.m, args.n, _extra(args), args.order, args.branch)
    return rep.status, rep.to_json()


def _series_json(s, count: int) -> dict:
    terms = [(str(e), str(c)) for e, c in s.terms()][:count]
    return {"order": str(s.order_q), "terms": terms}


def cmd_expand(args) -> tuple[str, dict]:
    from . import identities
    if args.phi:
        s = identities.phi_series(args.phi, args.m, args.n, args.order)
    elif args.psi:
        s = identities.psi_series(args.psi, args.m, args.n, args.order)
    elif args.family:
        if args.side == "sum":
            s = identities.sum_side_series(args.family, args.m, args.n, _extra(args), args.order)
        else:
            branches = ("n_form", "m_form") if args.branch == "both" else (args.branch,)
            forms = [identities.product_side(args.family, args.m, args.n, _extra(args), b).expand(args.order)
                     for b in branches]
            s = forms[0]
            if not all(f.agrees(s) for f in forms[1:]):
                return "fail", {"series": _series_json(s, args.terms), "branches": "n_form and m_form differ"}
    else:
        raise UsageError("expand needs --family, --phi or --psi")
    return "pass", {"series": _series_json(s, args.terms)}


def _parse_x(text: str | None):
    from .qcore import xspec
    if not text:
        raise UsageError("--x needs a comma separated list of q-powers")
    return xspec(*[t for t in text.split(",") if t])


def cmd_machinery(args) -> tuple[str, dict]:
    from . import macdonald
    from .qcore import pochhammer_inf, theta_series, triple_product_sum
    ident = args.identity
    if ident == "jtp":
        lhs = triple_product_sum(args.sign, args.a, args.b, args.order)
        rhs = theta_series(args.sign, args.a, args.b, args.order) * pochhammer_inf(1, args.b, args.b, args.order)
        ok = lhs.agrees(rhs, args.order)
        return ("pass" if ok else "fail"), {"identity": "jacobi_triple_product"}
    if ident == "rs":
        rep = macdonald.rogers_selberg_check(Fraction(args.a), args.order)
        return rep.status, rep.to_json()
    if ident == "watson":
        if args.x:
            x = _parse_x(args.x)
            if len(x) != 5:
                raise UsageError("Watson needs five q-powers b,c,d,e,a")
            tuples = [x]
        else:
            tuples = macdonald.seeded_watson_tuples(args.count)
        reps = [macdonald.watson_check(*t, args.nterm) for t in tuples]
        status = "pass" if all(r.passed for r in reps) else "fail"
        return status, {"reports": [r.to_json() for r in reps]}
    if ident in ("cn-rs", *macdonald.MACDONALD_KINDS):
        kind = "Cn-RS" if ident == "cn-rs" else ident
        xs = [_parse_x(args.x)] if args.x else macdonald.seeded_specializations(kind, args.n, args.count)
        if ident == "cn-rs":
            reps = [macdonald.rogers_selberg_cn_check(args.m, x, args.order) for x in xs]
        else:
            reps = [macdonald.macdonald_check(kind, len(x), x, args.order) for x in xs]
        status = "pass" if all(r.passed for r in reps) else "fail"
        return status, {"reports": [r.to_json() | {"params": r.params} for r in reps]}
    raise UsageError(f"unknown identity {ident!r}")


def _tau(text: str):
    from .cm import parse_tau
    return parse_tau(text)


def _value(kind: str, star, m: int, n: int, tau, prec: int, method: str = "siegel"):
    from .cm import phi_cm, psi_cm
    if kind == "phi":
        return phi_cm(star, m, n, tau, prec, method=method)
    return psi_cm(int(star), m, n, tau, prec, method=method)


def cmd_eval(args) -> tuple[str, dict]:
    from .cm import phi_cm, psi_cm, three_way
    tau = _tau(args.tau)
    kind, star = ("phi", args.phi) if args.phi else ("psi", args.psi)
    if star is None:
        raise UsageError("eval needs --phi or --psi")
    if args.method == "all":
        fn = phi_cm if kind == "phi" else psi_cm
        res = three_way(fn, star if kind == "phi" else int(star), args.m, args.n, tau,
                        prec=args.prec, order=args.series_order)
        return ("pass" if res.agree else "fail"), {"tau": str(tau), **res.to_json()}
    v = _value(kind, star, args.m, args.n, tau, args.prec, args.method)
    return "pass", {"tau": str(tau), **v.to_json()}


def cmd_orbit(args) -> tuple[str, dict]:
    from .cm import CMPoint, orbit_multiset, orbit_poly, phi_siegel_product, psi_siegel_product
    tau = _tau(args.tau)
    if not isinstance(tau, CMPoint):
        raise UsageError("orbits need a CM point")
    if args.phi:
        kappa, F = phi_siegel_product(args.phi, args.m, args.n)
    elif args.psi:
        kappa, F = psi_siegel_product(int(args.psi), args.m, args.n)
    else:
        raise UsageError("orbit needs --phi or --psi")
    theta = tau.scaled(kappa)
    vals = orbit_multiset(F ** args.power, theta, kappa, args.prec)
    p = orbit_poly(vals, args.prec, args.tol)
    return "pass", {"theta": str(theta), "kappa": kappa, "size": len(vals),
                    "polynomial": p.to_json(),
                    "factors": [{"factor": str(f), "multiplicity": e} for f, e in p.factor()]}


def _parse_eval_spec(text: str):
    """``phi:1a:2:2:i/3`` or ``psi:1:2:2:i/3``."""
    parts = text.split(":", 4)
    if len(parts) != 5 or parts[0] not in ("phi", "psi"):
        raise UsageError(f"eval spec must look like phi:1a:2:2:i/3, got {text!r}")
    kind, star, m, n, tau = parts
    return kind, star, int(m), int(n), _tau(tau)


def cmd_minpoly(args) -> tuple[str, dict]:
    from .cm import minpoly, unit_flags
    kind, star, m, n, tau = _parse_eval_spec(args.value_from)
    den = _parse_eval_spec(args.divide_by) if args.divide_by else None

    def value(wp: int):
        v = _value(kind, star, m, n, tau, wp).value
        if den is not None:
            v = v / _value(den[0], den[1], den[2], den[3], den[4], wp).value
        return v ** args.power

    p = minpoly(value, args.maxdeg, args.prec)
    with mpmath.workprec(max(args.prec, 256)):
        v = value(max(args.prec, 256))
        residual = abs(p(v))
    return "pass", {"value": mpmath.nstr(v, 30), "minpoly": p.to_json(), "flags": unit_flags(p),
                    "residual": mpmath.nstr(residual, 5)}


def _run_one(k: int) -> dict:
    from . import acceptance
    out = acceptance.run_criterion(k)
    return out.to_json() | {"line": out.line()}


def cmd_selftest(args) -> tuple[str, dict]:
    from . import acceptance
    numbers = sorted(acceptance.CRITERIA)
    if args.only:
        numbers = [int(t) for t in args.only.split(",")]
        bad = [k for k in numbers if k not in acceptance.CRITERIA]
        if bad:
            raise UsageError(f"unknown criteria {bad}")
    if args.jobs > 1 and len(numbers) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_one, numbers))
    else:
        results = [_run_one(k) for k in numbers]
    timings = {}
    for r in results:
        print(r.pop("line"), file=sys.stderr)
        timings[f"criterion_{r['number']}_s"] = r.pop("seconds")
    status = "pass" if all(r["passed"] for r in results) else "fail"
    return status, {"criteria": results, "_timings": timings}


HANDLERS = {"verify": cmd_verify, "expand": cmd_expand, "machinery": cmd_machinery,
            "eval": cmd_eval, "orbit": cmd_orbit, "minpoly": cmd_minpoly,
            "selftest": cmd_selftest}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rrlab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"rrlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON file with parameter defaults")
        sp.add_argument("--output", help="also write the report to this file")
        sp.add_argument("--order", type=int, default=100, help="truncation order N")
        sp.add_argument("--prec", type=int, default=None, help="working precision in bits")
        sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="parallel workers")
        sp.add_argument("--m", type=int, default=1)
        sp.add_argument("--n", type=int, default=1)

    def family(sp):
        sp.add_argument("--family")
        sp.add_argument("--branch", default="both", choices=("n_form", "m_form", "both"))
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--extra", type=int)
        g.add_argument("--sigma", type=int)
        g.add_argument("--i", type=int)
        g.add_argument("--k", type=int)

    sp = sub.add_parser("verify", help="compare a family's sum and product sides")
    common(sp)
    family(sp)

    sp = sub.add_parser("expand", help="print the coefficients of a series")
    common(sp)
    family(sp)
    sp.add_argument("--side", choices=("sum", "product"), default="sum")
    sp.add_argument("--phi", choices=("1a", "1b", "2", "3"))
    sp.add_argument("--psi", choices=("1", "2"))
    sp.add_argument("--terms", type=int, default=50, help="number of terms to print")

    sp = sub.add_parser("machinery", help="triple product, Watson, Rogers-Selberg, Macdonald")
    common(sp)
    sp.add_argument("--identity", required=True,
                    choices=("jtp", "watson", "rs", "cn-rs", "Dn1_2", "Bn1_variant", "Dn1_variant"))
    sp.add_argument("--x", help="comma separated q-powers such as q^1/2,-q^1/3")
    sp.add_argument("--a", default="1", help="q-exponent a")
    sp.add_argument("--b", default="1", help="q-exponent b (triple product)")
    sp.add_argument("--sign", type=int, default=-1, choices=(1, -1))
    sp.add_argument("--nterm", type=int, default=3)
    sp.add_argument("--count", type=int, default=3, help="number of seeded specializations")

    for name, text in (("eval", "value of a normalized series at a point"),
                       ("orbit", "Galois orbit polynomial of a power of a singular value")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        sp.add_argument("--phi", choices=("1a", "1b", "2", "3"))
        sp.add_argument("--psi", choices=("1", "2"))
        sp.add_argument("--tau", required=True, help="i/3, sqrt(-1/3), (-1+3i)/2 or form:a,b,c")
        if name == "eval":
            sp.add_argument("--method", default="siegel", choices=("siegel", "theta", "series", "all"))
            sp.add_argument("--series-order", type=int, default=400)
        else:
            sp.add_argument("--power", type=int, default=1)
            sp.add_argument("--tol", type=float, default=1e-10)

    sp = sub.add_parser("minpoly", help="minimal polynomial of a singular value")
    common(sp)
    sp.add_argument("--value-from", required=True, help="phi:1a:2:2:i/3 or psi:1:2:2:i/3")
    sp.add_argument("--divide-by", help="a second eval spec to divide by")
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--maxdeg", type=int, default=20)

    sp = sub.add_parser("selftest", help="run the acceptance grid")
    common(sp)
    sp.add_argument("--only", help="comma separated criterion numbers")
    return p


def _apply_config(args, parser: argparse.ArgumentParser) -> None:
    if not getattr(args, "config", None):
        return
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    if cfg.get("command", args.command) != args.command:
        raise UsageError(f"config is for {cfg['command']!r}, not {args.command!r}")
    # config values fill in options left at their defaults
    sub = parser._subparsers._group_actions[0].choices[args.command]
    for key, value in cfg.get("params", {}).items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise UsageError(f"unknown config parameter {key!r}")
        if getattr(args, key) == sub.get_default(key):
            setattr(args, key, value)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    params: dict = {}
    timings: dict = {}
    try:
        _apply_config(args, parser)
        if args.prec is None:
            args.prec = default_prec()
        params = {k: v for k, v in sorted(vars(args).items())
                  if k not in ("command", "config", "output", "jobs")}
        status, details = HANDLERS[args.command](args)
        timings = details.pop("_timings", {})
        code = EXIT_PASS if status == "pass" else EXIT_MISMATCH
    except PRECISION_ERRORS as exc:
        status, details, code = "precision_failure", {"error": type(exc).__name__, "message": str(exc)}, EXIT_PRECISION
    except USAGE_ERRORS as exc:
        status, details, code = "usage_error", {"error": type(exc).__name__, "message": str(exc)}, EXIT_USAGE
    doc = emit_report(args.command, params, status, details, timings | {"total_s": time.perf_counter() - t0})
    print(doc)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(doc + "\n")
    if code == EXIT_USAGE:
        print(f"rrlab: {details['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
