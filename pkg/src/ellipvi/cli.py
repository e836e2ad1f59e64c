"""Command-line surface: evaluate transcendents, print behavior tables,
solve connection problems, and run quick verification suites.

Output is byte-deterministic: JSON keys are sorted and every float is
printed with 17 significant digits.  Exit codes: 0 success, 2 configuration
error, 3 domain or resonance error.
"""
from __future__ import annotations

import argparse
import cmath
import hashlib
import json
import math
import os
import random
import sys

from . import errors as err
from .specialfn import CoveringPoint, gamma_complex, hyper_F, hyper_F1
from .weierstrass import LatticeFrame, wp, wp_prime
from .elliptic_core import (EllipticParams, SeriesTable, ThetaVector,
                            v_coefficients, y_eval)
from .critical import behavior_at_0, behavior_at_1, behavior_at_inf, \
    picard_behavior, PathSpec, path_point
from .oracle import equation_residual, picard_solution
from .monodromy import (SigmaA, a_from_s, canonical_sigma, s_from_traces,
                        sigma_aliases, sigma_from_trace, sigma_a_to_nu,
                        nu_to_sigma_a, traces_from_params, transform_to_x1,
                        transform_to_xinf)
from . import nongeneric as ng

_DOMAIN_ERRORS = (err.DomainError, err.ResonanceError, err.RangeError,
                  err.GuardError, err.DegenerateError, err.PoleError,
                  err.StripError, err.LatticePoleError, err.CaseError,
                  err.ZeroSigmaError, err.DenominatorError,
                  err.ConsistencyError, err.GammaPoleError,
                  err.SingularArgumentError)


class ConfigError(Exception):
    pass


# --- deterministic serialization -------------------------------------------

def _fmt(v: float) -> str:
    if v != v:
        return "NaN"
    return f"{v:.17g}"


def dumps(obj, indent: int = 0) -> str:
    """JSON text with sorted keys and 17-significant-digit floats."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  {json.dumps(str(k))}: {dumps(obj[k], indent + 1)}'
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {dumps(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, complex):
        return f"[{_fmt(obj.real)}, {_fmt(obj.imag)}]"
    if isinstance(obj, float):
        return _fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(obj)


def _csv(rows, header) -> str:
    out = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            cells.append(_fmt(v) if isinstance(v, float) else str(v))
        out.append(",".join(cells))
    return "\n".join(out)


# --- configuration ----------------------------------------------------------

def _parse_complex_list(text: str, n: int, what: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise ConfigError(f"--{what} needs {n} comma-separated numbers, "
                          f"got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as e:
        raise ConfigError(f"--{what}: {e}") from None


def _theta_from(cfg) -> ThetaVector:
    if cfg.get("theta") is not None and cfg.get("abcd") is not None:
        raise ConfigError("--theta and --abcd are mutually exclusive")
    if cfg.get("theta") is not None:
        v = _parse_complex_list(cfg["theta"], 4, "theta")
        return ThetaVector(*v)
    if cfg.get("abcd") is not None:
        v = _parse_complex_list(cfg["abcd"], 4, "abcd")
        return ThetaVector.from_abcd(*v)
    raise ConfigError("one of --theta or --abcd is required")


def _classify_case(theta: ThetaVector, nu2: complex) -> str:
    tol = 1e-12
    w00 = abs(2.0 * theta.alpha) < tol and abs(2.0 * theta.gamma) < tol
    w11 = abs(2.0 * theta.beta) < tol and abs(1.0 - 2.0 * theta.delta) < tol
    if w00 and w11:
        return "picard"
    if w11:
        return "special-beta"
    if w00:
        return "special-alphagamma"
    return "generic-a" if complex(nu2).real < 1.0 else "generic-b"


def _nu_from(cfg):
    if cfg.get("nu") is None:
        raise ConfigError("--nu re,im,re,im is required for this command")
    v = _parse_complex_list(cfg["nu"], 4, "nu")
    return complex(v[0], v[1]), complex(v[2], v[3])


def _params_from(cfg, theta: ThetaVector | None) -> EllipticParams:
    nu1, nu2 = _nu_from(cfg)
    point = cfg.get("point") or "0"
    case = _classify_case(theta, nu2) if theta is not None else "picard"
    return EllipticParams(nu1, nu2, point=point, case=case)


def _table_for(theta: ThetaVector, params: EllipticParams,
               order: int) -> SeriesTable:
    cache_dir = os.environ.get("PVI_CACHE_DIR")
    key = None
    if cache_dir:
        ident = dumps({
            "theta": [theta.theta0, theta.thetaX, theta.theta1,
                      theta.thetaInf],
            "nu1": complex(params.nu1), "nu2": complex(params.nu2),
            "point": params.point, "branchN": params.branchN,
            "case": params.case, "maxDegree": order})
        key = hashlib.sha256(ident.encode()).hexdigest()
        path = os.path.join(cache_dir, f"table-{key}.json")
        if os.path.exists(path):
            with open(path) as fh:
                return SeriesTable.from_json(fh.read())
    table = v_coefficients(theta, params, maxDegree=order)
    if cache_dir and key is not None:
        os.makedirs(cache_dir, exist_ok=True)
        path = os.path.join(cache_dir, f"table-{key}.json")
        with open(path, "w") as fh:
            fh.write(table.to_json())
    return table


def _grid_points(cfg, params: EllipticParams):
    lo, hi, n = 1e-4, 1e-2, 25
    if cfg.get("grid"):
        v = _parse_complex_list(cfg["grid"], 3, "grid")
        lo, hi, n = v[0], v[1], int(v[2])
        if not (0 < lo < hi) or n < 2:
            raise ConfigError("--grid needs 0 < min < max and count >= 2")
    V = cfg.get("path_V")
    spec = PathSpec(anchor=CoveringPoint(math.log(hi), 0.0,
                                         _base_of(params.point)),
                    V=0.5 if V is None else float(V), params=params)
    pts = []
    for i in range(n):
        ln = math.log(hi) + (math.log(lo) - math.log(hi)) * i / (n - 1)
        pts.append(path_point(spec, ln))
    return pts


def _base_of(point: str) -> str:
    return {"0": "at0", "1": "at1", "inf": "atInf"}[point]


# --- derivative helpers for --verify ----------------------------------------

# --- subcommands -------------------------------------------------------------

def cmd_picard(cfg):
    nu1, nu2 = _nu_from(cfg)
    params = EllipticParams(nu1, nu2, point=cfg.get("point") or "0",
                            case="picard")
    rows = []
    for x in _grid_points(cfg, params):
        y = picard_solution(nu1, nu2, x)
        xg = x.global_x()
        row = {"phi": x.phi, "rho": x.rho, "x": xg, "y": y}
        if cfg.get("verify"):
            theta = ThetaVector(0.0, 0.0, 0.0, 1.0)
            row["residual"] = equation_residual(
                lambda p: picard_solution(nu1, nu2, p), x, theta)
        rows.append(row)
    return _table_out(cfg, rows)


def cmd_eval(cfg):
    theta = _theta_from(cfg)
    params = _params_from(cfg, theta)
    order = int(cfg.get("order") or 12)
    table = _table_for(theta, params, order)
    rows = []
    for x in _grid_points(cfg, params):
        y = y_eval(x, params, table)
        row = {"phi": x.phi, "rho": x.rho, "x": x.global_x(), "y": y}
        if cfg.get("verify"):
            row["residual"] = equation_residual(
                lambda p: y_eval(p, params, table), x, theta)
        rows.append(row)
    return _table_out(cfg, rows)


def _form_report(form) -> dict:
    rep = {"kind": form.kind, "label": form.label, "point": form.point,
           "nu1": complex(form.nu1), "delta": float(form.delta)}
    if form.kind == "powerLaw":
        rep["coefficient"] = complex(form.coefficient)
        rep["exponent"] = complex(form.exponent)
    else:
        rep["lin_log"] = complex(form.lin_log)
        rep["carrier_sign"] = int(form.carrier_sign)
        rep["carrier_exponent"] = complex(form.carrier_exponent)
        rep["phase_series"] = {str(m): complex(c)
                               for m, c in sorted(form.phase_series.items())}
        rep["plain_log"] = bool(form.plain_log)
    return rep


def cmd_behavior(cfg):
    V = 0.5 if cfg.get("path_V") is None else float(cfg["path_V"])
    point = cfg.get("point") or "0"
    if cfg.get("theta") is None and cfg.get("abcd") is None:
        nu1, nu2 = _nu_from(cfg)
        form = picard_behavior(nu1, nu2, V=V)
    else:
        theta = _theta_from(cfg)
        params = _params_from(cfg, theta)
        if params.case == "picard":
            form = picard_behavior(params.nu1, params.nu2, V=V)
        else:
            order = int(cfg.get("order") or 12)
            table = _table_for(theta, params, order)
            at = {"0": behavior_at_0, "1": behavior_at_1,
                  "inf": behavior_at_inf}[point]
            form = at(params, table, V)
    return dumps({"V": V, "form": _form_report(form)}) + "\n"


def _connect_nongeneric(cfg) -> dict:
    if cfg.get("mu") is None:
        raise ConfigError("--mu is required for non-generic connection")
    mu = complex(*_parse_complex_list(cfg["mu"], 2, "mu"))
    if cfg.get("triple") is not None:
        v = _parse_complex_list(cfg["triple"], 6, "triple")
        t = ng.Triple(complex(v[0], v[1]), complex(v[2], v[3]),
                      complex(v[4], v[5]), mu)
        t.validate()
    elif cfg.get("sigma_a") is not None:
        v = _parse_complex_list(cfg["sigma_a"], 4, "sigma-a")
        t = ng.triple_of(complex(v[0], v[1]), complex(v[2], v[3]), mu)
        t.validate()
    elif cfg.get("nu") is not None:
        nu1, nu2 = _nu_from(cfg)
        t, _numeric = ng.triple_from_nu(nu1, nu2, mu)
        t.validate()
    else:
        raise ConfigError("non-generic connect needs --triple, --sigma-a "
                          "or --nu")
    report = {"mode": "nongeneric", "mu": mu, "points": {}}
    frames = {"0": t, "1": ng.triple_to_x1(t), "inf": ng.triple_to_xinf(t)}
    for name, ti in frames.items():
        sig = ng.sigma_of_triple(ti)
        entry = {"triple": [complex(ti.x0), complex(ti.x1), complex(ti.xInf)],
                 "sigma": sig, "a": ng.a_of(sig, ti),
                 "sigma_aliases": [complex(s) for s in sigma_aliases(sig, 1)]}
        try:
            p = ng.params_of_triple(ti, "low", point=name)
            entry["nu1"] = complex(p.nu1)
            entry["nu2"] = complex(p.nu2)
            entry["nu1_note"] = "defined mod 2"
        except _DOMAIN_ERRORS as e:
            entry["nu_error"] = f"{type(e).__name__}: {e}"
        report["points"][name] = entry
    return report


def _connect_generic(cfg) -> dict:
    theta = _theta_from(cfg)
    if cfg.get("sigma_a") is None:
        raise ConfigError("generic connect needs --sigma-a re,im,re,im")
    v = _parse_complex_list(cfg["sigma_a"], 4, "sigma-a")
    sigma, a = complex(v[0], v[1]), complex(v[2], v[3])
    # invert the a(s) relation, then push the traces to 1 and infinity
    s = ((theta.theta0 + theta.thetaX + sigma)
         * (-theta.theta0 + theta.thetaX + sigma)
         * (theta.theta0 + theta.thetaX - sigma)
         * (theta.theta0 - theta.thetaX + sigma)
         / (16.0 * sigma ** 3 * a))
    md0 = traces_from_params(sigma, theta, s)
    report = {"mode": "generic", "points": {}}
    frames = {"0": md0, "1": transform_to_x1(md0),
              "inf": transform_to_xinf(md0)}
    for name, md in frames.items():
        sig = sigma_from_trace(md.T0)
        entry = {"sigma": sig,
                 "sigma_aliases": [complex(z) for z in sigma_aliases(sig, 1)],
                 "traces": [complex(md.T0), complex(md.T1), complex(md.TInf)]}
        try:
            si = s_from_traces(md, sig)
            ai = a_from_s(sig, md.theta, si)
            entry["a"] = ai
            p = sigma_a_to_nu(SigmaA(sig, ai, point=name), "low")
            entry["nu1"] = complex(p.nu1)
            entry["nu2"] = complex(p.nu2)
            entry["nu1_note"] = "defined mod 2"
        except _DOMAIN_ERRORS as e:
            entry["a_error"] = f"{type(e).__name__}: {e}"
        report["points"][name] = entry
    # round-trip self check at the starting point
    p0 = report["points"]["0"]
    if "a" in p0:
        report["roundtrip_ok"] = bool(
            abs(p0["a"] - a) <= 1e-8 * max(1.0, abs(a))
            and abs(canonical_sigma(p0["sigma"]) - canonical_sigma(sigma))
            <= 1e-8)
    return report


def cmd_connect(cfg):
    if cfg.get("mu") is not None:
        report = _connect_nongeneric(cfg)
    elif cfg.get("theta") is not None or cfg.get("abcd") is not None:
        report = _connect_generic(cfg)
    elif cfg.get("nu") is not None:
        # Picard dictionary: exact parameter couples at the three points
        nu1, nu2 = _nu_from(cfg)
        report = {"mode": "picard", "points": {
            "0": {"nu1": complex(nu1), "nu2": complex(nu2)},
            "1": {"nu1": complex(nu2), "nu2": complex(nu1)},
            "inf": {"nu1": complex(nu1), "nu2": complex(nu2 - nu1)}}}
    else:
        raise ConfigError("connect needs --mu (non-generic), --theta/--abcd "
                          "(generic) or --nu alone (Picard)")
    return dumps(report) + "\n"


def _verify_suites():
    rng = random.Random(20240901)
    suites = []

    worst = 0.0
    for _ in range(100):
        z = complex(rng.uniform(0.2, 3.0), rng.uniform(-2.0, 2.0))
        rec = gamma_complex(z + 1) - z * gamma_complex(z)
        ref = gamma_complex(z) * gamma_complex(1 - z) - math.pi / cmath.sin(math.pi * z)
        worst = max(worst, abs(rec) / abs(gamma_complex(z + 1)),
                    abs(ref) * abs(cmath.sin(math.pi * z)) / math.pi)
    suites.append({"suite": "gamma-identities", "worst": worst,
                   "pass": worst < 1e-10})

    worst = 0.0
    for _ in range(20):
        x = complex(rng.uniform(0.3, 0.5), rng.uniform(-0.2, 0.2))
        lhs = -math.pi * hyper_F(CoveringPoint.from_complex(1.0 - x)).value
        px = CoveringPoint.from_complex(x)
        rhs = hyper_F(px).value * cmath.log(x) + hyper_F1(px).value
        worst = max(worst, abs(lhs - rhs))
    suites.append({"suite": "hypergeometric-connection", "worst": worst,
                   "pass": worst < 1e-9})

    worst = 0.0
    for _ in range(10):
        x = CoveringPoint.from_complex(complex(rng.uniform(0.05, 0.3),
                                               rng.uniform(-0.1, 0.1)))
        fr = LatticeFrame.from_point(x)
        for om, e in ((fr.omega1, fr.e1), (fr.omega1 + fr.omega2, fr.e2),
                      (fr.omega2, fr.e3)):
            worst = max(worst, abs(wp(om, fr) - e))
        z = 0.43 * fr.omega1 + 0.31 * fr.omega2
        lhs = wp_prime(z, fr) ** 2
        w = wp(z, fr)
        rhs = 4 * w ** 3 - fr.g2 * w - fr.g3
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    suites.append({"suite": "weierstrass", "worst": worst,
                   "pass": worst < 1e-9})

    worst = 0.0
    theta = ThetaVector(0.0, 0.0, 0.0, 1.0)
    for _ in range(5):
        nu1 = complex(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3))
        nu2 = complex(rng.uniform(0.2, 1.8), rng.uniform(-0.3, 0.3))
        x = CoveringPoint(math.log(rng.uniform(0.005, 0.02)),
                          rng.uniform(-0.5, 0.5), "at0")
        worst = max(worst, equation_residual(
            lambda p: picard_solution(nu1, nu2, p), x, theta))
    suites.append({"suite": "picard-residual", "worst": worst,
                   "pass": worst < 1e-9})

    worst = 0.0
    for _ in range(100):
        mu = complex(rng.uniform(0.1, 0.9), rng.uniform(-0.3, 0.3))
        sig = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.5, 0.5))
        a = complex(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0))
        t = ng.triple_of(sig, a, mu)
        for m in (ng.triple_to_x1, ng.triple_to_xinf):
            worst = max(worst, m(t).jimbo_residual()
                        / max(1.0, abs(t.x1) ** 2, abs(t.xInf) ** 2))
    suites.append({"suite": "jimbo-preservation", "worst": worst,
                   "pass": worst < 1e-10})
    return suites


def cmd_verify(cfg):
    suites = _verify_suites()
    ok = all(s["pass"] for s in suites)
    return dumps({"pass": ok, "suites": suites}) + "\n", ok


def _table_out(cfg, rows):
    if (cfg.get("format") or "json") == "csv":
        header = ["rho", "phi", "Re x", "Im x", "Re y", "Im y"]
        flat = []
        for r in rows:
            line = [r["rho"], r["phi"], r["x"].real, r["x"].imag,
                    r["y"].real, r["y"].imag]
            if "residual" in r:
                line.append(r["residual"])
            flat.append(line)
        if rows and "residual" in rows[0]:
            header.append("residual")
        return _csv(flat, header) + "\n"
    return dumps({"rows": rows}) + "\n"


# --- argument plumbing -------------------------------------------------------

_FLAGS = [
    ("--theta", {"help": "theta0,thetaX,theta1,thetaInf"}),
    ("--abcd", {"help": "alpha,beta,gamma,delta"}),
    ("--nu", {"help": "Re nu1,Im nu1,Re nu2,Im nu2"}),
    ("--point", {"choices": ["0", "1", "inf"], "help": "critical point"}),
    ("--sigma-a", {"dest": "sigma_a", "help": "Re sigma,Im sigma,Re a,Im a"}),
    ("--triple", {"help": "Re x0,Im x0,Re x1,Im x1,Re xInf,Im xInf"}),
    ("--mu", {"help": "Re mu,Im mu"}),
    ("--path-V", {"dest": "path_V", "type": float,
                  "help": "path steepness parameter V"}),
    ("--order", {"type": int, "help": "series truncation degree"}),
    ("--tol", {"type": float, "help": "tolerance override"}),
    ("--grid", {"help": "min,max,count for |local variable|"}),
    ("--format", {"choices": ["json", "csv"], "help": "output format"}),
    ("--out", {"help": "output file (default stdout)"}),
    ("--config", {"help": "JSON config file; wins over flags"}),
    ("--verify", {"action": "store_true",
                  "help": "append an oracle-comparison column"}),
    ("--json-errors", {"dest": "json_errors", "action": "store_true",
                       "help": "emit structured errors on stderr"}),
]


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ellipvi",
        description="Painleve VI in elliptic form: evaluation, critical "
                    "behavior, connection problems.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in [
            ("eval", "evaluate y(x) over a path near a critical point"),
            ("behavior", "leading asymptotic form on a V-path"),
            ("connect", "parameters at all three critical points"),
            ("verify", "run quick verification suites"),
            ("picard", "evaluate an explicit v=0 solution")]:
        p = sub.add_parser(name, help=helptext)
        for flag, kw in _FLAGS:
            p.add_argument(flag, **kw)
    return ap


def _merge_config(ns) -> dict:
    cfg = {k: v for k, v in vars(ns).items() if k != "config"}
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                fromfile = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config file: {e}") from None
        if not isinstance(fromfile, dict):
            raise ConfigError("config file must hold a JSON object")
        for k, v in fromfile.items():
            key = k.replace("-", "_")
            if key not in cfg:
                raise ConfigError(f"unknown config key {k!r}")
            if cfg[key] not in (None, False) and cfg[key] != v:
                print(f"warning: config file overrides --{k}={cfg[key]!r} "
                      f"with {v!r}", file=sys.stderr)
            cfg[key] = v
    return cfg


def _check_exclusive(cfg):
    styles = [k for k in ("nu", "sigma_a", "triple") if cfg.get(k) is not None]
    if len(styles) > 1:
        raise ConfigError("parameter styles are mutually exclusive: "
                          + ", ".join("--" + s.replace("_", "-")
                                      for s in styles))


def main(argv=None) -> int:
    ns = _build_parser().parse_args(argv)
    try:
        cfg = _merge_config(ns)
        _check_exclusive(cfg)
        ok = True
        if ns.command == "picard":
            text = cmd_picard(cfg)
        elif ns.command == "eval":
            text = cmd_eval(cfg)
        elif ns.command == "behavior":
            text = cmd_behavior(cfg)
        elif ns.command == "connect":
            text = cmd_connect(cfg)
        else:
            text, ok = cmd_verify(cfg)
    except ConfigError as e:
        _report_error(ns, e, 2)
        return 2
    except _DOMAIN_ERRORS as e:
        _report_error(ns, e, 3)
        return 3
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def _report_error(ns, e, code):
    if getattr(ns, "json_errors", False):
        print(dumps({"error": type(e).__name__, "message": str(e),
                     "exit_code": code}), file=sys.stderr)
    else:
        print(f"ellipvi: {type(e).__name__}: {e}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
