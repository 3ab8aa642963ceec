"""Command-line front end.

    sobocert catalog
    sobocert constants [--n 2] [--c-omega 4.83]
    sobocert bound --domain exampleA --p 4 --tau 8.12
    sobocert sweep --domain exampleA --p 4 --axis tau --grid 1:20:0.01

Reports are JSON (default) or CSV and go to stdout or, atomically, to --out.
Settings may also come from an INI file (--config, section [run]); flags
override it.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .catalog import listing, lookup
from .errors import ContractError, DomainError, SobocertError, UsageError
from .interval import ONE, Interval, pow_real
from .kernel import KernelConstants, PsiParams, check_moment, sup_search
from .mollifier import MollifierConstants, compute_I1, compute_normalization, compute_P, sign_change_radius
from .norms import (
    AS_PRINTED,
    VARIANTS,
    DomainSpec,
    ExtensionParams,
    embedding_constant,
    embedding_constant_h1,
    extension_bound,
    talenti_bound,
)
from .special import SobolevExponents
from .tuner import DEFAULT_TAU_GRID, refine_tau, sweep_p, sweep_tau

DEFAULTS = {
    "domain": None,
    "n": None,
    "p": None,
    "M": None,
    "N": None,
    "eps": None,
    "measure": None,
    "tau": None,
    "xi": 0.0,
    "sigma": 1.0,
    "delta": 1e-12,
    "c_omega": 4.83,
    "tol": 1e-3,
    "quad_tol": 1e-10,
    "moment_tol": 1e-6,
    "moments": 3,
    "format": "json",
    "out": None,
    "formula_variant": AS_PRINTED,
    "axis": "tau",
    "grid": None,
    "refine": False,
    "h1": False,
    "timings": False,
}
_FLOATS = ("M", "tau", "xi", "sigma", "delta", "c_omega", "tol", "quad_tol", "moment_tol")
_INTS = ("n", "N", "moments")
_BOOLS = ("refine", "h1", "timings")


def parse_interval(text: str) -> Interval:
    """``"x"`` or ``"lo,hi"`` in decimal, rounded outward."""
    parts = [s.strip() for s in str(text).split(",")]
    try:
        if len(parts) == 1:
            return Interval.from_decimal(parts[0])
        if len(parts) == 2:
            return Interval.from_decimal(parts[0], parts[1])
    except (ValueError, ZeroDivisionError, DomainError) as exc:
        raise UsageError(f"cannot parse interval {text!r}") from exc
    raise UsageError(f"cannot parse interval {text!r}")


def parse_grid(text: str) -> list:
    """``"start:stop:step"`` (inclusive) or a comma-separated list."""
    text = (text or "").strip()
    if not text:
        raise UsageError("empty grid")
    try:
        if ":" in text:
            a, b, h = (float(s) for s in text.split(":"))
            if not h > 0 or b < a:
                raise UsageError(f"bad grid range {text!r}")
            k = int(round((b - a) / h))
            return [round(a + i * h, 12) for i in range(k + 1)]
        return [float(s) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc


@dataclass
class RunConfig:
    command: str
    settings: dict

    def __getattr__(self, name):
        try:
            return self.__dict__["settings"][name]
        except KeyError:
            raise AttributeError(name) from None

    def provenance(self) -> dict:
        out = {k: v for k, v in sorted(self.settings.items()) if k not in ("out", "timings")}
        out["command"] = self.command
        out["version"] = __version__
        return out


def _coerce(key: str, value):
    if value is None:
        return None
    try:
        if key in _FLOATS:
            return float(value)
        if key in _INTS:
            return int(value)
        if key in _BOOLS:
            if isinstance(value, bool):
                return value
            return str(value).strip().lower() in ("1", "true", "yes", "on")
    except ValueError as exc:
        raise UsageError(f"bad value for {key}: {value!r}") from exc
    return str(value)


def load_config(path: str) -> dict:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise UsageError(f"bad config file {path}: {exc}") from exc
    if not cp.has_section("run"):
        raise UsageError(f"config {path} needs a [run] section")
    out = {}
    for k, v in cp.items("run"):
        key = k.replace("-", "_")
        key = {"m": "M", "big_n": "N"}.get(key, key)
        if key not in DEFAULTS:
            raise UsageError(f"unknown config key {k!r}")
        out[key] = v
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    settings = dict(DEFAULTS)
    if getattr(args, "config", None):
        for k, v in load_config(args.config).items():
            settings[k] = _coerce(k, v)
    for k in DEFAULTS:
        v = getattr(args, k, None)
        if v is not None and v is not False:
            settings[k] = _coerce(k, v)
    if settings["format"] not in ("json", "csv"):
        raise UsageError(f"format must be json or csv, got {settings['format']!r}")
    if settings["formula_variant"] not in VARIANTS:
        raise UsageError(f"formula variant must be one of {VARIANTS}")
    if settings["axis"] not in ("tau", "p"):
        raise UsageError("axis must be tau or p")
    for k in ("tol", "quad_tol", "moment_tol"):
        if not settings[k] > 0:
            raise UsageError(f"{k} must be positive")
    if not settings["c_omega"] > 0:
        raise UsageError(f"C_omega must be positive, got {settings['c_omega']}")
    return RunConfig(args.command, settings)


def resolve_domain(cfg: RunConfig) -> DomainSpec:
    s = cfg.settings
    try:
        if s["domain"]:
            d = lookup(s["domain"])
            if any(s[k] is not None for k in ("M", "N", "eps")):
                raise UsageError("--M/--N/--eps cannot be combined with a catalog domain")
            if s["n"] is not None and s["n"] != d.n:
                raise UsageError(f"domain {d.name} has n={d.n}")
            if s["measure"] is not None:
                d = DomainSpec(d.n, d.M, d.N, d.eps, parse_interval(s["measure"]), d.name)
            return d
        missing = [k for k in ("n", "M", "N", "eps") if s[k] is None]
        if missing:
            raise UsageError("give --domain or all of --n --M --N --eps (missing: " + ", ".join(missing) + ")")
        measure = None if s["measure"] is None else parse_interval(s["measure"])
        return DomainSpec(s["n"], s["M"], s["N"], parse_interval(s["eps"]), measure, "custom")
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _params(cfg: RunConfig, tau: Optional[float] = None) -> ExtensionParams:
    s = cfg.settings
    t = s["tau"] if tau is None else tau
    if t is None:
        raise UsageError("--tau is required")
    try:
        return ExtensionParams(tau=t, xi=s["xi"], delta=s["delta"], sigma=s["sigma"], c_omega=s["c_omega"])
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _exponents(cfg: RunConfig, n: int, p=None) -> SobolevExponents:
    p = cfg.settings["p"] if p is None else p
    if p is None:
        raise UsageError("--p is required")
    try:
        return SobolevExponents(n, p)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.t = {}

    def run(self, key, fn, *a, **kw):
        t0 = time.perf_counter()
        out = fn(*a, **kw)
        if self.enabled:
            self.t[key] = round((time.perf_counter() - t0) * 1000.0, 3)
        return out

    def value(self, key):
        return self.t.get(key) if self.enabled else None


def _kernel(cfg: RunConfig, clock: _Clock) -> tuple:
    params = PsiParams(cfg.c_omega)
    A0, t0 = clock.run("A0", sup_search, 2, params, cfg.tol)
    A1, t1 = clock.run("A1", sup_search, 3, params, cfg.tol)
    return KernelConstants(A0, A1, cfg.c_omega), {"A0": t0, "A1": t1}


def _mollifier(cfg: RunConfig, n: int, clock: _Clock) -> MollifierConstants:
    c = clock.run("c", compute_normalization, n, cfg.quad_tol)
    I1 = clock.run("I1", compute_I1, n, cfg.quad_tol)
    P = clock.run("P", compute_P, n, cfg.quad_tol)
    return MollifierConstants(n, c, I1, P)


def cmd_catalog(cfg: RunConfig) -> dict:
    return {"command": "catalog", "domains": listing()}


def cmd_constants(cfg: RunConfig) -> dict:
    n = cfg.n if cfg.n is not None else (lookup(cfg.domain).n if cfg.domain else 2)
    if n < 2:
        raise UsageError("n must be >= 2")
    clock = _Clock(cfg.timings)
    kc, t_star = _kernel(cfg, clock)
    mc = _mollifier(cfg, n, clock)
    params = PsiParams(cfg.c_omega)
    moments = []
    for m in range(cfg.moments + 1):
        v = clock.run(f"moment{m}", check_moment, m, params, cfg.moment_tol)
        moments.append({"m": m, "value": v.to_dict(), "expected": 1 if m == 0 else 0, "wall_ms": clock.value(f"moment{m}")})
    return {
        "command": "constants",
        "inputs": cfg.provenance(),
        "kernel": {
            "A0": {"value": kc.A0.to_dict(), "t_star": t_star["A0"], "wall_ms": clock.value("A0")},
            "A1": {"value": kc.A1.to_dict(), "t_star": t_star["A1"], "wall_ms": clock.value("A1")},
            "c_omega": kc.c_omega,
        },
        "mollifier": {
            "n": n,
            "c": {"value": mc.c.to_dict(), "wall_ms": clock.value("c")},
            "I1": {"value": mc.I1.to_dict(), "wall_ms": clock.value("I1")},
            "P": {"value": mc.P.to_dict(), "wall_ms": clock.value("P")},
            "sign_change_radius": sign_change_radius(n).to_dict(),
        },
        "moments": moments,
    }


def _stamp(bound, cfg: RunConfig, clock: _Clock, key: str):
    bound.inputs = dict(bound.inputs)
    bound.inputs["run"] = cfg.provenance()
    bound.wall_ms = clock.value(key)
    return bound


def cmd_bound(cfg: RunConfig) -> dict:
    d = resolve_domain(cfg)
    e = _exponents(cfg, d.n)
    params = _params(cfg)
    clock = _Clock(cfg.timings)
    kc, _ = _kernel(cfg, clock)
    mc = _mollifier(cfg, d.n, clock)
    variant = cfg.formula_variant
    gamma = pow_real(Interval(params.sigma), ONE / e.q)
    records = [
        _stamp(clock.run("A_q", extension_bound, e, d, params, gamma, kc, mc, variant), cfg, clock, "A_q"),
        _stamp(clock.run("T_p", talenti_bound, e), cfg, clock, "T_p"),
        _stamp(clock.run("C_p", embedding_constant, e, d, params, kc, mc, variant), cfg, clock, "C_p"),
    ]
    if cfg.h1 or (d.measure is not None and e.q.hi < 2.0):
        if d.measure is None:
            raise ContractError("C'_p requested but the domain has no measure (use --measure)")
        records.append(
            _stamp(clock.run("C_p_prime", embedding_constant_h1, e, d, params, kc, mc, variant), cfg, clock, "C_p_prime")
        )
    return {"command": "bound", "inputs": cfg.provenance(), "records": [r.to_dict() for r in records]}


def cmd_sweep(cfg: RunConfig) -> dict:
    d = resolve_domain(cfg)
    variant = cfg.formula_variant
    base = _params(cfg, tau=cfg.tau if cfg.tau is not None else 1.0)
    clock = _Clock(cfg.timings)
    if cfg.axis == "tau":
        grid = parse_grid(cfg.grid) if cfg.grid is not None else list(DEFAULT_TAU_GRID)
        e = _exponents(cfg, d.n)
        res = clock.run("sweep", sweep_tau, e, d, base, grid, variant)
        if cfg.refine and len(res.points) > 1:
            j = [x for x, _ in res.points].index(res.argmin)
            lo = res.points[max(j - 1, 0)][0]
            hi = res.points[min(j + 1, len(res.points) - 1)][0]
            r = refine_tau(e, d, base, (lo, hi), 1e-3, variant)
            res.extra["refined"] = {"tau": r.tau, "bound": r.bound.to_dict(), "fallback": r.fallback}
    else:
        if cfg.grid is None:
            raise UsageError("--grid is required for a p sweep")
        grid = parse_grid(cfg.grid)
        for p in grid:
            _exponents(cfg, d.n, p)
        res = clock.run("sweep", sweep_p, d, base, grid, DEFAULT_TAU_GRID, variant)
    out = res.to_dict()
    out["command"] = "sweep"
    out["inputs"] = cfg.provenance()
    out["inputs"]["domain_spec"] = d.to_dict()
    out["wall_ms"] = clock.value("sweep")
    out["_csv"] = res.to_csv()
    return out


def _to_csv(report: dict) -> str:
    if "_csv" in report:
        return report["_csv"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["param", "lo", "hi", "branch"], lineterminator="\n")
    w.writeheader()
    cmd = report["command"]
    if cmd == "bound":
        for r in report["records"]:
            w.writerow({"param": r["kind"], "lo": r["value"]["lo_dec"], "hi": r["value"]["hi_dec"], "branch": r["branch_taken"] or ""})
    elif cmd == "constants":
        rows = [("A0", report["kernel"]["A0"]["value"]), ("A1", report["kernel"]["A1"]["value"])]
        rows += [(k, report["mollifier"][k]["value"]) for k in ("c", "I1", "P")]
        rows += [(f"moment{m['m']}", m["value"]) for m in report["moments"]]
        for name, v in rows:
            w.writerow({"param": name, "lo": v["lo_dec"], "hi": v["hi_dec"], "branch": ""})
    else:
        for dspec in report["domains"]:
            w.writerow({"param": dspec["name"], "lo": dspec["eps"]["lo_dec"], "hi": dspec["eps"]["hi_dec"], "branch": ""})
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return _to_csv(report)
    body = {k: v for k, v in report.items() if k != "_csv"}
    return json.dumps(body, indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".sobocert-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


COMMANDS = {"catalog": cmd_catalog, "constants": cmd_constants, "bound": cmd_bound, "sweep": cmd_sweep}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sobocert", description="Certified bounds for Sobolev embedding constants.")
    parser.add_argument("--version", action="version", version=f"sobocert {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    common = _Parser(add_help=False)
    common.add_argument("--config", help="INI file with a [run] section; flags override it")
    common.add_argument("--format", choices=["json", "csv"])
    common.add_argument("--out", help="output path (written atomically); stdout if omitted")
    common.add_argument("--timings", action="store_true", help="record wall times (reports are then not byte-identical)")
    model = _Parser(add_help=False)
    model.add_argument("--domain", help="catalog key (see `sobocert catalog`)")
    model.add_argument("--n", type=int)
    model.add_argument("--p", help="target exponent p (decimal, kept exact)")
    model.add_argument("--M", type=float, help="Lipschitz bound of a custom domain")
    model.add_argument("--N", type=int, help="overlap number of a custom domain")
    model.add_argument("--eps", help="cover parameter of a custom domain: x or lo,hi")
    model.add_argument("--measure", help="domain measure |Omega|: x or lo,hi")
    model.add_argument("--tau", type=float)
    model.add_argument("--xi", type=float)
    model.add_argument("--sigma", type=float)
    model.add_argument("--delta", type=float, help="relative margin added when xi = 0")
    model.add_argument("--c-omega", dest="c_omega", type=float)
    model.add_argument("--tol", type=float, help="width target for A0 and A1")
    model.add_argument("--quad-tol", dest="quad_tol", type=float, help="relative width target for mollifier integrals")
    model.add_argument("--moment-tol", dest="moment_tol", type=float)
    model.add_argument("--formula-variant", dest="formula_variant", choices=list(VARIANTS))
    sub.add_parser("catalog", parents=[common], help="list built-in domains")
    pc = sub.add_parser("constants", parents=[common, model], help="kernel and mollifier constants")
    pc.add_argument("--moments", type=int, help="check moments 0..m")
    pb = sub.add_parser("bound", parents=[common, model], help="A_q, T_p, C_p and C'_p")
    pb.add_argument("--h1", action="store_true", help="require C'_p (needs --measure)")
    ps = sub.add_parser("sweep", parents=[common, model], help="sweep tau or p")
    ps.add_argument("--axis", choices=["tau", "p"])
    ps.add_argument("--grid", help="start:stop:step or comma list")
    ps.add_argument("--refine", action="store_true", help="golden-section refinement around the tau argmin")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = build_config(args)
        report = COMMANDS[cfg.command](cfg)
        text = render(report, cfg.format)
        if cfg.out:
            write_atomic(cfg.out, text)
        else:
            sys.stdout.write(text)
        return 0
    except SobocertError as exc:
        print(f"sobocert: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
