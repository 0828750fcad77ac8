"""Command-line front end.

Subcommands: ``eval`` (one scenario, one record), ``sweep`` (curve over an
n- or N-axis as CSV), ``plan`` (smallest n reaching a target), ``density``
(prior/posterior density curves as CSV), plus a hidden ``verify`` verb that
cross-checks the main implementations against the oracle routes.

Exit codes: 0 success, 2 configuration error, 3 numerical non-convergence,
4 plan target unattainable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .discrete_priors import (
    BayesLaplace,
    Bernardo,
    Custom,
    Jeffreys,
    Portmanteau,
    limit_posterior,
    posterior_R_eq_N,
)
from .numerics import QuadratureSpec, integrate
from .propensity import (
    Beta,
    JShaped,
    LShaped,
    LeftTruncated,
    NonConvergenceError,
    OmegaPosteriorParams,
    ReflectedScaled,
    averaged_posterior_density,
    averaged_predictive,
    density,
    omega_posterior_density,
    omega_posterior_params,
    predictive_all_success,
    support,
    update_all_success,
)
from . import oracle

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3
EXIT_UNATTAINABLE = 4

# N used when "limit" is requested for a family without a closed-form limit.
LARGE_N_PROXY = 10**6


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# scenario construction
# ---------------------------------------------------------------------------

_DISCRETE_FAMILIES = ("bayes-laplace", "jeffreys", "bernardo", "portmanteau", "custom")
_PROPENSITY_FAMILIES = ("beta", "l-shaped", "j-shaped", "reflected", "left-truncated")
_AVERAGED_FAMILY = "omega-averaged"


def _require(cfg: dict, family: str, *keys: str) -> list[float]:
    values = []
    for key in keys:
        if cfg.get(key) is None:
            raise ConfigError(f"prior family {family!r} requires --{key.replace('_', '-')}")
        values.append(cfg[key])
    return values


def _build_prior(cfg: dict):
    """Returns (kind, prior_object_or_params, canonical_json_dict)."""
    family = cfg.get("family")
    if not family:
        raise ConfigError("no prior family given (use --prior or a config file)")
    family = str(family).lower()
    try:
        if family == "bayes-laplace":
            return "discrete", BayesLaplace(), {"family": family}
        if family == "jeffreys":
            (k,) = _require(cfg, family, "k")
            return "discrete", Jeffreys(k), {"family": family, "k": k}
        if family == "bernardo":
            (k,) = _require(cfg, family, "k")
            return "discrete", Bernardo(k), {"family": family, "k": k}
        if family == "portmanteau":
            q, decay_k, lam = _require(cfg, family, "q", "decay_k", "lambda")
            return (
                "discrete",
                Portmanteau(q, decay_k, lam),
                {"family": family, "q": q, "decay_k": decay_k, "lambda": lam},
            )
        if family == "custom":
            masses = cfg.get("masses")
            if not masses:
                raise ConfigError("custom prior requires \"masses\" in the config file")
            prior = Custom(masses)
            return "discrete", prior, {"family": family, "masses": list(prior.masses)}
        if family == "beta":
            alpha, beta = _require(cfg, family, "alpha", "beta")
            return "propensity", Beta(alpha, beta), {"family": family, "alpha": alpha, "beta": beta}
        if family == "l-shaped":
            (alpha,) = _require(cfg, family, "alpha")
            return "propensity", LShaped(alpha), {"family": family, "alpha": alpha}
        if family == "j-shaped":
            (beta,) = _require(cfg, family, "beta")
            return "propensity", JShaped(beta), {"family": family, "beta": beta}
        if family == "reflected":
            alpha, beta, eta = _require(cfg, family, "alpha", "beta", "eta")
            return (
                "propensity",
                ReflectedScaled(alpha, beta, eta),
                {"family": family, "alpha": alpha, "beta": beta, "eta": eta},
            )
        if family == "left-truncated":
            beta, omega = _require(cfg, family, "beta", "omega")
            return (
                "propensity",
                LeftTruncated(beta, omega),
                {"family": family, "beta": beta, "omega": omega},
            )
        if family == _AVERAGED_FAMILY:
            (beta,) = _require(cfg, family, "beta")
            abc = [cfg.get("a"), cfg.get("b"), cfg.get("c")]
            given = [v is not None for v in abc]
            if any(given) and not all(given):
                raise ConfigError("omega-averaged prior needs all of --a --b --c or none")
            params = {"family": family, "beta": beta}
            if all(given):
                OmegaPosteriorParams(*abc)  # validate early
                params.update({"a": abc[0], "b": abc[1], "c": abc[2]})
            return "averaged", params, dict(params)
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(
        f"unknown prior family {family!r}; choose from "
        f"{', '.join(_DISCRETE_FAMILIES + _PROPENSITY_FAMILIES + (_AVERAGED_FAMILY,))}"
    )


def _prior_desc(prior_json: dict) -> str:
    parts = []
    for key, val in prior_json.items():
        if key == "family":
            continue
        if key == "masses":
            parts.append("masses=" + "|".join(f"{m:.12g}" for m in val))
        else:
            parts.append(f"{key}={val:.12g}")
    inner = ";".join(parts)
    return f"{prior_json['family']}({inner})" if inner else prior_json["family"]


def _parse_int(text, what: str) -> int:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be an integer, got {text!r}")
    if not value.is_integer():
        raise ConfigError(f"{what} must be an integer, got {text!r}")
    return int(value)


def _parse_N(text):
    if text is None:
        raise ConfigError("--N is required (an integer or \"limit\")")
    if isinstance(text, str) and text.strip().lower() == "limit":
        return "limit"
    n = _parse_int(text, "--N")
    if n < 1:
        raise ConfigError(f"--N must be >= 1, got {n}")
    return n


def _is_axis_spec(text) -> bool:
    return isinstance(text, str) and (":" in text or "," in text)


def _parse_axis(text: str, what: str) -> list[int]:
    """Axis spec: comma list \"1,5,10\" or range \"start:stop:log[:count]\"
    (or :lin).  Values are rounded to integers and deduplicated; the result
    must be nonempty and increasing."""
    values: list[float]
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigError(f"{what} range must be start:stop:scale[:count], got {text!r}")
        start = float(parts[0])
        stop = float(parts[1])
        scale = parts[2].lower()
        count = _parse_int(parts[3], f"{what} count") if len(parts) == 4 else 50
        if count < 1:
            raise ConfigError(f"{what} count must be >= 1")
        if scale == "log":
            if start <= 0:
                raise ConfigError(f"{what} log range needs start > 0")
            values = list(np.geomspace(start, stop, count)) if start <= stop else []
        elif scale == "lin":
            values = list(np.linspace(start, stop, count)) if start <= stop else []
        else:
            raise ConfigError(f"{what} scale must be log or lin, got {scale!r}")
    else:
        try:
            values = [float(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"could not parse {what} list {text!r}")
    out: list[int] = []
    for v in values:
        iv = int(round(v))
        if not out or iv > out[-1]:
            out.append(iv)
        elif iv < out[-1]:
            raise ConfigError(f"{what} axis values must be monotone increasing")
    if not out:
        raise ConfigError(f"{what} axis is empty")
    return out


def _load_scenario(args) -> dict:
    cfg: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigError("config file must hold a JSON object")

    prior_cfg = dict(cfg.get("prior") or {})
    if getattr(args, "prior", None):
        prior_cfg["family"] = args.prior
    flag_map = {
        "alpha": "alpha", "beta": "beta", "k": "k", "q": "q",
        "decay_k": "decay_k", "lam": "lambda", "eta": "eta", "omega": "omega",
        "a": "a", "b": "b", "c": "c",
    }
    for attr, key in flag_map.items():
        value = getattr(args, attr, None)
        if value is not None:
            prior_cfg[key] = value

    scenario = {
        "prior_cfg": prior_cfg,
        "n": args.n if getattr(args, "n", None) is not None else cfg.get("n"),
        "N": args.N if getattr(args, "N", None) is not None else cfg.get("N"),
        "target": getattr(args, "target", None)
        if getattr(args, "target", None) is not None
        else cfg.get("target"),
    }
    return scenario


def _quad_spec(args) -> QuadratureSpec:
    eps = getattr(args, "eps", None)
    try:
        return QuadratureSpec(endpoint_eps=eps) if eps is not None else QuadratureSpec()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# evaluation core
# ---------------------------------------------------------------------------


def _averaged_params(avg_cfg: dict, n: int) -> OmegaPosteriorParams:
    if "a" in avg_cfg:
        return OmegaPosteriorParams(avg_cfg["a"], avg_cfg["b"], avg_cfg["c"])
    return omega_posterior_params(n)


def _evaluate(kind: str, prior, n: int, N, qspec: QuadratureSpec) -> dict:
    """One scenario evaluation -> {value, method, clamped, diverged}."""
    try:
        if kind == "discrete":
            if N == "limit":
                lim = limit_posterior(prior, n) if n >= 1 else None
                if lim is not None:
                    return {"value": lim, "method": "closed-form",
                            "clamped": False, "diverged": False}
                res = posterior_R_eq_N(prior, LARGE_N_PROXY, n, engine="log-space")
                return {"value": res.prob_R_eq_N, "method": "large-N-proxy",
                        "clamped": False, "diverged": False}
            res = posterior_R_eq_N(prior, N, n)
            return {"value": res.prob_R_eq_N, "method": res.method,
                    "clamped": False, "diverged": False}

        if kind == "propensity":
            if isinstance(prior, ReflectedScaled):
                raise ConfigError(
                    "the reflected-scaled family has no predictive; "
                    "use the density command"
                )
            if N == "limit":
                if isinstance(prior, (Beta, LShaped, JShaped)):
                    # the all-success predictive vanishes as N grows at fixed n
                    return {"value": 0.0, "method": "closed-form",
                            "clamped": False, "diverged": False}
                res = predictive_all_success(prior, n, LARGE_N_PROXY)
                return {"value": res.value, "method": "large-N-proxy",
                        "clamped": res.clamped, "diverged": res.diverged}
            res = predictive_all_success(prior, n, N)
            return {"value": res.value, "method": res.method,
                    "clamped": res.clamped, "diverged": res.diverged}

        if kind == "averaged":
            params = _averaged_params(prior, n)
            N_eff = LARGE_N_PROXY if N == "limit" else N
            res = averaged_predictive(n, N_eff, prior["beta"], params, qspec)
            if not res.converged and not res.diverged:
                raise NonConvergenceError("averaged_predictive")
            return {"value": res.value,
                    "method": "large-N-proxy" if N == "limit" else res.method,
                    "clamped": res.clamped, "diverged": res.diverged}
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown prior kind {kind!r}")


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.12g}"
    return str(value)


def _write_text(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format_cell(cell) for cell in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_eval(args) -> int:
    scenario = _load_scenario(args)
    kind, prior, prior_json = _build_prior(scenario["prior_cfg"])
    if scenario["n"] is None:
        raise ConfigError("--n is required")
    n = _parse_int(scenario["n"], "--n")
    if n < 0:
        raise ConfigError(f"--n must be >= 0, got {n}")
    N = _parse_N(scenario["N"])
    qspec = _quad_spec(args)
    ev = _evaluate(kind, prior, n, N, qspec)

    record = {"prior": prior_json, "n": n, "N": N, **ev}
    fmt = args.format or "json"
    if fmt == "json":
        _write_text(json.dumps(record) + "\n", args.out)
    else:
        text = _csv_text(
            ["prior", "n", "N", "value", "method", "clamped", "diverged"],
            [[_prior_desc(prior_json), n, N, ev["value"], ev["method"],
              ev["clamped"], ev["diverged"]]],
        )
        _write_text(text, args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.format == "json":
        raise ConfigError("sweep emits CSV only")
    scenario = _load_scenario(args)
    kind, prior, prior_json = _build_prior(scenario["prior_cfg"])

    n_spec, N_spec = scenario["n"], scenario["N"]
    n_is_axis = _is_axis_spec(n_spec)
    N_is_axis = _is_axis_spec(N_spec)
    if n_is_axis and N_is_axis:
        raise ConfigError("sweep needs exactly one axis; both --n and --N are ranges")
    if not n_is_axis and not N_is_axis:
        raise ConfigError("sweep needs an axis: give --n or --N as a range or list")

    qspec = _quad_spec(args)
    rows = []
    if n_is_axis:
        axis_name = "n"
        axis = _parse_axis(n_spec, "--n")
        N = _parse_N(N_spec)
        for n in axis:
            ev = _evaluate(kind, prior, n, N, qspec)
            rows.append([axis_name, n, ev["value"], ev["method"],
                         ev["clamped"], ev["diverged"]])
    else:
        axis_name = "N"
        if scenario["n"] is None:
            raise ConfigError("--n is required")
        n = _parse_int(n_spec, "--n")
        axis = _parse_axis(N_spec, "--N")
        for N in axis:
            ev = _evaluate(kind, prior, n, N, qspec)
            rows.append([axis_name, N, ev["value"], ev["method"],
                         ev["clamped"], ev["diverged"]])

    text = _csv_text(
        ["axis_name", "axis_value", "value", "method", "clamped", "diverged"], rows
    )
    _write_text(text, args.out)
    return EXIT_OK


def _cmd_plan(args) -> int:
    scenario = _load_scenario(args)
    kind, prior, prior_json = _build_prior(scenario["prior_cfg"])
    if scenario["target"] is None:
        raise ConfigError("--target is required")
    target = float(scenario["target"])
    if not 0.0 < target < 1.0:
        raise ConfigError(f"--target must lie strictly in (0, 1), got {target}")
    N = _parse_N(scenario["N"])
    n_max = args.n_max
    if n_max < 1:
        raise ConfigError("--n-max must be >= 1")
    qspec = _quad_spec(args)

    cap = n_max
    if kind == "discrete" and isinstance(N, int):
        cap = min(cap, N)

    cache: dict[int, float] = {}

    def f(n: int) -> float:
        if n not in cache:
            cache[n] = _evaluate(kind, prior, n, N, qspec)["value"]
        return cache[n]

    # exponential bracketing then bisection; relies on the verified
    # monotonicity of the value in n
    found = None
    if f(1) >= target:
        found = 1
    else:
        lo, hi = 1, 1
        while hi < cap:
            lo, hi = hi, min(hi * 2, cap)
            if f(hi) >= target:
                break
        if f(hi) >= target:
            while lo + 1 < hi:
                mid = (lo + hi) // 2
                if f(mid) >= target:
                    hi = mid
                else:
                    lo = mid
            found = hi

    fmt = args.format or "json"
    if found is None:
        record = {"prior": prior_json, "N": N, "target": target,
                  "unattainable": True, "n_max": cap, "value_at_n_max": f(cap)}
        if fmt == "json":
            _write_text(json.dumps(record) + "\n", args.out)
        else:
            text = _csv_text(
                ["prior", "N", "target", "n", "value"],
                [[_prior_desc(prior_json), N, target, "", f(cap)]],
            )
            _write_text(text, args.out)
        print(f"unattainable: value at n={cap} is {f(cap):.6g} < target {target:.6g}",
              file=sys.stderr)
        return EXIT_UNATTAINABLE

    record = {"prior": prior_json, "N": N, "target": target,
              "n": found, "value": f(found)}
    if found > 1:
        record["value_below"] = f(found - 1)
    if fmt == "json":
        _write_text(json.dumps(record) + "\n", args.out)
    else:
        text = _csv_text(
            ["prior", "N", "target", "n", "value"],
            [[_prior_desc(prior_json), N, target, found, f(found)]],
        )
        _write_text(text, args.out)
    return EXIT_OK


def _parse_p_grid(text, lo: float, hi: float) -> list[float]:
    if text is None:
        return list(np.linspace(lo, hi, 201))
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError("--p-grid must be lo:hi:count")
    try:
        g_lo, g_hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad --p-grid {text!r}") from exc
    if count < 1 or g_lo > g_hi:
        raise ConfigError("--p-grid needs lo <= hi and count >= 1")
    return list(np.linspace(g_lo, g_hi, count))


def _cmd_density(args) -> int:
    if args.format == "json":
        raise ConfigError("density emits CSV only")
    scenario = _load_scenario(args)
    kind, prior, prior_json = _build_prior(scenario["prior_cfg"])
    if kind == "discrete":
        raise ConfigError("density requires a propensity-family prior")
    qspec = _quad_spec(args)

    n = None
    if scenario["n"] is not None:
        n = _parse_int(scenario["n"], "--n")
        if n < 1:
            raise ConfigError(f"--n must be >= 1 for a posterior curve, got {n}")

    if kind == "averaged":
        if n is None:
            raise ConfigError("omega-averaged density requires --n")
        params = _averaged_params(prior, n)
        beta = prior["beta"]
        grid = _parse_p_grid(args.p_grid, 0.0, 1.0)
        rows = []
        for p in grid:
            if p <= 0.0 or p <= 1.0 - params.c:
                post = 0.0
            elif p >= 1.0:
                post = math.inf
            else:
                post = averaged_posterior_density(p, n, beta, params, qspec).value
            rows.append([p, "", post])
        text = _csv_text(["p", "prior_density", "posterior_density"], rows)
        _write_text(text, args.out)
        return EXIT_OK

    lo, hi = support(prior)
    grid = _parse_p_grid(args.p_grid, lo, hi)
    post_family = None
    if n is not None:
        try:
            post_family = update_all_success(prior, n).family
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    rows = []
    for p in grid:
        row = [p, density(prior, p)]
        if post_family is not None:
            row.append(density(post_family, p))
        rows.append(row)
    header = ["p", "prior_density"] + (["posterior_density"] if post_family else [])
    _write_text(_csv_text(header, rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# hidden verify verb: oracle cross-checks
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else 0
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if ok:
            print(f"ok: {name}")
        else:
            failures += 1
            print(f"MISMATCH: {name} {detail}")

    # exact-rational vs floating generic sum
    worst = 0.0
    for spec_ in (BayesLaplace(), Jeffreys(0.25), Bernardo(0.5)):
        for N in (10, 50, 137):
            for n in (1, N // 2, N):
                exact = float(oracle.exact_discrete_posterior(spec_, N, n))
                got = posterior_R_eq_N(spec_, N, n, engine="log-space").prob_R_eq_N
                worst = max(worst, abs(got - exact) / exact)
    check("discrete posterior vs exact rational", worst <= 1e-12, f"(worst rel {worst:.2e})")

    # product form vs log-gamma predictive
    worst = 0.0
    for n in (0, 10, 100):
        for N in (10, 1000, 10000):
            for beta in (0.1, 0.5, 0.9):
                a = oracle.product_form_predictive(n, N, beta)
                b = predictive_all_success(JShaped(beta), n, N).value
                worst = max(worst, abs(a - b) / a)
    check("product form vs log-gamma predictive", worst <= 1e-10, f"(worst rel {worst:.2e})")

    # seeded Monte-Carlo vs deterministic values (conjugate families)
    ok = True
    detail = ""
    for prior, n, N in ((Beta(2.0, 3.0), 5, 10), (JShaped(0.1), 50, 200),
                        (LShaped(0.5), 10, 90)):
        det = predictive_all_success(prior, n, N).value
        est = oracle.mc_predictive(prior, n, N, samples=200_000, seed=seed)
        if abs(est.mean - det) > 4 * est.std_error:
            ok = False
            detail = f"({prior!r}: |{est.mean:.6g} - {det:.6g}| > 4*{est.std_error:.2g})"
    check("Monte-Carlo vs deterministic predictive", ok, detail)

    # threshold-posterior densities normalize
    worst = 0.0
    for n_row in (1, 2, 5, 10, 25, 50, 75, 100, 1000):
        params = omega_posterior_params(n_row)
        res = integrate(
            lambda w: omega_posterior_density(w, params),
            1.0 - params.c, 1.0, QuadratureSpec(),
        )
        worst = max(worst, abs(res.value - 1.0))
    check("threshold posterior normalization", worst <= 1e-6, f"(worst abs {worst:.2e})")

    print("verify:", "FAIL" if failures else "PASS")
    return 1 if failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--prior", help="prior family name")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--beta", type=float)
    sp.add_argument("--k", type=float)
    sp.add_argument("--q", type=float)
    sp.add_argument("--decay-k", dest="decay_k", type=float)
    sp.add_argument("--lambda", dest="lam", type=float)
    sp.add_argument("--eta", type=float)
    sp.add_argument("--omega", type=float)
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--c", type=float)
    sp.add_argument("--n", help="observed all-success sample size (or sweep axis)")
    sp.add_argument("--N", help="future/population trial count, an integer or 'limit'")
    sp.add_argument("--format", choices=["csv", "json"])
    sp.add_argument("--out", help="output path (default stdout)")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--config", help="JSON scenario file; flags override its values")
    sp.add_argument("--eps", type=float, help="endpoint_eps override for quadrature")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berncert",
        description="Certification calculus for all-success Bernoulli testing.",
    )
    sub = parser.add_subparsers(dest="command", metavar="{eval,sweep,plan,density}")

    sp = sub.add_parser("eval", help="evaluate one scenario, emit one record")
    _add_common(sp)

    sp = sub.add_parser("sweep", help="evaluate along an n- or N-axis, emit CSV")
    _add_common(sp)

    sp = sub.add_parser("plan", help="smallest n whose value reaches --target")
    _add_common(sp)
    sp.add_argument("--target", type=float)
    sp.add_argument("--n-max", dest="n_max", type=int, default=10**7)

    sp = sub.add_parser("density", help="prior/posterior density curve as CSV")
    _add_common(sp)
    sp.add_argument("--p-grid", dest="p_grid", help="lo:hi:count (default: support, 201 points)")

    sp = sub.add_parser("verify")  # hidden from the metavar listing
    _add_common(sp)

    return parser


_DISPATCH = {
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "plan": _cmd_plan,
    "density": _cmd_density,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_CONFIG
    try:
        return _DISPATCH[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"error: numerical non-convergence in {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
