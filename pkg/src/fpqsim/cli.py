"""Command-line front end.

Every computation in the library is reachable as a subcommand emitting CSV or
JSON with a schema tag, fixed float formatting, and no timestamps, so a given
config always produces byte-identical files. Phases are passed directly as
x = omega * t0 in radians; --t0 only records the physical time scale in the
output metadata.

Exit codes: 0 success, 2 validation failure, 3 numerical precondition
(aliasing, grid coverage, grid cap), 4 oracle gate failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .antibunching import (
    hom_amplitude_degenerate,
    hom_amplitude_two_color,
    solve_degenerate_zero,
    solve_spdc,
    spdc_residual,
    sweep_degenerate,
    sweep_two_color,
)
from .fp_core import CavityGeometry, DomainError, MirrorSpec, cavity_coefficients
from .oracle import bounce_series, fock_output_degenerate, fock_output_two_color, loop_reduction_check
from .wavepacket import (
    AliasingError,
    GridCapError,
    GridCoverageError,
    filtered_envelope,
    g2_general_surface,
    g2_separable,
    g2_time_integrated,
    make_gaussian,
    make_ridge,
    marginal_amplitudes,
    suggest_time_grid,
)

SCHEMA = "fpqsim/1"

COMMANDS = ("coeffs", "hom-scan", "two-color-scan", "spdc-solve", "g2", "series-check", "oracle")

_trapz = getattr(np, "trapezoid", None) or np.trapz


@dataclass
class RunConfig:
    """Materialized options for one command, after precedence resolution."""

    command: str
    epsilon: object = None      # float, or tuple of floats for two-color-scan
    t0: float = 1.0
    grid: tuple = None
    threshold: float = 0.01
    out: str = None
    format: str = None
    x_min: float = None
    x_max: float = None
    eps_min: float = 0.0
    eps_max: float = 1.0
    x_p: float = None
    x: float = None
    x_s: float = None
    x_i: float = None
    mode: str = "separable"
    center_s: float = None
    center_i: float = None
    sigma: float = math.pi / 200.0
    sigma_sum: float = None
    n_omega: int = 4096
    dt: float = None
    tau_max: float = None
    tau_points: int = 201
    n_terms: int = 200
    samples: int = 1000
    seed: int = 20240811


_DEFAULTS = {
    "coeffs": {"epsilon": 0.5, "x_min": 0.0, "x_max": 2.0 * math.pi, "grid": (1000,),
               "out": "coeffs.csv", "format": "csv"},
    "hom-scan": {"x_min": 0.0, "x_max": math.pi, "grid": (1000, 1000),
                 "out": "hom_scan.csv", "format": "csv"},
    "two-color-scan": {"epsilon": (0.1, 0.4, 0.7), "x_min": 0.0, "x_max": 2.0 * math.pi,
                       "grid": (1000, 1000), "out": "two_color.csv", "format": "csv"},
    "spdc-solve": {"epsilon": 0.5, "out": "spdc.json", "format": "json"},
    "g2": {"epsilon": 0.5, "out": "g2.csv", "format": "csv"},
    "series-check": {"out": "series_check.json", "format": "json"},
    "oracle": {"epsilon": 0.5, "out": "oracle.json", "format": "json"},
}

_FLOAT_KEYS = ("t0", "threshold", "x_min", "x_max", "eps_min", "eps_max", "x_p", "x",
               "x_s", "x_i", "center_s", "center_i", "sigma", "sigma_sum", "dt", "tau_max")
_INT_KEYS = ("n_omega", "tau_points", "n_terms", "samples", "seed")


def _parse_epsilon(text):
    parts = [p for p in str(text).split(",") if p.strip() != ""]
    if not parts:
        raise DomainError(f"cannot parse epsilon value {text!r}")
    vals = tuple(float(p) for p in parts)
    return vals[0] if len(vals) == 1 else vals


def _parse_grid(text):
    parts = str(text).lower().split("x")
    try:
        dims = tuple(int(p) for p in parts)
    except ValueError:
        raise DomainError(f"cannot parse grid spec {text!r} (want N or NxM)") from None
    if not dims or any(d < 1 for d in dims) or len(dims) > 2:
        raise DomainError(f"grid spec {text!r} must be N or NxM with positive sizes")
    return dims


def _read_config_file(path):
    data = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read config file {path}: {exc}") from None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"malformed config line {raw!r} (want key = value)")
        key, val = line.split("=", 1)
        data[key.strip().replace("-", "_")] = val.strip()
    return data


def _coerce(key, raw):
    if key == "epsilon":
        return _parse_epsilon(raw)
    if key == "grid":
        return _parse_grid(raw)
    if key in _FLOAT_KEYS:
        return float(raw)
    if key in _INT_KEYS:
        return int(raw)
    return raw


def resolve_config(args) -> RunConfig:
    """Layer defaults, then config file values, then explicit flags."""
    cfg = RunConfig(command=args.command)
    for key, val in _DEFAULTS[args.command].items():
        setattr(cfg, key, val)
    file_values = _read_config_file(args.config) if getattr(args, "config", None) else {}
    valid = {f.name for f in fields(RunConfig)}
    for key, raw in file_values.items():
        if key not in valid or key == "command":
            raise DomainError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, raw))
    for key in valid:
        flag_val = getattr(args, key, None)
        if flag_val is not None and key != "command":
            setattr(cfg, key, _coerce(key, flag_val) if isinstance(flag_val, str) else flag_val)
    CavityGeometry(t0=cfg.t0)  # range check only
    return cfg


def _fmt(v) -> str:
    return f"{float(v):.17g}"


def _write_csv(path, header, rows, preamble=()):
    with open(path, "w", newline="") as fh:
        fh.write(f"# schema: {SCHEMA}\n")
        for line in preamble:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path, obj):
    payload = {"schema": SCHEMA}
    payload.update(obj)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _scalar_epsilon(cfg) -> float:
    if isinstance(cfg.epsilon, tuple):
        raise DomainError(f"{cfg.command} takes a single epsilon, got {cfg.epsilon!r}")
    return float(cfg.epsilon)


def _require_csv(cfg):
    if cfg.format != "csv":
        raise DomainError(f"{cfg.command} emits CSV only, got format {cfg.format!r}")


def _with_suffix(out: str, tag: str, suffix: str = None) -> str:
    p = Path(out)
    return str(p.with_name(p.stem + tag + (suffix if suffix is not None else p.suffix)))


def cmd_coeffs(cfg: RunConfig) -> int:
    spec = MirrorSpec(_scalar_epsilon(cfg))
    n = cfg.grid[0]
    x = np.linspace(cfg.x_min, cfg.x_max, n)
    co = cavity_coefficients(x, spec)
    norm_err = np.abs(co.t_prob + co.r_prob - 1.0)
    ortho_err = np.abs(2.0 * np.real(co.t_fp * np.conjugate(co.r_fp)))
    unit = np.maximum(norm_err, ortho_err)
    header = ["x", "t_fp_re", "t_fp_im", "r_fp_re", "r_fp_im", "t_prob", "r_prob", "unitarity_error"]
    cols = [x, co.t_fp.real, co.t_fp.imag, co.r_fp.real, co.r_fp.imag, co.t_prob, co.r_prob, unit]
    if cfg.format == "json":
        rows = [[float(c[i]) for c in cols] for i in range(n)]
        _write_json(cfg.out, {"epsilon": spec.epsilon, "t0": cfg.t0, "columns": header, "rows": rows})
    else:
        _write_csv(cfg.out, header, zip(*cols), preamble=[f"epsilon: {_fmt(spec.epsilon)}", f"t0: {_fmt(cfg.t0)}"])
    return 0


def cmd_hom_scan(cfg: RunConfig) -> int:
    _require_csv(cfg)
    n1 = cfg.grid[0]
    n2 = cfg.grid[1] if len(cfg.grid) > 1 else cfg.grid[0]
    eps_grid = np.linspace(cfg.eps_min, cfg.eps_max, n1)
    x_grid = np.linspace(cfg.x_min, cfg.x_max, n2)
    grid = sweep_degenerate(eps_grid, x_grid, cfg.threshold)
    pre = [f"threshold: {_fmt(cfg.threshold)}", f"t0: {_fmt(cfg.t0)}"]

    def rows():
        for i, e in enumerate(grid.axis1):
            vals = grid.values[i]
            for j, xx in enumerate(grid.axis2):
                yield (e, xx, vals[j])

    _write_csv(cfg.out, ["epsilon", "x", "p_hom"], rows(), preamble=pre)
    _write_csv(_with_suffix(cfg.out, "_points"), ["epsilon", "x", "p_hom"], grid.masked_points(), preamble=pre)
    return 0


def cmd_two_color_scan(cfg: RunConfig) -> int:
    _require_csv(cfg)
    eps_list = cfg.epsilon if isinstance(cfg.epsilon, tuple) else (float(cfg.epsilon),)
    n1 = cfg.grid[0]
    n2 = cfg.grid[1] if len(cfg.grid) > 1 else cfg.grid[0]
    xs = np.linspace(cfg.x_min, cfg.x_max, n1)
    xi = np.linspace(cfg.x_min, cfg.x_max, n2)
    for e in eps_list:
        grid = sweep_two_color(xs, xi, MirrorSpec(e), cfg.threshold)
        pre = [f"epsilon: {_fmt(e)}", f"threshold: {_fmt(cfg.threshold)}", f"t0: {_fmt(cfg.t0)}"]
        tag = f"_eps{e:g}"

        def rows(g=grid):
            for i, a in enumerate(g.axis1):
                vals = g.values[i]
                for j, b in enumerate(g.axis2):
                    yield (a, b, vals[j])

        _write_csv(_with_suffix(cfg.out, tag), ["x_s", "x_i", "p_hom"], rows(), preamble=pre)
        _write_csv(_with_suffix(cfg.out, tag + "_points"), ["x_s", "x_i", "p_hom"],
                   grid.masked_points(), preamble=pre)
    return 0


def cmd_spdc_solve(cfg: RunConfig) -> int:
    spec = MirrorSpec(_scalar_epsilon(cfg))
    if cfg.x_p is None:
        raise DomainError("spdc-solve needs --xp (pump phase omega_p t0)")
    sol = solve_spdc(cfg.x_p, spec)
    residuals = [spdc_residual(r, cfg.x_p, spec) for r in sol.roots]
    _write_json(cfg.out, {
        "epsilon": spec.epsilon,
        "t0": cfg.t0,
        "x_p": cfg.x_p,
        "alpha_p": sol.alpha_p,
        "beta_eps": sol.beta_eps,
        "feasible": sol.feasible,
        "roots": list(sol.roots),
        "residuals": residuals,
    })
    if any(r >= 1e-10 for r in residuals):
        print(f"root residual check failed: {residuals}", file=sys.stderr)
        return 4
    return 0


def cmd_g2(cfg: RunConfig) -> int:
    _require_csv(cfg)
    spec = MirrorSpec(_scalar_epsilon(cfg))
    if cfg.mode not in ("separable", "general"):
        raise DomainError(f"g2 mode must be 'separable' or 'general', got {cfg.mode!r}")
    center_s, center_i = cfg.center_s, cfg.center_i
    if center_s is None or center_i is None:
        roots = solve_degenerate_zero(spec)
        if roots is None:
            raise DomainError("no default centers above the zero threshold; pass --center-s/--center-i")
        center_s = roots[0] if center_s is None else center_s
        center_i = roots[0] if center_i is None else center_i
    sigma = cfg.sigma

    if cfg.mode == "separable":
        z0 = make_gaussian(center_s, sigma, (center_s - 8 * sigma, center_s + 8 * sigma, cfg.n_omega))
        z1 = make_gaussian(center_i, sigma, (center_i - 8 * sigma, center_i + 8 * sigma, cfg.n_omega),
                           label="idler")
        sizing = [z0, z1]
    else:
        sigma_sum = cfg.sigma_sum if cfg.sigma_sum is not None else sigma / 10.0
        half = 8.0 * (sigma + sigma_sum)
        n_axis = min(cfg.n_omega, 1024)  # joint table; full n_omega^2 would blow the cell cap
        ridge = make_ridge(center_s, center_i, sigma_sum, sigma,
                           np.linspace(center_s - half, center_s + half, n_axis),
                           np.linspace(center_i - half, center_i + half, n_axis))
        sizing = list(marginal_amplitudes(ridge))
    # pump-sum coherence outlives both marginals, so it sets the grid span
    floor = None if cfg.mode == "separable" else min(sigma, sigma_sum)
    t_grid = suggest_time_grid(sizing, spec, dt=cfg.dt, sigma_min=floor)
    dt = float(t_grid[1] - t_grid[0])

    tau_max = cfg.tau_max if cfg.tau_max is not None else 2.0 / sigma
    k_max = max(1, int(round(tau_max / dt)))
    stride = max(1, int(round(2 * k_max / max(1, cfg.tau_points - 1))))
    ks = np.arange(-k_max, k_max + 1, stride)
    tau_grid = ks * dt

    parseval = {}
    if cfg.mode == "separable":
        surface = g2_separable(z0, z1, spec, t_grid, tau_grid)
        for z, name in ((z0, "signal"), (z1, "idler")):
            e_t = filtered_envelope(z, "T", spec, t_grid).energy()
            e_r = filtered_envelope(z, "R", spec, t_grid).energy()
            parseval[name] = e_t + e_r
    else:
        surface = g2_general_surface(ridge, spec, t_grid, tau_grid)
        gs, gi, table = ridge.as_table()
        dens = np.abs(table) ** 2
        parseval["signal"] = parseval["idler"] = float(_trapz(_trapz(dens, x=gi, axis=1), x=gs))
    trace = g2_time_integrated(surface)

    def surf_rows():
        for i, t in enumerate(surface.t_grid):
            vals = surface.values[i]
            for j, tau in enumerate(surface.tau_grid):
                yield (t, tau, vals[j])

    pre = [f"epsilon: {_fmt(spec.epsilon)}", f"t0: {_fmt(cfg.t0)}", f"mode: {cfg.mode}",
           f"center_s: {_fmt(center_s)}", f"center_i: {_fmt(center_i)}", f"sigma: {_fmt(sigma)}",
           f"parseval_signal: {_fmt(parseval['signal'])}", f"parseval_idler: {_fmt(parseval['idler'])}"]
    _write_csv(cfg.out, ["t", "tau", "g2"], surf_rows(), preamble=pre)
    _write_csv(_with_suffix(cfg.out, "_trace"), ["tau", "g2_tau"],
               zip(surface.tau_grid, trace), preamble=pre)
    zero_idx = int(np.argmin(np.abs(surface.tau_grid)))
    _write_json(_with_suffix(cfg.out, "_diag", ".json"), {
        "epsilon": spec.epsilon,
        "t0": cfg.t0,
        "mode": cfg.mode,
        "center_s": center_s,
        "center_i": center_i,
        "sigma": sigma,
        "dt": dt,
        "n_t": int(t_grid.size),
        "n_tau": int(tau_grid.size),
        "parseval_signal": parseval["signal"],
        "parseval_idler": parseval["idler"],
        "zero_delay_integrated": float(trace[zero_idx]),
    })
    return 0


def cmd_series_check(cfg: RunConfig) -> int:
    rng = np.random.default_rng(cfg.seed)
    n = cfg.samples
    if cfg.epsilon is not None:
        eps_draws = np.full(n, _scalar_epsilon(cfg))
        MirrorSpec(float(eps_draws[0]))
        if float(eps_draws[0]) == 0.0:
            raise DomainError("series check needs eps > 0 (bounce series diverges at eps = 0)")
        eps_lo = eps_hi = float(eps_draws[0])
    else:
        # n_terms = 200 resolves the closed forms to 1e-12 only when the
        # round-trip factor (1 - eps^2)^n is negligible, hence the 0.4 floor
        eps_lo, eps_hi = 0.4, 0.99
        eps_draws = rng.uniform(eps_lo, eps_hi, n)
    x_draws = rng.uniform(0.0, 2.0 * math.pi, n)
    x2_draws = rng.uniform(0.0, 2.0 * math.pi, n)

    dev_series_t = dev_series_r = 0.0
    dev_loop = 0.0
    dev_fock_total = dev_fock_cross = 0.0
    dev_two_total = dev_two_cross = 0.0
    bound_ok = True
    for e, x, x2 in zip(eps_draws, x_draws, x2_draws):
        spec = MirrorSpec(float(e))
        co = cavity_coefficients(float(x), spec)
        ser = bounce_series(float(x), spec, cfg.n_terms)
        d_t = abs(ser.partial_t - co.t_fp)
        d_r = abs(ser.partial_r - co.r_fp)
        dev_series_t = max(dev_series_t, d_t)
        dev_series_r = max(dev_series_r, d_r)
        if max(d_t, d_r) > ser.tail_bound + 1e-13:
            bound_ok = False
        lt, lr = loop_reduction_check(float(x), spec)
        dev_loop = max(dev_loop, abs(lt - co.t_fp), abs(lr - co.r_fp))
        fock = fock_output_degenerate(float(x), spec)
        dev_fock_total = max(dev_fock_total, abs(fock.total_probability() - 1.0))
        hom = hom_amplitude_degenerate(float(x), spec)
        dev_fock_cross = max(dev_fock_cross, abs(fock.amplitudes[(1, 1)] - hom.c_hom))
        two = fock_output_two_color(float(x), float(x2), spec)
        dev_two_total = max(dev_two_total, abs(two.total_probability() - 1.0))
        hom2 = hom_amplitude_two_color(float(x), float(x2), spec)
        dev_two_cross = max(dev_two_cross, abs(two.coincidence_amplitude() - hom2.c_hom))

    # The truncation bound gates the partial sums (plus a roundoff floor,
    # since the true tail underflows the float error for large n); the exact
    # identities (loop rule, Fock algebra) gate at 1e-12 outright.
    gate = 1e-12
    algebra_ok = max(dev_loop, dev_fock_total, dev_fock_cross,
                     dev_two_total, dev_two_cross) <= gate
    passed = bound_ok and algebra_ok
    _write_json(cfg.out, {
        "n_terms": cfg.n_terms,
        "samples": n,
        "seed": cfg.seed,
        "eps_low": eps_lo,
        "eps_high": eps_hi,
        "gate": gate,
        "series_dev_t": dev_series_t,
        "series_dev_r": dev_series_r,
        "series_within_tail": bound_ok,
        "loop_dev": dev_loop,
        "fock_total_dev": dev_fock_total,
        "fock_cross_dev": dev_fock_cross,
        "two_color_total_dev": dev_two_total,
        "two_color_cross_dev": dev_two_cross,
        "pass": passed,
    })
    print(f"series-check: max series deviation {max(dev_series_t, dev_series_r):.3e}, "
          f"max identity deviation {max(dev_loop, dev_fock_total, dev_two_total):.3e}, "
          f"{'pass' if passed else 'FAIL'} -> {cfg.out}")
    return 0 if passed else 4


def cmd_oracle(cfg: RunConfig) -> int:
    spec = MirrorSpec(_scalar_epsilon(cfg))
    if cfg.x_s is not None or cfg.x_i is not None:
        if cfg.x_s is None or cfg.x_i is None:
            raise DomainError("two-color oracle needs both --xs and --xi")
        state = fock_output_two_color(cfg.x_s, cfg.x_i, spec)
        amps = {f"{a},{b}": [state.amplitudes[(a, b)].real, state.amplitudes[(a, b)].imag]
                for (a, b) in sorted(state.amplitudes)}
        _write_json(cfg.out, {
            "epsilon": spec.epsilon,
            "x_s": cfg.x_s,
            "x_i": cfg.x_i,
            "amplitudes": amps,
            "coincidence_amplitude": [state.coincidence_amplitude().real,
                                      state.coincidence_amplitude().imag],
            "coincidence_probability": state.coincidence_probability(),
            "total_probability": state.total_probability(),
        })
        return 0
    if cfg.x is None:
        raise DomainError("oracle needs --x (degenerate) or --xs/--xi (two-color)")
    state = fock_output_degenerate(cfg.x, spec)
    amps = {f"{n},{m}": [state.amplitudes[(n, m)].real, state.amplitudes[(n, m)].imag]
            for (n, m) in sorted(state.amplitudes, reverse=True)}
    probs = {f"{n},{m}": state.probability((n, m)) for (n, m) in sorted(state.amplitudes, reverse=True)}
    _write_json(cfg.out, {
        "epsilon": spec.epsilon,
        "x": cfg.x,
        "amplitudes": amps,
        "probabilities": probs,
        "total_probability": state.total_probability(),
    })
    return 0


_DISPATCH = {
    "coeffs": cmd_coeffs,
    "hom-scan": cmd_hom_scan,
    "two-color-scan": cmd_two_color_scan,
    "spdc-solve": cmd_spdc_solve,
    "g2": cmd_g2,
    "series-check": cmd_series_check,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fpqsim",
        description="Fabry-Perot cavity two-photon interference toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--epsilon", help="mirror transmissivity (comma list for two-color-scan)")
    shared.add_argument("--t0", type=float, help="one-way travel time in seconds (metadata only)")
    shared.add_argument("--grid", help="grid size N or NxM")
    shared.add_argument("--threshold", type=float, help="sub-threshold mask level")
    shared.add_argument("--out", help="output file path")
    shared.add_argument("--format", choices=("csv", "json"), help="output format where supported")
    shared.add_argument("--config", help="key = value config file; flags win over file values")

    p = sub.add_parser("coeffs", parents=[shared], help="coefficient table over a phase grid")
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)

    p = sub.add_parser("hom-scan", parents=[shared], help="degenerate coincidence sweep over (eps, x)")
    p.add_argument("--eps-min", dest="eps_min", type=float)
    p.add_argument("--eps-max", dest="eps_max", type=float)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)

    p = sub.add_parser("two-color-scan", parents=[shared],
                       help="two-color coincidence sweep over (x_s, x_i) per epsilon")
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)

    p = sub.add_parser("spdc-solve", parents=[shared], help="pump-constrained zero-curve roots")
    p.add_argument("--xp", dest="x_p", type=float, help="pump phase omega_p t0")

    p = sub.add_parser("g2", parents=[shared], help="time-resolved coincidence surface and trace")
    p.add_argument("--center-s", dest="center_s", type=float)
    p.add_argument("--center-i", dest="center_i", type=float)
    p.add_argument("--sigma", type=float, help="packet bandwidth in phase units")
    p.add_argument("--sigma-sum", dest="sigma_sum", type=float,
                   help="pump-sum bandwidth for general mode (default sigma/10)")
    p.add_argument("--n-omega", dest="n_omega", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--tau-max", dest="tau_max", type=float)
    p.add_argument("--tau-points", dest="tau_points", type=int)
    p.add_argument("--mode", choices=("separable", "general"))

    p = sub.add_parser("series-check", parents=[shared], help="oracle self-test gate")
    p.add_argument("--n-terms", dest="n_terms", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("oracle", parents=[shared], help="explicit Fock output amplitudes")
    p.add_argument("--x", type=float, help="degenerate phase")
    p.add_argument("--xs", dest="x_s", type=float, help="signal phase")
    p.add_argument("--xi", dest="x_i", type=float, help="idler phase")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return _DISPATCH[cfg.command](cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AliasingError, GridCoverageError, GridCapError) as exc:
        print(f"numerical precondition failed: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
