"""Command-line interface: ``emduality <subcommand> [options]``.

Every subcommand writes CSV (header row, comma separator, LF endings) or
JSON (``schema_version`` 1) to ``--out`` or stdout. Floats are printed with
17 significant digits so identical inputs give byte-identical files.

Exit codes: 0 success, 2 configuration error, 3 numerical gate failure,
4 unsupported combination (including divergent quantities).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .electron import (
    build_spectral_grid,
    spectral_distribution,
    spectral_distribution_recipe,
    total_energy_spectral,
)
from .errors import ConvergenceError, DomainError, DualityError, FitError, InfiniteEnergyError, UnsupportedError
from .kinematics import (
    CarlitzWilley,
    DaviesFulling,
    UniformAcceleration,
    WalkerDavies,
    energy_routes,
    state_at,
    total_energy_closed_form,
    wd_energy_right,
)
from .mirror import (
    SPECTRAL_CONFIG,
    beta_sq_df_double,
    beta_sq_right,
    mirror_total_energy,
    particle_spectrum_wd,
)
from .numerics import QuadratureConfig
from .thermal import reference_temperature, thermality_verdict, uniform_axis_sweep

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CONFIG, EXIT_GATE, EXIT_UNSUPPORTED = 0, 2, 3, 4

COMMANDS = ("trajectory", "spectrum", "beta", "particles", "energy", "thermal", "duality-check")

DEFAULTS = {
    "traj": "df",
    "s": None,
    "kappa": None,
    "A": None,
    "B": None,
    "vmax": None,
    "lightspeed": False,
    "t_range": "-5:5:101",
    "omega_range": "0.1:10:20",
    "theta_range": "0.2:2.9:15",
    "pq_range": "0.1:5:20",
    "theta": None,
    "format": "csv",
    "out": None,
    "rel_tol": None,
    "e2": 1.0,
    "method": "closed_form",
    "gate": None,
}

# default gates per command: spectra must agree to rounding, energies to 1e-3
GATES = {"spectrum": 1e-9, "duality-check": 1e-9, "energy": 1e-3}


class ConfigError(DualityError):
    """Invalid command-line or config-file settings."""


class GateError(DualityError):
    """A cross-method comparison exceeded its gate."""

    def __init__(self, message, payload):
        super().__init__(message)
        self.payload = payload


@dataclass(frozen=True)
class Range:
    lo: float
    hi: float
    n: int

    def linear(self):
        return np.linspace(self.lo, self.hi, self.n)

    def geometric(self):
        return np.geomspace(self.lo, self.hi, self.n)


def parse_range(text: str, name: str, positive=True) -> Range:
    """Parse ``a:b:n`` with ``a < b`` and ``n >= 2``."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must look like a:b:n, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ConfigError(f"{name} needs finite a < b")
    if positive and lo <= 0:
        raise ConfigError(f"{name} must be strictly positive")
    if n < 2:
        raise ConfigError(f"{name} needs at least 2 points")
    return Range(lo, hi, n)


# --- configuration -----------------------------------------------------------------


def read_config_file(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment; keys use flag names."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{num}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise ConfigError(f"{path}:{num}: unknown key {key!r}")
        out[key] = value
    return out


_FLOAT_KEYS = ("s", "kappa", "A", "B", "vmax", "theta", "rel_tol", "e2", "gate")


def merge_config(args: argparse.Namespace) -> dict:
    """Defaults, then config file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config_file(args.config))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None and not (key == "lightspeed" and val is False):
            cfg[key] = val
    for key in _FLOAT_KEYS:
        if cfg[key] is not None:
            try:
                cfg[key] = float(cfg[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"{key}: not a number ({cfg[key]!r})") from exc
    if isinstance(cfg["lightspeed"], str):
        cfg["lightspeed"] = cfg["lightspeed"].lower() in ("1", "true", "yes")
    if cfg["traj"] not in ("df", "wd", "uniform", "cw"):
        raise ConfigError(f"unknown trajectory {cfg['traj']!r}")
    if cfg["format"] not in ("csv", "json"):
        raise ConfigError(f"unknown format {cfg['format']!r}")
    if cfg["method"] not in ("recipe", "closed_form", "fourier_oracle", "both"):
        raise ConfigError(f"unknown method {cfg['method']!r}")
    if cfg["rel_tol"] is not None and not cfg["rel_tol"] > 0:
        raise ConfigError("rel-tol must be positive")
    return cfg


def build_trajectory(cfg: dict):
    kappa = cfg["kappa"] if cfg["kappa"] is not None else 1.0
    kind = cfg["traj"]
    try:
        if kind == "df":
            if cfg["s"] is None:
                raise ConfigError("--traj df needs --s")
            return DaviesFulling(cfg["s"], kappa, lightspeed=bool(cfg["lightspeed"]))
        if kind == "wd":
            if cfg["A"] is not None and cfg["B"] is not None:
                return WalkerDavies(cfg["A"], cfg["B"])
            if cfg["vmax"] is not None:
                return WalkerDavies.from_peel(kappa, cfg["vmax"])
            raise ConfigError("--traj wd needs --A and --B, or --vmax (with optional --kappa)")
        if kind == "uniform":
            return UniformAcceleration(kappa)
        return CarlitzWilley(kappa)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def quad_config(cfg: dict) -> QuadratureConfig:
    if cfg["rel_tol"] is None:
        return SPECTRAL_CONFIG
    return QuadratureConfig(rel_tol=cfg["rel_tol"], abs_tol=SPECTRAL_CONFIG.abs_tol,
                            max_subdivisions=SPECTRAL_CONFIG.max_subdivisions)


# --- output ----------------------------------------------------------------------


def fmt(x) -> str:
    """Fixed 17-significant-digit rendering; non-finite values become empty cells."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if not math.isfinite(x):
        return ""
    return "%.17g" % x


def to_json(obj, indent=0) -> str:
    """Deterministic JSON with 17-digit floats and ``null`` for NaN/inf."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(to_json(v, indent + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + to_json(v, indent + 1) for v in seq) + "\n" + end + "]"
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "%.17g" % obj if math.isfinite(obj) else "null"
    if isinstance(obj, complex):
        return to_json({"re": obj.real, "im": obj.imag}, indent)
    return json.dumps(str(obj))


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def envelope(command, traj, cfg, body: dict) -> dict:
    qc = quad_config(cfg)
    head = {
        "schema_version": SCHEMA_VERSION,
        "tool": "emduality",
        "tool_version": __version__,
        "command": command,
        "trajectory": traj.describe() if traj is not None else None,
        "units": {"electron": "per e^2 times e2_prefactor", "mirror": "per hbar",
                  "e2_prefactor": cfg["e2"]},
        "quadrature": {"rel_tol": qc.rel_tol, "abs_tol": qc.abs_tol},
    }
    head.update(body)
    return head


def emit(text: str, cfg: dict):
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(command, traj, cfg, header, rows, extra=None) -> str:
    if cfg["format"] == "csv":
        return render_csv(header, rows)
    body = {"columns": list(header), "rows": [list(r) for r in rows]}
    if extra:
        body.update(extra)
    return to_json(envelope(command, traj, cfg, body)) + "\n"


def _record(command, traj, cfg, record: dict) -> str:
    if cfg["format"] == "json":
        return to_json(envelope(command, traj, cfg, record)) + "\n"
    rows = [(k, v) for k, v in _flatten(record)]
    return render_csv(("field", "value"), rows)


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        elif isinstance(v, (list, tuple, np.ndarray)):
            for i, item in enumerate(v):
                if isinstance(item, dict):
                    yield from _flatten(item, f"{key}.{i}.")
                else:
                    yield f"{key}.{i}", item
        else:
            yield key, v


def _theta_grid(cfg):
    r = parse_range(cfg["theta_range"], "theta-range", positive=False)
    if r.lo < 0 or r.hi > math.pi:
        raise ConfigError("theta-range must lie within [0, pi]")
    return np.sort(np.cos(r.linear()))


# --- subcommands ---------------------------------------------------------------------


def cmd_trajectory(cfg) -> str:
    traj = build_trajectory(cfg)
    r = parse_range(cfg["t_range"], "t-range", positive=isinstance(traj, CarlitzWilley))
    header = ("t", "z", "v", "eta", "gamma", "alpha", "peel", "jerk_sq")
    rows = []
    for t in r.linear():
        st = state_at(traj, float(t))
        rows.append((st.t, st.z, st.v, st.eta, st.gamma, st.alpha, st.peel, st.jerk_sq))
    note = {"parameter": "proper time tau" if isinstance(traj, CarlitzWilley) else "coordinate time t"}
    return _table("trajectory", traj, cfg, header, rows, note)


def cmd_spectrum(cfg) -> str:
    traj = build_trajectory(cfg)
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey spectra are not implemented")
    omega = parse_range(cfg["omega_range"], "omega-range").geometric()
    cos_t = _theta_grid(cfg)
    qc = quad_config(cfg)
    e2 = cfg["e2"]
    if cfg["method"] == "both":
        rec = build_spectral_grid(traj, omega, cos_t, "recipe", qc)
        cf = build_spectral_grid(traj, omega, cos_t, "closed_form", qc)
        with np.errstate(invalid="ignore", divide="ignore"):
            rel = np.abs(rec.values - cf.values) / np.abs(cf.values)
        rel = np.where(cf.values == rec.values, 0.0, rel)
        header = ("omega", "cos_theta", "recipe", "closed_form", "rel_diff")
        rows = [(omega[i], cos_t[j], e2 * rec.values[i, j], e2 * cf.values[i, j], rel[i, j])
                for i in range(len(omega)) for j in range(len(cos_t))]
        finite = rel[np.isfinite(rel)]
        max_rel = float(finite.max()) if finite.size else math.nan
        extra = {"n_failed": rec.n_failed + cf.n_failed, "max_rel_diff": max_rel}
        text = _table("spectrum", traj, cfg, header, rows, extra)
        gate = cfg["gate"] if cfg["gate"] is not None else GATES["spectrum"]
        if not max_rel <= gate:
            raise GateError(f"recipe and closed form differ by {max_rel:.3e} > {gate:.1e}", text)
        return text
    grid = build_spectral_grid(traj, omega, cos_t, cfg["method"], qc)
    header = ("omega", "cos_theta", "value", "method")
    rows = [(omega[i], cos_t[j], e2 * grid.values[i, j], grid.method)
            for i in range(len(omega)) for j in range(len(cos_t))]
    return _table("spectrum", traj, cfg, header, rows, {"n_failed": grid.n_failed})


def cmd_beta(cfg) -> str:
    traj = build_trajectory(cfg)
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey Bogolubov spectra are not implemented")
    pq = parse_range(cfg["pq_range"], "pq-range").geometric()
    qc = quad_config(cfg)
    side = "double" if isinstance(traj, DaviesFulling) else "right"
    P, Q = np.meshgrid(pq, pq, indexing="ij")
    try:
        if side == "double":
            vals = np.asarray(beta_sq_df_double(traj.s, traj.kappa, P, Q))
        else:
            vals = np.asarray(beta_sq_right(traj, P, Q, qc))
    except (DomainError, ConvergenceError):
        vals = np.full(P.shape, math.nan)
        for idx in np.ndindex(P.shape):
            try:
                if side == "double":
                    vals[idx] = beta_sq_df_double(traj.s, traj.kappa, P[idx], Q[idx])
                else:
                    vals[idx] = beta_sq_right(traj, P[idx], Q[idx], qc)
            except (DomainError, ConvergenceError):
                pass
    rows = [(P[idx], Q[idx], vals[idx], side) for idx in np.ndindex(P.shape)]
    n_failed = int(np.count_nonzero(~np.isfinite(vals)))
    return _table("beta", traj, cfg, ("p", "q", "value", "side"), rows, {"n_failed": n_failed})


def cmd_particles(cfg) -> str:
    traj = build_trajectory(cfg)
    if not isinstance(traj, WalkerDavies):
        raise UnsupportedError("particle spectra are implemented for Walker-Davies only")
    if cfg["pq_range"] == DEFAULTS["pq_range"]:
        p_grid = np.geomspace(0.1, 5.0, 6) / traj.A
    else:
        p_grid = parse_range(cfg["pq_range"], "pq-range").geometric()
    ps = particle_spectrum_wd(traj.A, traj.B, p_grid, quad_config(cfg))
    if cfg["format"] == "csv":
        rows = list(zip(ps.p_grid, ps.n_p, ps.n_p_closed_form))
        return render_csv(("p", "n_p", "n_p_closed_form"), rows)
    body = {
        "p_grid": ps.p_grid, "n_p": ps.n_p, "n_p_closed_form": ps.n_p_closed_form,
        "n_tot": ps.n_tot, "n_tot_error": ps.n_tot_error,
        "n_tot_closed_form": ps.n_tot_closed_form, "v_max_sq_over_6": traj.v_max ** 2 / 6.0,
    }
    return to_json(envelope("particles", traj, cfg, body)) + "\n"


def energy_report(traj, qc: QuadratureConfig) -> dict:
    """Closed form, both time-domain routes, the spectral integral and the mirror integral."""
    if isinstance(traj, UniformAcceleration):
        raise InfiniteEnergyError("uniform proper acceleration radiates infinite total energy")
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey energies are not defined here")
    closed = total_energy_closed_form(traj)
    routes = energy_routes(traj)
    spectral = total_energy_spectral(traj, qc)
    mirror = mirror_total_energy(traj, qc)
    values = {"closed_form": closed, "power_integral": routes.power_route,
              "force_integral": routes.force_route, "spectral_integral": spectral}
    report = dict(values)
    report["mirror_double_integral"] = mirror
    pairs = {}
    if isinstance(traj, DaviesFulling):
        values["mirror_double_integral"] = mirror
    else:
        right = wd_energy_right(traj)
        report["mirror_reference"] = right
        report["mirror_reference_kind"] = "right-side term"
        pairs["mirror_double_integral/mirror_reference"] = abs(mirror - right) / abs(right)
    names = list(values)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            pairs[f"{a}/{b}"] = abs(values[a] - values[b]) / abs(values[b])
    report["pairwise_relative_differences"] = dict(sorted(pairs.items()))
    return report


def cmd_energy(cfg) -> str:
    traj = build_trajectory(cfg)
    report = energy_report(traj, quad_config(cfg))
    e2 = cfg["e2"]
    for key in ("closed_form", "power_integral", "force_integral", "spectral_integral"):
        report[key] *= e2
    gate = cfg["gate"] if cfg["gate"] is not None else GATES["energy"]
    report["gate"] = gate
    worst = max(report["pairwise_relative_differences"].values())
    report["passed"] = worst <= gate
    text = _record("energy", traj, cfg, report)
    if not worst <= gate:
        raise GateError(f"energy routes differ by {worst:.3e} > {gate:.1e}", text)
    return text


def cmd_thermal(cfg) -> str:
    traj = build_trajectory(cfg)
    e2 = cfg["e2"]
    if isinstance(traj, CarlitzWilley):
        ref = reference_temperature("cw_mirror", kappa=traj.kappa)
        return _record("thermal", traj, cfg, {"verdict": "thermal", "basis": "constant peel, zero jerk",
                                              "reference": {"kind": ref.kind, "value": ref.value,
                                                            "scale": ref.scale}})
    if isinstance(traj, UniformAcceleration) and cfg["theta_range"] != DEFAULTS["theta_range"]:
        r = parse_range(cfg["theta_range"], "theta-range")
        thetas = r.linear()
        if r.hi > math.pi:
            raise ConfigError("theta-range must lie within (0, pi]")
        sweep = uniform_axis_sweep(traj, thetas)
        rows = [(th, e2 * val / math.sin(th), e2 * val) for th, val in zip(thetas, sweep)]
        if cfg["format"] == "csv":
            return render_csv(("theta", "T_uv", "T_uv_sin_theta"), rows)
        return to_json(envelope("thermal", traj, cfg, {"columns": ["theta", "T_uv", "T_uv_sin_theta"],
                                                       "rows": [list(r) for r in rows]})) + "\n"
    fit = thermality_verdict(traj, cfg["theta"], quad_config(cfg))
    record = fit.to_dict()
    for key in ("T_fit", "T_ir", "T_uv"):
        record[key] = e2 * record[key]
    if "T_reference" in record["diagnostics"]:
        record["diagnostics"]["T_reference"] *= e2
    if isinstance(traj, DaviesFulling):
        mirror = reference_temperature("df_mirror", kappa=traj.kappa)
        record["mirror_reference"] = {"kind": mirror.kind, "value": mirror.value, "scale": mirror.scale}
    return _record("thermal", traj, cfg, record)


def cmd_duality_check(cfg) -> str:
    traj = build_trajectory(cfg)
    if isinstance(traj, CarlitzWilley):
        raise UnsupportedError("Carlitz-Willey spectra are not implemented")
    omega = parse_range(cfg["omega_range"], "omega-range").geometric()
    cos_t = _theta_grid(cfg)
    cos_t = cos_t[np.abs(cos_t) < 1.0]
    W, C = np.meshgrid(omega, cos_t, indexing="ij")
    qc = quad_config(cfg)
    rec = np.asarray(spectral_distribution_recipe(traj, W, C, qc))
    cf = np.asarray(spectral_distribution(traj, W, C, qc))
    rel = np.where(rec == cf, 0.0, np.abs(rec - cf) / np.where(cf == 0, 1.0, np.abs(cf)))
    max_rel = float(rel.max())
    gate = cfg["gate"] if cfg["gate"] is not None else GATES["duality-check"]
    record = {"n_points": int(rel.size), "max_rel_diff": max_rel, "gate": gate, "passed": max_rel <= gate}
    text = _record("duality-check", traj, cfg, record)
    if not max_rel <= gate:
        raise GateError(f"duality identity violated: {max_rel:.3e} > {gate:.1e}", text)
    return text


HANDLERS = {
    "trajectory": cmd_trajectory,
    "spectrum": cmd_spectrum,
    "beta": cmd_beta,
    "particles": cmd_particles,
    "energy": cmd_energy,
    "thermal": cmd_thermal,
    "duality-check": cmd_duality_check,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--traj", choices=("df", "wd", "uniform", "cw"), default=None)
    common.add_argument("--s", type=float, default=None, help="Davies-Fulling final speed")
    common.add_argument("--kappa", type=float, default=None, help="acceleration scale (default 1)")
    common.add_argument("--A", type=float, default=None, help="Walker-Davies A")
    common.add_argument("--B", type=float, default=None, help="Walker-Davies B")
    common.add_argument("--vmax", type=float, default=None, help="Walker-Davies maximum speed")
    common.add_argument("--lightspeed", action="store_true", default=None,
                        help="allow s = 1 for Davies-Fulling")
    common.add_argument("--t-range", dest="t_range", default=None, metavar="a:b:n")
    common.add_argument("--omega-range", dest="omega_range", default=None, metavar="a:b:n",
                        help="geometric photon-frequency grid")
    common.add_argument("--theta-range", dest="theta_range", default=None, metavar="a:b:n",
                        help="linear polar-angle grid in radians")
    common.add_argument("--pq-range", dest="pq_range", default=None, metavar="a:b:n",
                        help="geometric mirror-frequency grid")
    common.add_argument("--theta", type=float, default=None, help="angle for thermal fits")
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--config", default=None, metavar="PATH", help="key = value settings file")
    common.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    common.add_argument("--e2", type=float, default=None, help="charge-squared prefactor (default 1)")
    common.add_argument("--method", choices=("recipe", "closed_form", "fourier_oracle", "both"), default=None)
    common.add_argument("--gate", type=float, default=None, help="relative-difference gate")

    parser = argparse.ArgumentParser(prog="emduality", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "trajectory": "kinematic state along the worldline",
        "spectrum": "photon spectral distribution dI/dOmega on an (omega, theta) grid",
        "beta": "mirror Bogolubov spectrum |beta_pq|^2 on a (p, q) grid",
        "particles": "Walker-Davies particle density and total count",
        "energy": "radiated energy by five independent routes",
        "thermal": "temperature fit and thermality verdict",
        "duality-check": "recipe vs closed-form spectral distribution",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = merge_config(args)
        text = HANDLERS[args.command](cfg)
        emit(text, cfg)
        return EXIT_OK
    except ConfigError as exc:
        print(f"emduality: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GateError as exc:
        emit(exc.payload, cfg)
        print(f"emduality: gate failed: {exc}", file=sys.stderr)
        return EXIT_GATE
    except (UnsupportedError, InfiniteEnergyError) as exc:
        print(f"emduality: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except DomainError as exc:
        print(f"emduality: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, FitError) as exc:
        print(f"emduality: numerical failure: {exc}", file=sys.stderr)
        return EXIT_GATE
    except OSError as exc:
        print(f"emduality: I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
