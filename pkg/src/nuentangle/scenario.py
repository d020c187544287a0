"""Scenario configs, parameter sweeps and deterministic CSV / JSON-lines output.

A config is a flat YAML mapping. Keys, by mode:

    all sweeps    mode, theta_rad | sin2_theta, n_points, output, format
    qm            omega1, omega2, phase_min, phase_max
    qft, compare  m1, m2, k (required), t_min, t_max
    verify        mode, n_points, seed, output, format

The qm sweep abscissa is the phase (omega2 - omega1) t / 2, labelled as the
scaled time T. The qft and compare sweeps run over raw t so that degenerate
masses (omega_k1 == omega_k2) stay well defined.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, fields, replace

import numpy as np
import yaml

from nuentangle import __version__, qft, qm

MODES = ("qm", "qft", "compare", "verify")
FORMATS = ("csv", "jsonl")
DEFAULT_SIN2_THETA = 0.314

_COMMON = ("mode", "n_points", "output", "format")
_THETA = ("theta_rad", "sin2_theta")
_KEYS = {
    "qm": _COMMON + _THETA + ("omega1", "omega2", "phase_min", "phase_max"),
    "qft": _COMMON + _THETA + ("m1", "m2", "k", "t_min", "t_max"),
    "compare": _COMMON + _THETA + ("m1", "m2", "k", "t_min", "t_max"),
    "verify": _COMMON + ("seed",),
}
_REQUIRED = {"qm": (), "qft": ("m1", "m2", "k"), "compare": ("m1", "m2", "k"), "verify": ()}
_ALL_KEYS = frozenset(k for keys in _KEYS.values() for k in keys)
_FLOAT_KEYS = _THETA + ("omega1", "omega2", "phase_min", "phase_max", "m1", "m2", "k", "t_min", "t_max")


class ConfigError(ValueError):
    """Invalid scenario config; ``problems`` lists every violation found."""

    def __init__(self, problems: list[str]):
        self.problems = list(problems)
        super().__init__("invalid config:\n  " + "\n  ".join(self.problems))


class OutputError(OSError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str
    theta_rad: float | None = None
    sin2_theta: float | None = None
    omega1: float = 1.0
    omega2: float = 2.0
    phase_min: float = 0.0
    phase_max: float = 2 * math.pi
    m1: float | None = None
    m2: float | None = None
    k: float | None = None
    t_min: float = 0.0
    t_max: float | None = None
    n_points: int | None = None
    seed: int = 0
    output: str | None = None
    format: str = "csv"

    def __post_init__(self):
        problems = _validate(self)
        if problems:
            raise ConfigError(problems)
        for name in _FLOAT_KEYS:
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, float(v))
        if self.mode != "verify" and self.theta_rad is None and self.sin2_theta is None:
            object.__setattr__(self, "sin2_theta", DEFAULT_SIN2_THETA)
        if self.n_points is None:
            object.__setattr__(self, "n_points", 100 if self.mode == "verify" else 200)

    @property
    def angle(self) -> qm.MixingAngle:
        if self.theta_rad is not None:
            return qm.MixingAngle(self.theta_rad)
        return qm.MixingAngle.from_sin2(self.sin2_theta)

    @property
    def spectrum(self) -> qm.QmSpectrum:
        return qm.QmSpectrum(self.omega1, self.omega2)

    @property
    def sector(self) -> qft.KinematicSector:
        return qft.KinematicSector(self.m1, self.m2, self.k)

    def time_range(self) -> tuple[float, float]:
        """(t_min, t_max); t_max defaults to one period of the slowest nonzero frequency."""
        if self.t_max is not None:
            return self.t_min, self.t_max
        sec = self.sector
        freq = abs(sec.delta) if sec.delta != 0.0 else sec.total
        return self.t_min, self.t_min + 2 * math.pi / freq

    def applicable_keys(self) -> tuple[str, ...]:
        return _KEYS[self.mode]

    def with_overrides(self, **values) -> ScenarioConfig:
        """Copy with ``values`` replacing fields; a theta key drops the other theta key."""
        values = {k: v for k, v in values.items() if v is not None}
        if "theta_rad" in values and "sin2_theta" in values:
            raise ConfigError(["theta_rad and sin2_theta are mutually exclusive"])
        if "theta_rad" in values:
            values["sin2_theta"] = None
        elif "sin2_theta" in values:
            values["theta_rad"] = None
        return replace(self, **values)


def _is_real(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _validate(cfg: ScenarioConfig) -> list[str]:
    problems = []
    if cfg.mode not in MODES:
        return [f"mode: must be one of {', '.join(MODES)}, got {cfg.mode!r}"]
    keys = _KEYS[cfg.mode]
    defaults = {f.name: f.default for f in fields(ScenarioConfig)}
    for name in _ALL_KEYS - set(keys):
        if getattr(cfg, name) != defaults[name]:
            problems.append(f"{name}: not applicable in mode {cfg.mode}")
    for name in _REQUIRED[cfg.mode]:
        if getattr(cfg, name) is None:
            problems.append(f"{name}: required in mode {cfg.mode}")

    def real(name, check=None, msg=""):
        v = getattr(cfg, name)
        if v is None:
            return None
        if not _is_real(v):
            problems.append(f"{name}: must be a finite number, got {v!r}")
            return None
        if check is not None and not check(v):
            problems.append(f"{name}: {msg}, got {v!r}")
            return None
        return v

    if cfg.theta_rad is not None and cfg.sin2_theta is not None:
        problems.append("theta_rad, sin2_theta: give exactly one, not both")
    real("theta_rad", lambda v: 0.0 <= v <= math.pi / 2, "must be in [0, pi/2]")
    real("sin2_theta", lambda v: 0.0 <= v <= 1.0, "must be in [0, 1]")

    if cfg.mode == "qm":
        w1 = real("omega1")
        w2 = real("omega2")
        if w1 is not None and w2 is not None and w1 == w2:
            problems.append("omega1, omega2: must differ (the phase abscissa needs omega2 != omega1)")
        lo = real("phase_min")
        hi = real("phase_max")
        if lo is not None and hi is not None and not lo < hi:
            problems.append(f"phase_min, phase_max: need phase_min < phase_max, got {lo!r} >= {hi!r}")
    elif cfg.mode in ("qft", "compare"):
        real("m1", lambda v: v > 0.0, "must be positive")
        real("m2", lambda v: v > 0.0, "must be positive")
        real("k", lambda v: v >= 0.0, "must be non-negative")
        lo = real("t_min")
        hi = real("t_max")
        if lo is not None and hi is not None and not lo < hi:
            problems.append(f"t_min, t_max: need t_min < t_max, got {lo!r} >= {hi!r}")

    n = cfg.n_points
    n_lo = 1 if cfg.mode == "verify" else 2
    if n is not None and (not isinstance(n, int) or isinstance(n, bool) or n < n_lo):
        problems.append(f"n_points: must be an integer >= {n_lo}, got {n!r}")
    if not isinstance(cfg.seed, int) or isinstance(cfg.seed, bool) or cfg.seed < 0:
        problems.append(f"seed: must be a non-negative integer, got {cfg.seed!r}")
    if cfg.format not in FORMATS:
        problems.append(f"format: must be one of {', '.join(FORMATS)}, got {cfg.format!r}")
    if cfg.output is not None and (not isinstance(cfg.output, str) or not cfg.output):
        problems.append(f"output: must be a non-empty path string, got {cfg.output!r}")
    return problems


def parse_config(text: str) -> ScenarioConfig:
    """Parse and validate a YAML scenario config, reporting every problem with its line."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        raise ConfigError([f"not valid YAML: {exc}"]) from None
    if root is None:
        raise ConfigError(["config is empty; 'mode' is required"])
    if not isinstance(root, yaml.MappingNode):
        raise ConfigError([f"line {root.start_mark.line + 1}: top level must be a mapping of keys"])

    loader = yaml.SafeLoader("")
    values: dict = {}
    lines: dict = {}
    problems = []
    for key_node, value_node in root.value:
        line = key_node.start_mark.line + 1
        key = loader.construct_object(key_node)
        if not isinstance(key, str):
            problems.append(f"line {line}: {key!r}: keys must be strings")
            continue
        if key in values:
            problems.append(f"line {line}: {key}: duplicate key")
            continue
        if key not in _ALL_KEYS:
            problems.append(f"line {line}: {key}: unknown key")
            continue
        values[key] = loader.construct_object(value_node, deep=True)
        lines[key] = line

    mode = values.get("mode")
    if mode is None:
        problems.append("mode: required key missing")
    elif mode not in MODES:
        problems.append(f"line {lines['mode']}: mode: must be one of {', '.join(MODES)}, got {mode!r}")
    else:
        for key in list(values):
            if key not in _KEYS[mode]:
                problems.append(f"line {lines[key]}: {key}: not applicable in mode {mode}")
                del values[key]
        try:
            cfg = ScenarioConfig(**values)
        except ConfigError as exc:
            problems.extend(_with_line(p, lines) for p in exc.problems)
        else:
            if not problems:
                return cfg
    raise ConfigError(problems)


def _with_line(problem: str, lines: dict) -> str:
    key = problem.split(":", 1)[0].split(",")[0].strip()
    return f"line {lines[key]}: {problem}" if key in lines else problem


def dump_config(cfg: ScenarioConfig) -> str:
    """YAML text that parses back to an equal config (defaults written out)."""
    data = asdict(cfg)
    out = {}
    for key in cfg.applicable_keys():
        if data[key] is not None:
            out[key] = data[key]
    return yaml.safe_dump(out, sort_keys=False)


def _qm_rows(cfg: ScenarioConfig) -> list[dict]:
    ang, spec = cfg.angle, cfg.spectrum
    phase = np.linspace(cfg.phase_min, cfg.phase_max, cfg.n_points)
    t = 2.0 * phase / spec.delta
    p_ee, p_emu = qm.transition_probabilities(ang, spec, t)
    su2 = qm.variance_su2_flavor(ang, spec, t)
    cols = {
        "phase": phase,
        "t": t,
        "p_ee": p_ee,
        "p_emu": p_emu,
        "s_linear": qm.linear_entropy_dynamic(ang, spec, t),
        "var_n": qm.variance_flavor_number_dynamic(ang, spec, t),
        "var_j1": su2.derived.j1,
        "var_j2": su2.derived.j2,
        "var_j3": su2.derived.j3,
        "var_j2_printed": su2.printed.j2,
    }
    return _columns_to_rows(cols, cfg.n_points)


def _qft_rows(cfg: ScenarioConfig, compare: bool) -> list[dict]:
    ang, sec = cfg.angle, cfg.sector
    t = np.linspace(*cfg.time_range(), cfg.n_points)
    osc = qft.qft_oscillation(ang, sec, t)
    cols = {"t": t, "phase": 0.5 * sec.delta * t}
    if compare:
        p_ee, p_emu = qm.transition_probabilities(ang, sec.spectrum, t)
        cols.update(p_ee=p_ee, p_emu=p_emu, var_n=qm.variance_flavor_number_dynamic(ang, sec.spectrum, t))
    cols.update(q_ee=osc.q_ee, q_emu=osc.q_emu, var_q=qft.charge_variance_dynamic(ang, sec, t))
    if compare:
        cols["gap"] = np.abs(osc.q_ee - cols["p_ee"])
    else:
        cols["var_q_static"] = qft.charge_variance_static(ang)
        cols["condensation"] = qft.condensation_density(ang, sec)
    return _columns_to_rows(cols, cfg.n_points)


def _columns_to_rows(cols: dict, n: int) -> list[dict]:
    lists = {k: np.broadcast_to(np.asarray(v, dtype=float), (n,)).tolist() for k, v in cols.items()}
    return [{k: lists[k][i] for k in lists} for i in range(n)]


def run_sweep(cfg: ScenarioConfig) -> list[dict]:
    """Rows of the sweep described by ``cfg``, ordered by the abscissa."""
    if cfg.mode == "qm":
        return _qm_rows(cfg)
    if cfg.mode in ("qft", "compare"):
        return _qft_rows(cfg, compare=cfg.mode == "compare")
    from nuentangle.fock.verify import run_verification

    return run_verification(cfg.n_points, cfg.seed).rows()


def header_comments(cfg: ScenarioConfig) -> list[str]:
    """Metadata lines written ahead of CSV output (without the leading '#')."""
    lines = [f"nuentangle {__version__} {cfg.mode}"]
    if cfg.mode != "verify":
        ang = cfg.angle
        lines.append(f"theta_rad = {ang.theta:.17g}, sin2_theta = {ang.sin_sq:.17g}")
    if cfg.mode == "qm":
        lines.append(f"omega1 = {cfg.omega1:.17g}, omega2 = {cfg.omega2:.17g}")
        lines.append("abscissa: phase = (omega2 - omega1) t / 2, plotted as the scaled time T")
        lines.append("var_j2 from the state; var_j2_printed from the closed form as usually printed (can be negative)")
    elif cfg.mode in ("qft", "compare"):
        sec = cfg.sector
        lines.append(f"m1 = {cfg.m1:.17g}, m2 = {cfg.m2:.17g}, k = {cfg.k:.17g}")
        lines.append(
            f"omega_k1 = {sec.omega_k1:.17g}, omega_k2 = {sec.omega_k2:.17g}, "
            f"u_k = {sec.u_k:.17g}, v_k = {sec.v_k:.17g}"
        )
        lines.append("abscissa: t (natural units); phase = (omega_k2 - omega_k1) t / 2")
    else:
        lines.append(f"randomized grid: n_points = {cfg.n_points}, seed = {cfg.seed}")
    return lines


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit(rows: list[dict], fmt: str = "csv", comments: list[str] | None = None) -> bytes:
    """Serialize rows as CSV (17 significant digits, LF) or JSON lines; deterministic."""
    if not rows:
        raise ValueError("nothing to emit: the sweep produced no rows")
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    buf = io.StringIO(newline="")
    if fmt == "csv":
        for line in comments or ():
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        columns = list(rows[0])
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in columns])
    else:
        for row in rows:
            buf.write(json.dumps(row, allow_nan=False) + "\n")
    return buf.getvalue().encode("utf-8")


def write_output(data: bytes, path: str | None = None) -> None:
    """Write to ``path`` or, when None or '-', to standard output."""
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
