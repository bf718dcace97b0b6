"""Command-line tables for plotting.

Usage::

    python -m atomscatter mono --omega 0.11 --eta 1 --out mono.csv
    python -m atomscatter pulse --config run.cfg --format json --out pulse.json
    python -m atomscatter sweep --omega-range 0,1,11 --eta-range 1,1,1
    python -m atomscatter solid-angle --pattern linear --theta-max 0.785398

A config file holds one ``key = value`` per line (``#`` starts a comment);
keys are the long option names with ``-`` or ``_``.  Options given on the
command line win over the file.

Exit status: 0 success, 2 configuration error, 3 numerical oracle
disagreement beyond its budget (the output is still written).
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .elastic import (
    AtomParams,
    CouplingParams,
    DriveParams,
    channel_powers,
    scattered_phase,
    scattered_power,
)
from .geometry import AngularAperture, DipolePattern, weighted_solid_angle
from .numerics import (
    DetuningGrid,
    QuadratureError,
    QuadratureSpec,
    TransformPlan,
    inverse_transform,
)
from .pulse import (
    CHANNELS,
    PulseParams,
    absorbed_fraction,
    absorbed_fraction_parseval,
    analytic_time_domain,
    decompose_coherent,
    scatter_pulse,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TOLERANCE = 3

# oracle budgets checked by the pulse subcommand
FRACTION_TOLERANCE = 1e-3
ENVELOPE_TOLERANCE = 1e-3

MODES = ("mono", "pulse", "sweep", "solid-angle")

# key -> (parser, default); None default means "required only where used"
_KEYS = {
    "omega": (float, 1.0),
    "eta": (float, 1.0),
    "gamma": (float, 1.0),
    "a0": (float, 1.0),
    "power": (float, 1.0),
    "phi0": (float, 0.0),
    "saturation": (float, 0.0),
    "grid_n": (int, 2**16),
    "grid_span": (float, 200.0),
    "delta_range": (str, "-5,5,101"),
    "omega_range": (str, "0,1,11"),
    "eta_range": (str, "1,1,1"),
    "t_window": (float, 10.0),
    "spectral_stride": (int, 1),
    "pattern": (str, "linear"),
    "theta_min": (float, 0.0),
    "theta_max": (float, math.pi),
    "phi_min": (float, 0.0),
    "phi_max": (float, 2.0 * math.pi),
    "quad_order": (int, 64),
    "quad_tol": (float, 1e-10),
    "format": (str, "csv"),
    "out": (str, None),
}


class ConfigError(ValueError):
    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


@dataclass
class RunConfig:
    mode: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.values[key]

    def echo(self):
        """``key=value`` lines for the output header, sorted for determinism."""
        return [f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in sorted(self.values.items())]

    @property
    def atom(self):
        return _build("gamma", AtomParams, self["gamma"])

    @property
    def coupling(self):
        try:
            return CouplingParams(self["omega"], self["eta"])
        except ValueError as exc:
            raise ConfigError("omega" if "omega" in str(exc) else "eta", str(exc)) from None

    @property
    def grid(self):
        try:
            return DetuningGrid.for_linewidth(self["gamma"], n=self["grid_n"], span=self["grid_span"])
        except ValueError as exc:
            key = "grid_n" if "size" in str(exc) else "grid_span"
            raise ConfigError(key, str(exc)) from None


def _build(key, factory, *args):
    try:
        return factory(*args)
    except ValueError as exc:
        raise ConfigError(key, str(exc)) from None


def _fmt(x):
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def parse_range(key, text):
    """``"start,stop,count"`` -> evenly spaced floats (count >= 1)."""
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) != 3:
        raise ConfigError(key, f"expected 'start,stop,count', got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(key, f"expected 'start,stop,count', got {text!r}") from None
    if count < 1:
        raise ConfigError(key, "count must be >= 1")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)


def read_config_file(path):
    """Flat ``key = value`` file -> dict of raw strings."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", str(exc)) from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("config", f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def resolve_config(mode, file_values, overrides) -> RunConfig:
    """Merge defaults, file values and command-line overrides (last wins)."""
    if mode not in MODES:
        raise ConfigError("mode", f"unknown mode {mode!r}")
    raw = dict(file_values)
    raw.update({k: v for k, v in overrides.items() if v is not None})
    unknown = sorted(set(raw) - set(_KEYS))
    if unknown:
        raise ConfigError(unknown[0], "unknown configuration key")
    values = {}
    for key, (conv, default) in _KEYS.items():
        if key in raw:
            try:
                values[key] = conv(raw[key])
            except (TypeError, ValueError):
                raise ConfigError(key, f"cannot parse {raw[key]!r} as {conv.__name__}") from None
        else:
            values[key] = default
    if values["format"] not in ("csv", "json"):
        raise ConfigError("format", "must be 'csv' or 'json'")
    if values["spectral_stride"] < 1:
        raise ConfigError("spectral_stride", "must be >= 1")
    if not values["t_window"] > 0:
        raise ConfigError("t_window", "must be > 0")
    return RunConfig(mode, values)


@dataclass
class Table:
    name: str
    columns: list
    rows: list


@dataclass
class RunResult:
    tables: list
    notes: list = field(default_factory=list)
    exit_code: int = EXIT_OK


def run_mono(config) -> RunResult:
    atom, coupling = config.atom, config.coupling
    s = config["saturation"]
    drive = _build("power", DriveParams, config["power"], config["phi0"], 0.0)
    if s < 0:
        raise ConfigError("saturation", "must be >= 0")
    delta = parse_range("delta_range", config["delta_range"]) * atom.gamma
    p_sc = scattered_power(drive.power, coupling, delta, atom, s)
    ph = scattered_phase(delta, atom)
    ph_g = scattered_phase(delta, atom, gouy=True)
    notes = []
    if s == 0:
        pw = channel_powers(drive, coupling, delta, atom)
        parts = [pw.p_coh, pw.p_incoh, pw.p_back]
        residual = pw.p_coh + pw.p_incoh + pw.p_back - drive.power
    else:
        # the channel partition is only defined for elastic scattering
        parts = [np.full_like(delta, np.nan)] * 3
        residual = np.full_like(delta, np.nan)
        notes.append("saturation != 0: channel powers undefined, written as nan")
    cols = ["delta", "p_sc", "phase_nogouy", "phase_gouy", "p_coh", "p_incoh", "p_back", "energy_residual"]
    data = np.column_stack([delta, p_sc, ph, ph_g, *parts, residual])
    return RunResult([Table("mono", cols, data.tolist())], notes)


def run_pulse(config) -> RunResult:
    atom, coupling, grid = config.atom, config.coupling, config.grid
    pulse = _build("a0", PulseParams, config["a0"], atom)
    phi0 = config["phi0"]
    spectra = scatter_pulse(pulse, coupling, grid, phi0)
    stride = config["spectral_stride"]

    spec_cols = ["delta"]
    spec_data = [grid.samples[::stride]]
    for ch in CHANNELS:
        spec_cols += [f"s_{ch}_re", f"s_{ch}_im"]
        spec_data += [spectra[ch].real[::stride], spectra[ch].imag[::stride]]

    plan = TransformPlan(grid)
    t = plan.times
    window = np.abs(t) <= config["t_window"] / atom.gamma
    time_cols = ["t"]
    time_data = [t[window]]
    worst = 0.0
    for ch in CHANNELS:
        exact = analytic_time_domain(ch, pulse, coupling, t, phi0)
        numeric = inverse_transform(spectra[ch], plan).values
        worst = max(worst, float(np.max(np.abs(numeric - exact)[window])))
        time_cols += [f"{ch}_re", f"{ch}_im", f"{ch}_fft_re", f"{ch}_fft_im"]
        time_data += [exact.real[window], exact.imag[window], numeric.real[window], numeric.imag[window]]

    dec = decompose_coherent(pulse, coupling, phi0)
    f_exact = absorbed_fraction(coupling)
    f_parseval = absorbed_fraction_parseval(pulse, coupling, grid, phi0)
    summary = [
        ["rising_coeff_re", dec.rising_coeff.real],
        ["rising_coeff_im", dec.rising_coeff.imag],
        ["decaying_coeff_re", dec.decaying_coeff.real],
        ["decaying_coeff_im", dec.decaying_coeff.imag],
        ["absorbed_fraction", f_exact],
        ["absorbed_fraction_parseval", f_parseval],
        ["absorbed_fraction_difference", f_parseval - f_exact],
        ["envelope_max_deviation", worst],
    ]
    result = RunResult(
        [
            Table("spectral", spec_cols, np.column_stack(spec_data).tolist()),
            Table("time", time_cols, np.column_stack(time_data).tolist()),
            Table("summary", ["quantity", "value"], summary),
        ]
    )
    if abs(f_parseval - f_exact) > FRACTION_TOLERANCE:
        result.notes.append(f"absorbed fraction oracle off by {f_parseval - f_exact:.3e}")
        result.exit_code = EXIT_TOLERANCE
    if worst > ENVELOPE_TOLERANCE * pulse.a0:
        result.notes.append(f"time-domain oracle off by {worst:.3e}")
        result.exit_code = EXIT_TOLERANCE
    return result


def run_sweep(config) -> RunResult:
    atom = config.atom
    a0 = config["a0"]
    pulse = _build("a0", PulseParams, a0, atom)
    drive = _build("power", DriveParams, config["power"], config["phi0"], 0.0)
    omegas = parse_range("omega_range", config["omega_range"])
    etas = parse_range("eta_range", config["eta_range"])
    cols = [
        "omega", "eta", "absorbed_fraction",
        "rising_coeff_re", "rising_coeff_im", "decaying_coeff_re", "decaying_coeff_im",
        "p_coh", "p_incoh", "p_back",
    ]
    rows = []
    for om in np.sort(omegas):
        for eta in np.sort(etas):
            try:
                coupling = CouplingParams(float(om), float(eta))
            except ValueError as exc:
                key = "omega_range" if "omega" in str(exc) else "eta_range"
                raise ConfigError(key, str(exc)) from None
            dec = decompose_coherent(pulse, coupling, config["phi0"])
            pw = channel_powers(drive, coupling, 0.0, atom)
            rows.append([
                coupling.omega, coupling.eta, absorbed_fraction(coupling),
                dec.rising_coeff.real, dec.rising_coeff.imag,
                dec.decaying_coeff.real, dec.decaying_coeff.imag,
                float(pw.p_coh), float(pw.p_incoh), float(pw.p_back),
            ])
    return RunResult([Table("sweep", cols, rows)])


def run_solid_angle(config) -> RunResult:
    try:
        pattern = DipolePattern(config["pattern"])
    except ValueError:
        raise ConfigError("pattern", "must be 'linear' or 'circular'") from None
    th0, th1, ph0, ph1 = (config[k] for k in ("theta_min", "theta_max", "phi_min", "phi_max"))
    if not 0.0 <= th1 <= math.pi:
        raise ConfigError("theta_max", "must lie in [0, pi]")
    if not 0.0 <= th0 <= th1:
        raise ConfigError("theta_min", "must lie in [0, theta_max]")
    if not 0.0 <= ph1 - ph0 <= 2.0 * math.pi:
        raise ConfigError("phi_max", "need 0 <= phi_max - phi_min <= 2 pi")
    aperture = AngularAperture(th0, th1, ph0, ph1)
    quad = _build("quad_order", QuadratureSpec, config["quad_order"], config["quad_tol"])
    cols = ["omega", "error_estimate"]
    try:
        value, error = weighted_solid_angle(pattern, aperture, quad, full_output=True)
    except QuadratureError as exc:
        return RunResult(
            [Table("solid_angle", cols, [[exc.value, exc.error]])], [str(exc)], EXIT_TOLERANCE
        )
    return RunResult([Table("solid_angle", cols, [[value, error]])])


RUNNERS = {"mono": run_mono, "pulse": run_pulse, "sweep": run_sweep, "solid-angle": run_solid_angle}


def _cell(v):
    if isinstance(v, str):
        return v
    return _fmt(v)


def render_csv(config, table):
    buf = io.StringIO()
    buf.write(f"# atomscatter {config.mode} table={table.name}\n")
    for line in config.echo():
        buf.write(f"# {line}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, str):
        return v
    v = float(v)
    return v if math.isfinite(v) else repr(v)


def render_json(config, result):
    doc = {
        "mode": config.mode,
        "config": {k: _json_value(v) if isinstance(v, float) else v for k, v in sorted(config.values.items())},
        "tables": {
            t.name: {"columns": t.columns, "rows": [[_json_value(v) for v in row] for row in t.rows]}
            for t in result.tables
        },
        "notes": result.notes,
    }
    return json.dumps(doc, indent=1) + "\n"


def write_result(config, result, stdout):
    """Write tables to ``config['out']`` (or stdout).

    CSV with several tables goes to one file per table, named
    ``<stem>_<table><suffix>``.  JSON always goes to a single file.
    """
    out = config["out"]
    if config["format"] == "json":
        text = render_json(config, result)
        if out is None:
            stdout.write(text)
        else:
            Path(out).write_text(text)
        return
    if out is None:
        for table in result.tables:
            stdout.write(render_csv(config, table))
        return
    path = Path(out)
    if len(result.tables) == 1:
        path.write_text(render_csv(config, result.tables[0]))
        return
    for table in result.tables:
        path.with_name(f"{path.stem}_{table.name}{path.suffix or '.csv'}").write_text(
            render_csv(config, table)
        )


def build_parser():
    parser = argparse.ArgumentParser(prog="atomscatter", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode in MODES:
        p = sub.add_parser(mode)
        p.add_argument("--config", help="flat key = value file")
        for key in _KEYS:
            p.add_argument("--" + key.replace("_", "-"), dest=key, default=None)
    return parser


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    overrides = {k: v for k, v in vars(args).items() if k in _KEYS}
    try:
        file_values = read_config_file(args.config) if args.config else {}
        config = resolve_config(args.mode, file_values, overrides)
        result = RUNNERS[args.mode](config)
        write_result(config, result, stdout)
    except ConfigError as exc:
        stderr.write(f"atomscatter: config error in '{exc.key}': {exc}\n")
        return EXIT_CONFIG
    except OSError as exc:
        stderr.write(f"atomscatter: config error in 'out': {exc}\n")
        return EXIT_CONFIG
    for note in result.notes:
        stderr.write(f"atomscatter: {note}\n")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
