"""Command-line front end.

Seven modes: ``spectrum``, ``evolve``, ``map-params``, ``circuit``,
``ut-curve``, ``verify`` and ``disorder``.  Options come from flags or from
an INI config file with one section per mode (flags win); unknown config
keys are rejected.  Results go to stdout and, with ``--output``, to CSV
and/or JSON artifacts (plus a PNG figure with ``--plot``).

Exit codes: 0 success, 1 validation/input error, 2 numerical or
convergence error (including failed ``verify`` checks).

Units: all energies are read as frequencies (E = h f) in the unit declared
with ``--unit``; a decoherence rate may carry an explicit Hz/kHz/MHz/GHz
suffix and is converted into the declared unit.  The default output
directory may be set through the HUBBARD_LADDER_OUTDIR environment
variable; no other environment variable is consulted.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

import numpy as np

from . import __version__
from .circuit import (
    CouplerSpec,
    DeviceChain,
    TransmonSpec,
    circuit_to_hubbard,
    ut_curve,
)
from .errors import DomainError, LadderError
from .hamiltonians import (
    HubbardParams,
    LadderParams,
    build_hfh,
    build_hqs,
    build_hqs_xx,
    map_params,
    inverse_map_params,
    spectral_offset,
)
from .jordan_wigner import check_algebra
from .operators import PauliString, project_state, realize_in_sector, sector_basis
from .protocols import (
    DisorderSpec,
    ExcitationPattern,
    check_symmetries,
    disorder_sweep,
    partition_experiment,
    prepare_product_state,
    tight_binding_experiment,
)
from .reporting import Table, render_figure, write_csv, write_json
from .solver import dense_spectrum, krylov_evolve, lanczos_extremal, observable_series

UNIT_SCALE = {"Hz": 1.0, "kHz": 1e3, "MHz": 1e6, "GHz": 1e9}


class ValidationError(DomainError):
    """CLI-level input problem; maps to exit code 1."""


def parse_rate(text: str, unit: str) -> float:
    """Rate with an optional frequency suffix, converted to the run unit."""
    text = text.strip()
    for suffix in ("GHz", "MHz", "kHz", "Hz"):
        if text.endswith(suffix):
            if unit == "dimensionless":
                raise ValidationError(
                    f"decoherence-rate carries the suffix {suffix} but the run "
                    "unit is dimensionless; declare --unit"
                )
            value = float(text[: -len(suffix)])
            return value * UNIT_SCALE[suffix] / UNIT_SCALE[unit]
    return float(text)


def parse_sites(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"cannot parse site list {text!r}: {exc}") from exc


def parse_bool(text: str) -> bool:
    lowered = str(text).strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValidationError(f"cannot parse boolean {text!r}")


@dataclass(frozen=True)
class Option:
    name: str                      # CLI name without leading dashes
    type: Callable[[str], Any]
    default: Any = None
    help: str = ""
    required: bool = False

    @property
    def dest(self) -> str:
        return self.name.replace("-", "_")


LADDER_OPTIONS = [
    Option("n", int, default=3, help="sites per chain"),
    Option("epsilon", float, default=1.0, help="qubit level splitting"),
    Option("gx", float, default=0.3, help="flip-flop coupling along the chains"),
    Option("gz", float, default=0.1, help="ZZ coupling across the rungs"),
]

MODE_OPTIONS: dict[str, list[Option]] = {
    "spectrum": LADDER_OPTIONS + [
        Option("model", str, default="qs",
               help="qs (ladder), xx (no rotating-wave), or fh (Hubbard)"),
        Option("mu", float, default=0.0, help="chemical potential (fh model)"),
        Option("u", float, default=0.0, help="on-site energy (fh model)"),
        Option("t", float, default=0.0, help="transfer energy (fh model)"),
        Option("nup", int, help="restrict to this many up-chain excitations"),
        Option("ndown", int, help="restrict to this many down-chain excitations"),
        Option("lowest", int,
               help="compute only this many lowest eigenvalues (Lanczos)"),
    ],
    "evolve": LADDER_OPTIONS + [
        Option("excite-down", parse_sites, default=[],
               help="comma-separated down-chain sites to excite"),
        Option("excite-up", parse_sites, default=[],
               help="comma-separated up-chain sites to excite"),
        Option("t-max", float, default=10.0, help="final time"),
        Option("steps", int, default=50, help="number of reported time steps"),
        Option("tol", float, default=1e-9, help="local Krylov error tolerance"),
    ],
    "map-params": [
        Option("n", int, default=1, help="sites per chain"),
        Option("epsilon", float, help="qubit level splitting"),
        Option("gx", float, help="flip-flop coupling"),
        Option("gz", float, help="ZZ coupling"),
        Option("mu", float, help="chemical potential (with --invert)"),
        Option("u", float, help="on-site energy (with --invert)"),
        Option("t", float, help="transfer energy (with --invert)"),
        Option("invert", parse_bool, default=False,
               help="map Hubbard parameters back to ladder parameters"),
    ],
    "circuit": [
        Option("n", int, default=2, help="sites per chain"),
        Option("ec", float, default=0.25, help="charging energy E_C"),
        Option("ej", float, default=12.5, help="Josephson energy E_J"),
        Option("el", float, default=250.0, help="inductive energy E_L"),
        Option("phi-e", float, default=np.pi / 2,
               help="external phase (radians), equal for all qubits"),
        Option("km", float, default=0.1, help="mutual inductance ratio M/L"),
        Option("cx-ratio", float, default=0.01, help="coupling ratio C^x/C"),
        Option("decoherence-rate", str, default="0.0001",
               help="qubit linewidth, optionally with a Hz/kHz/MHz/GHz suffix"),
    ],
    "ut-curve": [
        Option("gamma", float, default=1.0, help="circuit scale factor"),
        Option("points", int, default=200, help="number of grid points"),
        Option("phi-min", float, default=np.pi / 100, help="grid start"),
        Option("phi-max", float, default=np.pi * 99 / 100, help="grid end"),
        Option("shade-from", float,
               help="lower edge of the accessible flux window to shade in "
                    "the figure (e.g. where g^z falls to the linewidth)"),
        Option("shade-to", float,
               help="upper edge of the accessible flux window to shade"),
    ],
    "verify": LADDER_OPTIONS + [
        Option("trials", int, default=20,
               help="random parameter triples for the equivalence check"),
    ],
    "disorder": LADDER_OPTIONS + [
        Option("epsilon-spread", float, default=0.0),
        Option("gx-spread", float, default=0.0),
        Option("gz-spread", float, default=0.0),
        Option("distribution", str, default="uniform",
               help="uniform or gaussian"),
        Option("samples", int, default=10),
        Option("experiment", str, default="spectrum",
               help="spectrum or dynamics"),
        Option("excite-down", parse_sites, default=[1],
               help="initial excitations for the dynamics experiment"),
        Option("excite-up", parse_sites, default=[]),
        Option("t-max", float, default=10.0),
        Option("steps", int, default=20),
    ],
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad input; the CLI contract wants 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hubbard-ladder",
        description="Qubit-ladder emulator of the 1D Fermi-Hubbard model",
    )
    parser.add_argument("--version", action="version",
                        version=f"hubbard-ladder {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)
    for mode, options in MODE_OPTIONS.items():
        mode_parser = sub.add_parser(mode, description=f"run the {mode} mode")
        for opt in options:
            mode_parser.add_argument(
                f"--{opt.name}", dest=opt.dest, type=opt.type, default=None,
                help=opt.help,
            )
        mode_parser.add_argument("--config", type=Path,
                                 help="INI config file with a [%s] section" % mode)
        mode_parser.add_argument("--output", type=Path,
                                 help="artifact path stem (suffixes are added)")
        mode_parser.add_argument("--format", choices=("csv", "json", "both"),
                                 default=None, help="artifact format (default csv)")
        mode_parser.add_argument("--plot", action="store_true", default=None,
                                 help="render a PNG figure next to the artifact")
        mode_parser.add_argument("--seed", type=int, default=None,
                                 help="seed for every random draw (default 0)")
        mode_parser.add_argument("--unit", choices=("GHz", "MHz", "kHz", "Hz",
                                                    "dimensionless"),
                                 default=None, help="energy/frequency unit")
    return parser


# format stays None here so an --output suffix can still pick it.
COMMON_DEFAULTS = {"format": None, "plot": False, "seed": 0,
                   "unit": "dimensionless"}
COMMON_KEYS = ("output", "format", "plot", "seed", "unit")


def load_config_section(path: Path, mode: str,
                        options: list[Option]) -> dict[str, Any]:
    """Strictly parsed config values for one mode section."""
    if not path.exists():
        raise ValidationError(f"config file {path} does not exist")
    parser = configparser.ConfigParser()
    parser.read(path)
    if mode not in parser:
        return {}
    known = {opt.dest: opt for opt in options}
    values: dict[str, Any] = {}
    for key, raw in parser[mode].items():
        dest = key.replace("-", "_")
        if dest in known:
            try:
                values[dest] = known[dest].type(raw)
            except (ValueError, ValidationError) as exc:
                raise ValidationError(
                    f"config key '{key}' in [{mode}]: {exc}"
                ) from exc
        elif dest == "output":
            values["output"] = Path(raw)
        elif dest == "format":
            if raw not in ("csv", "json", "both"):
                raise ValidationError(
                    f"config key 'format' in [{mode}] must be csv, json or both"
                )
            values["format"] = raw
        elif dest == "plot":
            values["plot"] = parse_bool(raw)
        elif dest == "seed":
            values["seed"] = int(raw)
        elif dest == "unit":
            if raw not in ("GHz", "MHz", "kHz", "Hz", "dimensionless"):
                raise ValidationError(
                    f"config key 'unit' in [{mode}] has unknown value {raw!r}"
                )
            values["unit"] = raw
        else:
            raise ValidationError(f"unknown config key '{key}' in [{mode}]")
    return values


def resolve_options(args: argparse.Namespace) -> dict[str, Any]:
    """Merge flag values over config values over defaults."""
    options = MODE_OPTIONS[args.mode]
    config_values: dict[str, Any] = {}
    if args.config is not None:
        config_values = load_config_section(args.config, args.mode, options)
    resolved: dict[str, Any] = {}
    for opt in options:
        cli_value = getattr(args, opt.dest)
        if cli_value is not None:
            resolved[opt.dest] = cli_value
        elif opt.dest in config_values:
            resolved[opt.dest] = config_values[opt.dest]
        else:
            resolved[opt.dest] = opt.default
    for key in COMMON_KEYS:
        cli_value = getattr(args, key)
        if cli_value is not None:
            resolved[key] = cli_value
        elif key in config_values:
            resolved[key] = config_values[key]
        else:
            resolved[key] = COMMON_DEFAULTS.get(key)
    return resolved


def config_hash(mode: str, resolved: dict[str, Any]) -> str:
    """Digest of the computation-defining options; where the artifacts go
    (output, format, plot) must not change it."""
    canonical = {
        key: value for key, value in resolved.items()
        if key not in ("output", "format", "plot")
    }
    digest = hashlib.sha256(
        json.dumps({"mode": mode, "options": canonical},
                   sort_keys=True, default=str).encode()
    )
    return digest.hexdigest()[:12]


def _ladder_params(opts: dict[str, Any]) -> LadderParams:
    return LadderParams(n=opts["n"], epsilon=opts["epsilon"],
                        gx=opts["gx"], gz=opts["gz"])


def _pattern(opts: dict[str, Any]) -> ExcitationPattern:
    return ExcitationPattern.from_sites(down=opts["excite_down"],
                                        up=opts["excite_up"])


def _time_grid(opts: dict[str, Any]) -> np.ndarray:
    if opts["t_max"] < 0 or opts["steps"] < 1:
        raise ValidationError("t-max must be >= 0 and steps >= 1")
    return np.linspace(0.0, opts["t_max"], opts["steps"] + 1)


def run_spectrum(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    model = opts["model"]
    if model not in ("qs", "xx", "fh"):
        raise ValidationError(f"unknown model {opts['model']!r} (key 'model')")
    sector = None
    if (opts["nup"] is None) != (opts["ndown"] is None):
        raise ValidationError("give both 'nup' and 'ndown' or neither")
    if opts["nup"] is not None:
        sector = sector_basis(opts["n"], opts["nup"], opts["ndown"])
    if model == "fh":
        h = build_hfh(HubbardParams(n=opts["n"], mu=opts["mu"], u=opts["u"],
                                    t=opts["t"]), sector)
    elif model == "xx":
        h = build_hqs_xx(_ladder_params(opts), sector)
    else:
        h = build_hqs(_ladder_params(opts), sector)
    if opts["lowest"] is not None:
        result = lanczos_extremal(h, opts["lowest"], seed=opts["seed"])
    else:
        result = dense_spectrum(h, compute_vectors=False)
    nup = opts["nup"]
    ndown = opts["ndown"]
    rows = [[i, float(v), nup, ndown] for i, v in enumerate(result.eigenvalues)]
    table = Table(columns=["index", "eigenvalue", "sector_nup", "sector_ndown"],
                  rows=rows)
    lines = [f"{len(rows)} eigenvalues, lowest = {rows[0][1]!r}"]
    return table, lines


def run_evolve(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    n = opts["n"]
    params = _ladder_params(opts)
    pattern = _pattern(opts)
    times = _time_grid(opts)
    full = prepare_product_state(pattern, n)
    sector = full.sector
    psi0 = project_state(full, sector)
    h = build_hqs(params, sector)
    result = krylov_evolve(h, psi0, times, tol=opts["tol"])
    columns = ["time"]
    series = []
    for q in range(1, 2 * n + 1):
        label = f"sz_d{q}" if q <= n else f"sz_u{q - n}"
        columns.append(label)
        op = realize_in_sector(PauliString(1.0, {q: "Z"}), sector)
        series.append(observable_series(result, op))
    columns += ["norm", "energy"]
    series.append(np.array([s.norm() for s in result.states]))
    series.append(observable_series(result, h))
    rows = [[float(t)] + [float(s[i]) for s in series]
            for i, t in enumerate(times)]
    table = Table(columns=columns, rows=rows)
    lines = [f"evolved to t={times[-1]} in {result.steps_taken} steps "
             f"(max error estimate {result.max_error_estimate:.2e})"]
    return table, lines


def run_map_params(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    if opts["invert"]:
        for key in ("mu", "u", "t"):
            if opts[key] is None:
                raise ValidationError(f"--invert requires '{key}'")
        params = inverse_map_params(HubbardParams(
            n=opts["n"], mu=opts["mu"], u=opts["u"], t=opts["t"]
        ))
        rows = [["epsilon", float(params.epsilon)],
                ["gx", float(params.gx)],
                ["gz", float(params.gz)]]
    else:
        for key in ("epsilon", "gx", "gz"):
            if opts[key] is None:
                raise ValidationError(f"map-params requires '{key}'")
        hubbard = map_params(LadderParams(n=opts["n"], epsilon=opts["epsilon"],
                                          gx=opts["gx"], gz=opts["gz"]))
        rows = [["mu", hubbard.mu], ["u", hubbard.u], ["t", hubbard.t]]
    table = Table(columns=["parameter", "value"], rows=rows)
    lines = [f"{name} = {value}" for name, value in rows]
    return table, lines


def run_circuit(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    n = opts["n"]
    rate = parse_rate(opts["decoherence_rate"], opts["unit"])
    transmon = TransmonSpec(e_c=opts["ec"], e_j=opts["ej"], e_l=opts["el"],
                            phi_e=opts["phi_e"])
    coupler = CouplerSpec(k_m=opts["km"], cx_ratio=opts["cx_ratio"])
    device = DeviceChain(
        n=n,
        transmons=[transmon] * (2 * n),
        rung_couplers=[coupler] * n,
        chain_couplers=[opts["cx_ratio"]] * (n - 1),
    )
    report = circuit_to_hubbard(device, rate)
    rows = [
        ["epsilon", report.epsilon],
        ["gx", report.gx],
        ["gz", report.gz],
        ["mu", report.hubbard.mu],
        ["u", report.hubbard.u],
        ["t", report.hubbard.t],
        ["decoherence_rate", report.decoherence_rate],
        ["gx_ratio", report.gx_ratio],
        ["gz_ratio", report.gz_ratio],
        ["gx_feasible", report.gx_feasible],
        ["gz_feasible", report.gz_feasible],
        ["feasible", report.feasible],
    ]
    table = Table(columns=["quantity", "value"], rows=rows)
    lines = [f"{name} = {value}" for name, value in rows]
    return table, lines


def run_ut_curve(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    if opts["points"] < 2:
        raise ValidationError("'points' must be at least 2")
    grid = np.linspace(opts["phi_min"], opts["phi_max"], opts["points"])
    curve = ut_curve(opts["gamma"], grid)
    rows = [[float(p), float(v)] for p, v in zip(curve.phi_e, curve.u_over_t)]
    table = Table(columns=["phi_e", "u_over_t"], rows=rows)
    if opts["shade_from"] is not None or opts["shade_to"] is not None:
        # Accessible flux window; endpoints are the user's call (couplings
        # below the linewidth on the left, flux-noise susceptibility on the
        # right), drawn on the figure only.
        table.figure_hints = {
            "shade_from": opts["shade_from"] if opts["shade_from"] is not None
            else float(grid[0]),
            "shade_to": opts["shade_to"] if opts["shade_to"] is not None
            else float(grid[-1]),
        }
    mid = int(np.argmin(np.abs(grid - np.pi / 2)))
    lines = [f"{opts['points']} points, |U/t| = {rows[mid][1]:.4f} "
             f"near phi_e = pi/2"]
    return table, lines


VERIFY_TOLERANCES = {
    "equivalence": 1e-10,
    "fermionic-algebra": 1e-12,
    "population-commutators": 1e-12,
    "chain-swap": 1e-12,
    "tight-binding-spectrum": 1e-10,
    "tight-binding-dynamics": 1e-7,
    "partition-leakage": 1e-9,
    "partition-block": 1e-9,
}


def run_verify(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    n = opts["n"]
    if not 2 <= n <= 6:
        raise ValidationError("'n' must be between 2 and 6 for verify")
    params = _ladder_params(opts)
    rng = np.random.default_rng(opts["seed"])
    deviations: dict[str, float] = {}

    triples = [(opts["epsilon"], opts["gx"], opts["gz"])]
    triples += [tuple(rng.uniform(-2.0, 2.0, 3)) for _ in range(opts["trials"])]
    worst = 0.0
    for eps, gx, gz in triples:
        p = LadderParams(n=n, epsilon=eps, gx=gx, gz=gz)
        qs = dense_spectrum(build_hqs(p), compute_vectors=False).eigenvalues
        fh = dense_spectrum(build_hfh(map_params(p)),
                            compute_vectors=False).eigenvalues
        worst = max(worst, float(np.max(np.abs(
            qs - np.sort(fh + spectral_offset(p))
        ))))
    deviations["equivalence"] = worst

    deviations["fermionic-algebra"] = check_algebra(n).max_deviation

    symmetry = check_symmetries(params)
    deviations["population-commutators"] = max(symmetry.nup_commutator,
                                               symmetry.ndown_commutator)
    deviations["chain-swap"] = symmetry.swap_violation

    horizon = 10.0 / max(abs(opts["gx"]), 0.1)
    times = np.linspace(0.0, horizon, 17)
    tight = tight_binding_experiment(params, times=times)
    deviations["tight-binding-spectrum"] = tight.spectrum_deviation
    deviations["tight-binding-dynamics"] = tight.dynamics_deviation

    psi0 = prepare_product_state(ExcitationPattern.from_sites(down=[1]), n)
    partition = partition_experiment(params, max(1, n // 2), psi0, times)
    deviations["partition-leakage"] = partition.max_leakage
    deviations["partition-block"] = partition.block_deviation

    rows = []
    lines = []
    for check, tolerance in VERIFY_TOLERANCES.items():
        value = float(deviations[check])
        passed = value <= tolerance
        rows.append([check, value, tolerance, passed])
        lines.append(f"{'PASS' if passed else 'FAIL'}  {check:<24} "
                     f"max deviation {value:.3e} (tolerance {tolerance:.0e})")
    if symmetry.translation_spread is not None:
        lines.append(f"INFO  {'translation-spread':<24} "
                     f"{symmetry.translation_spread:.3e} (reported only)")
    table = Table(columns=["check", "max_deviation", "tolerance", "passed"],
                  rows=rows)
    return table, lines


def run_disorder(opts: dict[str, Any]) -> tuple[Table, list[str]]:
    params = _ladder_params(opts)
    spec = DisorderSpec(
        epsilon_spread=opts["epsilon_spread"],
        gx_spread=opts["gx_spread"],
        gz_spread=opts["gz_spread"],
        seed=opts["seed"],
        distribution=opts["distribution"],
    )
    kwargs: dict[str, Any] = {}
    if opts["experiment"] == "dynamics":
        kwargs["pattern"] = _pattern(opts)
        kwargs["times"] = _time_grid(opts)
    stats = disorder_sweep(params, spec, experiment=opts["experiment"],
                           samples=opts["samples"], **kwargs)
    rows = [[i, float(stats.deviations[i]), float(stats.conservation[i])]
            for i in range(stats.samples)]
    table = Table(columns=["sample", "deviation", "conservation_max"], rows=rows)
    lines = [f"{stats.samples} realizations: deviation mean {stats.mean:.6e}, "
             f"std {stats.std:.6e}",
             f"worst conservation violation {np.max(stats.conservation):.3e}"]
    return table, lines


RUNNERS = {
    "spectrum": run_spectrum,
    "evolve": run_evolve,
    "map-params": run_map_params,
    "circuit": run_circuit,
    "ut-curve": run_ut_curve,
    "verify": run_verify,
    "disorder": run_disorder,
}


def _artifact_paths(opts: dict[str, Any]) -> Path | None:
    output = opts.get("output")
    if output is None:
        return None
    output = Path(output)
    if output.suffix in (".csv", ".json"):
        if opts.get("format") is None:
            opts["format"] = output.suffix[1:]
        output = output.with_suffix("")
    outdir = os.environ.get("HUBBARD_LADDER_OUTDIR")
    if outdir and output.parent == Path("."):
        output = Path(outdir) / output
    return output


def emit(mode: str, table: Table, opts: dict[str, Any]) -> list[Path]:
    stem = _artifact_paths(opts)
    written: list[Path] = []
    if stem is None:
        if opts["plot"]:
            raise ValidationError("--plot needs --output to name the figure")
        return written
    stem.parent.mkdir(parents=True, exist_ok=True)
    fmt = opts["format"] or "csv"
    try:
        if fmt in ("csv", "both"):
            path = stem.with_suffix(".csv")
            write_csv(table, path)
            written.append(path)
        if fmt in ("json", "both"):
            path = stem.with_suffix(".json")
            write_json(table, path)
            written.append(path)
        if opts["plot"]:
            figure = stem.with_suffix(".png")
            if render_figure(mode, table, figure):
                written.append(figure)
    except OSError as exc:
        raise ValidationError(f"cannot write artifact: {exc}") from exc
    return written


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    mode = args.mode
    try:
        opts = resolve_options(args)
        opts_hash = config_hash(mode, opts)
        table, lines = RUNNERS[mode](opts)
        table.meta = {
            "config": opts_hash,
            "mode": mode,
            "seed": opts["seed"],
            "version": __version__,
        }
        written = emit(mode, table, opts)
    except ValidationError as exc:
        print(f"hubbard-ladder: {exc}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"hubbard-ladder: invalid input: {exc}", file=sys.stderr)
        return 1
    except LadderError as exc:
        print(f"hubbard-ladder: numerical failure: {exc}", file=sys.stderr)
        return 2
    for line in lines:
        print(line)
    for path in written:
        print(f"wrote {path}")
    if mode == "verify" and not all(row[3] for row in table.rows):
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
