"""Result tables, delimited output, and figure rendering for the CLI.

Artifacts are deterministic: a fixed config and seed produce byte-identical
CSV/JSON files (no timestamps, fixed float formatting).  CSV carries one
leading comment line with the version, seed and config hash; JSON mirrors
the same columns/rows schema.  Floats are written with 17 significant
digits so they round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DomainError

FLOAT_FORMAT = "%.17g"


@dataclass
class Table:
    """Column-oriented result set plus provenance metadata.

    ``figure_hints`` only parameterizes the rendered figure (e.g. a shaded
    window); it is never serialized into the data artifacts."""

    columns: list[str]
    rows: list[list]
    meta: dict = field(default_factory=dict)
    figure_hints: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FORMAT % value
    return str(value)


def _meta_comment(meta: dict) -> str:
    parts = [f"{key}={meta[key]}" for key in sorted(meta)]
    return "# " + " ".join(parts)


def write_csv(table: Table, path: Path | str):
    path = Path(path)
    lines = [_meta_comment(table.meta), ",".join(table.columns)]
    for row in table.rows:
        if len(row) != len(table.columns):
            raise DomainError(
                f"row width {len(row)} does not match {len(table.columns)} columns"
            )
        lines.append(",".join(_format_cell(cell) for cell in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_json(table: Table, path: Path | str):
    path = Path(path)
    payload = {
        "meta": dict(sorted(table.meta.items())),
        "columns": table.columns,
        "rows": table.rows,
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=False) + "\n",
                    encoding="utf-8", newline="\n")


def read_json(path: Path | str) -> Table:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return Table(columns=payload["columns"], rows=payload["rows"],
                 meta=payload["meta"])


def render_figure(mode: str, table: Table, path: Path | str) -> bool:
    """Draw the mode's standard figure next to the delimited output.

    Returns False for modes without a natural graphic (scalar reports).
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    try:
        if mode == "ut-curve":
            ax.plot(table.column("phi_e"), table.column("u_over_t"), lw=1.5)
            if "shade_from" in table.figure_hints:
                ax.axvspan(table.figure_hints["shade_from"],
                           table.figure_hints["shade_to"],
                           alpha=0.2, color="tab:orange",
                           label="accessible window")
                ax.legend(fontsize=8)
            ax.set_xlabel(r"external phase $\phi_e$")
            ax.set_ylabel(r"$|U/t|$")
            ax.set_title("On-site vs transfer energy over external phase")
        elif mode == "spectrum":
            values = table.column("eigenvalue")
            ax.plot(range(len(values)), values, ".", ms=4)
            ax.set_xlabel("level index")
            ax.set_ylabel("eigenvalue")
            ax.set_title("Spectrum")
        elif mode == "evolve":
            times = table.column("time")
            for name in table.columns:
                if name.startswith("sz_"):
                    ax.plot(times, table.column(name), lw=1.0, label=name)
            ax.set_xlabel("time")
            ax.set_ylabel(r"$\langle\sigma^z\rangle$")
            ax.legend(fontsize=7, ncol=2)
            ax.set_title("Qubit polarization")
        elif mode == "disorder":
            samples = table.column("sample")
            ax.bar(samples, table.column("deviation"), color="tab:blue")
            ax.set_xlabel("realization")
            ax.set_ylabel("deviation from clean system")
            ax.set_title("Disorder sweep")
        elif mode == "verify":
            names = table.column("check")
            deviations = [max(v, 1e-18) for v in table.column("max_deviation")]
            tolerances = table.column("tolerance")
            pos = range(len(names))
            ax.barh(pos, deviations, color="tab:blue", label="measured")
            ax.plot(tolerances, pos, "r|", ms=14, label="tolerance")
            ax.set_yticks(pos, names, fontsize=7)
            ax.set_xscale("log")
            ax.set_xlabel("max deviation")
            ax.legend(fontsize=7)
            ax.set_title("Verification checks")
        else:
            return False
        fig.tight_layout()
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return True
