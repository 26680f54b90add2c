"""Matplotlib renderings of reports: hypercube tables, the Lyubeznik matrix
and cycle multiplicities."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .report import cube_record  # noqa: E402

STYLE = {
    "font.size": 8,
    "axes.titlesize": 9,
    "axes.labelsize": 8,
    "xtick.labelsize": 7,
    "ytick.labelsize": 7,
    "figure.dpi": 120,
    "savefig.bbox": "tight",
}


def short_label(base: list[str], width: int = 36) -> str:
    text = "X" if not base else "V(" + ", ".join(base) + ")"
    return text if len(text) <= width else text[: width - 3] + "..."


def _save(fig, path: Path) -> Path:
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_cube(name: str, cube: dict, path: Path) -> Path:
    """Components against vertices; pruned survivors are boxed."""
    labels = list(cube["vertices"])
    rows = sorted(cube["components"], key=lambda row: (len(row["base"]), row["base"]))
    grid = [[row["entries"].get(v, 0) for v in labels] for row in rows]
    survivors = {
        (r, c)
        for c, v in enumerate(labels)
        for e in cube["pruned"].get(v, [])
        for r, row in enumerate(rows)
        if row["conormal"] == e["conormal"]
    }
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(max(4.0, 0.32 * len(labels) + 2.5), max(2.0, 0.28 * len(rows) + 1.2)))
        top = max((m for r in grid for m in r), default=1) or 1
        ax.imshow(grid, cmap="Blues", vmin=0, vmax=top + 1, aspect="auto")
        for r, vals in enumerate(grid):
            for c, m in enumerate(vals):
                if m:
                    ax.text(c, r, str(m), ha="center", va="center", fontsize=6)
        for r, c in survivors:
            ax.add_patch(Rectangle((c - 0.5, r - 0.5), 1, 1, fill=False, edgecolor="crimson", linewidth=1.4))
        ax.set_xticks(range(len(labels)), labels, rotation=90)
        ax.set_yticks(range(len(rows)), [short_label(row["base"]) for row in rows])
        ax.set_xlabel("vertex")
        ax.set_title(f"{name}: multiplicities by vertex (boxed: survives pruning)")
        return _save(fig, path)


def plot_lambda(rows: list[list[int]], path: Path) -> Path:
    d = len(rows) - 1
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(0.5 * d + 2.2, 0.5 * d + 2.0))
        ax.imshow(rows, cmap="Greens", vmin=0, vmax=max(max(r) for r in rows) + 1)
        for p, row in enumerate(rows):
            for i, v in enumerate(row):
                ax.text(i, p, str(v), ha="center", va="center", color="black" if i >= p else "0.6")
        ax.set_xticks(range(d + 1))
        ax.set_yticks(range(d + 1))
        ax.set_xlabel("i")
        ax.set_ylabel("p")
        ax.set_title("Lyubeznik numbers")
        return _save(fig, path)


def plot_cycle(title: str, labels: list[str], mults: list[int], path: Path) -> Path:
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 0.3 * len(labels) + 1.0))
        ax.barh(range(len(labels)), mults, color="steelblue")
        ax.set_yticks(range(len(labels)), labels)
        ax.invert_yaxis()
        ax.set_xlabel("multiplicity")
        ax.xaxis.get_major_locator().set_params(integer=True)
        ax.set_title(title)
        return _save(fig, path)


def render(report, directory: str | Path, stem: str = "report") -> list[Path]:
    """Write the figures for a report; returns the paths written."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    res = report.result
    paths = []
    if report.command == "localize":
        cyc = res["cycle"]
        labels = [short_label(e["base"]) for e in cyc]
        paths.append(plot_cycle("localized cycle", labels, [e["multiplicity"] for e in cyc], out_dir / f"{stem}-cycle.png"))
    elif report.command == "decompose":
        mins = res["minimal"]
        if mins:
            labels = [short_label(e["prime"]) for e in mins]
            paths.append(plot_cycle("minimal primes", labels, [e["multiplicity"] for e in mins], out_dir / f"{stem}-primes.png"))
    else:
        if report.command == "lyubeznik":
            paths.append(plot_lambda(res["lambda"], out_dir / f"{stem}-lambda.png"))
        for name, (cube, pruned) in report.cubes.items():
            safe = name.replace("^", "")
            paths.append(plot_cube(name, cube_record(cube, pruned, True), out_dir / f"{stem}-cube-{safe}.png"))
        coh = [(f"H^{r}: {short_label(e['base'])}", e["multiplicity"]) for r, cyc in res["cohomology"].items() for e in cyc]
        if coh:
            labels, mults = zip(*coh)
            paths.append(plot_cycle("local cohomology cycles", list(labels), list(mults), out_dir / f"{stem}-cohomology.png"))
    return paths
