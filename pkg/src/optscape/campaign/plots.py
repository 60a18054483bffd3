"""Figure rendering over an analyze bundle.

Reads the bundle CSVs and writes SVG figures next to them. Figures carry no
analytical weight beyond the CSVs; they are generated deterministically
(fixed hash salt, no embedded dates) so bundles stay byte-comparable.
"""
from __future__ import annotations

import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "optscape"

_SAVEFIG = {"format": "svg", "metadata": {"Date": None}}


def _read_csv(path: Path):
    with path.open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _save(fig, path: Path):
    fig.savefig(path, **_SAVEFIG)
    plt.close(fig)


def plot_mean_ranks(bundle: Path, out: Path):
    rows = _read_csv(bundle / "mean_ranks_by_dim.csv")
    cds = {r["dim"]: float(r["critical_difference"])
           for r in _read_csv(bundle / "friedman_by_dim.csv")}
    dims = sorted({r["dim"] for r in rows}, key=int)
    fig, axes = plt.subplots(1, len(dims), figsize=(4 * len(dims), 3.2), squeeze=False)
    for ax, dim in zip(axes[0], dims):
        sub = sorted((r for r in rows if r["dim"] == dim),
                     key=lambda r: float(r["mean_rank"]))
        names = [r["optimizer"] for r in sub]
        vals = [float(r["mean_rank"]) for r in sub]
        ax.barh(names, vals, color="#4878a8")
        if dim in cds:
            ax.errorbar(vals, range(len(vals)), xerr=cds[dim] / 2.0,
                        fmt="none", ecolor="#333333", capsize=3)
        ax.set_title(f"dim {dim}")
        ax.set_xlabel("mean rank (lower is better)")
        ax.invert_yaxis()
    fig.tight_layout()
    _save(fig, out / "mean_ranks.svg")


def plot_regret_curves(bundle: Path, out: Path):
    rows = _read_csv(bundle / "regret_curves.csv")
    pooled = defaultdict(lambda: defaultdict(list))
    for r in rows:
        pooled[r["problem_id"]][r["optimizer"]].append(
            (int(r["eval_index"]), float(r["mean_regret"]))
        )
    problems = sorted(pooled)[:6]  # a readable sample of problems
    fig, axes = plt.subplots(2, 3, figsize=(12, 6), squeeze=False)
    for ax, pid in zip(axes.flat, problems):
        for opt in sorted(pooled[pid]):
            pts = sorted(pooled[pid][opt])
            ax.plot([p[0] for p in pts], [p[1] for p in pts], label=opt, lw=1.2)
        ax.set_yscale("symlog", linthresh=1e-8)
        ax.set_title(pid, fontsize=8)
    for ax in axes.flat[len(problems):]:
        ax.axis("off")
    if problems:
        axes[0][0].legend(fontsize=7)
    fig.supxlabel("evaluations")
    fig.supylabel("mean normalized regret")
    fig.tight_layout()
    _save(fig, out / "regret_curves.svg")


def plot_ert_ratios(bundle: Path, out: Path):
    path = bundle / "ert_ratio_by_dim.csv"
    if not path.exists():
        return
    rows = _read_csv(path)
    dims = sorted({r["dim"] for r in rows}, key=int)
    fig, axes = plt.subplots(1, len(dims), figsize=(4 * len(dims), 3.2), squeeze=False)
    for ax, dim in zip(axes[0], dims):
        sub = sorted((r for r in rows if r["dim"] == dim),
                     key=lambda r: float(r["mean_ratio"]))
        ax.barh([r["optimizer"] for r in sub],
                [float(r["mean_ratio"]) for r in sub], color="#7a9a5a")
        ax.axvline(1.0, color="#333333", lw=0.8, ls="--")
        ax.set_xscale("log")
        ax.set_title(f"dim {dim}")
        ax.set_xlabel("mean ERT ratio vs random")
        ax.invert_yaxis()
    fig.tight_layout()
    _save(fig, out / "ert_ratios.svg")


def plot_pca_scatter(bundle: Path, out: Path):
    path = bundle / "pca_scores.csv"
    if not path.exists():
        return
    rows = _read_csv(path)
    clusters = sorted({r["cluster"] for r in rows}, key=int)
    palette = plt.cm.tab10.colors
    fig, ax = plt.subplots(figsize=(6, 5))
    for ci, cl in enumerate(clusters):
        for cls, marker in (("BBOB", "o"), ("HPO", "^")):
            pts = [(float(r["pc1"]), float(r["pc2"])) for r in rows
                   if r["cluster"] == cl and r["class"] == cls]
            if pts:
                ax.scatter([p[0] for p in pts], [p[1] for p in pts],
                           s=18 if cls == "BBOB" else 48,
                           marker=marker, color=palette[ci % 10],
                           label=f"cluster {cl} ({cls})",
                           edgecolors="black", linewidths=0.3)
    ax.set_xlabel("PC1")
    ax.set_ylabel("PC2")
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, out / "pca_scores.svg")


def plot_loadings(bundle: Path, out: Path):
    path = bundle / "pca_loadings.csv"
    if not path.exists():
        return
    rows = _read_csv(path)
    names = [r["feature"] for r in rows]
    comps = [k for k in rows[0] if k != "feature"]
    data = [[float(r[c]) for r in rows] for c in comps]
    fig, ax = plt.subplots(figsize=(max(6, 0.22 * len(names)), 2.8))
    im = ax.imshow(data, aspect="auto", cmap="RdBu_r", vmin=-0.5, vmax=0.5)
    ax.set_yticks(range(len(comps)), comps)
    ax.set_xticks(range(len(names)), names, rotation=90, fontsize=5)
    fig.colorbar(im, ax=ax, shrink=0.8)
    fig.tight_layout()
    _save(fig, out / "pca_loadings.svg")


def render_report(bundle_dir, out_dir=None) -> Path:
    """Render all figures for a bundle; returns the figures directory."""
    bundle = Path(bundle_dir)
    out = Path(out_dir) if out_dir else bundle / "figures"
    out.mkdir(parents=True, exist_ok=True)
    plot_mean_ranks(bundle, out)
    plot_regret_curves(bundle, out)
    plot_ert_ratios(bundle, out)
    plot_pca_scatter(bundle, out)
    plot_loadings(bundle, out)
    return out
