"""Byte-stable report serialization plus optional static plots.

Reports embed the seed and a short hash of the producing config, so two runs
of the same command can be compared file-for-file.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Mapping, Sequence

from ..domain import UserActKind
from ..rl.train import Checkpoint
from .cross import CrossMatrix
from .metrics import MetricReport


def config_hash(config: Mapping) -> str:
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def write_text(path: str | Path, content: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content)
    return path


def metrics_json(reports: Sequence[MetricReport], seed: int, config: Mapping) -> str:
    payload = {
        "seed": seed,
        "config_hash": config_hash(dict(config)),
        "reports": [r.to_json() for r in reports],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def cross_csv(matrix: CrossMatrix, config: Mapping) -> str:
    lines = [f"# seed={matrix.seed} episodes={matrix.episodes} config={config_hash(dict(config))}"]
    lines.append("simulator," + ",".join(f"sys-{s}" for s in matrix.system_ids))
    for sim_id, row in zip(matrix.sim_ids, matrix.cells):
        lines.append(sim_id + "," + ",".join(f"{v:.4f}" for v in row))
    averages = matrix.column_averages
    lines.append(
        "average," + ",".join(f"{averages[s]:.4f}" for s in matrix.system_ids)
    )
    return "\n".join(lines) + "\n"


def hist_csv(histograms: Mapping[str, Mapping[UserActKind, float]], seed: int) -> str:
    lines = [f"# seed={seed}"]
    lines.append("act," + ",".join(histograms))
    for kind in UserActKind:
        values = ",".join(f"{hist[kind]:.4f}" for hist in histograms.values())
        lines.append(f"{kind.value},{values}")
    return "\n".join(lines) + "\n"


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "dialoglab"
    return plt


def save_curve_svg(
    path: str | Path, curves: Mapping[str, Sequence[Checkpoint]]
) -> Path:
    """Success-rate learning curves, one line per training run."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, curve in curves.items():
        ax.plot(
            [p.episode for p in curve],
            [p.success_rate for p in curve],
            marker="o",
            markersize=3,
            label=label,
        )
    ax.set_xlabel("episodes")
    ax.set_ylabel("success rate")
    ax.set_ylim(0.0, 1.0)
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def save_hist_svg(
    path: str | Path, histograms: Mapping[str, Mapping[UserActKind, float]]
) -> Path:
    """Grouped act-frequency bars, one group of bars per histogram."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 4))
    kinds = list(UserActKind)
    width = 0.8 / max(len(histograms), 1)
    for offset, (label, hist) in enumerate(histograms.items()):
        xs = [i + offset * width for i in range(len(kinds))]
        ax.bar(xs, [hist[k] for k in kinds], width=width, label=label)
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(kinds))])
    ax.set_xticklabels([k.value for k in kinds], rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("frequency")
    ax.legend(fontsize=8)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
