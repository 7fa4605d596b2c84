"""The three figure kinds: heatmap, curves, threshold.

Rendering is pure: fixed style, fixed dpi, pinned PNG metadata, no
timestamps, so the same CSV yields byte-identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaMismatch, read_sweep, read_threshold

KINDS = ("heatmap", "curves", "threshold")

_SAVE_OPTS = dict(dpi=150, metadata={"Software": "ringfigs"})

AMPLITUDE_LABEL = r"$\phi_A$ (units of $\pi$)"
FREQUENCY_LABEL = r"$\nu$ (units of $J$)"


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple
    output: str
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaMismatch(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise SchemaMismatch("at least one input CSV is required")


def _panel_label(meta):
    state = meta.get("state", "")
    n = meta.get("N", "?")
    return f"{state}, N={n}"


def _render_heatmap(spec):
    tables = [read_sweep(p) for p in spec.inputs]
    fig, axes = plt.subplots(
        1, len(tables), figsize=(4.2 * len(tables), 3.6), squeeze=False,
        constrained_layout=True,
    )
    for ax, table in zip(axes[0], tables):
        mesh = ax.pcolormesh(
            table.amplitudes / np.pi,
            table.frequencies,
            table.values.T,
            shading="nearest",
            vmin=0.0,
            vmax=1.0,
            cmap="viridis",
        )
        ax.set_yscale("log")
        ax.set_xlabel(AMPLITUDE_LABEL)
        ax.set_ylabel(FREQUENCY_LABEL)
        ax.set_title(_panel_label(table.metadata), fontsize=9)
        fig.colorbar(mesh, ax=ax, label=r"$\overline{F}$")
    return fig


def _render_curves(spec):
    fig, ax = plt.subplots(figsize=(5.2, 3.8), constrained_layout=True)
    for path in spec.inputs:
        table = read_sweep(path)
        for i, amp in enumerate(table.amplitudes):
            ax.plot(
                table.frequencies,
                table.values[i],
                marker=".",
                markersize=3,
                label=rf"$\phi_A = {amp / np.pi:.3g}\pi$",
            )
    ax.set_xscale("log")
    ax.set_xlabel(FREQUENCY_LABEL)
    ax.set_ylabel(r"$\overline{F}$")
    ax.set_ylim(0.0, 1.02)
    ax.legend(fontsize=7, ncol=2)
    return fig


def _render_threshold(spec):
    fig, ax = plt.subplots(figsize=(5.2, 3.8), constrained_layout=True)
    styles = {"numeric": dict(ls="-", marker="o", ms=3), "theory": dict(ls="--")}
    for path in spec.inputs:
        table = read_threshold(path)
        for (source, target), (alphas, nus) in sorted(table.groups.items()):
            order = np.argsort(alphas)
            ax.plot(
                alphas[order],
                nus[order],
                label=rf"{source}, $\overline{{F}}_c = {target:g}$",
                **styles[source],
            )
    ax.set_xlabel(r"packet width $\alpha$")
    ax.set_ylabel(r"$\nu_c$ (units of $J$)")
    ax.legend(fontsize=8)
    return fig


_RENDERERS = {
    "heatmap": _render_heatmap,
    "curves": _render_curves,
    "threshold": _render_threshold,
}


def render(spec: FigureSpec) -> str:
    """Render the figure; returns the output path. No file on failure."""
    fig = _RENDERERS[spec.kind](spec)
    if spec.title:
        fig.suptitle(spec.title)
    try:
        fig.savefig(spec.output, **_SAVE_OPTS)
    finally:
        plt.close(fig)
    return spec.output
