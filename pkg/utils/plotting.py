"""
CSV and SVG writers for sampled Kippenhahn curves.
"""
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from model.curve import samples_to_frame  # noqa: E402

CONIC_POINTS = 721
STROKES = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"]


def write_csv(samples, output_file):
    """Write theta,branch,x,y,flag rows, one per sample."""
    frame = samples_to_frame(samples)
    frame.to_csv(output_file, index=False, float_format="%.15g")
    return output_file


def conic_points(spec, count=CONIC_POINTS):
    """Points on the ellipse (or focal segment when C = 0) of one EllipseSpec."""
    p, X, C = spec.as_floats()
    t = np.linspace(0.0, 2.0 * np.pi, count)
    major = np.sqrt(max(C, 0.0) + X * X)
    minor = np.sqrt(max(C, 0.0))
    return p + major * np.cos(t), minor * np.sin(t)


def write_svg(samples, specs, output_file, verification=None, title=None):
    """
    Plot sampled envelope points with the predicted conics.

    Args:
        samples (list[CurveSample]): Curve samples.
        specs (list[EllipseSpec]): Conics drawn as polylines, one stroke each.
        output_file (str): Target .svg path.
        verification (ConicVerification, optional): Leftover samples are drawn as black dots.
        title (str, optional): Figure title.

    Returns:
        str: output_file.
    """
    # fixed hash salt and no date keep the file byte-identical between runs
    plt.rcParams["svg.hashsalt"] = "kippenhahn-ellipses"
    fig, ax = plt.subplots(figsize=(6, 6))
    x = np.array([s.x for s in samples])
    y = np.array([s.y for s in samples])
    ax.plot(x, y, linestyle="none", marker=".", markersize=1.5, color="#7f7f7f", label="samples")
    for k, spec in enumerate(specs):
        cx, cy = conic_points(spec)
        ax.plot(cx, cy, linewidth=1.0, color=STROKES[k % len(STROKES)], label=spec.label or f"E{k + 1}")
    if verification is not None and verification.leftover:
        idx = np.asarray(verification.leftover, dtype=int)
        ax.plot(x[idx], y[idx], linestyle="none", marker="o", markersize=2.0, color="black", label="off every conic")
    ax.axhline(0.0, color="#cccccc", linewidth=0.5)
    ax.axvline(0.0, color="#cccccc", linewidth=0.5)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    if title:
        ax.set_title(title)
    if specs or (verification is not None and verification.leftover):
        ax.legend(loc="upper right", fontsize="small")
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    fig.savefig(output_file, format="svg", metadata={"Date": None})
    plt.close(fig)
    return output_file
