"""Figure rendering for fpqsim output files.

Four figure kinds, selected by subcommand: `hom-heatmap` (coincidence
probability over the (eps, x) plane with the sub-threshold points overlaid
as a separate scatter layer), `two-color-levels` (sub-threshold point
clouds in the (x_s, x_i) plane, one color per input file),
`g2-trace` (delay dependence of the integrated correlation), and
`coeffs-spectrum` (transmission/reflection probabilities over phase).

Frequency-like axes are labeled in units of phases over pi. Heatmaps use
the viridis colormap with the scale fixed to [0, 1]; overlays draw in
crimson on top. Rendering is a pure function of the input files: styles
are pinned below, the SVG id salt is fixed, and no timestamps are written,
so identical inputs give identical output bytes. This package never
computes physics; it only draws what the files contain.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .datafiles import SchemaError, grid_from_rows, read_table, require_columns

KINDS = ("hom-heatmap", "two-color-levels", "g2-trace", "coeffs-spectrum")

# one color per input point set; cycles if more files are given
SERIES_COLORS = ("tab:blue", "tab:green", "tab:red", "tab:purple", "tab:orange")

_STYLE = {
    "figure.figsize": (6.4, 4.8),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 10.0,
    "axes.grid": False,
    "svg.hashsalt": "fpqsim-plots",
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure request: what to read, what to draw, where to write."""

    kind: str
    inputs: tuple
    out: str
    title: str = None
    x_range: tuple = None
    y_range: tuple = None


@dataclass(frozen=True)
class RenderInfo:
    out: str
    layers: tuple
    point_counts: tuple = field(default=())


def _finish(fig, ax, spec, layers, counts=()):
    if spec.title:
        ax.set_title(spec.title)
    if spec.x_range is not None:
        ax.set_xlim(*spec.x_range)
    if spec.y_range is not None:
        ax.set_ylim(*spec.y_range)
    fig.tight_layout()
    # mpl stamps a creation date into SVG metadata unless told not to
    metadata = {"Date": None} if spec.out.endswith(".svg") else None
    fig.savefig(spec.out, metadata=metadata)
    plt.close(fig)
    return RenderInfo(out=spec.out, layers=tuple(layers), point_counts=tuple(counts))


def _render_hom_heatmap(spec):
    grid_path = spec.inputs[0]
    meta, cols = read_table(grid_path)
    require_columns(grid_path, cols, ("epsilon", "x", "p_hom"))
    eps, x, grid = grid_from_rows(cols["epsilon"], cols["x"], cols["p_hom"])

    fig, ax = plt.subplots()
    mesh = ax.pcolormesh(x / math.pi, eps, grid, cmap="viridis",
                         vmin=0.0, vmax=1.0, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="p_hom")
    ax.set_xlabel("x / pi")
    ax.set_ylabel("mirror transmissivity eps")
    layers = ["heatmap"]
    counts = []
    if len(spec.inputs) > 1:
        pts_path = spec.inputs[1]
        _, pts = read_table(pts_path)
        require_columns(pts_path, pts, ("epsilon", "x"))
        n = pts["x"].size
        counts.append(n)
        if n:  # an empty selection leaves the heatmap bare
            ax.scatter(pts["x"] / math.pi, pts["epsilon"], s=4.0, c="crimson",
                       marker=".", linewidths=0.0, zorder=3.0,
                       label="sub-threshold")
            ax.legend(loc="upper right", framealpha=0.9)
            layers.append("overlay")
    return _finish(fig, ax, spec, layers, counts)


def _render_two_color_levels(spec):
    fig, ax = plt.subplots()
    counts = []
    for i, path in enumerate(spec.inputs):
        meta, cols = read_table(path)
        require_columns(path, cols, ("x_s", "x_i"))
        eps = float(meta.get("epsilon", "nan"))
        label = f"eps = {eps:g}" if math.isfinite(eps) else path
        ax.scatter(cols["x_s"] / math.pi, cols["x_i"] / math.pi, s=3.0,
                   c=SERIES_COLORS[i % len(SERIES_COLORS)], marker=".",
                   linewidths=0.0, label=label)
        counts.append(cols["x_s"].size)
    ax.set_xlabel("x_s / pi")
    ax.set_ylabel("x_i / pi")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", framealpha=0.9, markerscale=4.0)
    return _finish(fig, ax, spec, ["levels"], counts)


def _render_g2_trace(spec):
    path = spec.inputs[0]
    meta, cols = read_table(path)
    require_columns(path, cols, ("tau", "g2_tau"))
    fig, ax = plt.subplots()
    ax.plot(cols["tau"], cols["g2_tau"], color="tab:blue", lw=1.2)
    ax.set_xlabel("delay tau / t0")  # time axis, not a phase axis
    ax.set_ylabel("integrated G2")
    if "epsilon" in meta:
        ax.annotate(f"eps = {float(meta['epsilon']):g}", xy=(0.02, 0.95),
                    xycoords="axes fraction", va="top")
    return _finish(fig, ax, spec, ["trace"], (cols["tau"].size,))


def _render_coeffs_spectrum(spec):
    path = spec.inputs[0]
    meta, cols = read_table(path)
    require_columns(path, cols, ("x", "t_prob", "r_prob"))
    fig, ax = plt.subplots()
    xs = cols["x"] / math.pi
    ax.plot(xs, cols["t_prob"], color="tab:blue", lw=1.2, label="|t|^2")
    ax.plot(xs, cols["r_prob"], color="tab:orange", lw=1.2, label="|r|^2")
    ax.set_xlabel("x / pi")
    ax.set_ylabel("probability")
    ax.set_ylim(-0.02, 1.02)
    if "epsilon" in meta:
        ax.annotate(f"eps = {float(meta['epsilon']):g}", xy=(0.02, 0.95),
                    xycoords="axes fraction", va="top")
    ax.legend(loc="upper right", framealpha=0.9)
    return _finish(fig, ax, spec, ["spectrum"], (cols["x"].size,))


_RENDERERS = {
    "hom-heatmap": _render_hom_heatmap,
    "two-color-levels": _render_two_color_levels,
    "g2-trace": _render_g2_trace,
    "coeffs-spectrum": _render_coeffs_spectrum,
}


def render(spec: FigureSpec) -> RenderInfo:
    if spec.kind not in _RENDERERS:
        raise ValueError(f"unknown figure kind {spec.kind!r}")
    with plt.rc_context(_STYLE):
        return _RENDERERS[spec.kind](spec)


def _parse_range(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"range must be lo:hi, got {text!r}")
    return float(lo), float(hi)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fpqsim-plots",
        description="Render figures from fpqsim output files.")
    sub = parser.add_subparsers(dest="kind", required=True, metavar="kind")

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--out", required=True, help="image path (.png or .svg)")
    shared.add_argument("--title")
    shared.add_argument("--x-range", dest="x_range", type=_parse_range,
                        metavar="LO:HI")
    shared.add_argument("--y-range", dest="y_range", type=_parse_range,
                        metavar="LO:HI")

    p = sub.add_parser("hom-heatmap", parents=[shared],
                       help="coincidence probability over the (eps, x) plane")
    p.add_argument("--grid-file", required=True)
    p.add_argument("--points-file", help="sub-threshold points to overlay")

    p = sub.add_parser("two-color-levels", parents=[shared],
                       help="sub-threshold point clouds, one color per file")
    p.add_argument("--points-file", action="append", required=True,
                   help="repeatable")

    p = sub.add_parser("g2-trace", parents=[shared])
    p.add_argument("--trace-file", required=True)

    p = sub.add_parser("coeffs-spectrum", parents=[shared])
    p.add_argument("--coeffs-file", required=True)

    return parser


def _spec_from_args(args):
    if args.kind == "hom-heatmap":
        inputs = (args.grid_file,) + ((args.points_file,) if args.points_file else ())
    elif args.kind == "two-color-levels":
        inputs = tuple(args.points_file)
    elif args.kind == "g2-trace":
        inputs = (args.trace_file,)
    else:
        inputs = (args.coeffs_file,)
    return FigureSpec(kind=args.kind, inputs=inputs, out=args.out,
                      title=args.title, x_range=args.x_range, y_range=args.y_range)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        info = render(_spec_from_args(args))
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    counts = ", ".join(str(n) for n in info.point_counts) or "-"
    print(f"wrote {info.out} (layers: {', '.join(info.layers)}; points: {counts})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
