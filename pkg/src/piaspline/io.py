"""File formats: points CSV, trace CSV, JSON summary, and curve SVG."""

import csv
import json
import math

import numpy as np

from .errors import EmptyFile, MalformedLine, MixedDimensions

SVG_MARGIN_FRACTION = 0.05


def read_points(path):
    """Read a points file: one point per line, 2 or 3 comma-separated
    floats; text after '#' is ignored; blank lines are skipped.

    :returns: (n, d) float array.
    :raises MalformedLine: on unparsable lines (with the 1-based line number).
    :raises MixedDimensions: if rows mix 2-D and 3-D points.
    :raises EmptyFile: if no data rows remain.
    """
    rows = []
    dim = None
    with open(path, newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [f.strip() for f in line.split(",")]
            if len(fields) not in (2, 3):
                raise MalformedLine(
                    lineno, raw.rstrip("\n"), f"expected 2 or 3 fields, got {len(fields)}"
                )
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise MalformedLine(lineno, raw.rstrip("\n"), "non-numeric field") from None
            if not all(math.isfinite(v) for v in values):
                raise MalformedLine(lineno, raw.rstrip("\n"), "non-finite value")
            if dim is None:
                dim = len(values)
            elif len(values) != dim:
                raise MixedDimensions(
                    f"line {lineno}: {len(values)}-D point in a {dim}-D file"
                )
            rows.append(values)
    if not rows:
        raise EmptyFile(f"no data rows in {path}")
    return np.asarray(rows, dtype=float)


def write_points(path, points, comment=None):
    """Write points as CSV (shortest round-tripping float format)."""
    points = np.asarray(points, dtype=float)
    with open(path, "w", newline="") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        for row in points:
            writer.writerow([repr(float(v)) for v in row])


def write_trace_csv(path, trace):
    """Write a trace as CSV with header k,epsilon (k = 0 is the initial guess)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "epsilon"])
        for k, eps in enumerate(trace.errors):
            writer.writerow([k, repr(float(eps))])


def summary_dict(config, trace, n, dim, scheme, tol, max_iter):
    """Build the JSON summary payload for one solve run."""
    omega = trace.omega_used
    return {
        "schema": "piaspline-summary-v1",
        "method": config.label,
        "family": config.family,
        "preconditioned": bool(config.preconditioned),
        "n": int(n),
        "dim": int(dim),
        "param_scheme": scheme,
        "tol": float(tol),
        "max_iter": int(max_iter),
        "converged": bool(trace.converged),
        "iterations": int(trace.iterations),
        "epsilon_final": float(trace.errors[-1]),
        "omega_used": None if omega is None else float(omega),
        "contraction_estimate": _json_float(trace.contraction_estimate),
        "elapsed_seconds": float(trace.elapsed_seconds),
        "omega_seconds": float(trace.omega_seconds),
    }


def _json_float(v):
    v = float(v)
    return None if math.isnan(v) else v


def write_summary_json(path, summary):
    with open(path, "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_curve_svg(path, curve, points=None, width=640):
    """Render a sampled curve (and optionally the data points) as SVG.

    The first two coordinates are drawn; the y axis points up. The viewBox
    is the joint bounding box padded by 5 percent per side.

    :param curve: (m, d) sampled curve points.
    :param points: optional (n, d) data points drawn as circles.
    """
    curve = np.asarray(curve, dtype=float)[:, :2]
    stacks = [curve]
    if points is not None:
        points = np.asarray(points, dtype=float)[:, :2]
        stacks.append(points)
    everything = np.vstack(stacks)
    lo = everything.min(axis=0)
    hi = everything.max(axis=0)
    span = hi - lo
    span[span == 0.0] = 1.0
    pad = SVG_MARGIN_FRACTION * span
    lo -= pad
    hi += pad
    span = hi - lo

    height = width * span[1] / span[0]
    scale = width / span[0]

    def to_px(xy):
        x = (xy[:, 0] - lo[0]) * scale
        y = (hi[1] - xy[:, 1]) * scale
        return x, y

    cx, cy = to_px(curve)
    poly = " ".join(f"{x:.3f},{y:.3f}" for x, y in zip(cx, cy))
    stroke = max(1.0, width / 640)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {width:.3f} {height:.3f}" '
        f'width="{width:.0f}" height="{height:.0f}">',
        f'<polyline points="{poly}" fill="none" stroke="#1f6f8b" '
        f'stroke-width="{1.5 * stroke:.3f}"/>',
    ]
    if points is not None:
        px, py = to_px(points)
        radius = 2.5 * stroke
        for x, y in zip(px, py):
            parts.append(
                f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{radius:.3f}" '
                f'fill="#d1495b"/>'
            )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
        fh.write("\n")
