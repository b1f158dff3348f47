"""SVG drawings of charts and matplotlib reports for movies.

Levels run left to right and strand positions bottom to top.  Each event
sits at ``x = level``; the strands it consumes and produces bend into it.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

from .chart import Chart, branch_points, require_valid, slices

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
DIHEDRAL_COLORS = {"r": "#d62728", "x": "#1f77b4", "X": "#1f77b4"}
STEP = 40
MARGIN = 30


def label_color(label) -> str:
    if isinstance(label, str):
        return DIHEDRAL_COLORS.get(label, "#555555")
    return PALETTE[(int(label) - 1) % len(PALETTE)]


def _f(v: float) -> str:
    return f"{v:.1f}"


def _layout(c: Chart):
    sl = slices(c)
    height = max((len(s) for s in sl), default=0)
    width = c.p + 1

    def pt(x: float, y: float) -> tuple[float, float]:
        return MARGIN + x * STEP, MARGIN + (height - y + 0.5) * STEP

    return sl, width, height, pt


def render_chart(c: Chart, title: str = "") -> str:
    """Deterministic SVG text for a valid chart."""
    require_valid(c)
    sl, width, height, pt = _layout(c)
    w_px = 2 * MARGIN + width * STEP
    h_px = 2 * MARGIN + max(height, 1) * STEP
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w_px}" height="{h_px}" '
           f'viewBox="0 0 {w_px} {h_px}">',
           f'<rect x="0.5" y="0.5" width="{w_px - 1}" height="{h_px - 1}" fill="white" stroke="#999999"/>']
    if title:
        out.append(f'<text x="{MARGIN}" y="{MARGIN - 10}" font-size="12" font-family="monospace">'
                   f'{title}</text>')
    # where each strand end attaches: (column, index, side) -> point
    attach: dict = {}
    glyphs: list[str] = []
    for w, ev in enumerate(c.events, 1):
        consumed, produced = ev.window(c.alpha)
        span = max(len(consumed), len(produced), 1)
        cx, cy = pt(w, ev.pos + (span - 1) / 2)
        for t in range(len(consumed)):
            attach[(w - 1, ev.pos + t, "R")] = (cx, cy)
        for t in range(len(produced)):
            attach[(w, ev.pos + t, "L")] = (cx, cy)
        glyphs.append(_glyph(ev, cx, cy, c))
    for col, s in enumerate(sl):
        for i, a in enumerate(s, 1):
            x0, y = pt(col, i)
            x1, _ = pt(col + 1, i)
            if col == 0:
                x0 = MARGIN / 2
            if col == c.p:
                x1 = w_px - MARGIN / 2
            p0 = attach.get((col, i, "L"), (x0, y))
            p1 = attach.get((col, i, "R"), (x1, y))
            mid0, mid1 = (pt(col + 0.25, i)[0], y), (pt(col + 0.75, i)[0], y)
            out.append(f'<path d="M{_f(p0[0])},{_f(p0[1])} L{_f(mid0[0])},{_f(mid0[1])} '
                       f'L{_f(mid1[0])},{_f(mid1[1])} L{_f(p1[0])},{_f(p1[1])}" fill="none" '
                       f'stroke="{label_color(a)}" stroke-width="2"/>')
    out.extend(glyphs)
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _glyph(ev, cx: float, cy: float, c: Chart) -> str:
    if ev.kind in ("Black", "Branch"):
        fill = "black" if ev.kind == "Black" else "#444444"
        return f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="5" fill="{fill}"/>'
    if ev.kind == "White":
        return f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="5" fill="white" stroke="black"/>'
    if ev.kind == "Relator":
        return (f'<rect x="{_f(cx - 5)}" y="{_f(cy - 5)}" width="10" height="10" fill="#dddddd" '
                f'stroke="black"/>')
    if ev.kind == "Crossing":
        return f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="2" fill="black"/>'
    return ""  # cups and caps are the bends themselves


# -- reports --------------------------------------------------------------------------


def frame_rows(frames: Sequence[Chart], infos: Sequence[dict] | None = None) -> list[dict]:
    rows = []
    for i, c in enumerate(frames):
        info = infos[i] if infos else {}
        inv = info.get("invariants") or {}
        rows.append({"frame": i, "events": c.p, "branch_points": len(branch_points(c)),
                     "components": inv.get("components", ""), "euler": inv.get("euler", ""),
                     "nodes": info.get("nodes", "")})
    return rows


def write_report(frames: Sequence[Chart], outdir: str | Path, infos: Sequence[dict] | None = None,
                 stem: str = "report") -> list[Path]:
    """A TSV table of per-frame data, an SVG per frame and a matplotlib summary plot."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = frame_rows(frames, infos)
    written = []
    tsv = outdir / f"{stem}.tsv"
    with tsv.open("w", newline="") as fh:
        wr = csv.DictWriter(fh, fieldnames=list(rows[0]) if rows else ["frame"], delimiter="\t")
        wr.writeheader()
        wr.writerows(rows)
    written.append(tsv)
    for i, c in enumerate(frames):
        p = outdir / f"{stem}_frame{i:03d}.svg"
        p.write_text(render_chart(c, f"frame {i}"))
        written.append(p)
    fig, axes = plt.subplots(2, 1, figsize=(7, 5), sharex=True)
    xs = [r["frame"] for r in rows]
    axes[0].step(xs, [r["branch_points"] for r in rows], where="mid")
    axes[0].set_ylabel("branch points")
    eul = [(r["frame"], r["euler"]) for r in rows if r["euler"] != ""]
    if eul:
        axes[1].plot([a for a, _ in eul], [b for _, b in eul], marker="o")
    axes[1].set_ylabel("euler")
    axes[1].set_xlabel("frame")
    fig.tight_layout()
    png = outdir / f"{stem}.png"
    fig.savefig(png, dpi=100, metadata={"Software": None})
    plt.close(fig)
    written.append(png)
    return written
