"""Small named charts used as examples, fixtures and test anchors."""

from __future__ import annotations

from pathlib import Path

from .chart import Chart, black, branch, cap, cup, empty, serialize

CHART_DIR = Path(__file__).with_name("data") / "charts"


def submarine() -> Chart:
    """Four simple branch points: a loop, then a pair of (23)- and (45)-points inside it."""
    return Chart(5, "perm", (cup(1, 1), black(2, 2), black(1, 4), black(1, 4, "-"), black(2, 2, "-"),
                             cap(1, 1)))


def submarine_dihedral() -> Chart:
    """One r-arc between two black vertices in D_5."""
    return Chart(5, "dihedral", (black(1, "r"), black(1, "r", "-")))


def fromnone2five_top() -> Chart:
    """Two branch points of the 5-cycle t4 t3 t2 t1."""
    return Chart(5, "perm", (branch(1, (1, 2, 3, 4)), branch(1, (1, 2, 3, 4), "-")))


def fromnone2five_bottom() -> Chart:
    return empty(5)


NAMED = {
    "submarine": submarine,
    "submarine-dihedral": submarine_dihedral,
    "fromnone2five-top": fromnone2five_top,
    "fromnone2five-bottom": fromnone2five_bottom,
}


def write_charts(outdir: Path = CHART_DIR) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for name, fn in NAMED.items():
        (outdir / f"{name}.chart.json").write_text(serialize(fn()) + "\n")
