"""ASCII and SVG renderings of mountain-range geometry.

The pictures are schematic: peaks sit on the tw = 0 line, stabilization rays
climb with slope -+1 and are clipped at a configurable height, wings hang
below with their finite depths, and a torsion tower is flagged on its
component header.  Lattice positions come straight from the census geometry,
so the two output formats always agree.
"""

from __future__ import annotations

import os

from .classify import MountainRange, PairComponent, wing_positions

ANSI_HEADER = "\x1b[36m"
ANSI_RESET = "\x1b[0m"


def _use_color() -> bool:
    return not os.environ.get("ATLAS_NO_COLOR")


def _plus_side_rows(comp: PairComponent, clip: int) -> dict[int, set[int]]:
    """Lattice x-positions per tw level for the plus-side component."""
    rows: dict[int, set[int]] = {}
    for tw in range(clip, 0, -1):
        rows[tw] = {-tw}
    rows[0] = {0} | {-off for off in comp.peak_offsets}
    for tw in range(-1, -clip - 1, -1):
        rows[tw] = set(wing_positions(comp, tw))
    return rows


def _panel(comp: PairComponent, clip: int, mirror: bool) -> list[str]:
    rows = _plus_side_rows(comp, clip)
    if mirror:
        rows = {tw: {-x for x in xs} for tw, xs in rows.items()}
    xs_all = [x for xs in rows.values() for x in xs]
    lo, hi = min(xs_all), max(xs_all)
    width = hi - lo + 1
    lines = []
    for tw in range(clip, -clip - 1, -1):
        line = [" "] * width
        for x in rows.get(tw, ()):
            if tw > 0:
                mark = "/" if (x > 0) else "\\"
            elif tw == 0:
                mark = "^"
            else:
                mark = "*"
            line[x - lo] = mark
        lines.append("".join(line).rstrip())
    return lines


def render_ascii(mr: MountainRange, clip: int = 4) -> str:
    """Plain-text mountain ranges, one component pair per block."""
    color = _use_color()
    out = []
    header = f"mountain ranges for ({mr.p}, {mr.q}): {len(mr.pair_components)} component pairs"
    out.append(f"{ANSI_HEADER}{header}{ANSI_RESET}" if color else header)
    for comp in mr.pair_components:
        tower = ", torsion tower" if comp.torsion_tower else ""
        title = (
            f"pair {comp.index}: e = -/+{comp.euler_pos}, level {comp.wing_level},"
            f" depth {comp.depth}{tower}"
        )
        out.append(f"{ANSI_HEADER}{title}{ANSI_RESET}" if color else title)
        left = _panel(comp, clip, mirror=False)
        right = _panel(comp, clip, mirror=True)
        lwidth = max((len(row) for row in left), default=0)
        for tw, (a, b) in zip(range(clip, -clip - 1, -1), zip(left, right)):
            out.append(f"  tw={tw:>3}  {a.ljust(lwidth + 4)}{b}")
    return "\n".join(out) + "\n"


def render_svg(mr: MountainRange, clip: int = 4) -> str:
    """Schematic SVG: dots for knots, slope -+1 rays, tower glyphs."""
    scale = 12
    pads = 24
    pieces = []
    y0 = pads + clip * scale
    x_cursor = pads
    for comp in mr.pair_components:
        for mirror in (False, True):
            rows = _plus_side_rows(comp, clip)
            if mirror:
                rows = {tw: {-x for x in xs} for tw, xs in rows.items()}
            xs_all = [x for xs in rows.values() for x in xs]
            lo, hi = min(xs_all), max(xs_all)
            offset = x_cursor - lo * scale
            for tw in range(clip, -clip - 1, -1):
                for x in sorted(rows.get(tw, ())):
                    cx = offset + x * scale
                    cy = y0 - tw * scale
                    r = 3 if tw == 0 else 2
                    fill = "#d33" if tw == 0 else "#333"
                    pieces.append(
                        f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>'
                    )
            if comp.torsion_tower:
                cx = offset + (0 if not mirror else 0) * scale
                pieces.append(
                    f'<line x1="{cx}" y1="{y0 - (clip + 1) * scale}" x2="{cx}"'
                    f' y2="{y0}" stroke="#36c" stroke-dasharray="3,3"/>'
                )
            label = f"-e={-comp.euler_pos}" if not mirror else f"e={comp.euler_pos}"
            pieces.append(
                f'<text x="{offset + lo * scale}" y="{y0 + (clip + 1) * scale + 12}"'
                f' font-size="10">{label}</text>'
            )
            x_cursor = offset + hi * scale + 3 * scale
    width = x_cursor + pads
    height = 2 * pads + (2 * clip + 2) * scale + 16
    axis_y = y0
    axis = (
        f'<line x1="{pads // 2}" y1="{axis_y}" x2="{width - pads // 2}" y2="{axis_y}"'
        ' stroke="#bbb" stroke-width="0.5"/>'
    )
    body = "\n".join([axis] + pieces)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">\n'
        f"{body}\n</svg>\n"
    )
