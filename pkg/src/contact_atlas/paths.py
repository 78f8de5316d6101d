"""Farey path pairs for a slope q/p with -q > p > 0.

P1 runs from q/p anti-clockwise to infinity, P2 from q/p clockwise to -1.
Each path is cut into continued-fraction blocks, and the two block lists are
interleaved into a single sequence C_1..C_N starting from the length-1 first
block.  The interleaved sequence carries the farthest slopes s_k and the
numbers n_k = |s_k . q/p| that drive every downstream count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .farey import (
    INFINITY,
    Slope,
    cf_eval,
    cf_expand,
    dot,
    is_edge,
    neighbor_acw,
    neighbor_cw,
    slope_new,
)


class PathError(ValueError):
    """A path or block-sequence invariant failed (construction bug)."""


class PathSide(Enum):
    P1 = "P1"
    P2 = "P2"

    @property
    def label(self) -> str:
        # Blocks on P1 are the A-blocks, those on P2 the B-blocks.
        return "A" if self is PathSide.P1 else "B"


@dataclass(frozen=True)
class FareyPath:
    side: PathSide
    vertices: tuple[Slope, ...]

    def edges(self):
        return zip(self.vertices, self.vertices[1:])


@dataclass(frozen=True)
class Block:
    """A continued-fraction block: a maximal run of edges based on one slope."""

    side: PathSide
    index: int  # position in the interleaved sequence, 1-based
    vertices: tuple[Slope, ...]  # contiguous, in path order (nearest q/p first)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def farthest(self) -> Slope:
        return self.vertices[-1]

    def edges(self):
        return zip(self.vertices, self.vertices[1:])


@dataclass(frozen=True)
class BlockSequence:
    slope: Slope
    blocks: tuple[Block, ...]  # sorted by interleaved index 1..N
    n_values: tuple[int, ...]  # n_0 .. n_N with n_0 = 0

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b.length for b in self.blocks)

    @property
    def count(self) -> int:
        return len(self.blocks)

    def side_blocks(self, side: PathSide) -> list[Block]:
        return [b for b in self.blocks if b.side is side]


def _require_valid_slope(s: Slope):
    if s.is_infinite or s.den < 1 or s.num >= -s.den:
        raise PathError(f"slope {s} is not of the form q/p with -q > p > 0")


def build_p1(s: Slope) -> FareyPath:
    """Path from q/p to infinity, dropping the last continued-fraction entry.

    The second vertex is the anti-clockwise neighbor (q/p)^a and numerators
    strictly increase along the path; both facts are checked.
    """
    _require_valid_slope(s)
    entries = cf_expand(s)
    vertices = [s]
    while entries:
        entries = entries[:-1]
        vertices.append(cf_eval(entries))
    path = FareyPath(PathSide.P1, tuple(vertices))
    _validate_path(path, s, expected_second=neighbor_acw(s), last=INFINITY)
    return path


def build_p2(s: Slope) -> FareyPath:
    """Path from q/p to -1, incrementing the last continued-fraction entry.

    A trailing -1 entry cascades: [c_1,...,c_{j-1},-1] denotes the same
    rational as [c_1,...,c_{j-1}+1].  The second vertex is the clockwise
    neighbor (q/p)^c.
    """
    _require_valid_slope(s)
    entries = cf_expand(s)
    vertices = [s]
    while entries != [-1]:
        entries = entries[:-1] + [entries[-1] + 1]
        while len(entries) > 1 and entries[-1] == -1:
            entries = entries[:-2] + [entries[-2] + 1]
        if entries == [-1]:
            vertices.append(slope_new(-1, 1))
        else:
            vertices.append(cf_eval(entries))
    path = FareyPath(PathSide.P2, tuple(vertices))
    _validate_path(path, s, expected_second=neighbor_cw(s), last=slope_new(-1, 1))
    return path


def _validate_path(path: FareyPath, s: Slope, expected_second: Slope, last: Slope):
    verts = path.vertices
    if verts[-1] != last:
        raise PathError(f"path must end at {last}, got {verts[-1]}")
    if verts[1] != expected_second:
        raise PathError(f"second vertex {verts[1]} != neighbor {expected_second}")
    for u, v in path.edges():
        if not is_edge(u, v):
            raise PathError(f"consecutive vertices {u}, {v} are not adjacent")
        if v.num <= u.num:
            raise PathError(f"numerators not increasing at {u} -> {v}")


def subdivide(path: FareyPath) -> list[Block]:
    """Cut a path into continued-fraction blocks.

    Two consecutive edges (u,v), (v,w) lie in the same block exactly when
    |dot(u, w)| = 2; the interior vertex v is then the Farey sum of u and w.
    """
    verts = path.vertices
    blocks = []
    start = 0
    for i in range(1, len(verts) - 1):
        if abs(dot(verts[i - 1], verts[i + 1])) != 2:
            blocks.append(Block(path.side, 0, verts[start:i + 1]))
            start = i
    blocks.append(Block(path.side, 0, verts[start:]))
    return blocks


def interleave(p1_blocks: list[Block], p2_blocks: list[Block], s: Slope) -> BlockSequence:
    """Merge the block lists of P1 and P2 into the sequence C_1..C_N.

    Index 1 goes to the length-1 first block; when both first blocks have
    length 1 (only at q/p = -2) it goes to P1.  Sides then alternate by
    index parity.  The construction is cross-checked against the basing
    property (every edge of C_k differs by s_{k-1}) and the recurrence
    n_k = |C_k| n_{k-1} + n_{k-2}.
    """
    first1, first2 = p1_blocks[0], p2_blocks[0]
    if first1.length == 1 and first2.length == 1 and s != slope_new(-2, 1):
        raise PathError("both first blocks have length 1 away from -2")
    if first1.length != 1 and first2.length != 1:
        raise PathError("neither first block has length 1")
    lead, other = (p1_blocks, p2_blocks) if first1.length == 1 else (p2_blocks, p1_blocks)

    indexed = []
    for j, b in enumerate(lead):
        indexed.append(Block(b.side, 2 * j + 1, b.vertices))
    for j, b in enumerate(other):
        indexed.append(Block(b.side, 2 * j + 2, b.vertices))
    indexed.sort(key=lambda b: b.index)
    n_total = len(indexed)
    if [b.index for b in indexed] != list(range(1, n_total + 1)):
        raise PathError("interleaved block indices are not contiguous")

    n_values = [0]
    for b in indexed:
        n_values.append(abs(dot(b.farthest, s)))
    if n_values[1] != 1:
        raise PathError(f"n_1 = {n_values[1]} != 1")
    for k in range(2, n_total + 1):
        expected = indexed[k - 1].length * n_values[k - 1] + n_values[k - 2]
        if n_values[k] != expected:
            raise PathError(f"n-recurrence fails at k={k}: {n_values[k]} != {expected}")

    for k in range(2, n_total + 1):
        base = indexed[k - 2].farthest
        for u, v in indexed[k - 1].edges():
            if (u.num - v.num, u.den - v.den) != (base.num, base.den):
                raise PathError(f"block C_{k} is not based on s_{k - 1} = {base}")

    return BlockSequence(s, tuple(indexed), tuple(n_values))


def block_sequence(p: int, q: int) -> BlockSequence:
    """Build the interleaved block sequence for the slope q/p."""
    if p < 1 or math.gcd(p, abs(q)) != 1 or q >= -p:
        raise PathError(f"({p}, {q}) must be coprime with -q > p > 0")
    s = Slope(q, p)
    p1 = build_p1(s)
    p2 = build_p2(s)
    return interleave(subdivide(p1), subdivide(p2), s)


def n_values(seq: BlockSequence) -> tuple[int, ...]:
    """Recompute (n_0..n_N) directly from the farthest slopes."""
    vals = [0] + [abs(dot(b.farthest, seq.slope)) for b in seq.blocks]
    if tuple(vals) != seq.n_values:
        raise PathError("stored n-values disagree with direct dot products")
    return tuple(vals)


def serialize_sequence(seq: BlockSequence) -> dict:
    return {
        "slope": str(seq.slope),
        "blocks": [
            {
                "index": b.index,
                "side": b.side.value,
                "label": b.side.label,
                "length": b.length,
                "vertices": [str(v) for v in b.vertices],
                "farthest": str(b.farthest),
            }
            for b in seq.blocks
        ],
        "n_values": list(seq.n_values),
    }
