"""Assembled classification data for non-loose (p, q)-torus knots.

Everything here is driven by the decoration sweep: counts, the pairing of
mountain-range components with Euler classes, the Legendrian census over
twisting number and torsion, and the transverse census of stabilization
intervals.

Compatible decorations (one per consistency level along a conversion chain)
describe the same contact structure, so the Euler class is constant along a
chain and the multiset of Euler values at level j equals the multiset over
chains reaching level j.  Components of the mountain range are recovered by
peeling those multisets level by level; no explicit conversion algorithm is
needed for any of the theorem-level counts.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .decor import (
    consistency_level,
    decoration_count,
    enumerate_decorations,
    is_totally_k_inconsistent,
    m_values,
    totally_2_inconsistent,
)
from .euler import Side, TorsionKind, euler_class, euler_support, k_e, side_of
from .farey import cf_expand, neighbor_cw, slope_new
from .paths import BlockSequence, block_sequence


class ClassifyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Knot-type normalization


def normalize(p: int, q: int) -> tuple[int, int]:
    """Reduce (p, q) to the representative with -q > p' > 0.

    Torus knots (p1, q) and (p2, q) agree exactly when p2 = +-p1 mod 2q, so
    for coprime p the representative in (0, -q) exists and is unique.
    """
    if q in (1, -1):
        raise ClassifyError("(p, +-1)-torus knots cannot be non-loose")
    if q >= 0:
        raise ClassifyError("q must be a negative integer with q <= -2")
    if math.gcd(abs(p), abs(q)) != 1:
        raise ClassifyError(f"({p}, {q}) is not coprime")
    modulus = -2 * q
    for candidate in (p % modulus, (-p) % modulus):
        if 0 < candidate < -q:
            return (candidate, q)
    raise ClassifyError(f"({p}, {q}) has no representative with -q > p > 0")


def _require_normalized(p: int, q: int):
    if not (0 < p < -q) or math.gcd(p, -q) != 1:
        raise ClassifyError(f"({p}, {q}) must be normalized: -q > p > 0 and coprime")


# ---------------------------------------------------------------------------
# Counts


@dataclass(frozen=True)
class Counts:
    p: int
    q: int
    m: int
    n: int
    l: int
    t: int
    k_e: int
    N: int
    block_lengths: tuple[int, ...]
    n_values: tuple[int, ...]  # n_1 .. n_N
    m_values: tuple[int, ...]  # m_2 .. m_N

    def serialize(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "l": self.l,
            "t": self.t,
            "k_e": self.k_e,
            "N": self.N,
            "block_lengths": list(self.block_lengths),
            "n_values": list(self.n_values),
            "m_values": list(self.m_values),
        }


def _abs_prod(values) -> int:
    out = 1
    for v in values:
        out *= v
    return abs(out)


def _expansions(p: int, q: int) -> tuple[list[int], list[int]]:
    """The expansions of q/p and of q/(-q-p) (the lower solid torus slope)."""
    return cf_expand(slope_new(q, p)), cf_expand(slope_new(q, -q - p))


def counts(p: int, q: int) -> Counts:
    """All closed-form counts, cross-checked against the decoration sweep."""
    _require_normalized(p, q)
    a, b = _expansions(p, q)
    m_closed = _abs_prod(x + 1 for x in a[:-1]) * abs(a[-1]) * _abs_prod(
        x + 1 for x in b[:-1]
    ) * abs(b[-1])
    n_closed = _abs_prod(x + 1 for x in a) * _abs_prod(x + 1 for x in b)
    l_closed = _abs_prod(x + 1 for x in a[:-1]) * _abs_prod(x + 1 for x in b[:-1])

    seq = block_sequence(p, q)
    ms = m_values(seq)
    m_enum = decoration_count(seq)
    tot2 = len(totally_2_inconsistent(seq))
    if m_enum != m_closed:
        raise ClassifyError(f"m mismatch: enumerated {m_enum}, closed form {m_closed}")
    if ms[0] != n_closed:
        raise ClassifyError(f"n mismatch: m_2 = {ms[0]}, closed form {n_closed}")
    if tot2 != 2 * l_closed:
        raise ClassifyError(f"l mismatch: {tot2} totally 2-inconsistent != 2*{l_closed}")
    if 2 + 2 * sum(ms) != m_enum:
        raise ClassifyError("2 + sum of 2 m_j does not reproduce m")

    n_vals = seq.n_values  # n_0 .. n_N
    ms_ext = list(ms) + [0]
    t_val = sum(
        (ms_ext[k - 2] - ms_ext[k - 1]) * n_vals[k - 1] for k in range(2, seq.count + 1)
    )
    if sum(ms_ext[k - 2] - ms_ext[k - 1] for k in range(2, seq.count + 1)) != n_closed:
        raise ClassifyError("wing-pair counts do not sum to n")

    return Counts(
        p=p,
        q=q,
        m=m_closed,
        n=n_closed,
        l=l_closed,
        t=t_val,
        k_e=k_e(p, q),
        N=seq.count,
        block_lengths=seq.lengths,
        n_values=tuple(n_vals[1:]),
        m_values=ms,
    )


def tight_counts(p: int, q: int) -> dict:
    """Tight-structure counts on the solid tori and lens-space pieces."""
    _require_normalized(p, q)
    a, b = _expansions(p, q)
    upper = _abs_prod(x + 1 for x in a[:-1]) * abs(a[-1])
    lower = _abs_prod(x + 1 for x in b[:-1]) * abs(b[-1])
    lens_minus = _abs_prod(x + 1 for x in a)
    lens_plus = _abs_prod(x + 1 for x in b)
    return {
        "upper_solid": upper,
        "lower_solid": lower,
        "lens_minus": lens_minus,
        "lens_plus": lens_plus,
        "connected_sum": lens_minus * lens_plus,
    }


def surgered_manifold(p: int, q: int, r: int, s: int) -> dict:
    """The manifold of r*lambda + s*mu surgery along the (p, q)-torus knot.

    A Seifert fibration over S^2 for s != 0, and the connected sum of the
    two lens spaces L(q, p) and L(-q, p) for s = 0.
    """
    _require_normalized(p, q)
    if math.gcd(abs(r), abs(s)) != 1:
        raise ClassifyError(f"surgery coefficients ({r}, {s}) must be coprime")
    if s == 0:
        return {"kind": "connected_sum_lens", "summands": [[q, p], [-q, p]]}
    qc = neighbor_cw(slope_new(q, p)).num
    invs = [Fraction(qc, q), Fraction(-qc, q), Fraction(-r, s)]
    return {
        "kind": "seifert_fibered",
        "base": "S2",
        "invariants": [f"{f.numerator}/{f.denominator}" for f in invs],
    }


# ---------------------------------------------------------------------------
# Mountain-range components


@dataclass(frozen=True)
class PairComponent:
    """One symmetric pair of mountain-range components.

    The pair is labeled by the positive Euler class of its right member;
    wing_level k gives the conversion-chain length (k - 1 peaks) and the
    depth n_{k-1}; peak_offsets are the cumulative horizontal distances of
    the deeper peaks from the outermost one.
    """

    index: int  # 1..n(p,q)
    euler_pos: int
    wing_level: int
    depth: int
    peak_depths: tuple[int, ...]  # depth of peak r for r = 2..k
    peak_offsets: tuple[int, ...]  # cumulative, for r = 3..k
    torsion_tower: bool

    def serialize(self) -> dict:
        return {
            "index": self.index,
            "euler_pair": [-self.euler_pos, self.euler_pos],
            "wing_level": self.wing_level,
            "depth": self.depth,
            "peak_depths": list(self.peak_depths),
            "peak_offsets": list(self.peak_offsets),
            "torsion_tower": self.torsion_tower,
        }


def _decoration_table(seq: BlockSequence):
    """(decoration, level, euler, totally2) for every decoration class."""
    table = []
    for dec in enumerate_decorations(seq):
        level = consistency_level(seq, dec)
        e = euler_class(seq, dec)
        tot2 = level is not None and is_totally_k_inconsistent(seq, dec, 2)
        table.append((dec, level, e, tot2))
    return table


def pair_components(seq: BlockSequence) -> list[PairComponent]:
    """Recover the n(p, q) component pairs from the decoration sweep.

    The Euler multiset of chains reaching level j is the Euler multiset of
    the level-j decorations, so chains topping out at level k carry the
    difference of consecutive multisets.  Torsion towers sit exactly on the
    totally 2-inconsistent Euler values.
    """
    table = _decoration_table(seq)
    level_eulers: dict[int, Counter] = {}
    tower_values = Counter()
    for _dec, level, e, tot2 in table:
        if level is None:
            continue
        level_eulers.setdefault(level, Counter())[e] += 1
        if tot2:
            tower_values[e] += 1

    n_blocks = seq.count
    comps = []
    for k in range(2, n_blocks + 1):
        here = level_eulers.get(k, Counter())
        above = level_eulers.get(k + 1, Counter())
        for e, cnt in above.items():
            if here[e] < cnt:
                raise ClassifyError(
                    f"level-{k + 1} Euler multiset is not contained in level-{k}"
                )
        exact = Counter({e: c - above[e] for e, c in here.items() if c - above[e] > 0})
        for e in sorted(exact):
            if e <= 0:
                continue
            if exact[e] != exact[-e]:
                raise ClassifyError(f"Euler value {e} not side-symmetric at level {k}")
            for _ in range(exact[e]):
                comps.append((k, e))

    for e, cnt in tower_values.items():
        if cnt != 1:
            raise ClassifyError(f"totally 2-inconsistent Euler value {e} repeated")

    # Attach torsion towers to level-2 components by Euler value.
    towers_left = {e for e in tower_values if e > 0}
    out = []
    n_vals = seq.n_values
    for k, e in sorted(comps, key=lambda ke: (ke[1], ke[0])):
        tower = False
        if k == 2 and e in towers_left:
            tower = True
            towers_left.discard(e)
        depths = tuple(n_vals[r - 1] for r in range(2, k + 1))
        offsets = []
        cum = 0
        for r in range(3, k + 1):
            cum += 2 * (n_vals[r - 1] - n_vals[r - 2])
            offsets.append(cum)
        out.append(
            PairComponent(
                index=len(out) + 1,
                euler_pos=e,
                wing_level=k,
                depth=n_vals[k - 1],
                peak_depths=depths,
                peak_offsets=tuple(offsets),
                torsion_tower=tower,
            )
        )
    if towers_left:
        raise ClassifyError(f"tower Euler values {sorted(towers_left)} unmatched")
    return out


@dataclass(frozen=True)
class MountainRange:
    p: int
    q: int
    pair_components: tuple[PairComponent, ...]

    def depth_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.pair_components:
            hist[c.depth] = hist.get(c.depth, 0) + 1
        return hist

    def serialize(self) -> dict:
        return {
            "pair_components": [c.serialize() for c in self.pair_components],
            "depth_histogram": {str(k): v for k, v in sorted(self.depth_histogram().items())},
            "peaks_at_tw": 0,
        }


def mountain_range(p: int, q: int) -> MountainRange:
    _require_normalized(p, q)
    seq = block_sequence(p, q)
    comps = pair_components(seq)
    cts = counts(p, q)
    if len(comps) != cts.n:
        raise ClassifyError(f"{len(comps)} pair components != n = {cts.n}")
    ms_ext = list(cts.m_values) + [0]
    for k in range(2, cts.N + 1):
        expected = ms_ext[k - 2] - ms_ext[k - 1]
        got = sum(1 for c in comps if c.wing_level == k)
        if got != expected:
            raise ClassifyError(f"level-{k} component count {got} != {expected}")
    if sum(1 for c in comps if c.torsion_tower) != cts.l:
        raise ClassifyError("torsion tower count != l")
    return MountainRange(p, q, tuple(comps))


def wing_positions(comp: PairComponent, tw: int) -> list[int]:
    """x-offsets of the plus-side non-loose knots of one component at tw <= 0.

    Coordinates put the outermost peak at x = 0; a positive stabilization
    moves (x, tw) to (x+1, tw-1), a negative one to (x-1, tw-1).  The minus
    side is the mirror image x -> -x.
    """
    if tw > 0:
        raise ClassifyError("wing positions are defined for tw <= 0")
    j = -tw
    peaks = [0] + [-off for off in comp.peak_offsets]
    pts = set()
    for x_peak, depth in zip(peaks, comp.peak_depths):
        for i in range(min(j, depth - 1) + 1):
            pts.add(x_peak - i + (j - i))
    return sorted(pts)


# ---------------------------------------------------------------------------
# Legendrian census


@dataclass(frozen=True)
class LegendrianRecord:
    label: str
    tw: int
    tor: Fraction
    euler: int
    side: Side
    s_plus: str
    s_minus: str

    def serialize(self) -> dict:
        return {
            "label": self.label,
            "tw": self.tw,
            "tor": str(self.tor),
            "euler": self.euler,
            "side": self.side.value,
            "stabilization_rules": {"S+": self.s_plus, "S-": self.s_minus},
        }


def _half_range(tor_max: Fraction):
    out = []
    t = Fraction(1, 2)
    while t <= tor_max:
        out.append(t)
        t += Fraction(1, 2)
    return out


def legendrian_census(
    p: int,
    q: int,
    tw_min: int = -5,
    tw_max: int = 5,
    tor_max: Fraction = Fraction(2),
) -> list[LegendrianRecord]:
    """Census of non-loose Legendrian representatives in the given window.

    tor = 0: 2n rays per positive twisting level, m - 2 peaks at tw = 0
    (one per non-consistent decoration), and wing lattice points below.
    Each half-integer torsion level 0 < t <= tor_max carries 2l knots per
    twisting level, one per side of each torsion tower.
    """
    _require_normalized(p, q)
    seq = block_sequence(p, q)
    comps = pair_components(seq)
    records: list[LegendrianRecord] = []
    zero = Fraction(0)

    def side_euler(c: PairComponent, side: Side) -> int:
        return -c.euler_pos if side is Side.PLUS else c.euler_pos

    # tor = 0, tw > 0: one ray per component side.
    for tw in range(max(1, tw_min), tw_max + 1):
        for c in comps:
            for side in (Side.PLUS, Side.MINUS):
                sgn = side.value
                below = f"L^{tw - 1}_{{{sgn},{c.index}}}" if tw > 1 else "peak"
                records.append(
                    LegendrianRecord(
                        label=f"L^{tw}_{{{sgn},{c.index}}}",
                        tw=tw,
                        tor=zero,
                        euler=side_euler(c, side),
                        side=side,
                        s_plus=below if side is Side.PLUS else "loose",
                        s_minus=below if side is Side.MINUS else "loose",
                    )
                )

    # tor = 0, tw = 0: one peak per non-consistent decoration.
    if tw_min <= 0 <= tw_max:
        peak_index = 0
        table = _decoration_table(seq)
        ordered = sorted(
            (entry for entry in table if entry[1] is not None),
            key=lambda entry: (entry[2], entry[0]),
        )
        for dec, level, e, _tot2 in ordered:
            peak_index += 1
            side = side_of(seq, dec)
            depth = seq.n_values[level - 1]
            into_wing = "wing" if depth > 1 else "loose"
            records.append(
                LegendrianRecord(
                    label=f"L^0[{peak_index}]",
                    tw=0,
                    tor=zero,
                    euler=e,
                    side=side,
                    s_plus="wing" if side is Side.PLUS else into_wing,
                    s_minus="wing" if side is Side.MINUS else into_wing,
                )
            )

    # tor = 0, tw < 0: wing lattice points.
    for tw in range(min(tw_min, -1), 0):
        if tw < tw_min:
            continue
        for c in comps:
            plus_xs = wing_positions(c, tw)
            for side in (Side.PLUS, Side.MINUS):
                xs = plus_xs if side is Side.PLUS else [-x for x in reversed(plus_xs)]
                for x in xs:
                    x_plus = x if side is Side.PLUS else -x
                    sgn = side.value
                    # A positive stabilization stays non-loose exactly when
                    # the shifted point is still in the wing (plus side).
                    deeper_plus = x_plus + 1 in set(wing_positions(c, tw - 1))
                    shallower_plus = x_plus - 1 in set(wing_positions(c, tw - 1))
                    s_plus_rule = "non-loose" if deeper_plus else "loose"
                    s_minus_rule = "non-loose" if shallower_plus else "loose"
                    if side is Side.MINUS:
                        s_plus_rule, s_minus_rule = s_minus_rule, s_plus_rule
                    records.append(
                        LegendrianRecord(
                            label=f"L^{tw}_{{{sgn},{c.index}}}[x={x}]",
                            tw=tw,
                            tor=zero,
                            euler=side_euler(c, side),
                            side=side,
                            s_plus=s_plus_rule,
                            s_minus=s_minus_rule,
                        )
                    )

    # tor > 0 towers: one knot per side, tower and twisting level.
    towers = [c for c in comps if c.torsion_tower]
    for t in _half_range(tor_max):
        half = t.denominator == 2
        for tw in range(tw_min, tw_max + 1):
            for j, c in enumerate(towers, start=1):
                for side in (Side.PLUS, Side.MINUS):
                    e0 = side_euler(c, side)
                    e = e0 - 2 * q if (half and side is Side.PLUS) else (
                        e0 + 2 * q if half else e0
                    )
                    sgn = side.value
                    target = f"L^{{{tw - 1},{t}}}_{{{sgn},{j}}}"
                    records.append(
                        LegendrianRecord(
                            label=f"L^{{{tw},{t}}}_{{{sgn},{j}}}",
                            tw=tw,
                            tor=t,
                            euler=e,
                            side=side,
                            s_plus=target if side is Side.PLUS else "loose",
                            s_minus=target if side is Side.MINUS else "loose",
                        )
                    )
    return records


# ---------------------------------------------------------------------------
# Transverse census


@dataclass(frozen=True)
class TransverseRecord:
    label: str
    tor: Fraction
    euler: int
    stabilization: str
    interval: tuple[int, int] | None = None  # (j, k) for tor = 0 intervals

    def serialize(self) -> dict:
        out = {
            "label": self.label,
            "tor": str(self.tor),
            "euler": self.euler,
            "stabilization": self.stabilization,
        }
        if self.interval is not None:
            out["interval"] = list(self.interval)
        return out


def transverse_census(
    p: int, q: int, tor_max: Fraction = Fraction(2)
) -> list[TransverseRecord]:
    """Transverse representatives: t(p, q) knots at tor = 0 in n(p, q)
    stabilization intervals, and l(p, q) knots per positive torsion level.

    All tor = 0 Euler classes are positive; a half Lutz twist moves a tower
    knot to torsion t + 1/2 and shifts its Euler class by 2q.
    """
    _require_normalized(p, q)
    seq = block_sequence(p, q)
    comps = pair_components(seq)
    records: list[TransverseRecord] = []
    zero = Fraction(0)

    level_seen: dict[int, int] = {}
    for c in comps:
        k = c.wing_level
        level_seen[k] = level_seen.get(k, 0) + 1
        j = level_seen[k]
        depth = c.depth
        for i in range(1, depth + 1):
            target = "loose" if i == 1 else f"T_{{{i - 1},{j},{k}}}"
            records.append(
                TransverseRecord(
                    label=f"T_{{{i},{j},{k}}}",
                    tor=zero,
                    euler=c.euler_pos,
                    stabilization=target,
                    interval=(j, k),
                )
            )

    towers = [c for c in comps if c.torsion_tower]
    for t in _half_range(tor_max):
        half = t.denominator == 2
        for j, c in enumerate(towers, start=1):
            e = c.euler_pos + 2 * q if half else c.euler_pos
            records.append(
                TransverseRecord(
                    label=f"T^{{{t}}}_{{{j}}}",
                    tor=t,
                    euler=e,
                    stabilization="loose",
                )
            )
    return records


# ---------------------------------------------------------------------------
# Full report


def classification_report(
    p: int,
    q: int,
    tw_min: int = -5,
    tw_max: int = 5,
    tor_max: Fraction = Fraction(2),
) -> dict:
    """Machine-readable classification for one normalized knot type."""
    _require_normalized(p, q)
    cts = counts(p, q)
    mountain = mountain_range(p, q)
    legendrian = legendrian_census(p, q, tw_min, tw_max, tor_max)
    transverse = transverse_census(p, q, tor_max)
    support = {
        kind.value: euler_support(p, q, kind).serialize()
        for kind in (TorsionKind.ZERO, TorsionKind.INTEGER, TorsionKind.HALF_INTEGER)
    }
    return {
        "pq": [p, q],
        "counts": cts.serialize(),
        "tight_counts": tight_counts(p, q),
        "euler_support": support,
        "legendrian": [r.serialize() for r in legendrian],
        "transverse": [r.serialize() for r in transverse],
        "mountain": mountain.serialize(),
        "notes": {
            "tight_tw0_knots": 2,
        },
    }
