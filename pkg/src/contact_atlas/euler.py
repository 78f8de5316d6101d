"""Euler classes of the contact structures described by decorated path pairs.

The path formula sums, over the edges of P1 and P2, the signed numerators of
the componentwise differences of consecutive vertices.  All edges of one
block contribute the same magnitude (each block is based on the previous
farthest slope), so the per-block positive count determines the value and
signs may be expanded positives-first.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .decor import (
    Decoration,
    consistency_level,
    enumerate_decorations,
    totally_2_inconsistent,
)
from .farey import cf_expand, neighbor_acw, neighbor_cw, slope_new
from .paths import BlockSequence, PathSide, block_sequence


class EulerError(ValueError):
    pass


class Side(Enum):
    """Which member of a +/- pair of contact structures a knot lives in.

    The convention ties the A-side length-1 block to a negative sign, which
    makes the plus-side Euler class negative.
    """

    PLUS = "+"
    MINUS = "-"


class TorsionKind(Enum):
    ZERO = "zero"
    INTEGER = "integer"
    HALF_INTEGER = "half-integer"


@dataclass(frozen=True)
class EulerSupport:
    torsion_kind: TorsionKind
    k_min: int
    k_max: int

    @property
    def k_set(self) -> list[int]:
        return list(range(self.k_min, self.k_max + 1))

    @property
    def e_legendrian(self) -> list[int]:
        vals = {2 * k for k in self.k_set} | {-2 * k for k in self.k_set}
        return sorted(vals)

    @property
    def e_transverse(self) -> list[int]:
        return sorted(2 * k for k in self.k_set)

    def serialize(self) -> dict:
        return {
            "torsion_kind": self.torsion_kind.value,
            "k_set": self.k_set,
            "e_legendrian": self.e_legendrian,
            "e_transverse": self.e_transverse,
        }


def euler_class(seq: BlockSequence, dec: Decoration) -> int:
    """Evaluate the edge-sign formula for a decorated pair.

    P1 edges contribute positive numerators for positive signs, P2 edges
    negative ones, and the all-positive decoration telescopes to zero.
    """
    total = 0
    for block, count in zip(seq.blocks, dec):
        for j, (u, v) in enumerate(block.edges()):
            sign = 1 if j < count else -1
            if block.side is PathSide.P1:
                term = v.num - u.num  # (p_{i+1} - p_i) numerator, > 0
            else:
                term = u.num - v.num  # (q_i - q_{i+1}) numerator, < 0
            total += sign * term
    return total


def euler_value_set(p: int, q: int) -> set[int]:
    """Euler classes attained over all decorations of the (p,q) path pair."""
    seq = block_sequence(p, q)
    return {euler_class(seq, dec) for dec in enumerate_decorations(seq)}


def expected_value_set(q: int) -> set[int]:
    """The arithmetic progression {2q+2, 2q+4, ..., -2q-2}."""
    return set(range(2 * q + 2, -2 * q - 1, 2))


def k_e(p: int, q: int) -> int:
    """Boundary parameter of the torsion-supported Euler range.

    Two closed forms are computed and must agree:
      a_m < -2:  -q + (a_m + 2)(q - q')   ==  -(q' + |a_m + 1| q'')
      a_m = -2:  -q + (b_n + 2) q'        ==  -(|b_n + 1| q' + q'')
    where [a_1..a_m] expands q/p, [b_1..b_n] expands q/(-q-p), and q', q''
    are the numerators of the clockwise/anti-clockwise neighbors of q/p.
    """
    s = slope_new(q, p)
    a = cf_expand(s)
    b = cf_expand(slope_new(q, -q - p))
    qc = neighbor_cw(s).num
    qa = neighbor_acw(s).num
    if a[-1] < -2:
        direct = -q + (a[-1] + 2) * (q - qc)
        cross = -(qc + abs(a[-1] + 1) * qa)
    else:
        direct = -q + (b[-1] + 2) * qc
        cross = -(abs(b[-1] + 1) * qc + qa)
    if direct != cross:
        raise EulerError(f"k_e closed forms disagree for ({p}, {q}): {direct} != {cross}")
    if not -q <= direct <= -2 * q - 2:
        raise EulerError(f"k_e = {direct} outside [-q, -2q-2] for ({p}, {q})")
    return direct


def totally2_euler_set(p: int, q: int) -> set[int]:
    """Euler classes attained by the totally 2-inconsistent decorations."""
    seq = block_sequence(p, q)
    return {euler_class(seq, dec) for dec in totally_2_inconsistent(seq)}


def expected_totally2_set(p: int, q: int) -> set[int]:
    ke = k_e(p, q)
    ks = range(ke + q + 1, -q)
    return {2 * k for k in ks} | {-2 * k for k in ks}


def euler_support(p: int, q: int, torsion_kind: TorsionKind) -> EulerSupport:
    """The k-interval of supported Euler classes for a given torsion kind.

    tor = 0:            k in {1, ..., -q-1}
    tor a positive int: k in {k_e+q+1, ..., -q-1}
    tor a half-integer: k in {k_e+2q+1, ..., -1}

    Legendrian classes are +-2k; transverse classes are 2k (positive for
    integer torsion, negative for the half-integer case, which is a half
    Lutz twist away).
    """
    if torsion_kind is TorsionKind.ZERO:
        return EulerSupport(torsion_kind, 1, -q - 1)
    ke = k_e(p, q)
    if torsion_kind is TorsionKind.INTEGER:
        return EulerSupport(torsion_kind, ke + q + 1, -q - 1)
    return EulerSupport(torsion_kind, ke + 2 * q + 1, -1)


def side_of(seq: BlockSequence, dec: Decoration) -> Side:
    """PLUS for negative Euler class, MINUS for positive.

    Fully consistent decorations have Euler class zero (the tight structure)
    and no side.
    """
    if consistency_level(seq, dec) is None:
        raise EulerError("fully consistent decorations have no side")
    e = euler_class(seq, dec)
    assert e != 0, "nonzero Euler class expected away from full consistency"
    return Side.PLUS if e < 0 else Side.MINUS
