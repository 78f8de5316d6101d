"""Exact arithmetic on Farey-graph slopes and negative continued fractions.

A slope is a reduced extended rational ``num/den`` with ``den >= 0``; the
point at infinity is always stored as ``-1/0``.  All arithmetic is exact on
Python integers (products of the form prod(|c_k|+1) grow combinatorially, so
fixed-width integers are not an option).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


class FareyError(ValueError):
    """An operation was applied outside its domain."""


@dataclass(frozen=True)
class Slope:
    """A reduced extended rational num/den, den >= 0.  Infinity is -1/0."""

    num: int
    den: int

    def __post_init__(self):
        if (self.num, self.den) == (0, 0):
            raise FareyError("0/0 is not a slope")
        if self.den < 0:
            raise FareyError("slope denominator must be >= 0")
        if self.den == 0:
            if self.num != -1:
                raise FareyError("infinity must be normalized to -1/0")
        elif math.gcd(abs(self.num), self.den) != 1:
            raise FareyError(f"slope {self.num}/{self.den} is not reduced")

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise FareyError("infinity has no finite value")
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return format_slope(self)


INFINITY = Slope(-1, 0)


def slope_new(n: int, d: int) -> Slope:
    """Normalize an integer pair into a slope.

    Any pair with d = 0 maps to -1/0; otherwise the fraction is reduced and
    the sign moved to the numerator.
    """
    if (n, d) == (0, 0):
        raise FareyError("0/0 is not a slope")
    if d == 0:
        return INFINITY
    if d < 0:
        n, d = -n, -d
    g = math.gcd(abs(n), d)
    return Slope(n // g, d // g)


def slope_from_fraction(x: Fraction) -> Slope:
    return slope_new(x.numerator, x.denominator)


def dot(u: Slope, v: Slope) -> int:
    """Dot product of b/a and d/c, defined as bc - ad.  Antisymmetric."""
    return u.num * v.den - u.den * v.num


def is_edge(u: Slope, v: Slope) -> bool:
    """True iff u and v span an edge of the Farey graph (|dot| = 1)."""
    return abs(dot(u, v)) == 1


def farey_sum(u: Slope, v: Slope) -> Slope:
    """Componentwise sum (b+d)/(a+c), defined when the numerators bd >= 0."""
    if u.num * v.num < 0:
        raise FareyError(f"Farey sum undefined for {u} and {v}")
    return slope_new(u.num + v.num, u.den + v.den)


def farey_diff(u: Slope, v: Slope) -> tuple[int, int]:
    """Componentwise difference of two Farey-adjacent slopes.

    Returned unreduced: pairs such as (q+1, p-1) need not be coprime, and the
    Euler-class formula consumes the raw numerator.
    """
    if not is_edge(u, v):
        raise FareyError(f"{u} and {v} are not Farey-adjacent")
    return (u.num - v.num, u.den - v.den)


def _bezout(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def neighbor_cw(s: Slope) -> Slope:
    """The farthest clockwise Farey neighbor q'/p' of q/p.

    It is the largest rational satisfying p*q' - p'*q = 1; the solution is
    pinned by 1 <= p' <= p.
    """
    if s.is_infinite:
        raise FareyError("infinity has no clockwise neighbor here")
    q, p = s.num, s.den
    g, x, y = _bezout(p, q)
    if g != 1:
        # cannot happen for a reduced slope, but guard the arithmetic
        raise FareyError(f"{s} is not reduced")
    # p*x + q*y = 1, so q0/p0 = x/(-y) satisfies p*q0 - p0*q = 1.
    q0, p0 = x, -y
    # Shift by multiples of (q, p) until 1 <= p' <= p.
    k = -((p0 - 1) // p)
    p1 = p0 + k * p
    q1 = q0 + k * q
    assert 1 <= p1 <= p and p * q1 - p1 * q == 1
    return Slope(q1, p1)


def neighbor_acw(s: Slope) -> Slope:
    """The farthest anti-clockwise Farey neighbor q''/p'' = (q-q')/(p-p')."""
    cw = neighbor_cw(s)
    return slope_new(s.num - cw.num, s.den - cw.den)


def cf_expand(s: Slope) -> list[int]:
    """Negative continued fraction expansion [a_1, ..., a_m], all a_i <= -2.

    Defined for rationals < -1 via a_1 - 1/(a_2 - 1/(... - 1/a_m)).  The
    expansion with all entries <= -2 is unique.
    """
    if s.is_infinite or s.num >= -s.den:
        raise FareyError(f"no negative continued fraction for {s}")
    entries = []
    x = s.as_fraction()
    while True:
        if x.denominator == 1:
            entries.append(int(x))
            break
        a = math.floor(x)
        entries.append(a)
        x = 1 / (a - x)
    assert all(a <= -2 for a in entries)
    return entries


def cf_eval(entries: list[int]) -> Slope:
    """Evaluate a negative continued fraction; the empty list denotes -1/0."""
    if not entries:
        return INFINITY
    if any(a > -2 for a in entries):
        raise FareyError(f"continued fraction entries must be <= -2: {entries}")
    val = Fraction(entries[-1])
    for a in reversed(entries[:-1]):
        val = a - 1 / val
    return slope_from_fraction(val)


def slope_sort_key(s: Slope):
    """Ordering key treating infinity as below every rational."""
    if s.is_infinite:
        return (0, Fraction(0))
    return (1, s.as_fraction())


def format_slope(s: Slope) -> str:
    if s.is_infinite:
        return "inf"
    return f"{s.num}/{s.den}"


_SLOPE_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_slope(text: str) -> Slope:
    text = text.strip()
    if text in ("inf", "-1/0"):
        return INFINITY
    m = _SLOPE_RE.match(text)
    if not m:
        raise FareyError(f"cannot parse slope {text!r}")
    n = int(m.group(1))
    d = int(m.group(2)) if m.group(2) is not None else 1
    return slope_new(n, d)


def format_cfrac(entries: list[int]) -> str:
    return "[" + ",".join(str(a) for a in entries) + "]"


def parse_cfrac(text: str) -> list[int]:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise FareyError(f"cannot parse continued fraction {text!r}")
    body = text[1:-1].strip()
    if not body:
        return []
    return [int(part) for part in body.split(",")]
