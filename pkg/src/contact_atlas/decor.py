"""Decorations: sign assignments on basic slices up to in-block shuffling.

Shuffling signs within a continued-fraction block does not change the contact
structure, so a decoration class is stored as one integer per block: the
number of positive basic slices.  Enumeration order is lexicographic in that
tuple, which keeps reports reproducible.
"""

from __future__ import annotations

import itertools
from math import prod

from .paths import BlockSequence, PathSide

# A decoration is a tuple of per-block positive counts, 0 <= c_k <= |C_k|.
Decoration = tuple[int, ...]


class DecorError(ValueError):
    pass


def _check(seq: BlockSequence, dec: Decoration):
    if len(dec) != seq.count:
        raise DecorError(f"decoration length {len(dec)} != {seq.count} blocks")
    for c, length in zip(dec, seq.lengths):
        if not 0 <= c <= length:
            raise DecorError(f"positive count {c} out of range for block length {length}")


def enumerate_decorations(seq: BlockSequence) -> list[Decoration]:
    """All prod(|C_k|+1) decoration classes, in lexicographic order."""
    return list(itertools.product(*(range(length + 1) for length in seq.lengths)))


def decoration_count(seq: BlockSequence) -> int:
    return prod(length + 1 for length in seq.lengths)


def _block_sign(count: int, length: int) -> int:
    """+1 or -1 for a monochrome block, 0 for a mixed one."""
    if count == length:
        return 1
    if count == 0:
        return -1
    return 0


def consistency_level(seq: BlockSequence, dec: Decoration) -> int | None:
    """None if the pair is fully consistent, else the least inconsistent level.

    The pair is k-consistent when every block of index <= k is monochrome of
    one common sign; level j means (j-1)-consistent but not j-consistent.
    Block C_1 has length 1, so the level is always >= 2.
    """
    _check(seq, dec)
    target = _block_sign(dec[0], seq.blocks[0].length)
    for j, (count, block) in enumerate(zip(dec, seq.blocks), start=1):
        if _block_sign(count, block.length) != target:
            assert j >= 2
            return j
    return None


def is_totally_k_inconsistent(seq: BlockSequence, dec: Decoration, k: int) -> bool:
    """Blocks of index <= k on the A-side monochrome of one sign, B-side opposite."""
    _check(seq, dec)
    if not 2 <= k <= seq.count:
        raise DecorError(f"k = {k} out of range 2..{seq.count}")
    a_sign = None
    b_sign = None
    for count, block in zip(dec, seq.blocks):
        if block.index > k:
            break
        sign = _block_sign(count, block.length)
        if sign == 0:
            return False
        if block.side is PathSide.P1:
            if a_sign is not None and sign != a_sign:
                return False
            a_sign = sign
        else:
            if b_sign is not None and sign != b_sign:
                return False
            b_sign = sign
    return a_sign is not None and b_sign is not None and a_sign == -b_sign


def totally_2_inconsistent(seq: BlockSequence) -> list[Decoration]:
    return [d for d in enumerate_decorations(seq) if is_totally_k_inconsistent(seq, d, 2)]


def m_closed_form(seq: BlockSequence) -> tuple[int, ...]:
    """(m_2..m_N) via m_k = |C_k| * prod_{r>k}(|C_r|+1), m_N = |C_N|."""
    lengths = seq.lengths
    n_blocks = seq.count
    out = []
    for k in range(2, n_blocks + 1):
        tail = prod(lengths[r] + 1 for r in range(k, n_blocks))
        out.append(lengths[k - 1] * tail)
    return tuple(out)


def m_values(seq: BlockSequence) -> tuple[int, ...]:
    """(m_2..m_N): m_j is half the number of level-j decorations.

    Counted by enumeration, then cross-checked against the closed form; a
    mismatch means the block interleaving is wrong.
    """
    counts = {}
    for dec in enumerate_decorations(seq):
        level = consistency_level(seq, dec)
        if level is not None:
            counts[level] = counts.get(level, 0) + 1
    out = []
    for j in range(2, seq.count + 1):
        c = counts.pop(j, 0)
        if c % 2:
            raise DecorError(f"odd number of level-{j} decorations")
        out.append(c // 2)
    if counts:
        raise DecorError(f"levels outside 2..N: {sorted(counts)}")
    result = tuple(out)
    if result != m_closed_form(seq):
        raise DecorError(
            f"enumerated m-values {result} != closed form {m_closed_form(seq)}"
        )
    return result


def negate(seq: BlockSequence, dec: Decoration) -> Decoration:
    """Flip every basic-slice sign: positives[k] -> |C_k| - positives[k]."""
    _check(seq, dec)
    return tuple(length - c for c, length in zip(dec, seq.lengths))


def serialize_decoration(dec: Decoration) -> dict:
    return {"positives": list(dec)}


def serialize_level(level: int | None):
    return "consistent" if level is None else {"inconsistent": level}
