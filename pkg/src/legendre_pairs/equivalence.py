"""Equivalence of Legendre difference families under the elementary transformations.

The group is generated by swapping the blocks, complementing a block,
translating a block, negating a block and applying a common multiplier.
Negation is multiplication by -1, so per-block negation combined with a common
multiplier ``a`` amounts to the multiplier pair ``(a, +-a)``.  After every block
is normalized to size (v-1)/2 complements drop out, and the canonical form is
an exact minimum over ``2 * phi(v) * 2 * v * v`` transforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .correlation import DifferenceFamily, diff_counts
from .zmod import Block, check_unit, complement, rotate, scale, unit_group


@dataclass(frozen=True)
class Transform:
    """Per-block inversion, common multiplier, translation, complement, then swap.

    Block ``B`` is sent to ``complement?(eps * alpha * B - shift)``, with
    ``eps = -1`` when the block's inversion flag is set.
    """

    swap: bool = False
    comp_x: bool = False
    comp_y: bool = False
    shift_x: int = 0
    shift_y: int = 0
    alpha: int = 1
    inv_x: bool = False
    inv_y: bool = False

    def block_maps(self, v: int) -> tuple[tuple[int, int, bool], tuple[int, int, bool]]:
        """(multiplier, shift, complement) applied to X and to Y."""
        a = self.alpha % v
        ax = -a % v if self.inv_x else a
        ay = -a % v if self.inv_y else a
        return (ax, self.shift_x % v, self.comp_x), (ay, self.shift_y % v, self.comp_y)


def identity() -> Transform:
    return Transform()


def _map_block(b: Block, mult: int, shift: int, comp: bool) -> Block:
    out = rotate(scale(b, mult), shift)
    return complement(out) if comp else out


def apply(t: Transform, df: DifferenceFamily) -> DifferenceFamily:
    v = df.v
    check_unit(t.alpha, v)
    mx, my = t.block_maps(v)
    X = _map_block(df.X, *mx)
    Y = _map_block(df.Y, *my)
    return DifferenceFamily(Y, X) if t.swap else DifferenceFamily(X, Y)


def compose(second: Transform, first: Transform, v: int) -> Transform:
    """The transform equal to applying ``first`` and then ``second``."""
    m1 = first.block_maps(v)
    m2 = second.block_maps(v)
    slot = 1 if first.swap else 0  # where X sits after ``first``

    def chain(outer, inner):
        (a2, s2, c2), (a1, s1, c1) = outer, inner
        return a2 * a1 % v, (a2 * s1 + s2) % v, c1 != c2

    fx = chain(m2[slot], m1[0])
    fy = chain(m2[1 - slot], m1[1])
    alpha = fx[0]
    return Transform(
        swap=first.swap != second.swap,
        comp_x=fx[2],
        comp_y=fy[2],
        shift_x=fx[1],
        shift_y=fy[1],
        alpha=alpha,
        inv_x=False,
        inv_y=fy[0] != alpha,
    )


def random_transform(v: int, rng: random.Random) -> Transform:
    units = unit_group(v).elements
    return Transform(
        swap=rng.random() < 0.5,
        comp_x=rng.random() < 0.5,
        comp_y=rng.random() < 0.5,
        shift_x=rng.randrange(v),
        shift_y=rng.randrange(v),
        alpha=rng.choice(units),
        inv_x=rng.random() < 0.5,
        inv_y=rng.random() < 0.5,
    )


def normalize_sizes(df: DifferenceFamily) -> DifferenceFamily:
    """Complement each block of size (v+1)/2 so both have size (v-1)/2."""
    v = df.v
    half = (v - 1) // 2
    blocks = []
    for b in df:
        if len(b) == half:
            blocks.append(b)
        elif len(b) == half + 1:
            blocks.append(complement(b))
        else:
            raise ValueError(
                f"block size {len(b)} is neither {half} nor {half + 1}; not a Legendre DF in Z_{v}"
            )
    return DifferenceFamily(*blocks)


@dataclass(frozen=True)
class Fingerprint:
    pafs: tuple[tuple[int, ...], tuple[int, ...]]
    sizes: tuple[tuple[int, int], tuple[int, int]]


def _paf_multiset(b: Block) -> tuple[int, ...]:
    # paf(s) = v - 4 * (k - |B & (B + s)|)
    v, k = b.v, len(b)
    counts = diff_counts(b).counts
    return tuple(sorted(v - 4 * (k - c) for c in counts[1:]))


def fingerprint(df: DifferenceFamily) -> Fingerprint:
    v = df.v
    pafs = sorted(_paf_multiset(b) for b in df)
    sizes = sorted((min(len(b), v - len(b)), max(len(b), v - len(b))) for b in df)
    return Fingerprint((pafs[0], pafs[1]), (sizes[0], sizes[1]))


@dataclass(frozen=True)
class CanonicalKey:
    """Minimal ``(X_mask << v) | Y_mask`` over the transformation group."""

    v: int
    value: int

    def hex(self) -> str:
        width = (2 * self.v + 3) // 4
        return format(self.value, f"0{width}x")

    def blocks(self) -> DifferenceFamily:
        full = (1 << self.v) - 1
        return DifferenceFamily(Block(self.v, self.value >> self.v), Block(self.v, self.value & full))


def _mask_of(members, v: int, shift: int) -> int:
    m = 0
    for x in members:
        m |= 1 << ((x - shift) % v)
    return m


def _min_translates(b: Block, mults: np.ndarray) -> tuple[int, list[tuple[int, int]]]:
    """Minimum of mask(m*b - s) over multipliers m and shifts s.

    The smallest integer mask is the one whose highest set bit is lowest, i.e.
    a translate that puts a longest cyclic run of non-members at the top.  Only
    translates sending the member just after such a run to 0 are compared.

    Returns the minimum and every ``(multiplier, shift)`` attaining it.
    """
    v = b.v
    k = len(b)
    if k == 0 or k == v:
        return b.mask, [(int(m), s) for m in mults for s in range(v)]
    members = np.asarray(b.members, dtype=np.int64)
    rows = np.sort((mults[:, None] * members[None, :]) % v, axis=1)
    gaps = np.empty_like(rows)
    gaps[:, :-1] = rows[:, 1:] - rows[:, :-1]
    gaps[:, -1] = rows[:, 0] + v - rows[:, -1]
    best_gap = gaps.max()
    best = None
    winners: list[tuple[int, int]] = []
    for r, i in zip(*np.nonzero(gaps == best_gap)):
        shift = int(rows[r, (i + 1) % k])
        m = _mask_of(rows[r].tolist(), v, shift)
        if best is None or m < best:
            best, winners = m, [(int(mults[r]), shift)]
        elif m == best:
            winners.append((int(mults[r]), shift))
    return best, winners


def canonical_form(df: DifferenceFamily) -> CanonicalKey:
    df = normalize_sizes(df)
    v = df.v
    if v == 1:
        return CanonicalKey(1, (df.X.mask << 1) | df.Y.mask)
    units = np.asarray(unit_group(v).elements, dtype=np.int64)
    # Minimize the leading block first; the trailing block only over the survivors.
    best_first = None
    survivors: list[tuple[Block, int]] = []
    for first, second in ((df.X, df.Y), (df.Y, df.X)):
        m, wins = _min_translates(first, units)
        if best_first is None or m < best_first:
            best_first, survivors = m, []
        if m == best_first:
            survivors.extend((second, a) for a, _ in wins)
    best_second = None
    done: set[tuple[Block, int]] = set()
    for second, a in survivors:
        if (second, a) in done:
            continue
        done.add((second, a))
        m, _ = _min_translates(second, np.asarray(sorted({a, -a % v}), dtype=np.int64))
        if best_second is None or m < best_second:
            best_second = m
    return CanonicalKey(v, (best_first << v) | best_second)


def equivalent(a: DifferenceFamily, b: DifferenceFamily) -> bool:
    if a.v != b.v:
        raise ValueError(f"cannot compare families in Z_{a.v} and Z_{b.v}")
    if fingerprint(a) != fingerprint(b):
        return False
    return canonical_form(a) == canonical_form(b)


def find_transform(a: DifferenceFamily, b: DifferenceFamily) -> Optional[Transform]:
    """A size-preserving transform taking normalized ``a`` to normalized ``b``, if any.

    Brute force over the whole group; meant for small v and for tests.
    """
    na, nb = normalize_sizes(a), normalize_sizes(b)
    v = a.v

    def shift_onto(src: Block, dst: Block):
        for s in range(v):
            if rotate(src, s) == dst:
                return s
        return None

    for swap in (False, True):
        tx, ty = (nb.Y, nb.X) if swap else (nb.X, nb.Y)
        for alpha in unit_group(v).elements:
            sx = shift_onto(scale(na.X, alpha), tx)
            if sx is None:
                continue
            for inv_y in (False, True):
                sy = shift_onto(scale(na.Y, -alpha if inv_y else alpha), ty)
                if sy is not None:
                    return Transform(swap=swap, alpha=alpha, inv_y=inv_y, shift_x=sx, shift_y=sy)
    return None
