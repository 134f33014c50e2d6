"""Arithmetic in Z_v: units, multiplicative subgroups, orbits and blocks.

Residues are always reduced into ``range(v)``.  For ``v = 1`` the ring has the
single residue 0, which is then also its own (trivial) unit group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Iterator, Union


class NotAUnitError(ValueError):
    """Raised when a residue expected to be invertible mod v is not."""

    def __init__(self, value: int, v: int):
        super().__init__(f"{value} is not a unit modulo {v} (gcd = {gcd(value, v)})")
        self.value = value
        self.v = v


class ModulusMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class Modulus:
    v: int

    def __post_init__(self):
        if not isinstance(self.v, int) or self.v < 1:
            raise ValueError(f"modulus must be a positive integer, got {self.v!r}")
        if self.v % 2 == 0:
            raise ValueError(f"modulus must be odd, got {self.v}")

    def __int__(self) -> int:
        return self.v


ModulusLike = Union[int, Modulus]


def as_modulus(m: ModulusLike) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


def is_unit(u: int, v: int) -> bool:
    return gcd(u % v, v) == 1


def check_unit(u: int, v: int) -> int:
    if not is_unit(u, v):
        raise NotAUnitError(u, v)
    return u % v


def multiplicative_order(u: int, v: int) -> int:
    u = check_unit(u, v)
    x, n = u, 1
    while x != 1 % v:
        x = x * u % v
        n += 1
    return n


class Block:
    """Immutable subset of Z_v stored as a bitmask (bit ``x`` set iff ``x`` is a member)."""

    __slots__ = ("v", "mask", "_members")

    def __init__(self, v: int, mask: int = 0):
        if v < 1:
            raise ValueError(f"modulus must be positive, got {v}")
        if mask < 0 or mask >> v:
            raise ValueError(f"mask has bits outside range({v})")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "_members", None)

    def __setattr__(self, name, value):
        raise AttributeError("Block is immutable")

    @classmethod
    def from_members(cls, v: int, members: Iterable[int]) -> "Block":
        mask = 0
        for x in members:
            if not 0 <= x < v:
                raise ValueError(f"residue {x} out of range for v={v}")
            mask |= 1 << x
        return cls(v, mask)

    @classmethod
    def full(cls, v: int) -> "Block":
        return cls(v, (1 << v) - 1)

    @property
    def members(self) -> tuple[int, ...]:
        """Sorted tuple view of the set."""
        if self._members is None:
            m, out, x = self.mask, [], 0
            while m:
                if m & 1:
                    out.append(x)
                m >>= 1
                x += 1
            object.__setattr__(self, "_members", tuple(out))
            if __debug__:
                assert sum(1 << y for y in out) == self.mask
        return self._members

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.v and bool(self.mask >> x & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Block):
            return NotImplemented
        return self.v == other.v and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.v, self.mask))

    def __repr__(self) -> str:
        return f"Block(v={self.v}, {list(self.members)})"

    def __reduce__(self):
        return (Block, (self.v, self.mask))


@dataclass(frozen=True)
class UnitGroup:
    modulus: Modulus
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class SubgroupH:
    """A multiplicative subgroup of the units of Z_v, as a sorted element tuple."""

    modulus: Modulus
    elements: tuple[int, ...]

    def __post_init__(self):
        v = self.modulus.v
        elems = tuple(sorted({e % v for e in self.elements}))
        object.__setattr__(self, "elements", elems)
        for e in elems:
            check_unit(e, v)
        if 1 % v not in elems:
            raise ValueError(f"subgroup {list(elems)} does not contain 1")
        present = set(elems)
        for a in elems:
            for b in elems:
                if a * b % v not in present:
                    raise ValueError(
                        f"{list(elems)} is not closed under multiplication mod {v}: "
                        f"{a}*{b} = {a * b % v}"
                    )

    @property
    def v(self) -> int:
        return self.modulus.v

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)


@dataclass(frozen=True)
class OrbitDecomposition:
    modulus: Modulus
    subgroup: SubgroupH
    orbits: tuple[Block, ...] = field(repr=False)

    @cached_property
    def representatives(self) -> tuple[int, ...]:
        return tuple(o.members[0] for o in self.orbits)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    def orbit_of(self, x: int) -> Block:
        for o in self.orbits:
            if x in o:
                return o
        raise ValueError(f"{x} is not a residue mod {self.modulus.v}")


def unit_group(m: ModulusLike) -> UnitGroup:
    m = as_modulus(m)
    v = m.v
    return UnitGroup(m, tuple(u for u in range(v) if gcd(u, v) == 1))


def subgroup_generated(m: ModulusLike, gens: Iterable[int]) -> SubgroupH:
    m = as_modulus(m)
    v = m.v
    gens = [check_unit(g, v) for g in gens]
    elems = {1 % v}
    frontier = list(elems)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % v
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return SubgroupH(m, tuple(elems))


def subgroups_of_order(m: ModulusLike, d: int) -> list[SubgroupH]:
    """All subgroups of the unit group of exact order ``d``.

    Each unit whose order divides ``d`` is tried as a seed; subgroups are grown
    by adding further such units until the order reaches ``d``.
    """
    m = as_modulus(m)
    if d < 1:
        raise ValueError("subgroup order must be positive")
    units = unit_group(m)
    if units.order % d:
        return []
    small = [u for u in units.elements if d % multiplicative_order(u, m.v) == 0]
    found: dict[tuple[int, ...], SubgroupH] = {}
    seen: set[tuple[int, ...]] = set()

    def grow(gens: tuple[int, ...]) -> None:
        h = subgroup_generated(m, gens)
        if h.elements in seen or d % h.order:
            return
        seen.add(h.elements)
        if h.order == d:
            found[h.elements] = h
            return
        for u in small:
            if u not in h.elements:
                grow(gens + (u,))

    grow(())
    return [found[k] for k in sorted(found)]


def orbit(H: SubgroupH, x: int) -> Block:
    v = H.v
    return Block.from_members(v, {h * x % v for h in H.elements})


def orbit_decomposition(m: ModulusLike, H: SubgroupH) -> OrbitDecomposition:
    m = as_modulus(m)
    if H.modulus != m:
        raise ModulusMismatchError(f"subgroup is mod {H.v}, expected mod {m.v}")
    seen = 0
    orbits = []
    for x in range(m.v):
        if seen >> x & 1:
            continue
        o = orbit(H, x)
        seen |= o.mask
        orbits.append(o)
    return OrbitDecomposition(m, H, tuple(orbits))


def expand(H: SubgroupH, reps: Union[Block, Iterable[int]]) -> Block:
    """The product set HS = {h*s mod v}."""
    v = H.v
    mask = 0
    for s in reps:
        if not 0 <= s < v:
            raise ValueError(f"residue {s} out of range for v={v}")
        for h in H.elements:
            mask |= 1 << (h * s % v)
    return Block(v, mask)


def is_union_of_orbits(H: SubgroupH, b: Block) -> bool:
    return expand(H, b) == b


def orbit_representatives(H: SubgroupH, b: Block) -> tuple[int, ...]:
    """Minimal element of each H-orbit contained in ``b``."""
    reps = []
    covered = 0
    for x in b.members:
        if covered >> x & 1:
            continue
        o = orbit(H, x)
        covered |= o.mask
        reps.append(x)
    return tuple(reps)


def rotate(b: Block, s: int) -> Block:
    """Block translated by ``-s``: x -> x - s (mod v)."""
    v = b.v
    s %= v
    if s == 0:
        return b
    full = (1 << v) - 1
    return Block(v, ((b.mask >> s) | (b.mask << (v - s))) & full)


def translate(b: Block, s: int) -> Block:
    """The translate ``b - s``."""
    return rotate(b, s)


def negate(b: Block) -> Block:
    v = b.v
    return Block(v, sum(1 << (-x % v) for x in b.members))


def scale(b: Block, u: int) -> Block:
    v = b.v
    u = check_unit(u, v)
    return Block(v, sum(1 << (u * x % v) for x in b.members))


def complement(b: Block) -> Block:
    return Block(b.v, ((1 << b.v) - 1) ^ b.mask)
