"""Known infinite series of cyclic Legendre pairs and classification of lengths."""

from __future__ import annotations

import enum

from .correlation import DifferenceFamily, verify_df
from .zmod import Block


class SeriesTag(enum.Enum):
    CLASSICAL = "classical"
    SZEKERES = "szekeres"
    GALOIS = "galois"
    TWIN_PRIME = "twinprime"

    def __str__(self) -> str:
        return self.value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int):
    """Return ``(p, e)`` with ``n == p**e`` and p prime, or None."""
    if n < 2:
        return None
    p = 2
    while p * p <= n and n % p:
        p += 1
    if n % p:
        p = n  # n itself is prime
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return (p, e) if n == 1 else None


def is_prime_power(n: int) -> bool:
    return prime_power(n) is not None


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def quadratic_residues(p: int) -> Block:
    return Block.from_members(p, {x * x % p for x in range(1, p)})


def classical(p: int) -> DifferenceFamily:
    """Legendre-symbol family: X = QR(p); Y = QR(p), plus 0 when p = 1 (mod 4)."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"classical series needs an odd prime, got {p}")
    qr = quadratic_residues(p)
    Y = Block(p, qr.mask | 1) if p % 4 == 1 else qr
    df = DifferenceFamily(qr, Y)
    verify_df(*df)
    return df


def _legendre_symbol(x: int, p: int) -> int:
    r = pow(x, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def twin_prime(p: int) -> DifferenceFamily:
    """Twin-prime difference set in Z_{p(p+2)}, used for both blocks."""
    q = p + 2
    if p % 2 == 0 or not (is_prime(p) and is_prime(q)):
        raise ValueError(f"{p} and {q} are not odd twin primes")
    v = p * q
    members = []
    for x in range(v):
        if x % q == 0:
            members.append(x)
        elif x % p and _legendre_symbol(x % p, p) * _legendre_symbol(x % q, q) == 1:
            members.append(x)
    D = Block.from_members(v, members)
    df = DifferenceFamily(D, D)
    verify_df(*df)
    return df


def _gf2_mulmod(a: int, b: int, poly: int, deg: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= poly
    return out


def _gf2_powmod(a: int, e: int, poly: int, deg: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _gf2_mulmod(out, a, poly, deg)
        a = _gf2_mulmod(a, a, poly, deg)
        e >>= 1
    return out


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive_gf2(poly: int) -> bool:
    """True iff x has multiplicative order 2^deg - 1 modulo ``poly`` over GF(2)."""
    deg = poly.bit_length() - 1
    if deg < 1 or not poly & 1:
        return False
    order = (1 << deg) - 1
    if _gf2_powmod(2, order, poly, deg) != 1:
        return False
    return all(_gf2_powmod(2, order // r, poly, deg) != 1 for r in _prime_factors(order))


def primitive_polynomial(k: int) -> int:
    """Smallest degree-k primitive binary polynomial (bit i = coefficient of x^i)."""
    for poly in range((1 << k) | 1, 1 << (k + 1), 2):
        if is_primitive_gf2(poly):
            return poly
    raise RuntimeError(f"no primitive polynomial of degree {k}")  # unreachable for k >= 1


def m_sequence(k: int) -> list[int]:
    """One period of the maximal-length sequence s_i = [x^(k-1)] (x^i mod poly)."""
    poly = primitive_polynomial(k)
    state, out = 1, []
    for _ in range((1 << k) - 1):
        out.append(state >> (k - 1) & 1)
        state <<= 1
        if state >> k & 1:
            state ^= poly
    return out


def galois(k: int) -> DifferenceFamily:
    if not 2 <= k <= 20:
        raise ValueError(f"Galois series degree must be in [2, 20], got {k}")
    seq = m_sequence(k)
    v = len(seq)
    D = Block.from_members(v, [i for i, s in enumerate(seq) if s])
    df = DifferenceFamily(D, D)
    if k <= 12:
        verify_df(*df)
    return df


def twin_prime_factor(v: int):
    """p with v == p * (p + 2) and both prime, or None."""
    p = int((v + 1) ** 0.5) - 1
    for cand in (p - 1, p, p + 1):
        if cand > 1 and cand * (cand + 2) == v and is_prime(cand) and is_prime(cand + 2):
            return cand
    return None


def classify_length(v: int) -> frozenset[SeriesTag]:
    if v % 2 == 0:
        raise ValueError(f"length must be odd, got {v}")
    if v <= 1:
        raise ValueError(f"length must exceed 1, got {v}")
    tags = set()
    if is_prime(v):
        tags.add(SeriesTag.CLASSICAL)
    if is_prime_power(2 * v + 1):
        tags.add(SeriesTag.SZEKERES)
    if is_power_of_two(v + 1):
        tags.add(SeriesTag.GALOIS)
    if twin_prime_factor(v) is not None:
        tags.add(SeriesTag.TWIN_PRIME)
    return frozenset(tags)


def undecided_lengths(lo: int, hi: int) -> list[int]:
    """Odd v with lo < v < hi that belong to none of the known series."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    start = max(lo + 1, 3)
    start += 1 - start % 2
    return [v for v in range(start, hi, 2) if not classify_length(v)]


def has_type2_series(v: int) -> bool:
    """Whether a known series yields a type 2 pair: a prime v = 1 (mod 4), or 2v+1 a prime power.

    Szekeres pairs count as type 2 only as observed for 4 < v < 76; outside that
    range this is a heuristic.
    """
    tags = classify_length(v)
    return SeriesTag.SZEKERES in tags or (SeriesTag.CLASSICAL in tags and v % 4 == 1)


def generate(kind: str, v: int) -> DifferenceFamily:
    """Dispatch on series name and target length."""
    if kind == "classical":
        return classical(v)
    if kind == "twinprime":
        p = twin_prime_factor(v)
        if p is None:
            raise ValueError(f"{v} is not a product of twin primes")
        return twin_prime(p)
    if kind == "galois":
        if not is_power_of_two(v + 1):
            raise ValueError(f"{v} + 1 is not a power of two")
        return galois((v + 1).bit_length() - 1)
    raise ValueError(f"unknown series {kind!r}")
