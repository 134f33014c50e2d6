"""Periodic autocorrelation and difference-family verification over Z_v.

Two independent routes decide whether a pair of blocks is a Legendre pair:

* :func:`is_legendre_pair` builds the +-1 sequences and sums PAF values directly;
* :func:`verify_df` counts differences inside each block.

Both are exact integer computations.  :func:`psd` is a floating-point
diagnostic only.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .zmod import Block, ModulusMismatchError, negate


@dataclass(frozen=True)
class PmOneSequence:
    values: tuple[int, ...]

    def __post_init__(self):
        if any(x not in (1, -1) for x in self.values):
            raise ValueError("sequence entries must be +1 or -1")

    @property
    def v(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PafVector:
    values: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.values)

    def __getitem__(self, s: int) -> int:
        return self.values[s % len(self.values)]


@dataclass(frozen=True)
class ParameterSet:
    v: int
    k1: int
    k2: int
    lam: int

    @property
    def n(self) -> int:
        return self.k1 + self.k2 - self.lam

    def __str__(self) -> str:
        return f"({self.v};{self.k1},{self.k2};{self.lam})"


@dataclass(frozen=True)
class DiffCountTable:
    counts: tuple[int, ...]

    @property
    def v(self) -> int:
        return len(self.counts)

    def __getitem__(self, d: int) -> int:
        return self.counts[d % len(self.counts)]


@dataclass(frozen=True)
class DifferenceFamily:
    X: Block
    Y: Block

    def __post_init__(self):
        if self.X.v != self.Y.v:
            raise ModulusMismatchError(f"blocks live in Z_{self.X.v} and Z_{self.Y.v}")

    @property
    def v(self) -> int:
        return self.X.v

    @property
    def sizes(self) -> tuple[int, int]:
        return len(self.X), len(self.Y)

    def __iter__(self):
        return iter((self.X, self.Y))


class DFType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2

    def __str__(self) -> str:
        return f"type={self.value}"


class ShiftFailure(NamedTuple):
    shift: int
    total: int


@dataclass(frozen=True)
class LegendreVerdict:
    ok: bool
    failures: tuple[ShiftFailure, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


class DiffFailure(NamedTuple):
    d: int
    count_x: int
    count_y: int

    @property
    def total(self) -> int:
        return self.count_x + self.count_y


class DFVerificationError(ValueError):
    """The pair is not a Legendre difference family; ``failures`` lists every bad difference."""

    def __init__(self, v: int, lam: int, failures: list[DiffFailure]):
        self.v = v
        self.lam = lam
        self.failures = failures
        shown = ", ".join(f"d={f.d}: {f.count_x}+{f.count_y}={f.total}" for f in failures[:8])
        more = f" (+{len(failures) - 8} more)" if len(failures) > 8 else ""
        super().__init__(
            f"not a Legendre DF in Z_{v}: expected lambda={lam} at every nonzero "
            f"difference; {len(failures)} violations: {shown}{more}"
        )


def to_sequence(b: Block) -> PmOneSequence:
    return PmOneSequence(tuple(-1 if b.mask >> x & 1 else 1 for x in range(b.v)))


def _shift_index(v: int) -> np.ndarray:
    r = np.arange(v)
    return (r[:, None] + r[None, :]) % v


def paf(f: PmOneSequence) -> PafVector:
    """paf[s] = sum_x f(x) f(x+s), by the direct double sum."""
    a = np.asarray(f.values, dtype=np.int64)
    if a.size == 0:
        return PafVector(())
    products = a[None, :] * a[_shift_index(a.size)].T
    return PafVector(tuple(int(x) for x in products.sum(axis=1)))


def _check_same_modulus(X: Block, Y: Block) -> None:
    if X.v != Y.v:
        raise ModulusMismatchError(f"blocks live in Z_{X.v} and Z_{Y.v}")


def is_legendre_pair(X: Block, Y: Block) -> LegendreVerdict:
    _check_same_modulus(X, Y)
    pf = paf(to_sequence(X)).values
    pg = paf(to_sequence(Y)).values
    failures = tuple(
        ShiftFailure(s, pf[s] + pg[s]) for s in range(1, X.v) if pf[s] + pg[s] != -2
    )
    return LegendreVerdict(not failures, failures)


def diff_counts(b: Block) -> DiffCountTable:
    """counts[d] = #{(a, b) in block^2 : a - b = d}, i.e. |b & (b + d)|."""
    v, m = b.v, b.mask
    full = (1 << v) - 1
    counts = [len(b)]
    for d in range(1, v):
        shifted = ((m << d) | (m >> (v - d))) & full
        counts.append((m & shifted).bit_count())
    return DiffCountTable(tuple(counts))


def legendre_lambda(v: int, k1: int, k2: int) -> int:
    return k1 + k2 - (v + 1) // 2


def verify_df(X: Block, Y: Block) -> ParameterSet:
    """Return the parameter set of (X, Y) or raise :class:`DFVerificationError`."""
    _check_same_modulus(X, Y)
    v = X.v
    k1, k2 = len(X), len(Y)
    lam = legendre_lambda(v, k1, k2)
    cx, cy = diff_counts(X).counts, diff_counts(Y).counts
    failures = [DiffFailure(d, cx[d], cy[d]) for d in range(1, v) if cx[d] + cy[d] != lam]
    if failures:
        raise DFVerificationError(v, lam, failures)
    params = ParameterSet(v, k1, k2, lam)
    # Both identities follow from constant difference counts; a failure here is a bug.
    assert k1 * (k1 - 1) + k2 * (k2 - 1) == lam * (v - 1) or v == 1, params
    return params


def check_df(X: Block, Y: Block) -> bool:
    try:
        verify_df(X, Y)
    except DFVerificationError:
        return False
    return True


def is_difference_set(b: Block) -> bool:
    counts = diff_counts(b).counts[1:]
    return len(set(counts)) <= 1


def df_type(X: Block, Y: Block) -> DFType:
    verify_df(X, Y)
    dx, dy = is_difference_set(X), is_difference_set(Y)
    if dx != dy:
        raise AssertionError(f"X difference set = {dx} but Y difference set = {dy}")
    return DFType.TYPE1 if dx else DFType.TYPE2


def is_symmetric(b: Block) -> bool:
    return negate(b) == b


def is_skew(b: Block) -> bool:
    if 0 in b:
        return False
    neg = negate(b)
    nonzero = ((1 << b.v) - 1) & ~1
    return not (b.mask & neg.mask) and (b.mask | neg.mask) == nonzero


def psd(f: PmOneSequence) -> np.ndarray:
    """|F(k)|^2 for k = 0..v-1, F the DFT evaluated as an explicit sum."""
    a = np.asarray(f.values, dtype=float)
    v = a.size
    k = np.arange(v)
    kernel = np.exp(-2j * np.pi * np.outer(k, k) / v)
    return np.abs(kernel @ a) ** 2


def psd_check(X: Block, Y: Block, *, rtol: float = 1e-6) -> bool:
    """Spectral test psd_f(k) + psd_g(k) == 2v + 2 for k != 0.

    A deviation above ``rtol * v`` triggers a warning; the result is
    advisory and never replaces :func:`verify_df`.
    """
    _check_same_modulus(X, Y)
    v = X.v
    total = psd(to_sequence(X)) + psd(to_sequence(Y))
    dev = np.abs(total[1:] - (2 * v + 2))
    if dev.size and dev.max() > rtol * v:
        bad = [int(k) + 1 for k in np.flatnonzero(dev > rtol * v)]
        warnings.warn(f"PSD test fails in Z_{v} at frequencies {bad[:10]}", stacklevel=2)
        return False
    return True
