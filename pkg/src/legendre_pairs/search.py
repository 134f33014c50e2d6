"""Search for H-invariant Legendre DFs by matching PAF keys.

Every candidate block is a union of H-orbits of size k = (v-1)/2.  A block's
*half-PAF* is (paf(1), ..., paf((v-1)/2)); the partner of X must have half-PAF
equal to ``-2 - paf_X``.  Candidates are hashed on their half-PAF and each
block probes the table with its key.  Every match then passes the exact
:func:`~legendre_pairs.correlation.is_legendre_pair` gate.
"""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .correlation import DifferenceFamily, is_legendre_pair, legendre_lambda, verify_df
from .equivalence import canonical_form
from .series import undecided_lengths
from .zmod import Block, Modulus, SubgroupH, orbit_decomposition, subgroup_generated

log = logging.getLogger(__name__)

# Lengths still open after the v = 91, 93 and 123 constructions.
OPEN_LENGTHS = frozenset(undecided_lengths(76, 200)) - {91, 93, 123}


@dataclass
class SearchConfig:
    v: int
    H: Optional[SubgroupH] = None
    max_candidates: int = 1_000_000
    max_results: Optional[int] = None
    deadline: Optional[float] = None  # seconds of wall time
    dedupe: bool = False
    allow_open: bool = False

    def __post_init__(self):
        Modulus(self.v)
        if self.H is None:
            self.H = subgroup_generated(self.v, [])
        if self.H.v != self.v:
            raise ValueError(f"subgroup lives mod {self.H.v}, search is mod {self.v}")
        if self.v in OPEN_LENGTHS and not self.allow_open:
            raise ValueError(f"v={self.v} is an open length; pass allow_open=True to search it")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be positive")

    @property
    def k(self) -> int:
        return (self.v - 1) // 2

    @property
    def orbits(self) -> tuple[Block, ...]:
        return orbit_decomposition(self.v, self.H).orbits

    @property
    def feasible(self) -> bool:
        reachable = 1
        for o in self.orbits:
            reachable |= reachable << len(o)
        return bool(reachable >> self.k & 1)


def enumerate_blocks(cfg: SearchConfig) -> Iterator[Block]:
    """Unions of H-orbits of total size k, in lexicographic order of orbit indices."""
    orbits = cfg.orbits
    n, k = len(orbits), cfg.k
    if not cfg.feasible:
        log.warning("v=%d, |H|=%d: no union of orbits has size %d", cfg.v, cfg.H.order, k)
        return
    sizes = [len(o) for o in orbits]
    masks = [o.mask for o in orbits]
    # reach[i] = bitset of sums attainable with orbits i..n-1
    reach = [0] * (n + 1)
    reach[n] = 1
    for i in range(n - 1, -1, -1):
        reach[i] = reach[i + 1] | (reach[i + 1] << sizes[i])

    def rec(start: int, remaining: int, mask: int) -> Iterator[int]:
        if remaining == 0:
            yield mask
            return
        for i in range(start, n):
            if not reach[i] >> remaining & 1:
                return
            if sizes[i] <= remaining and reach[i + 1] >> (remaining - sizes[i]) & 1:
                yield from rec(i + 1, remaining - sizes[i], mask | masks[i])

    v = cfg.v
    for mask in rec(0, k, 0):
        yield Block(v, mask)


def count_blocks(cfg: SearchConfig) -> int:
    """Number of blocks :func:`enumerate_blocks` yields, by dynamic programming."""
    ways = {0: 1}
    for o in cfg.orbits:
        nxt = dict(ways)
        for s, c in ways.items():
            nxt[s + len(o)] = nxt.get(s + len(o), 0) + c
        ways = nxt
    return ways.get(cfg.k, 0)


def _half_pafs(blocks: list[Block], v: int) -> np.ndarray:
    """Rows of (paf(1), ..., paf((v-1)/2)) for each block, exact int64."""
    half = (v - 1) // 2
    if not blocks or half == 0:
        return np.zeros((len(blocks), half), dtype=np.int64)
    bits = np.array([[b.mask >> x & 1 for x in range(v)] for b in blocks], dtype=np.int64)
    f = 1 - 2 * bits
    out = np.empty((len(blocks), half), dtype=np.int64)
    for s in range(1, half + 1):
        out[:, s - 1] = (f * np.roll(f, -s, axis=1)).sum(axis=1)
    return out


def half_paf(b: Block) -> tuple[int, ...]:
    return tuple(int(x) for x in _half_pafs([b], b.v)[0])


def paf_key(b: Block) -> tuple[int, ...]:
    """The half-PAF a partner of ``b`` must have: -2 - paf_b(s) for s = 1..(v-1)/2."""
    return tuple(-2 - x for x in half_paf(b))


@dataclass
class SearchResult:
    families: list[DifferenceFamily]
    candidates: int
    status: str = "complete"  # or "max_results", "deadline"
    subgroup: Optional[SubgroupH] = None
    chunks_done: int = 0

    @property
    def exhausted_limit(self) -> bool:
        return self.status != "complete"


def _chunks(it: Iterable[Block], size: int) -> Iterator[list[Block]]:
    it = iter(it)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _build_table(blocks: list[Block], v: int) -> dict[bytes, list[Block]]:
    table: dict[bytes, list[Block]] = {}
    for b, row in zip(blocks, _half_pafs(blocks, v)):
        table.setdefault(row.tobytes(), []).append(b)
    return table


def _probe_keys(blocks: list[Block], v: int) -> np.ndarray:
    return -2 - _half_pafs(blocks, v)


def match_blocks(
    probes: list[Block], table_blocks: list[Block], v: int
) -> Iterator[DifferenceFamily]:
    """Pairs (X, Y) with X from ``probes``, Y from ``table_blocks`` forming a Legendre DF."""
    table = _build_table(table_blocks, v)
    for X, key in zip(probes, _probe_keys(probes, v)):
        for Y in table.get(key.tobytes(), ()):
            verdict = is_legendre_pair(X, Y)
            if not verdict:  # key equality implies the PAF sums; reaching here is a bug
                raise AssertionError(f"key match but not a Legendre pair: {verdict.failures[:3]}")
            yield DifferenceFamily(X, Y)


def _save_checkpoint(path: Path, cfg: SearchConfig, result: SearchResult) -> None:
    state = {
        "v": cfg.v,
        "H": list(cfg.H.elements),
        "chunk_size": cfg.max_candidates,
        "chunks_done": result.chunks_done,
        "candidates": result.candidates,
        "families": [[list(df.X.members), list(df.Y.members)] for df in result.families],
    }
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def _load_checkpoint(path: Path, cfg: SearchConfig) -> Optional[dict]:
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if (
        state["v"] != cfg.v
        or tuple(state["H"]) != cfg.H.elements
        or state["chunk_size"] != cfg.max_candidates
    ):
        raise ValueError(f"checkpoint {path} was written for a different search")
    return state


def match_complements(
    cfg: SearchConfig, checkpoint: Union[str, Path, None] = None
) -> SearchResult:
    """All ordered Legendre DFs (X, Y) of H-invariant blocks of size (v-1)/2.

    Candidates are held in memory up to ``cfg.max_candidates``.  Beyond that
    the table is built one chunk at a time and every candidate is re-enumerated
    as a probe against each chunk.  The checkpoint records completed chunks.
    """
    start = time.monotonic()
    v = cfg.v
    result = SearchResult([], 0, subgroup=cfg.H)
    seen_keys = set()
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None:
        state = _load_checkpoint(ckpt, cfg)
        if state is not None:
            result.chunks_done = state["chunks_done"]
            for xs, ys in state["families"]:
                df = DifferenceFamily(Block.from_members(v, xs), Block.from_members(v, ys))
                result.families.append(df)
                if cfg.dedupe:
                    seen_keys.add(canonical_form(df))

    def accept(df: DifferenceFamily) -> bool:
        if cfg.dedupe:
            key = canonical_form(df)
            if key in seen_keys:
                return True
            seen_keys.add(key)
        result.families.append(df)
        if cfg.max_results is not None and len(result.families) >= cfg.max_results:
            result.status = "max_results"
            return False
        return True

    def out_of_time() -> bool:
        if cfg.deadline is not None and time.monotonic() - start > cfg.deadline:
            result.status = "deadline"
            return True
        return False

    total = count_blocks(cfg)
    probe_size = min(cfg.max_candidates, 4096)
    for ci, chunk in enumerate(_chunks(enumerate_blocks(cfg), cfg.max_candidates)):
        result.candidates += len(chunk)
        if ci < result.chunks_done:
            continue
        single_pass = len(chunk) == total
        probes = [chunk] if single_pass else _chunks(enumerate_blocks(cfg), probe_size)
        for probe in probes:
            if out_of_time():
                return result
            for df in match_blocks(probe, chunk, v):
                if not accept(df):
                    return result
        result.chunks_done = ci + 1
        if ckpt is not None:
            _save_checkpoint(ckpt, cfg, result)
    return result


def _diff_count_vector(b: Block) -> tuple[int, ...]:
    # ordered-pair enumeration, independent of the bitmask route in correlation
    v = b.v
    counts = [0] * v
    members = b.members
    for x in members:
        for y in members:
            counts[(x - y) % v] += 1
    return tuple(counts)


ORACLE_MAX_V = 15


def exhaustive_oracle(v: int) -> list[DifferenceFamily]:
    """Every ordered Legendre DF in Z_v with both blocks of size (v-1)/2.

    Blocks are matched on their difference-count vectors (partner counts must
    be lambda - counts at each nonzero d) and then pass :func:`verify_df`.
    No PAF values are involved.
    """
    Modulus(v)
    if v > ORACLE_MAX_V:
        raise ValueError(f"exhaustive oracle is limited to v <= {ORACLE_MAX_V}, got {v}")
    k = (v - 1) // 2
    lam = legendre_lambda(v, k, k)
    blocks = [Block.from_members(v, c) for c in combinations(range(v), k)]
    assert len(blocks) == comb(v, k)
    by_counts: dict[tuple[int, ...], list[Block]] = {}
    for b in blocks:
        by_counts.setdefault(_diff_count_vector(b)[1:], []).append(b)
    out = []
    for X in blocks:
        need = tuple(lam - c for c in _diff_count_vector(X)[1:])
        for Y in by_counts.get(need, ()):
            verify_df(X, Y)
            out.append(DifferenceFamily(X, Y))
    return out
