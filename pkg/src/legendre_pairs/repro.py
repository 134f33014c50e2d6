"""Reproduction checks: one function per acceptance criterion.

``python -m legendre_pairs repro`` prints the resulting table; the test suite
asserts each check individually.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import catalog, correlation, equivalence, search, series
from .correlation import DFType, df_type, is_legendre_pair, is_skew, is_symmetric, verify_df
from .zmod import subgroup_generated


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title} ({self.seconds:.2f}s): {self.detail}"


FIXTURE_CENSUS = {
    39: 1, 49: 1, 51: 2, 53: 10, 55: 1, 57: 6, 59: 6, 61: 1, 63: 6, 65: 1,
    67: 1, 71: 1, 73: 1, 91: 4, 93: 1, 111: 1, 121: 2, 123: 1,
}

EXPECTED_UNDECIDED = [
    77, 85, 87, 91, 93, 115, 117, 123, 129, 133, 145,
    147, 159, 161, 169, 175, 177, 185, 187, 195,
]

# Odd lengths in (48, 76) with no known series of type 2 pairs.
TYPE2_GAP_LENGTHS = {49, 55, 57, 59, 67, 71}

# Ordered Legendre DFs with k1 = k2 = (v-1)/2, first derived with the exhaustive oracle.
ORACLE_COUNTS = {3: 9, 5: 50, 7: 196, 9: 972, 11: 2904, 13: 7098}


def _families():
    c = catalog.builtin_catalog()
    return [(r, catalog.expand_record(r)) for r in c.records]


def criterion_1() -> CriterionResult:
    t0 = time.perf_counter()
    c = catalog.builtin_catalog()
    bad = []
    for r in c.records:
        df = catalog.expand_record(r)
        try:
            params = verify_df(df.X, df.Y)
        except correlation.DFVerificationError as exc:
            bad.append(f"{r.label}: {exc}")
            continue
        if params != r.declared:
            bad.append(f"{r.label}: {params} != declared {r.declared}")
        v = r.v
        half = (v - 1) // 2
        if params != correlation.ParameterSet(v, half, half, half - 1):
            bad.append(f"{r.label}: unexpected parameter set {params}")
    dt = time.perf_counter() - t0
    census = dict(Counter(r.v for r in c.records))
    ok = not bad and len(c) == 47 and census == FIXTURE_CENSUS and dt < 1.0
    detail = f"{len(c)} fixtures, {len(bad)} failures" + (f"; {bad[:3]}" if bad else "")
    if census != FIXTURE_CENSUS:
        detail += f"; census {census}"
    return CriterionResult(1, "fixture verification", ok, detail, dt)


def criterion_2() -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for r, df in _families():
        lp = bool(is_legendre_pair(df.X, df.Y))
        ok_df = correlation.check_df(df.X, df.Y)
        p = r.declared
        if lp != ok_df:
            bad.append(f"{r.label}: PAF route {lp}, difference route {ok_df}")
        if p.lam != p.k1 + p.k2 - (p.v + 1) // 2:
            bad.append(f"{r.label}: lambda formula")
        if p.k1 * (p.k1 - 1) + p.k2 * (p.k2 - 1) != p.lam * (p.v - 1):
            bad.append(f"{r.label}: k(k-1) identity")
        if not (lp and ok_df):
            bad.append(f"{r.label}: not verified")
    return CriterionResult(
        2, "characterization consistency", not bad, f"{len(bad)} inconsistencies {bad[:3]}",
        time.perf_counter() - t0,
    )


def criterion_3() -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for r, df in _families():
        if df_type(df.X, df.Y) is not DFType.TYPE2:
            bad.append(r.label)
    expect = [
        ("classical(7)", series.classical(7), DFType.TYPE1),
        ("twin_prime(3)", series.twin_prime(3), DFType.TYPE1),
        *((f"galois({k})", series.galois(k), DFType.TYPE1) for k in range(2, 6)),
        ("classical(5)", series.classical(5), DFType.TYPE2),
        ("classical(13)", series.classical(13), DFType.TYPE2),
    ]
    for name, df, want in expect:
        if df_type(df.X, df.Y) is not want:
            bad.append(name)
    return CriterionResult(
        3, "type classification", not bad, f"misclassified: {bad}" if bad else "all as expected",
        time.perf_counter() - t0,
    )


def criterion_4() -> CriterionResult:
    t0 = time.perf_counter()
    c = catalog.builtin_catalog()
    groups = {
        "91": [f"91-{i}" for i in range(1, 5)],
        "53": [f"53-{i}" for i in range(1, 11)],
        "51": ["51-1", "51-2"],
        "121": ["121-1", "121-2"],
    }
    bad = []
    pairs = 0
    for labels in groups.values():
        fams = {lab: catalog.expand_record(c.get(lab)) for lab in labels}
        for a, b in combinations(labels, 2):
            pairs += 1
            if equivalence.equivalent(fams[a], fams[b]):
                bad.append(f"{a}~{b}")
    shared = catalog.get_family("121-1").X == catalog.get_family("121-2").X
    dt = time.perf_counter() - t0
    ok = not bad and shared and dt < 600
    return CriterionResult(
        4, "nonequivalence claims", ok,
        f"{pairs} pairs checked, equivalent: {bad or 'none'}; 121 shares X: {shared}", dt,
    )


def criterion_5() -> CriterionResult:
    t0 = time.perf_counter()
    one, two = catalog.get_family("121-1"), catalog.get_family("121-2")
    got = (is_skew(one.X), is_symmetric(one.Y), is_symmetric(two.Y))
    return CriterionResult(
        5, "structural predicates at v=121", got == (True, True, False),
        f"X1 skew={got[0]}, Y1 symmetric={got[1]}, Y2 symmetric={got[2]}",
        time.perf_counter() - t0,
    )


def criterion_6() -> CriterionResult:
    t0 = time.perf_counter()
    und = series.undecided_lengths(76, 200)
    sz = [series.SeriesTag.SZEKERES in series.classify_length(v) for v in (121, 171)]
    low = set(series.undecided_lengths(2, 76))
    gap = {v for v in range(49, 76, 2) if not series.has_type2_series(v)}
    ok = und == EXPECTED_UNDECIDED and all(sz) and low == TYPE2_GAP_LENGTHS
    detail = (
        f"undecided(76,200) matches: {und == EXPECTED_UNDECIDED} ({len(und)} lengths); "
        f"Szekeres for 121/171: {sz}; classification-empty in (2,76): {sorted(low)} "
        f"vs expected {sorted(TYPE2_GAP_LENGTHS)}; "
        f"lengths in (48,76) without a type 2 series: {sorted(gap)}"
    )
    return CriterionResult(6, "undecided-length report", ok, detail, time.perf_counter() - t0)


def criterion_7() -> CriterionResult:
    t0 = time.perf_counter()
    cfg = search.SearchConfig(49, subgroup_generated(49, [18]))
    res = search.match_complements(cfg)
    fx = catalog.get_family("49-1")
    found = fx in res.families
    dt = time.perf_counter() - t0
    ok = (
        cfg.H.elements == (1, 18, 30)
        and res.candidates == 12870
        and res.status == "complete"
        and len(res.families) >= 1
        and found
        and dt < 60
    )
    return CriterionResult(
        7, "search rediscovery at v=49", ok,
        f"{res.candidates} candidates, {len(res.families)} ordered DFs, fixture found: {found}", dt,
    )


def criterion_8() -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    counts = {}
    for v in sorted(ORACLE_COUNTS):
        oracle = set(search.exhaustive_oracle(v))
        matched = search.match_complements(search.SearchConfig(v))
        counts[v] = len(oracle)
        if set(matched.families) != oracle or len(matched.families) != len(oracle):
            bad.append(v)
        if len(oracle) != ORACLE_COUNTS[v]:
            bad.append(f"count {v}")
    return CriterionResult(
        8, "oracle equivalence", not bad, f"counts {counts}; mismatches {bad or 'none'}",
        time.perf_counter() - t0,
    )


def criterion_9(samples: int = 1000, seed: int = 2021) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    total = 0
    for r, df in _families():
        fp = equivalence.fingerprint(df)
        key = equivalence.canonical_form(df)
        kind = df_type(df.X, df.Y)
        for _ in range(samples):
            t = equivalence.random_transform(df.v, rng)
            out = equivalence.apply(t, df)
            total += 1
            if not is_legendre_pair(out.X, out.Y) or not correlation.check_df(out.X, out.Y):
                bad.append((r.label, t, "verify"))
            elif equivalence.fingerprint(out) != fp:
                bad.append((r.label, t, "fingerprint"))
            elif equivalence.canonical_form(out) != key:
                bad.append((r.label, t, "canonical"))
            elif df_type(out.X, out.Y) is not kind:
                bad.append((r.label, t, "type"))
    return CriterionResult(
        9, "transformation soundness", not bad,
        f"{total} transformed fixtures, {len(bad)} failures {bad[:2]}", time.perf_counter() - t0,
    )


def criterion_10() -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    gens = [(f"classical({p})", lambda p=p: series.classical(p))
            for p in range(3, 100) if series.is_prime(p)]
    gens += [(f"twin_prime({p})", lambda p=p: series.twin_prime(p)) for p in (3, 5, 11, 17, 29)]
    gens += [(f"galois({k})", lambda k=k: series.galois(k)) for k in range(2, 8)]
    for name, make in gens:
        df = make()
        if not correlation.check_df(df.X, df.Y):
            bad.append(name)
    dt = time.perf_counter() - t0
    return CriterionResult(
        10, "series generators", not bad and dt < 10,
        f"{len(gens)} families generated, failures: {bad or 'none'}", dt,
    )


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run_all(samples: int = 1000) -> list[CriterionResult]:
    out = []
    for n, fn in CRITERIA.items():
        t0 = time.perf_counter()
        res = fn(samples=samples) if n == 9 else fn()
        res.seconds = res.seconds or time.perf_counter() - t0
        out.append(res)
    return out
