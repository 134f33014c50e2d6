import json
import logging
from math import comb

import pytest

from legendre_pairs.catalog import get_family
from legendre_pairs.correlation import check_df, is_legendre_pair, paf, to_sequence
from legendre_pairs.equivalence import canonical_form
from legendre_pairs.search import (
    OPEN_LENGTHS,
    SearchConfig,
    count_blocks,
    enumerate_blocks,
    exhaustive_oracle,
    half_paf,
    match_blocks,
    match_complements,
    paf_key,
)
from legendre_pairs.zmod import rotate, scale, subgroup_generated

H49 = subgroup_generated(49, [18])


def test_candidate_count_v49():
    cfg = SearchConfig(49, H49)
    assert len(cfg.orbits) == 17
    assert count_blocks(cfg) == comb(16, 8) == 12870
    blocks = list(enumerate_blocks(cfg))
    assert len(blocks) == 12870 == len(set(blocks))
    assert all(len(b) == 24 and 0 not in b for b in blocks)


def test_enumerate_v3_trivial_h():
    blocks = list(enumerate_blocks(SearchConfig(3)))
    assert sorted(b.members for b in blocks) == [(0,), (1,), (2,)]


@pytest.mark.parametrize("v, gens", [(15, [4]), (21, [4]), (39, [16]), (63, [2]), (93, [4])])
def test_count_matches_enumeration(v, gens):
    cfg = SearchConfig(v, subgroup_generated(v, gens))
    blocks = list(enumerate_blocks(cfg))
    assert len(blocks) == count_blocks(cfg)
    assert all(len(b) == cfg.k for b in blocks)
    # lexicographic order of orbit index sets
    idx = [tuple(i for i, o in enumerate(cfg.orbits) if o.mask & b.mask) for b in blocks]
    assert idx == sorted(idx)


def test_infeasible_warns(caplog):
    cfg = SearchConfig(11, subgroup_generated(11, [2]))  # orbit sizes 1 and 10, k = 5
    assert not cfg.feasible and count_blocks(cfg) == 0
    with caplog.at_level(logging.WARNING):
        assert list(enumerate_blocks(cfg)) == []
    assert "no union of orbits" in caplog.text
    assert match_complements(cfg).families == []
    assert SearchConfig(7, subgroup_generated(7, [2])).feasible


def test_half_paf_and_key():
    df = get_family("39-1")
    full = paf(to_sequence(df.X)).values
    assert half_paf(df.X) == full[1:20]
    assert paf_key(df.X) == half_paf(df.Y)
    assert paf_key(df.Y) == half_paf(df.X)
    # translation and negation leave the key unchanged
    assert paf_key(rotate(df.X, 5)) == paf_key(df.X)
    assert paf_key(scale(df.X, -1)) == paf_key(df.X)


def test_match_blocks_91():
    df = get_family("91-1")
    hits = list(match_blocks([df.X, df.Y], [df.Y, df.X], 91))
    assert df in hits
    assert all(is_legendre_pair(h.X, h.Y) for h in hits)


def test_search_v49_rediscovers_fixture():
    res = match_complements(SearchConfig(49, H49))
    assert res.status == "complete" and res.candidates == 12870
    assert get_family("49-1") in res.families
    assert all(check_df(*df) for df in res.families[:50])


@pytest.mark.parametrize("v", [1, 3, 5, 7, 9, 11])
def test_search_equals_oracle(v):
    oracle = exhaustive_oracle(v)
    got = match_complements(SearchConfig(v)).families
    assert len(got) == len(set(got))
    assert set(got) == set(oracle) and len(got) == len(oracle)


def test_oracle_counts():
    assert [len(exhaustive_oracle(v)) for v in (1, 3, 5, 7)] == [1, 9, 50, 196]
    with pytest.raises(ValueError):
        exhaustive_oracle(17)


def test_chunked_equals_single_pass():
    cfg = SearchConfig(49, H49)
    full = match_complements(cfg).families
    small = SearchConfig(49, H49, max_candidates=1000)
    chunked = match_complements(small)
    assert chunked.chunks_done == 13
    assert chunked.candidates == 12870
    assert set(chunked.families) == set(full) and len(chunked.families) == len(full)


def test_chunked_equals_oracle_small_v():
    got = match_complements(SearchConfig(11, max_candidates=17)).families
    assert set(got) == set(exhaustive_oracle(11))


def test_dedupe_keeps_one_per_class():
    cfg = SearchConfig(49, H49, dedupe=True)
    res = match_complements(cfg)
    keys = [canonical_form(df) for df in res.families]
    assert len(keys) == len(set(keys))
    all_keys = {canonical_form(df) for df in match_complements(SearchConfig(49, H49)).families}
    assert set(keys) == all_keys


def test_max_results_stops_early():
    res = match_complements(SearchConfig(49, H49, max_results=3))
    assert res.status == "max_results" and len(res.families) == 3
    assert res.exhausted_limit


def test_deadline_stops():
    res = match_complements(SearchConfig(49, H49, max_candidates=500, deadline=0.0))
    assert res.status == "deadline"
    assert res.exhausted_limit


def test_checkpoint_resume(tmp_path):
    ckpt = tmp_path / "s.json"
    full = match_complements(SearchConfig(49, H49, max_candidates=2000)).families
    partial = match_complements(SearchConfig(49, H49, max_candidates=2000, max_results=len(full) // 3), ckpt)
    assert partial.status == "max_results"
    state = json.loads(ckpt.read_text())
    assert 0 < state["chunks_done"] < 7
    resumed = match_complements(SearchConfig(49, H49, max_candidates=2000), ckpt)
    assert resumed.status == "complete"
    assert set(resumed.families) == set(full)
    assert json.loads(ckpt.read_text())["chunks_done"] == 7


def test_checkpoint_mismatch(tmp_path):
    ckpt = tmp_path / "s.json"
    match_complements(SearchConfig(9, max_candidates=10), ckpt)
    with pytest.raises(ValueError, match="different search"):
        match_complements(SearchConfig(9, max_candidates=11), ckpt)


def test_open_lengths_gated():
    assert 77 in OPEN_LENGTHS and 91 not in OPEN_LENGTHS and 123 not in OPEN_LENGTHS
    with pytest.raises(ValueError, match="open"):
        SearchConfig(77)
    assert SearchConfig(77, allow_open=True).v == 77


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(10)
    with pytest.raises(ValueError):
        SearchConfig(49, subgroup_generated(39, [16]))
    with pytest.raises(ValueError):
        SearchConfig(49, H49, max_candidates=0)


def test_v93_orbit_shape():
    H = subgroup_generated(93, [4])
    cfg = SearchConfig(93, H)
    sizes = sorted(len(o) for o in cfg.orbits)
    assert sum(sizes) == 93 and H.order == 5
    assert count_blocks(cfg) == len(list(enumerate_blocks(cfg)))
