from collections import Counter
from dataclasses import replace

import pytest

from legendre_pairs import catalog
from legendre_pairs.catalog import (
    CatalogError,
    CatalogParseError,
    CatalogValidationError,
    FixtureRecord,
    builtin_catalog,
    dumps,
    expand_record,
    get_family,
    loads,
    record_from_family,
    sort_records,
    validate,
    validate_record,
)
from legendre_pairs.correlation import DFVerificationError, ParameterSet, verify_df
from legendre_pairs.zmod import Block, expand, subgroup_generated


def test_builtin_catalog_validates():
    c = builtin_catalog()
    validate(c)
    assert len(c) == 47
    assert len(set(c.labels())) == 47


def test_census_by_length():
    counts = Counter(r.v for r in builtin_catalog())
    assert counts[53] == 10 and counts[57] == 6 and counts[91] == 4
    assert counts[121] == 2 and counts[39] == 1


def test_roundtrip_text():
    c = builtin_catalog()
    text = dumps(c)
    again = loads(text)
    assert again.records == c.records
    assert dumps(again) == text


def test_roundtrip_file(tmp_path):
    c = builtin_catalog()
    path = tmp_path / "cat.txt"
    catalog.save(c, path)
    assert catalog.load(path).records == c.records


def test_expand_39_1():
    df = get_family("39-1")
    assert (len(df.X), len(df.Y)) == (19, 19)
    assert verify_df(*df) == ParameterSet(39, 19, 19, 18)


def test_explicit_record_sizes():
    df = get_family("53-4")
    assert builtin_catalog().get("53-4").H is None
    assert (len(df.X), len(df.Y)) == (26, 26)


def test_121_fixtures_share_first_block():
    assert get_family("121-1").X == get_family("121-2").X
    assert get_family("121-1").Y != get_family("121-2").Y


def test_57_6_source_note():
    assert "equivalent" in builtin_catalog().get("57-6").source


def test_53_3_as_printed_fails():
    r = builtin_catalog().get("53-3")
    H = r.subgroup()
    with pytest.raises(DFVerificationError):
        verify_df(expand(H, [1, 2]), expand(H, [2, 5]))
    assert validate_record(r) == ParameterSet(53, 26, 26, 25)


def test_every_subgroup_is_closed_and_blocks_are_unions():
    for r in builtin_catalog():
        H = r.subgroup()
        if H is None:
            continue
        v = r.v
        s = set(H.elements)
        assert all(a * b % v in s for a in s for b in s)
        df = expand_record(r)
        assert expand(H, df.X) == df.X and expand(H, df.Y) == df.Y


def test_wrong_declared_k_rejected():
    r = builtin_catalog().get("39-1")
    bad = replace(r, declared=ParameterSet(39, 20, 19, 19))
    with pytest.raises(CatalogValidationError, match="39-1"):
        validate_record(bad)
    with pytest.raises(CatalogValidationError):
        loads(dumps(catalog.CatalogFile((bad,))))


def test_wrong_lambda_rejected():
    r = builtin_catalog().get("39-1")
    bad = replace(r, declared=ParameterSet(39, 19, 19, 17))
    with pytest.raises(CatalogValidationError, match="verifies as"):
        validate_record(bad)


def test_non_closed_subgroup_rejected():
    r = builtin_catalog().get("39-1")
    with pytest.raises(CatalogValidationError, match="subgroup"):
        validate_record(replace(r, H=(1, 16)))
    with pytest.raises(CatalogValidationError, match="subgroup"):
        validate_record(replace(r, H=(1, 13)))  # 13 is not a unit mod 39


def test_broken_block_rejected():
    r = builtin_catalog().get("39-1")
    with pytest.raises(CatalogValidationError):
        validate_record(replace(r, X_spec=(0, 1, 2, 3, 5, 12, 14)))


def test_duplicate_and_unsorted_rejected():
    a, b = builtin_catalog().get("39-1"), builtin_catalog().get("49-1")
    with pytest.raises(CatalogValidationError, match="duplicate"):
        validate(catalog.CatalogFile((a, a)))
    with pytest.raises(CatalogError, match="sorted"):
        validate(catalog.CatalogFile((b, a)))


def test_natural_label_order():
    r = builtin_catalog().get("53-1")
    recs = [replace(r, label=f"53-{i}") for i in (10, 2, 1)]
    assert [x.label for x in sort_records(recs)] == ["53-1", "53-2", "53-10"]
    labels = [x.label for x in builtin_catalog() if x.v == 53]
    assert labels[-1] == "53-10"


GOOD = builtin_catalog().get("39-1").to_line()


@pytest.mark.parametrize(
    "line, field",
    [
        (GOOD.replace("v=39", "v=x"), "v"),
        (GOOD.replace("H=[1,16,22]", "H=1,16,22"), "H"),
        (GOOD.replace("X=[0,", "X=[a,"), "X"),
        (GOOD.replace("params=39,19,19,18", "params=39,19"), "params"),
        (GOOD.replace("label=", "name="), "label"),
        (GOOD.replace("; params=39,19,19,18", ""), "-"),
    ],
)
def test_parse_errors_locate_line_and_field(line, field):
    text = f"# header\nformat=1\n\n{line}\n"
    with pytest.raises(CatalogParseError) as info:
        loads(text)
    assert info.value.line == 4
    assert info.value.field == field


def test_format_line_required_and_versioned():
    with pytest.raises(CatalogParseError, match="format"):
        loads(GOOD + "\n")
    with pytest.raises(CatalogParseError, match="unsupported"):
        loads("format=2\n" + GOOD + "\n")


def test_dumps_refuses_separator_in_source():
    r = replace(builtin_catalog().get("39-1"), source="a; b")
    with pytest.raises(CatalogError):
        dumps(catalog.CatalogFile((r,)))


def test_record_from_family_compresses():
    r = builtin_catalog().get("39-1")
    df = expand_record(r)
    rec = record_from_family(df, "39-x", "test", r.subgroup())
    assert rec.X_spec == r.X_spec and rec.Y_spec == r.Y_spec
    plain = record_from_family(df, "39-y", "test")
    assert plain.H is None and expand_record(plain) == df
    with pytest.raises(ValueError):
        record_from_family(df, "39-z", "test", subgroup_generated(39, [2]))
