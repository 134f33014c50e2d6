"""Catalog of Legendre difference families and its line-oriented text format.

A catalog file looks like::

    # legendre-pairs catalog
    format=1
    v=39; label=39-1; source=worked example; H=[1,16,22]; X=[0,1,2,3,4,12,14]; Y=[0,2,3,4,8,14,19]; params=39,19,19,18

Fields appear in this fixed order.  ``H=-`` means X and Y are explicit residue
lists; otherwise they are orbit representatives under the subgroup H.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

from .correlation import DFVerificationError, DifferenceFamily, ParameterSet, verify_df
from .zmod import Block, Modulus, SubgroupH, expand, orbit_representatives

FORMAT_VERSION = 1
HEADER = "# legendre-pairs catalog"
FIELDS = ("v", "label", "source", "H", "X", "Y", "params")


class CatalogError(ValueError):
    pass


class CatalogParseError(CatalogError):
    def __init__(self, line: int, field_name: str, message: str):
        self.line = line
        self.field = field_name
        super().__init__(f"line {line}, field {field_name!r}: {message}")


class CatalogValidationError(CatalogError):
    def __init__(self, label: str, message: str):
        self.label = label
        super().__init__(f"record {label}: {message}")


@dataclass(frozen=True)
class FixtureRecord:
    v: int
    label: str
    source: str
    H: Optional[tuple[int, ...]]
    X_spec: tuple[int, ...]
    Y_spec: tuple[int, ...]
    declared: ParameterSet

    def subgroup(self) -> Optional[SubgroupH]:
        if self.H is None:
            return None
        return SubgroupH(Modulus(self.v), self.H)

    def to_line(self) -> str:
        def ints(xs: Iterable[int]) -> str:
            return "[" + ",".join(str(x) for x in xs) + "]"

        p = self.declared
        h = "-" if self.H is None else ints(self.H)
        return (
            f"v={self.v}; label={self.label}; source={self.source}; H={h}; "
            f"X={ints(self.X_spec)}; Y={ints(self.Y_spec)}; params={p.v},{p.k1},{p.k2},{p.lam}"
        )


def _label_key(r: FixtureRecord):
    parts = re.split(r"(\d+)", r.label)
    return (r.v, [int(p) if p.isdigit() else p for p in parts])


@dataclass(frozen=True)
class CatalogFile:
    records: tuple[FixtureRecord, ...]
    version: int = FORMAT_VERSION
    _by_label: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_label", {r.label: r for r in self.records})

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def get(self, label: str) -> FixtureRecord:
        try:
            return self._by_label[label]
        except KeyError:
            raise KeyError(f"no fixture labelled {label!r}") from None

    def labels(self) -> list[str]:
        return [r.label for r in self.records]

    def with_v(self, v: int) -> list[FixtureRecord]:
        return [r for r in self.records if r.v == v]


def sort_records(records: Iterable[FixtureRecord]) -> tuple[FixtureRecord, ...]:
    """Order by (v, label), comparing numeric runs in labels as integers."""
    return tuple(sorted(records, key=_label_key))


def expand_record(r: FixtureRecord, *, strict: bool = True) -> DifferenceFamily:
    """Explicit blocks of ``r``; with ``strict`` their sizes must match the declared k1, k2."""
    H = r.subgroup()
    if H is None:
        X = Block.from_members(r.v, r.X_spec)
        Y = Block.from_members(r.v, r.Y_spec)
    else:
        X, Y = expand(H, r.X_spec), expand(H, r.Y_spec)
    if strict and (len(X), len(Y)) != (r.declared.k1, r.declared.k2):
        raise CatalogValidationError(
            r.label,
            f"expanded block sizes ({len(X)}, {len(Y)}) differ from declared "
            f"({r.declared.k1}, {r.declared.k2})",
        )
    return DifferenceFamily(X, Y)


def validate_record(r: FixtureRecord) -> ParameterSet:
    if r.declared.v != r.v:
        raise CatalogValidationError(r.label, f"params v={r.declared.v} but record v={r.v}")
    try:
        Modulus(r.v)
        r.subgroup()
    except ValueError as exc:
        raise CatalogValidationError(r.label, f"invalid subgroup: {exc}") from exc
    try:
        df = expand_record(r)
    except CatalogValidationError:
        raise
    except ValueError as exc:
        raise CatalogValidationError(r.label, str(exc)) from exc
    try:
        params = verify_df(df.X, df.Y)
    except DFVerificationError as exc:
        raise CatalogValidationError(r.label, str(exc)) from exc
    if params != r.declared:
        raise CatalogValidationError(r.label, f"verifies as {params}, declared {r.declared}")
    return params


def validate(c: CatalogFile) -> None:
    seen = set()
    for r in c.records:
        if r.label in seen:
            raise CatalogValidationError(r.label, "duplicate label")
        seen.add(r.label)
    if sort_records(c.records) != c.records:
        raise CatalogError("records are not sorted by (v, label)")
    for r in c.records:
        validate_record(r)


def _parse_ints(text: str, lineno: int, name: str) -> tuple[int, ...]:
    if not (text.startswith("[") and text.endswith("]")):
        raise CatalogParseError(lineno, name, f"expected a bracketed list, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    try:
        return tuple(int(x) for x in body.split(","))
    except ValueError:
        raise CatalogParseError(lineno, name, f"non-integer entry in {text!r}") from None


def _parse_record(line: str, lineno: int) -> FixtureRecord:
    parts = line.split("; ")
    if len(parts) != len(FIELDS):
        raise CatalogParseError(lineno, "-", f"expected {len(FIELDS)} fields, found {len(parts)}")
    values = {}
    for name, part in zip(FIELDS, parts):
        key, sep, value = part.partition("=")
        if not sep or key != name:
            raise CatalogParseError(lineno, name, f"expected '{name}=...', got {part!r}")
        values[name] = value
    try:
        v = int(values["v"])
    except ValueError:
        raise CatalogParseError(lineno, "v", f"not an integer: {values['v']!r}") from None
    H = None if values["H"] == "-" else _parse_ints(values["H"], lineno, "H")
    p = values["params"].split(",")
    try:
        declared = ParameterSet(*(int(x) for x in p))
    except (TypeError, ValueError):
        raise CatalogParseError(lineno, "params", f"expected v,k1,k2,lambda: {values['params']!r}") from None
    return FixtureRecord(
        v=v,
        label=values["label"],
        source=values["source"],
        H=H,
        X_spec=_parse_ints(values["X"], lineno, "X"),
        Y_spec=_parse_ints(values["Y"], lineno, "Y"),
        declared=declared,
    )


def loads(text: str, *, validate_records: bool = True) -> CatalogFile:
    version = None
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("format="):
            try:
                version = int(line.partition("=")[2])
            except ValueError:
                raise CatalogParseError(lineno, "format", f"bad version {line!r}") from None
            if version != FORMAT_VERSION:
                raise CatalogParseError(lineno, "format", f"unsupported version {version}")
            continue
        records.append(_parse_record(line, lineno))
    if version is None:
        raise CatalogParseError(1, "format", "missing 'format=' line")
    c = CatalogFile(tuple(records), version)
    if validate_records:
        validate(c)
    return c


def dumps(c: CatalogFile) -> str:
    lines = [HEADER, f"format={c.version}"]
    for r in c.records:
        if ";" in r.source or "\n" in r.source or ";" in r.label:
            raise CatalogError(f"record {r.label}: ';' and newlines are not allowed in label/source")
        lines.append(r.to_line())
    return "\n".join(lines) + "\n"


def load(path: Union[str, Path], *, validate_records: bool = True) -> CatalogFile:
    return loads(Path(path).read_text(encoding="utf-8"), validate_records=validate_records)


def save(c: CatalogFile, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(c), encoding="utf-8")


@lru_cache(maxsize=None)
def builtin_catalog() -> CatalogFile:
    text = resources.files(__package__).joinpath("data/fixtures.txt").read_text(encoding="utf-8")
    return loads(text, validate_records=False)


def get_family(label: str) -> DifferenceFamily:
    return expand_record(builtin_catalog().get(label))


def record_from_family(
    df: DifferenceFamily, label: str, source: str, H: Optional[SubgroupH] = None
) -> FixtureRecord:
    """Encode ``df`` as a record, compressing to orbit representatives when ``H`` is given."""
    params = verify_df(df.X, df.Y)
    if H is None:
        xs, ys, h = df.X.members, df.Y.members, None
    else:
        if expand(H, df.X) != df.X or expand(H, df.Y) != df.Y:
            raise ValueError("blocks are not unions of H-orbits")
        xs, ys, h = orbit_representatives(H, df.X), orbit_representatives(H, df.Y), H.elements
    return FixtureRecord(df.v, label, source, h, tuple(xs), tuple(ys), params)
