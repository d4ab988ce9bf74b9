"""Catalog ingestion: delimited text in, typed immutable product tables out.

A catalog is an RFC-4180-style CSV (UTF-8, comma separator, mandatory header
row).  Every column is inferred to one of three kinds:

* Boolean     -- all non-missing cells are yes/no/true/false word tokens
* Numeric     -- at least 90% of non-missing cells parse as numbers once
                 currency symbols and thousands separators are stripped
* Categorical -- everything else

Digit-only columns ("0"/"1") stay Numeric so counts are never misread as
flags.  One column is designated the price column; rows whose price is
missing, unparseable, or negative are dropped (and counted).
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterator, Sequence, Union

from .errors import (
    EmptyTableError,
    IngestError,
    KindMismatchError,
    NoHeaderError,
    NoPriceColumnError,
    UnknownFeatureError,
    UnknownProductError,
)

# A cell is missing (None), a flag, a number, or free text.
Cell = Union[None, bool, float, str]

MISSING_TOKENS = frozenset({"", "n/a", "na", "-", "—"})
_TRUE_TOKENS = frozenset({"yes", "true"})
_FALSE_TOKENS = frozenset({"no", "false"})
_BOOL_TOKENS = _TRUE_TOKENS | _FALSE_TOKENS

NUMERIC_THRESHOLD = 0.9

# currency symbols and thousands separators removed before numeric parsing
_NUM_STRIP = str.maketrans("", "", "£$€,")


class FeatureKind(Enum):
    BOOLEAN = "boolean"
    CATEGORICAL = "categorical"
    NUMERIC = "numeric"


def parse_number(text: str) -> float | None:
    """Parse a numeric cell; returns None when the text is not a finite number.

    Currency symbols (£, $, €) and thousands separators are stripped first,
    so "£1,299" and "1299.00" both parse to 1299.0.
    """
    stripped = text.translate(_NUM_STRIP).strip()
    if not stripped:
        return None
    try:
        value = float(stripped)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def is_missing_token(text: str) -> bool:
    return text.strip().casefold() in MISSING_TOKENS


def infer_kind(non_missing_values: Sequence[str]) -> FeatureKind:
    """Infer a column kind from its raw non-missing cell texts.

    Deterministic: the same multiset of values always yields the same kind.
    Boolean requires word tokens; a column of "0"/"1" is Numeric.
    """
    if not non_missing_values:
        raise ValueError("cannot infer a kind from zero values")
    folded = {v.strip().casefold() for v in non_missing_values}
    if folded <= _BOOL_TOKENS:
        return FeatureKind.BOOLEAN
    parseable = sum(1 for v in non_missing_values if parse_number(v) is not None)
    if parseable >= NUMERIC_THRESHOLD * len(non_missing_values):
        return FeatureKind.NUMERIC
    return FeatureKind.CATEGORICAL


def format_number(value: float) -> str:
    """Canonical text form of a numeric cell (integers render without '.0')."""
    if value == int(value):
        return str(int(value))
    return repr(value)


def render_cell(cell: Cell) -> str:
    """Canonical text form of any cell, as written by to_csv()."""
    if cell is None:
        return ""
    if cell is True:
        return "yes"
    if cell is False:
        return "no"
    if isinstance(cell, float):
        return format_number(cell)
    return cell


_KIND_CELL_TYPES = {
    FeatureKind.BOOLEAN: bool,
    FeatureKind.NUMERIC: float,
    FeatureKind.CATEGORICAL: str,
}


@dataclass(frozen=True)
class FeatureColumn:
    """One typed column of a product table."""

    name: str
    kind: FeatureKind
    values: tuple[Cell, ...]

    def __post_init__(self) -> None:
        expected = _KIND_CELL_TYPES[self.kind]
        for v in self.values:
            if v is not None and type(v) is not expected:
                raise KindMismatchError(
                    f"column {self.name!r} is {self.kind.value} but holds {v!r}"
                )

    def non_missing(self) -> list[Cell]:
        return [v for v in self.values if v is not None]


@dataclass(frozen=True)
class Product:
    """A single catalog row: stable ID plus feature-name -> cell mapping."""

    product_id: int
    values: dict[str, Cell]


class FilterPredicate:
    """Base for conjunctive table filters.

    A predicate names one feature and selects products by their cell in that
    feature's column.  Products with a missing cell never match.
    """

    feature: str

    def mask(self, column: FeatureColumn) -> list[bool]:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Equals(FilterPredicate):
    feature: str
    value: bool | float | str

    def mask(self, column: FeatureColumn) -> list[bool]:
        value = self.value
        if isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if type(value) is not _KIND_CELL_TYPES[column.kind]:
            raise KindMismatchError(
                f"cannot compare {column.kind.value} column {column.name!r}"
                f" with {self.value!r}"
            )
        return [cell is not None and cell == value for cell in column.values]

    def describe(self) -> str:
        value = self.value
        if isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        return f"{self.feature}={render_cell(value)}"


@dataclass(frozen=True)
class InRange(FilterPredicate):
    feature: str
    lo: float
    hi: float

    def mask(self, column: FeatureColumn) -> list[bool]:
        if column.kind is not FeatureKind.NUMERIC:
            raise KindMismatchError(
                f"range filter needs a numeric column, {column.name!r} is "
                f"{column.kind.value}"
            )
        return [
            cell is not None and self.lo <= cell <= self.hi
            for cell in column.values
        ]

    def describe(self) -> str:
        return f"{self.feature}={format_number(float(self.lo))}..{format_number(float(self.hi))}"


@dataclass(frozen=True)
class HasFeature(FilterPredicate):
    """Matches products carrying the feature: true for Boolean columns,
    any non-missing value otherwise."""

    feature: str

    def mask(self, column: FeatureColumn) -> list[bool]:
        if column.kind is FeatureKind.BOOLEAN:
            return [cell is True for cell in column.values]
        return [cell is not None for cell in column.values]

    def describe(self) -> str:
        return f"{self.feature}=*"


@dataclass(frozen=True)
class ProductTable:
    """Immutable products-by-features catalog with a designated price column.

    Safe to share across threads; filtering returns a new table whose product
    set is a subset of the parent's (IDs are preserved).
    """

    base_category: str
    product_ids: tuple[int, ...]
    columns: tuple[FeatureColumn, ...]
    price_feature: str
    applied_filters: tuple[str, ...] = ()
    dropped_rows: int = 0

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise IngestError("duplicate feature names")
        if len(set(self.product_ids)) != len(self.product_ids):
            raise IngestError("duplicate product IDs")
        for col in self.columns:
            if len(col.values) != len(self.product_ids):
                raise IngestError(
                    f"column {col.name!r} has {len(col.values)} cells for "
                    f"{len(self.product_ids)} products"
                )
        if self.price_feature not in names:
            raise NoPriceColumnError(f"no column named {self.price_feature!r}")
        price_col = self.column(self.price_feature)
        if price_col.kind is not FeatureKind.NUMERIC:
            raise KindMismatchError("price column must be numeric")
        for cell in price_col.values:
            if cell is None or cell < 0:
                raise IngestError("every retained product needs a price >= 0")

    @property
    def category_name(self) -> str:
        if not self.applied_filters:
            return self.base_category
        return f"{self.base_category} ({'; '.join(self.applied_filters)})"

    @property
    def n_products(self) -> int:
        return len(self.product_ids)

    @property
    def feature_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    @cached_property
    def _column_index(self) -> dict[str, FeatureColumn]:
        return {c.name: c for c in self.columns}

    @cached_property
    def _row_index(self) -> dict[int, int]:
        return {pid: i for i, pid in enumerate(self.product_ids)}

    def column(self, name: str) -> FeatureColumn:
        try:
            return self._column_index[name]
        except KeyError:
            raise UnknownFeatureError(f"unknown feature {name!r}") from None

    @property
    def prices(self) -> tuple[float, ...]:
        return self.column(self.price_feature).values  # type: ignore[return-value]

    def product(self, product_id: int) -> Product:
        try:
            row = self._row_index[product_id]
        except KeyError:
            raise UnknownProductError(f"no product with ID {product_id}") from None
        return Product(product_id, {c.name: c.values[row] for c in self.columns})

    def iter_products(self) -> Iterator[Product]:
        for pid in self.product_ids:
            yield self.product(pid)

    def filter(self, predicates: Sequence[FilterPredicate]) -> "ProductTable":
        """Conjunction of predicates; missing cells in a predicated feature
        exclude the product.  Column kinds are preserved."""
        keep = [True] * self.n_products
        for pred in predicates:
            column = self.column(pred.feature)
            mask = pred.mask(column)
            keep = [a and b for a, b in zip(keep, mask)]
        new_columns = tuple(
            FeatureColumn(
                c.name,
                c.kind,
                tuple(v for v, k in zip(c.values, keep) if k),
            )
            for c in self.columns
        )
        return ProductTable(
            base_category=self.base_category,
            product_ids=tuple(pid for pid, k in zip(self.product_ids, keep) if k),
            columns=new_columns,
            price_feature=self.price_feature,
            applied_filters=self.applied_filters
            + tuple(p.describe() for p in predicates),
            dropped_rows=self.dropped_rows,
        )

    def to_csv(self) -> str:
        """Serialize to the canonical CSV form (load_table round-trips it)."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.feature_names)
        for row in range(self.n_products):
            writer.writerow([render_cell(c.values[row]) for c in self.columns])
        return out.getvalue()


def filter_table(
    table: ProductTable, predicates: Sequence[FilterPredicate]
) -> ProductTable:
    return table.filter(predicates)


def _resolve_price_column(
    header: list[str], hint: str | None
) -> str:
    if hint is not None:
        if hint not in header:
            raise NoPriceColumnError(f"price column hint {hint!r} not in header")
        return hint
    for name in header:
        if "price" in name.casefold():
            return name
    raise NoPriceColumnError(
        "no price column: no header name contains 'price' and no hint given"
    )


def load_table(
    raw: bytes | str,
    category: str = "products",
    price_column_hint: str | None = None,
) -> ProductTable:
    """Parse a delimited-text catalog into a typed ProductTable.

    Product IDs are the 0-based data-row indexes of the source file, so rows
    dropped for a bad price leave visible gaps.  The number of dropped rows
    is recorded on the table.
    """
    text = raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw
    rows = [r for r in csv.reader(io.StringIO(text)) if r]  # skip blank lines
    if not rows:
        raise NoHeaderError("input has no header row")
    header = [h.strip() for h in rows[0]]
    if all(not h for h in header):
        raise NoHeaderError("header row is empty")
    if len(set(header)) != len(header):
        dupes = sorted(n for n, c in Counter(header).items() if c > 1)
        raise IngestError(f"duplicate column names: {', '.join(dupes)}")
    data_rows = rows[1:]
    if not data_rows:
        raise EmptyTableError("no data rows")
    for i, row in enumerate(data_rows, start=2):
        if len(row) != len(header):
            raise IngestError(
                f"row {i}: expected {len(header)} fields, got {len(row)}"
            )

    price_name = _resolve_price_column(header, price_column_hint)
    price_pos = header.index(price_name)

    # normalize cells: None for missing tokens, stripped raw text otherwise
    grid: list[list[str | None]] = [
        [None if is_missing_token(cell) else cell.strip() for cell in row]
        for row in data_rows
    ]

    # drop rows without a usable, non-negative price (IDs keep the gap)
    kept_ids: list[int] = []
    kept: list[list[str | None]] = []
    for row_id, row in enumerate(grid):
        raw_price = row[price_pos]
        price = parse_number(raw_price) if raw_price is not None else None
        if price is None or price < 0:
            continue
        kept_ids.append(row_id)
        kept.append(row)
    if not kept:
        raise EmptyTableError("every row was dropped for a missing or bad price")
    dropped = len(grid) - len(kept)

    columns: list[FeatureColumn] = []
    for pos, name in enumerate(header):
        raw_cells = [row[pos] for row in kept]
        non_missing = [c for c in raw_cells if c is not None]
        if pos == price_pos:
            kind = FeatureKind.NUMERIC
        elif not non_missing:
            kind = FeatureKind.CATEGORICAL  # nothing to infer from
        else:
            kind = infer_kind(non_missing)
        columns.append(FeatureColumn(name, kind, _coerce(raw_cells, kind)))

    return ProductTable(
        base_category=category,
        product_ids=tuple(kept_ids),
        columns=tuple(columns),
        price_feature=price_name,
        dropped_rows=dropped,
    )


def _coerce(raw_cells: list[str | None], kind: FeatureKind) -> tuple[Cell, ...]:
    cells: list[Cell] = []
    for raw in raw_cells:
        if raw is None:
            cells.append(None)
        elif kind is FeatureKind.BOOLEAN:
            cells.append(raw.casefold() in _TRUE_TOKENS)
        elif kind is FeatureKind.NUMERIC:
            # stray annotations in a numeric column degrade to missing
            cells.append(parse_number(raw))
        else:
            cells.append(raw)
    return tuple(cells)
