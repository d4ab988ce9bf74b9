"""Shared test helpers: direct table construction and random-table strategies."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from setsumm.ingest import Cell, FeatureColumn, FeatureKind, ProductTable


def _kind_of(values: list[Cell]) -> FeatureKind:
    for v in values:
        if v is None:
            continue
        if isinstance(v, bool):
            return FeatureKind.BOOLEAN
        if isinstance(v, (int, float)):
            return FeatureKind.NUMERIC
        return FeatureKind.CATEGORICAL
    return FeatureKind.CATEGORICAL


def make_table(
    prices: list[float],
    features: dict[str, list[Cell]] | None = None,
    category: str = "widgets",
) -> ProductTable:
    """Build a table directly from cell lists; kinds are taken from the
    cell types (bool/number/str), missing cells are None."""
    features = features or {}
    columns = [
        FeatureColumn("price", FeatureKind.NUMERIC, tuple(float(p) for p in prices))
    ]
    for name, values in features.items():
        kind = _kind_of(values)
        cells = tuple(
            float(v) if kind is FeatureKind.NUMERIC and v is not None else v
            for v in values
        )
        columns.append(FeatureColumn(name, kind, cells))
    return ProductTable(
        base_category=category,
        product_ids=tuple(range(len(prices))),
        columns=tuple(columns),
        price_feature="price",
    )


def random_table(
    rng: random.Random, max_products: int = 20, max_features: int = 6
) -> ProductTable:
    """Seeded random table mixing all three feature kinds, with missing cells."""
    n = rng.randint(1, max_products)
    prices = [round(rng.uniform(10, 1000), 2) for _ in range(n)]
    features: dict[str, list[Cell]] = {}
    for f in range(rng.randint(0, max_features)):
        kind = rng.choice(["bool", "cat", "num"])
        values: list[Cell] = []
        for _ in range(n):
            if rng.random() < 0.1:
                values.append(None)
            elif kind == "bool":
                values.append(rng.random() < 0.6)
            elif kind == "cat":
                values.append(rng.choice(["alpha", "beta", "gamma", "delta"]))
            else:
                values.append(float(rng.choice([1, 2, 3, 4, 2015, 2016, 2017])))
        features[f"feat{f}_{kind}"] = values
    return make_table(prices, features)


# hypothesis building blocks

prices_strategy = st.lists(
    st.floats(min_value=0, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=50,
)

id_sets = st.sets(st.integers(min_value=0, max_value=50), min_size=1, max_size=10)
