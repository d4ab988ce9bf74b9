import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setsumm.errors import (
    EmptyTableError,
    IngestError,
    KindMismatchError,
    NoHeaderError,
    NoPriceColumnError,
    UnknownFeatureError,
)
from setsumm.ingest import (
    Equals,
    FeatureKind,
    HasFeature,
    InRange,
    infer_kind,
    load_table,
    parse_number,
)

from conftest import make_table, random_table


# frozen oracle outputs for the currency/number parser (20 formatted strings)
PARSE_CASES = [
    ("£255", 255.0),
    ("255.00", 255.0),
    ("$1,299.99", 1299.99),
    ("€87", 87.0),
    ("1,000", 1000.0),
    ("£2,500.50", 2500.5),
    (" 42 ", 42.0),
    ("$0.99", 0.99),
    ("£10,000", 10000.0),
    ("3.14159", 3.14159),
    ("-12.5", -12.5),
    ("€1,234,567", 1234567.0),
    ("55", 55.0),
    ("£ 300", 300.0),
    ("0", 0.0),
    ("999.95", 999.95),
    ("$5", 5.0),
    ("£449.99", 449.99),
    ("1e3", 1000.0),
    ("6,500", 6500.0),
]

UNPARSEABLE = ["abc", "12x", "", "£", "many", "nan", "inf", "n/a"]


@pytest.mark.parametrize("text,expected", PARSE_CASES)
def test_parse_number(text, expected):
    assert parse_number(text) == expected


@pytest.mark.parametrize("text", UNPARSEABLE)
def test_parse_number_rejects(text):
    assert parse_number(text) is None


class TestInferKind:
    def test_boolean_tokens(self):
        assert infer_kind(["Yes", "No", "Yes"]) is FeatureKind.BOOLEAN
        assert infer_kind(["TRUE", "false"]) is FeatureKind.BOOLEAN

    def test_categorical(self):
        assert infer_kind(["16:9", "16:9", "4:3"]) is FeatureKind.CATEGORICAL

    def test_numeric_with_currency(self):
        assert infer_kind(["£100", "200.50", "1,300"]) is FeatureKind.NUMERIC

    def test_numeric_threshold_boundary(self):
        # 4 of 5 parse = 80% < 90% -> categorical
        assert infer_kind(["1", "2", "3", "4", "many"]) is FeatureKind.CATEGORICAL
        # 9 of 10 parse = 90% exactly -> numeric
        values = [str(i) for i in range(9)] + ["many"]
        assert infer_kind(values) is FeatureKind.NUMERIC

    def test_digit_flags_stay_numeric(self):
        assert infer_kind(["0", "1", "1", "0"]) is FeatureKind.NUMERIC

    def test_deterministic(self):
        values = ["a", "1", "2", "3"]
        assert infer_kind(values) is infer_kind(list(values))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            infer_kind([])


class TestLoadTable:
    def test_small_catalog(self):
        csv_text = "price,hdmi\n100,Yes\n200,No\n300,Yes\n"
        table = load_table(csv_text, "TVs")
        assert table.n_products == 3
        assert table.column("price").kind is FeatureKind.NUMERIC
        assert table.column("hdmi").kind is FeatureKind.BOOLEAN
        assert table.column("hdmi").values == (True, False, True)
        assert table.product_ids == (0, 1, 2)

    def test_currency_prices_normalize(self):
        table = load_table("price,x\n£255,a\n255.00,b\n", "T")
        assert table.prices == (255.0, 255.0)

    def test_no_header(self):
        with pytest.raises(NoHeaderError):
            load_table("", "T")

    def test_empty_table(self):
        with pytest.raises(EmptyTableError):
            load_table("price\n", "T")

    def test_no_price_column(self):
        with pytest.raises(NoPriceColumnError):
            load_table("cost,hdmi\n100,Yes\n", "T")

    def test_price_hint_wins(self):
        table = load_table("price,msrp\n1,100\n2,200\n", "T", price_column_hint="msrp")
        assert table.price_feature == "msrp"
        assert table.prices == (100.0, 200.0)

    def test_bad_hint(self):
        with pytest.raises(NoPriceColumnError):
            load_table("price,x\n1,a\n", "T", price_column_hint="nope")

    def test_price_by_name_substring(self):
        table = load_table("Retail Price,x\n10,a\n", "T")
        assert table.price_feature == "Retail Price"

    def test_bad_price_rows_dropped_with_gaps(self):
        csv_text = "price,x\n100,a\nn/a,b\n-5,c\n300,d\n"
        table = load_table(csv_text, "T")
        assert table.n_products == 2
        assert table.dropped_rows == 2
        assert table.product_ids == (0, 3)

    def test_all_prices_bad(self):
        with pytest.raises(EmptyTableError):
            load_table("price,x\nn/a,a\noops,b\n", "T")

    def test_missing_tokens(self):
        csv_text = "price,color\n1,red\n2,N/A\n3,-\n4,—\n5,\n6,blue\n"
        table = load_table(csv_text, "T")
        assert table.column("color").values == ("red", None, None, None, None, "blue")

    def test_stray_text_in_numeric_column_becomes_missing(self):
        csv_text = "price,year\n" + "".join(f"{i},201{i % 8}\n" for i in range(1, 20))
        csv_text += "20,unknown\n"
        table = load_table(csv_text, "T")
        year = table.column("year")
        assert year.kind is FeatureKind.NUMERIC
        assert year.values[-1] is None

    def test_ragged_row_rejected(self):
        with pytest.raises(IngestError, match="row 3"):
            load_table("price,x\n1,a\n2\n", "T")

    def test_duplicate_columns_rejected(self):
        with pytest.raises(IngestError, match="duplicate"):
            load_table("price,x,x\n1,a,b\n", "T")

    def test_quoted_cells(self):
        table = load_table('price,name\n100,"a, b"\n200,c\n', "T")
        assert table.column("name").values == ("a, b", "c")


class TestFilter:
    def setup_method(self):
        self.table = make_table(
            prices=[100, 150, 200, 250, 300],
            features={
                "hdmi": [True, True, True, False, None],
                "smart": [True, False, True, True, True],
            },
        )

    def test_empty_predicates_identity(self):
        assert self.table.filter([]) == self.table

    def test_equals(self):
        out = self.table.filter([Equals("hdmi", True)])
        assert out.product_ids == (0, 1, 2)

    def test_missing_cells_excluded(self):
        out = self.table.filter([Equals("hdmi", False)])
        assert out.product_ids == (3,)  # row 4 has a missing hdmi cell

    def test_in_range(self):
        out = self.table.filter([InRange("price", 150, 250)])
        assert out.product_ids == (1, 2, 3)

    def test_has_feature(self):
        # boolean columns: only true cells carry the feature
        assert self.table.filter([HasFeature("hdmi")]).product_ids == (0, 1, 2)
        assert self.table.filter([HasFeature("smart")]).product_ids == (0, 2, 3, 4)

    def test_category_annotated(self):
        out = self.table.filter([Equals("smart", True), InRange("price", 100, 200)])
        assert out.category_name == "widgets (smart=yes; price=100..200)"

    def test_unknown_feature(self):
        with pytest.raises(UnknownFeatureError):
            self.table.filter([Equals("nope", True)])

    def test_kind_mismatch_range_on_boolean(self):
        with pytest.raises(KindMismatchError):
            self.table.filter([InRange("hdmi", 0, 1)])

    def test_kind_mismatch_equals(self):
        with pytest.raises(KindMismatchError):
            self.table.filter([Equals("hdmi", "yes")])

    def test_order_independent_product_sets(self):
        a = [InRange("price", 100, 200)]
        b = [Equals("smart", True)]
        one = self.table.filter(a).filter(b)
        other = self.table.filter(b).filter(a)
        assert one.product_ids == other.product_ids

    def test_composition_on_random_tables(self):
        rng = random.Random(7)
        for _ in range(50):
            table = random_table(rng, max_products=20)
            preds = _random_predicates(rng, table)
            for split in range(len(preds) + 1):
                combined = table.filter(preds)
                staged = table.filter(preds[:split]).filter(preds[split:])
                assert staged == combined

    def test_filter_never_grows(self):
        rng = random.Random(11)
        for _ in range(30):
            table = random_table(rng)
            preds = _random_predicates(rng, table)
            assert table.filter(preds).n_products <= table.n_products


def _random_predicates(rng, table):
    preds = []
    for column in table.columns:
        if rng.random() < 0.5:
            continue
        if column.kind is FeatureKind.NUMERIC:
            lo = rng.uniform(0, 500)
            preds.append(InRange(column.name, lo, lo + rng.uniform(0, 500)))
        elif column.kind is FeatureKind.BOOLEAN:
            preds.append(Equals(column.name, rng.random() < 0.5))
        else:
            preds.append(Equals(column.name, rng.choice(["alpha", "beta", "gamma"])))
    return preds


class TestRoundTrip:
    def test_serialize_reload_fixed_point(self):
        raw = (
            "price,hdmi,aspect,year\n"
            "£100,Yes,16:9,2016\n"
            "200,No,4:3,2017\n"
            "n/a,Yes,16:9,2015\n"
            "300.5,Yes,,2014\n"
        )
        first = load_table(raw, "T")
        second = load_table(first.to_csv(), "T")
        third = load_table(second.to_csv(), "T")
        assert second == third

    def test_round_trip_random(self):
        rng = random.Random(3)
        for _ in range(25):
            table = random_table(rng)
            reloaded = load_table(table.to_csv(), table.base_category)
            again = load_table(reloaded.to_csv(), table.base_category)
            assert reloaded == again


@given(
    st.lists(
        st.tuples(st.floats(1, 1000), st.booleans(), st.sampled_from("abc")),
        min_size=1,
        max_size=25,
    )
)
@settings(max_examples=60)
def test_filter_composition_property(rows):
    table = make_table(
        prices=[r[0] for r in rows],
        features={
            "flag": [r[1] for r in rows],
            "label": [r[2] for r in rows],
        },
    )
    preds = [Equals("flag", True), Equals("label", "a"), InRange("price", 10, 500)]
    assert table.filter(preds) == table.filter(preds[:1]).filter(preds[1:])
