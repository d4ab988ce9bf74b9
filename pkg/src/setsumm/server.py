"""HTTP service: dataset registry, faceted filtering, live summaries.

Summaries are recomputed per request through the same pipeline the CLI
uses, so for a given (dataset, filter, mode, config) the service and the
CLI produce identical text.  Datasets are immutable snapshots; uploading
or reloading swaps a registry entry atomically, so concurrent readers see
either the old or the new table, never a mixture.

Filter query syntax: semicolon-separated conjunctive terms, either
``feature=value`` or ``feature=lo..hi`` (numeric columns only).
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import SetsummError, UnknownFeatureError
from .ingest import (
    Equals,
    FeatureKind,
    FilterPredicate,
    HasFeature,
    InRange,
    ProductTable,
    load_table,
    parse_number,
)
from .pipeline import SummaryConfig, build_document
from .realize import SummaryMode, cell_to_json, document_to_dict, render

DEFAULT_MAX_UPLOAD = 50 * 1024 * 1024
MANIFEST_NAME = "manifest.json"

_TRUE_WORDS = frozenset({"true", "yes"})
_FALSE_WORDS = frozenset({"false", "no"})


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8000
    data_dir: Path = Path("./data")
    summary: SummaryConfig = field(default_factory=SummaryConfig)
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD
    page_size: int = 50
    static_dir: Path | None = None


@dataclass(frozen=True)
class DatasetEntry:
    dataset_id: str
    category: str
    source_path: Path
    price_column: str | None
    loaded_at: float
    table: ProductTable


class DatasetRegistry:
    """On-disk dataset store: the uploaded CSV is the source of truth, a
    manifest records category and price-column hints, and tables are
    re-ingested on startup."""

    def __init__(self, data_dir: Path):
        self.data_dir = data_dir
        self._lock = threading.Lock()
        self._entries: dict[str, DatasetEntry] = {}

    def load_existing(self) -> None:
        manifest = self.data_dir / MANIFEST_NAME
        if not manifest.exists():
            return
        meta = json.loads(manifest.read_text(encoding="utf-8"))
        for dataset_id, info in meta.get("datasets", {}).items():
            path = self.data_dir / info["file"]
            table = load_table(
                path.read_bytes(), info["category"], info.get("price_column")
            )
            self._entries[dataset_id] = DatasetEntry(
                dataset_id=dataset_id,
                category=info["category"],
                source_path=path,
                price_column=info.get("price_column"),
                loaded_at=info.get("loaded_at", time.time()),
                table=table,
            )

    def list_entries(self) -> list[DatasetEntry]:
        return sorted(self._entries.values(), key=lambda e: e.dataset_id)

    def get(self, dataset_id: str) -> DatasetEntry | None:
        return self._entries.get(dataset_id)

    def add(
        self, csv_bytes: bytes, category: str, price_column: str | None = None
    ) -> DatasetEntry:
        return self._store(uuid.uuid4().hex[:12], csv_bytes, category, price_column)

    def replace(
        self,
        dataset_id: str,
        csv_bytes: bytes,
        category: str,
        price_column: str | None = None,
    ) -> DatasetEntry:
        return self._store(dataset_id, csv_bytes, category, price_column)

    def _store(
        self,
        dataset_id: str,
        csv_bytes: bytes,
        category: str,
        price_column: str | None,
    ) -> DatasetEntry:
        # parse before touching disk so a bad upload changes nothing
        table = load_table(csv_bytes, category, price_column)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        path = self.data_dir / f"{dataset_id}.csv"
        path.write_bytes(csv_bytes)
        entry = DatasetEntry(
            dataset_id=dataset_id,
            category=category,
            source_path=path,
            price_column=price_column,
            loaded_at=time.time(),
            table=table,
        )
        with self._lock:
            self._entries[dataset_id] = entry  # atomic snapshot swap
            self._write_manifest()
        return entry

    def _write_manifest(self) -> None:
        meta = {
            "datasets": {
                e.dataset_id: {
                    "file": e.source_path.name,
                    "category": e.category,
                    "price_column": e.price_column,
                    "loaded_at": e.loaded_at,
                }
                for e in self._entries.values()
            }
        }
        tmp = self.data_dir / f".{MANIFEST_NAME}.tmp"
        tmp.write_text(json.dumps(meta, indent=2), encoding="utf-8")
        tmp.replace(self.data_dir / MANIFEST_NAME)


def parse_filter_query(expr: str, table: ProductTable) -> list[FilterPredicate]:
    """Parse the filter query string into typed predicates for a table."""
    predicates: list[FilterPredicate] = []
    for term in expr.split(";"):
        term = term.strip()
        if not term:
            continue
        name, sep, raw = term.partition("=")
        name = name.strip()
        raw = raw.strip()
        if not sep or not name or not raw:
            raise ValueError(f"malformed filter term {term!r}, expected name=value")
        column = table.column(name)  # UnknownFeatureError for bad names
        if raw == "*":
            predicates.append(HasFeature(name))
            continue
        if ".." in raw:
            lo_text, _, hi_text = raw.partition("..")
            lo = parse_number(lo_text)
            hi = parse_number(hi_text)
            if lo is None or hi is None:
                raise ValueError(f"malformed range {raw!r} for {name!r}")
            predicates.append(InRange(name, lo, hi))
            continue
        if column.kind is FeatureKind.BOOLEAN:
            word = raw.casefold()
            if word in _TRUE_WORDS:
                predicates.append(Equals(name, True))
            elif word in _FALSE_WORDS:
                predicates.append(Equals(name, False))
            else:
                raise ValueError(f"{name!r} is boolean, cannot equal {raw!r}")
        elif column.kind is FeatureKind.NUMERIC:
            value = parse_number(raw)
            if value is None:
                raise ValueError(f"{name!r} is numeric, cannot equal {raw!r}")
            predicates.append(Equals(name, value))
        else:
            predicates.append(Equals(name, raw))
    return predicates


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    registry = DatasetRegistry(config.data_dir)
    registry.load_existing()
    app = FastAPI(title="setsumm", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.registry = registry
    app.state.config = config

    def entry_or_404(dataset_id: str) -> DatasetEntry:
        entry = registry.get(dataset_id)
        if entry is None:
            raise HTTPException(404, f"unknown dataset {dataset_id!r}")
        return entry

    def filtered_or_400(entry: DatasetEntry, expr: str | None) -> ProductTable:
        if not expr:
            return entry.table
        try:
            predicates = parse_filter_query(expr, entry.table)
            return entry.table.filter(predicates)
        except (SetsummError, ValueError) as exc:
            raise HTTPException(400, str(exc)) from exc

    @app.get("/datasets")
    def list_datasets():
        return {
            "datasets": [
                {
                    "id": e.dataset_id,
                    "category": e.category,
                    "product_count": e.table.n_products,
                }
                for e in registry.list_entries()
            ]
        }

    @app.post("/datasets", status_code=201)
    async def upload_dataset(
        request: Request,
        category: str | None = Query(None),
        price_column: str | None = Query(None),
    ):
        if category is None:
            category = request.headers.get("x-dataset-category")
        if not category:
            raise HTTPException(
                400, "a category name is required (query param or X-Dataset-Category)"
            )
        declared = request.headers.get("content-length")
        if declared and int(declared) > config.max_upload_bytes:
            raise HTTPException(413, "upload exceeds the size limit")
        body = await request.body()
        if len(body) > config.max_upload_bytes:
            raise HTTPException(413, "upload exceeds the size limit")
        try:
            entry = registry.add(body, category, price_column)
        except (SetsummError, UnicodeDecodeError) as exc:
            raise HTTPException(400, f"could not parse CSV: {exc}") from exc
        return {
            "id": entry.dataset_id,
            "category": entry.category,
            "product_count": entry.table.n_products,
            "dropped_rows": entry.table.dropped_rows,
        }

    @app.get("/datasets/{dataset_id}/features")
    def dataset_features(dataset_id: str):
        table = entry_or_404(dataset_id).table
        features = []
        for column in table.columns:
            info: dict = {"name": column.name, "kind": column.kind.value}
            non_missing = column.non_missing()
            if column.kind is FeatureKind.NUMERIC:
                info["domain"] = {
                    "min": cell_to_json(min(non_missing)) if non_missing else None,
                    "max": cell_to_json(max(non_missing)) if non_missing else None,
                }
            else:
                info["domain"] = [
                    cell_to_json(v) for v in sorted(set(non_missing), key=str)
                ]
            features.append(info)
        return {"price_feature": table.price_feature, "features": features}

    @app.get("/datasets/{dataset_id}/products")
    def dataset_products(
        dataset_id: str,
        filter: str | None = Query(None),
        page: int = Query(1),
        page_size: int | None = Query(None),
    ):
        entry = entry_or_404(dataset_id)
        size = page_size if page_size is not None else config.page_size
        if page < 1 or size < 1 or size > 500:
            raise HTTPException(400, "page must be >= 1 and page_size in 1..500")
        table = filtered_or_400(entry, filter)
        start = (page - 1) * size
        rows = [
            {
                "id": p.product_id,
                "values": {name: cell_to_json(v) for name, v in p.values.items()},
            }
            for p in list(table.iter_products())[start : start + size]
        ]
        return {
            "products": rows,
            "page": page,
            "page_size": size,
            "total": table.n_products,
            "category": table.category_name,
        }

    @app.get("/datasets/{dataset_id}/summary")
    def dataset_summary(
        dataset_id: str,
        mode: str = Query(SummaryMode.FULL.value),
        filter: str | None = Query(None),
    ):
        entry = entry_or_404(dataset_id)
        try:
            summary_mode = SummaryMode(mode)
        except ValueError:
            raise HTTPException(
                400, f"mode must be one of {[m.value for m in SummaryMode]}"
            ) from None
        table = filtered_or_400(entry, filter)
        if table.n_products == 0:
            raise HTTPException(400, "the filter matches no products")
        # the whole dataset is the natural superset of any filtered view
        superset = entry.table if (summary_mode is SummaryMode.EXTENDED and filter) else None
        try:
            doc = build_document(table, summary_mode, config.summary, superset)
        except SetsummError as exc:
            raise HTTPException(400, str(exc)) from exc
        text = render(doc, quantifier_thresholds=config.summary.quantifier_thresholds)
        return JSONResponse(
            {
                "dataset": dataset_id,
                "mode": summary_mode.value,
                "filter": filter or "",
                "product_count": table.n_products,
                "summary": text,
                "document": document_to_dict(doc),
            }
        )

    if config.static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount(
            "/ui", StaticFiles(directory=config.static_dir, html=True), name="ui"
        )

    return app
