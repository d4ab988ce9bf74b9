#!/usr/bin/env python3
"""Write the seeded synthetic TV catalog to disk.

The generator is deterministic: the same --rows/--seed pair always produces
the same CSV bytes, so the file can be regenerated instead of checked in.
"""

import argparse
import sys
from pathlib import Path

from setsumm.datagen import DEFAULT_ROWS, DEFAULT_SEED, synthetic_tv_catalog
from setsumm.ingest import load_table


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", type=int, default=DEFAULT_ROWS)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument(
        "--output", type=Path, default=Path("data/tv_synthetic.csv")
    )
    args = parser.parse_args()

    csv_text = synthetic_tv_catalog(args.rows, args.seed)
    args.output.parent.mkdir(parents=True, exist_ok=True)
    args.output.write_text(csv_text, encoding="utf-8")

    table = load_table(csv_text, "32 inch TVs")
    print(
        f"wrote {args.output} (rows={args.rows}, seed={args.seed}): "
        f"{table.n_products} products retained, {table.dropped_rows} dropped, "
        f"{len(table.columns)} columns",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
