"""Deterministic synthetic catalogs for demos and shape tests.

The real scraped TV/camera databases are not redistributable, so this module
fabricates a TV-like catalog of the same shape: a few hundred rows, a mix of
Boolean/Categorical/Numeric columns, price correlated with the screen specs,
a handful of luxury outliers, and some missing cells.  Everything is driven
by a seeded RNG, so a given (n, seed) pair always yields the same CSV bytes.
"""

from __future__ import annotations

import csv
import io
import random

DEFAULT_SEED = 20170614
DEFAULT_ROWS = 363

_RESOLUTIONS = [("720p", 140.0, 0.25), ("1080p", 260.0, 0.55), ("4K", 520.0, 0.20)]
_TECHNOLOGIES = [("LCD", 0.0, 0.7), ("LED", 40.0, 0.25), ("OLED", 350.0, 0.05)]
_ASPECTS = [("16:9", 0.9), ("4:3", 0.1)]
_YEARS = [(2014, -60.0), (2015, -30.0), (2016, 0.0), (2017, 45.0)]
_BRIGHTNESS = [200.0, 250.0, 300.0, 350.0, 400.0]
_ENERGY = [45.0, 60.0, 75.0, 90.0]

HEADER = [
    "price",
    "screen size",
    "resolution",
    "display technology",
    "aspect ratio",
    "hdmi",
    "number of hdmi inputs",
    "smart TV",
    "wifi",
    "led backlight",
    "flat panel design",
    "curved",
    "analogue TV tuner",
    "digital TV tuner",
    "hd ready 1080p (full hd)",
    "release year",
    "brightness",
    "annual energy consumption",
]


def _pick(rng: random.Random, weighted):
    roll = rng.random()
    acc = 0.0
    for item in weighted:
        acc += item[-1]
        if roll <= acc:
            return item
    return weighted[-1]


def _yes_no(flag: bool) -> str:
    return "Yes" if flag else "No"


def synthetic_tv_catalog(n: int = DEFAULT_ROWS, seed: int = DEFAULT_SEED) -> str:
    """Generate a TV-like catalog as CSV text (column layout in HEADER)."""
    rng = random.Random(seed)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for i in range(n):
        resolution, res_price, _ = _pick(rng, _RESOLUTIONS)
        technology, tech_price, _ = _pick(rng, _TECHNOLOGIES)
        aspect = _pick(rng, _ASPECTS)[0]
        year, year_price = rng.choice(_YEARS)
        hdmi_inputs = rng.choice([1, 2, 2, 3, 3, 4])
        smart = rng.random() < 0.55
        wifi = smart or rng.random() < 0.3
        hd_ready = resolution != "720p"
        brightness = rng.choice(_BRIGHTNESS)
        energy = rng.choice(_ENERGY)

        price = (
            res_price
            + tech_price
            + year_price
            + 35.0 * hdmi_inputs
            + (70.0 if smart else 0.0)
            + (brightness - 200.0) * 0.2
            + rng.gauss(0.0, 25.0)
        )
        price = max(45.0, price)
        if rng.random() < 0.03:  # luxury outliers
            price += rng.uniform(2500.0, 6000.0)

        row = [
            f"£{price:.2f}",
            "32",
            resolution,
            technology,
            aspect,
            _yes_no(rng.random() < 0.97),
            str(hdmi_inputs),
            _yes_no(smart),
            _yes_no(wifi),
            _yes_no(rng.random() < 0.85),
            _yes_no(rng.random() < 0.9),
            _yes_no(rng.random() < 0.08),
            _yes_no(rng.random() < 0.88),
            _yes_no(rng.random() < 0.93),
            _yes_no(hd_ready),
            str(year),
            f"{brightness:.0f}",
            f"{energy:.0f}",
        ]
        # sprinkle missing cells over the non-price columns
        if rng.random() < 0.12:
            column = rng.randrange(1, len(row))
            row[column] = rng.choice(["", "n/a", "-"])
        # a few rows lose their price entirely (they get dropped at load)
        if i % 120 == 119:
            row[0] = "n/a"
        writer.writerow(row)
    return out.getvalue()
