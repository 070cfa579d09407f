#!/usr/bin/env python3
"""Download the two UCI benchmark datasets and write them in the layout the
test suite and CLI expect: comma-separated, no header, label in the last
column.

  segmentation.csv  2310 rows x 19 features, 7 classes (train + test merged)
  spectf.csv         267 rows x 44 features, 2 classes (train + test merged)

Usage:
  python3 scripts/fetch_uci_data.py [--dest DIR] [--base-url URL]

Run this on a machine with network access, then point FIREWORKS_FS_DATA_DIR
at the destination directory (default: <repo>/data/uci).
"""

import argparse
import sys
import urllib.request
from pathlib import Path

DEFAULT_BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

SEGMENTATION_CLASSES = {
    "BRICKFACE", "SKY", "FOLIAGE", "CEMENT", "WINDOW", "PATH", "GRASS",
}


def fetch(url: str) -> str:
    sys.stderr.write(f"fetching {url}\n")
    with urllib.request.urlopen(url, timeout=60) as resp:
        return resp.read().decode("utf-8", errors="replace")


def parse_segmentation(text: str) -> list[list[str]]:
    """Rows are CLASS,19 numeric fields; several header lines precede them."""
    rows = []
    for line in text.splitlines():
        fields = [f.strip() for f in line.strip().split(",")]
        if len(fields) != 20 or fields[0] not in SEGMENTATION_CLASSES:
            continue
        try:
            values = [f"{float(f)!r}" for f in fields[1:]]
        except ValueError:
            continue
        rows.append(values + [fields[0]])
    return rows


def parse_spectf(text: str) -> list[list[str]]:
    """Rows are LABEL,44 integer fields with no header."""
    rows = []
    for line in text.splitlines():
        fields = [f.strip() for f in line.strip().split(",")]
        if len(fields) != 45:
            continue
        label, values = fields[0], fields[1:]
        rows.append([f"{float(v)!r}" for v in values] + [label])
    return rows


def write_csv(path: Path, rows: list[list[str]]) -> None:
    path.write_text("".join(",".join(row) + "\n" for row in rows))
    sys.stderr.write(f"wrote {path} ({len(rows)} rows)\n")


def check(name: str, rows: list[list[str]], expected_rows: int,
          expected_width: int, expected_classes: int) -> None:
    if len(rows) != expected_rows:
        raise SystemExit(f"{name}: got {len(rows)} rows, expected {expected_rows}")
    widths = {len(r) for r in rows}
    if widths != {expected_width}:
        raise SystemExit(f"{name}: row widths {sorted(widths)}, expected {expected_width}")
    classes = {r[-1] for r in rows}
    if len(classes) != expected_classes:
        raise SystemExit(f"{name}: {len(classes)} classes, expected {expected_classes}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--dest",
        default=str(Path(__file__).resolve().parent.parent / "data" / "uci"),
        help="output directory (default: <repo>/data/uci)",
    )
    parser.add_argument(
        "--base-url", default=DEFAULT_BASE,
        help="archive root, for mirrors (default: %(default)s)",
    )
    args = parser.parse_args(argv)
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    base = args.base_url.rstrip("/")

    seg = parse_segmentation(
        fetch(f"{base}/image/segmentation.data")
        + "\n"
        + fetch(f"{base}/image/segmentation.test")
    )
    check("segmentation", seg, expected_rows=2310, expected_width=20,
          expected_classes=7)
    write_csv(dest / "segmentation.csv", seg)

    spectf = parse_spectf(
        fetch(f"{base}/spect/SPECTF.train") + "\n" + fetch(f"{base}/spect/SPECTF.test")
    )
    check("spectf", spectf, expected_rows=267, expected_width=45,
          expected_classes=2)
    write_csv(dest / "spectf.csv", spectf)

    sys.stderr.write(
        f"done; set FIREWORKS_FS_DATA_DIR={dest} to run the full test suite\n"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
