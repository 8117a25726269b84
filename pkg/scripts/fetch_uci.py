#!/usr/bin/env python3
"""Download and normalize the UCI datasets used by the benchmark tests.

Each dataset is written to data/<name>.csv as a plain comma-separated file
with no header, attribute columns first and the ground-truth label as the
LAST column. Identifier columns are dropped; constant attribute columns are
dropped where noted (soybean-small ships 14 of them). Missing values stay
as their original '?' token: the loader encodes them as one extra category
per attribute.

Usage:
    python scripts/fetch_uci.py [--data-dir data] [names...]
"""

import argparse
import csv
import io
import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

# name -> (url, label column in the raw file, columns to drop,
#          drop constant attribute columns)
RECIPES = {
    "zoo": (f"{BASE}/zoo/zoo.data", -1, [0], False),
    "soybean-small": (f"{BASE}/soybean/soybean-small.data", -1, [], True),
    "house-votes": (f"{BASE}/voting-records/house-votes-84.data", 0, [],
                    False),
    "breast-cancer": (f"{BASE}/breast-cancer-wisconsin/"
                      "breast-cancer-wisconsin.data", -1, [0], False),
    "chess": (f"{BASE}/chess/king-rook-vs-king-pawn/kr-vs-kp.data", -1, [],
              False),
    "hayes-roth": (f"{BASE}/hayes-roth/hayes-roth.data", -1, [0], False),
    "lung-cancer": (f"{BASE}/lung-cancer/lung-cancer.data", 0, [], False),
    "lymphography": (f"{BASE}/lymphography/lymphography.data", 0, [], False),
}


def normalize(raw_text, label_col, drop_cols, drop_constant):
    rows = [row for row in csv.reader(io.StringIO(raw_text)) if row]
    rows = [[f.strip() for f in row] for row in rows]
    width = len(rows[0])
    label_idx = label_col if label_col >= 0 else width + label_col
    keep = [c for c in range(width) if c != label_idx and c not in drop_cols]
    if drop_constant:
        keep = [c for c in keep if len({row[c] for row in rows}) > 1]
    return [[row[c] for c in keep] + [row[label_idx]] for row in rows]


def fetch(name, data_dir):
    url, label_col, drop_cols, drop_constant = RECIPES[name]
    print(f"fetching {name} from {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        raw = resp.read().decode("utf-8", errors="replace")
    rows = normalize(raw, label_col, drop_cols, drop_constant)
    out = data_dir / f"{name}.csv"
    with open(out, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    n, m = len(rows), len(rows[0]) - 1
    print(f"  wrote {out}: N={n}, M={m}")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("names", nargs="*", default=[],
                        help=f"datasets to fetch (default: all of "
                             f"{', '.join(RECIPES)})")
    parser.add_argument("--data-dir", default="data", type=Path)
    args = parser.parse_args(argv)
    names = args.names or list(RECIPES)
    unknown = set(names) - set(RECIPES)
    if unknown:
        parser.error(f"unknown datasets: {sorted(unknown)}")
    args.data_dir.mkdir(parents=True, exist_ok=True)
    failures = []
    for name in names:
        try:
            fetch(name, args.data_dir)
        except Exception as exc:
            print(f"  FAILED {name}: {exc}", file=sys.stderr)
            failures.append(name)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
