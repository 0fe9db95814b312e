#!/usr/bin/env python3
"""Fetch the optdigits and pendigits digit datasets into data/.

Both sets originate from the UCI Machine Learning Repository. This script
pulls the cleaned copies republished by the PMLB project on GitHub and
rewrites them as header-less CSV with the class label in the last column,
the layout the loaders and tests in this repository expect.

The repository already ships the resulting files under data/, so running
this is only needed to regenerate them from source.
"""

import argparse
import csv
import gzip
import io
import pathlib
import sys
import urllib.request

BASE_URL = "https://raw.githubusercontent.com/EpistasisLab/pmlb/master/datasets/{name}/{name}.tsv.gz"

DATASETS = {
    "pendigits": {"rows": 10992, "features": 16, "classes": 10},
    "optdigits": {"rows": 5620, "features": 64, "classes": 10},
}


def plain_number(token: str) -> str:
    """Integer-valued tokens come out as bare integers, everything else as-is."""
    value = float(token)
    if value.is_integer():
        return str(int(value))
    return token


def fetch(name: str, spec: dict, out_dir: pathlib.Path) -> pathlib.Path:
    url = BASE_URL.format(name=name)
    print(f"fetching {url}")
    with urllib.request.urlopen(url) as response:
        blob = response.read()
    text = gzip.decompress(blob).decode("utf-8")

    reader = csv.reader(io.StringIO(text), delimiter="\t")
    header = next(reader)
    if header[-1] != "target":
        sys.exit(f"{name}: expected the last column to be 'target', got {header[-1]!r}")
    if len(header) != spec["features"] + 1:
        sys.exit(f"{name}: expected {spec['features']} feature columns, got {len(header) - 1}")

    rows = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            sys.exit(f"{name}: ragged row with {len(row)} fields")
        label = plain_number(row[-1])
        if not 0 <= int(label) < spec["classes"]:
            sys.exit(f"{name}: label {label} outside [0, {spec['classes']})")
        rows.append([plain_number(tok) for tok in row[:-1]] + [label])
    if len(rows) != spec["rows"]:
        sys.exit(f"{name}: expected {spec['rows']} rows, got {len(rows)}")

    out_path = out_dir / f"{name}.csv"
    with open(out_path, "w", newline="\n") as out:
        for row in rows:
            out.write(",".join(row) + "\n")
    print(f"wrote {len(rows)} rows x {len(header) - 1} features to {out_path}")
    return out_path


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--out-dir",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "data",
        help="destination directory (default: the repository's data/)",
    )
    parser.add_argument(
        "--dataset",
        choices=sorted(DATASETS) + ["all"],
        default="all",
        help="which dataset to fetch (default: all)",
    )
    args = parser.parse_args()

    args.out_dir.mkdir(parents=True, exist_ok=True)
    names = sorted(DATASETS) if args.dataset == "all" else [args.dataset]
    for name in names:
        fetch(name, DATASETS[name], args.out_dir)


if __name__ == "__main__":
    main()
