#!/usr/bin/env python3
"""Fetch the UCI datasets used by the benchmark reproduction tests.

Downloads the Australian credit approval and Teaching assistant evaluation
datasets from the UCI repository and converts them into the CSV + schema
format consumed by the gfmm CLI. The zoo dataset is already committed under
data/. Usage:

    python3 scripts/fetch_datasets.py [output_dir]
"""

import os
import sys
import urllib.request
from pathlib import Path

UCI = os.environ.get("GFMM_UCI_BASE_URL",
                     "https://archive.ics.uci.edu/ml/machine-learning-databases")


def fetch(url: str) -> list[str]:
    print(f"fetching {url}")
    with urllib.request.urlopen(url, timeout=60) as resp:
        text = resp.read().decode("utf-8")
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def write_dataset(out_dir: Path, name: str, header: list[str],
                  kinds: list[str], rows: list[list[str]], note: str) -> None:
    assert len(header) == len(kinds)
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise SystemExit(f"{name}: row {i} has {len(row)} cells, "
                             f"expected {len(header)}")
    csv_path = out_dir / f"{name}.csv"
    with csv_path.open("w") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")
    schema_path = out_dir / f"{name}.schema"
    with schema_path.open("w") as f:
        f.write(f"# {note}\n")
        for col, kind in zip(header, kinds):
            f.write(f"{col},{kind}\n")
    print(f"wrote {csv_path} ({len(rows)} rows) and {schema_path}")


def australian(out_dir: Path) -> None:
    lines = fetch(f"{UCI}/statlog/australian/australian.dat")
    rows = [ln.split() for ln in lines]
    if len(rows) != 690:
        raise SystemExit(f"australian: expected 690 rows, got {len(rows)}")
    header = [f"A{i}" for i in range(1, 15)] + ["approved"]
    # Attribute kinds per the UCI documentation (australian.doc):
    # A1, A4, A5, A6, A8, A9, A11, A12 categorical; the rest continuous.
    categorical = {1, 4, 5, 6, 8, 9, 11, 12}
    kinds = ["categorical" if i in categorical else "continuous"
             for i in range(1, 15)] + ["class"]
    write_dataset(out_dir, "australian", header, kinds, rows,
                  "UCI Statlog Australian credit approval: "
                  "6 continuous + 8 categorical attributes, 2 classes.")


def tae(out_dir: Path) -> None:
    lines = fetch(f"{UCI}/tae/tae.data")
    rows = [ln.split(",") for ln in lines]
    if len(rows) != 151:
        raise SystemExit(f"tae: expected 151 rows, got {len(rows)}")
    header = ["native_speaker", "instructor", "course", "semester",
              "class_size", "rating"]
    kinds = ["categorical", "categorical", "categorical", "categorical",
             "continuous", "class"]
    write_dataset(out_dir, "tae", header, kinds, rows,
                  "UCI Teaching assistant evaluation: "
                  "1 continuous + 4 categorical attributes, 3 classes.")


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    out_dir.mkdir(parents=True, exist_ok=True)
    australian(out_dir)
    tae(out_dir)


if __name__ == "__main__":
    main()
