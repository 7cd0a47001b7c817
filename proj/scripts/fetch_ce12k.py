#!/usr/bin/env python3
"""Download the published CE12k dataset and normalize it to JSONL.

Writes train.jsonl / test.jsonl with the native record schema
({"text": ..., "triples": [[s, p, o], ...]}) into the target directory, so
the acceptance suite's published-dataset check can run:

    python3 scripts/fetch_ce12k.py --out tests/data/ce12k
    KGF_CE12K_DIR=tests/data/ce12k ctest --test-dir build -R acceptance.c8

Requires network access to the dataset hub and either the `datasets`
library or `huggingface_hub`.
"""

import argparse
import json
import sys
from pathlib import Path

DATASET_ID = "FaezehFaez/CE12k"


def normalize_triples(value):
    if isinstance(value, str):
        value = json.loads(value)
    out = []
    for t in value:
        if len(t) != 3:
            raise ValueError(f"triple of arity {len(t)}: {t!r}")
        out.append([str(t[0]), str(t[1]), str(t[2])])
    return out


def pick(record, keys):
    for key in keys:
        if key in record and record[key] is not None:
            return record[key]
    raise KeyError(f"none of {keys} in record with keys {sorted(record)}")


def write_split(rows, path):
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for record in rows:
            text = pick(record, ["text", "input", "input_text", "T"])
            triples = normalize_triples(pick(record, ["triples", "kg", "graph", "output"]))
            fh.write(json.dumps({"text": text, "triples": triples}, ensure_ascii=False))
            fh.write("\n")
            count += 1
    print(f"wrote {count} records -> {path}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="tests/data/ce12k", help="output directory")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    try:
        from datasets import load_dataset
    except ImportError:
        print("the `datasets` library is required: pip install datasets", file=sys.stderr)
        return 1

    ds = load_dataset(DATASET_ID)
    splits = {name.lower(): name for name in ds.keys()}
    for want in ("train", "test"):
        if want not in splits:
            print(f"split '{want}' not found; available: {sorted(ds.keys())}", file=sys.stderr)
            return 1
        write_split(ds[splits[want]], out / f"{want}.jsonl")
    return 0


if __name__ == "__main__":
    sys.exit(main())
