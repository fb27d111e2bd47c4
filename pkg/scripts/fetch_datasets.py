"""Download the benchmark files used by the acceptance suite into ./data.

The shape sets come from the University of Eastern Finland clustering
benchmark collection; DS7 (t7.10k) is one of the Chameleon sets shipped
with the CLUTO toolkit. Files are stored under the names the tests expect.

    python3 scripts/fetch_datasets.py [--dest DIR]

Set DENMUNE_DATA to point the tests at a different directory.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

SIPU = "https://cs.joensuu.fi/sipu/datasets/"
FILES = {
    "jain.txt": SIPU + "jain.txt",
    "flame.txt": SIPU + "flame.txt",
    "spiral.txt": SIPU + "spiral.txt",
    "Aggregation.txt": SIPU + "Aggregation.txt",
    "Compound.txt": SIPU + "Compound.txt",
    "pathbased.txt": SIPU + "pathbased.txt",
    "R15.txt": SIPU + "R15.txt",
    # Chameleon DS7, 10,000 unlabeled 2-D points
    "t7.10k.dat": "https://raw.githubusercontent.com/deric/clustering-benchmark/master/src/main/resources/datasets/artificial/t7.10k.arff",
}


def arff_to_table(text):
    rows = []
    in_data = False
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        if line.lower().startswith("@data"):
            in_data = True
            continue
        if in_data:
            rows.append(" ".join(line.split(",")[:2]))
    return "\n".join(rows) + "\n"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default=str(Path(__file__).resolve().parents[1] / "data"))
    args = ap.parse_args(argv)
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name, url in FILES.items():
        target = dest / name
        if target.exists():
            print(f"have  {name}")
            continue
        try:
            with urllib.request.urlopen(url, timeout=30) as resp:
                text = resp.read().decode("utf-8", errors="replace")
        except OSError as exc:
            print(f"fail  {name}: {exc}", file=sys.stderr)
            failed += 1
            continue
        if url.endswith(".arff"):
            text = arff_to_table(text)
        target.write_text(text)
        print(f"got   {name}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
