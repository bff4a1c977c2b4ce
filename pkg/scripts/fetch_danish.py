"""Write the Danish fire-loss sample (2156 losses over one million DKK) to data/danish.txt.

The evir R package ships 2167 losses, eleven of which are exactly 1.0;
dropping those leaves the 2156 losses strictly above one million.

    pip install rdatasets && python scripts/fetch_danish.py
    python scripts/fetch_danish.py --from danish.csv    # e.g. write.csv(evir::danish) from R

The file is not redistributed with this repository.
"""
import argparse
import csv
import math
import pathlib
import sys

COUNT = 2156
OUT = pathlib.Path(__file__).resolve().parents[1] / "data" / "danish.txt"


def from_rdatasets():
    import rdatasets

    return [float(v) for v in rdatasets.data("evir", "danish")["dat"]]


def from_file(path):
    values = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            for tok in reversed(row):  # last numeric field, so row names are skipped
                try:
                    values.append(float(tok))
                    break
                except ValueError:
                    continue
    return values


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--from", dest="src", help="CSV or text file holding evir::danish")
    ap.add_argument("--output", default=str(OUT))
    args = ap.parse_args(argv)
    values = from_file(args.src) if args.src else from_rdatasets()
    losses = [v for v in values if v > 1.0]
    if len(losses) != COUNT:
        sys.exit(f"expected {COUNT} losses above 1, found {len(losses)}")
    out = pathlib.Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(f"{v!r}\n" for v in losses))
    print(f"wrote {len(losses)} values to {out} (sum {math.fsum(losses)!r})")


if __name__ == "__main__":
    main()
