"""Write LaTeX and CSV tables of exact values into an output directory."""
import argparse
from pathlib import Path

from umbralbb.cli import run

TABLES = {
    "bernoulli": ["table", "bernoulli", "--k", "20"],
    "norlund": ["table", "norlund", "--j", "6", "--n", "5"],
    "bb_123": ["table", "bb", "--k", "8", "--a", "1,2,3"],
    "bb_symbolic2": ["table", "bb", "--k", "6", "--n", "2"],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="tables")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, argv in TABLES.items():
        for fmt, ext in (("csv", "csv"), ("latex", "tex")):
            status, text = run(argv + ["--format", fmt])
            if status:
                raise SystemExit(f"{name}: exit {status}")
            (out / f"{name}.{ext}").write_text(text)
            print(out / f"{name}.{ext}")


if __name__ == "__main__":
    main()
