"""Run the CLI over the shipped corpus and print each report.

Each entry lists the command and the exit code it should produce; the
script exits nonzero if any code differs.

Usage: python3 scripts/reproduce_examples.py [--format json]
"""
import argparse
import sys
from pathlib import Path

from halg.cli import run

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

RUNS = [
    ("check exam32.halg --structure hom-novikov-super", 0),
    ("check exam32.halg --structure hom-novikov-super --classical", 1),
    ("construct supercommutator exam32.halg", 0),
    ("check exam32-gd.halg --structure gd", 0),
    ("construct yau-twist exam33.halg --products circ --kind novikov", 0),
    ("check exam33-gd.halg --structure gd", 0),
    ("check exam33-printed.halg --structure gd", 1),
    ("affinize exam32-gd.halg --delta", 0),
    ("affinize exam32-gd.halg --window -3..3", 0),
    ("affinize exam32-perturbed.halg --delta", 1),
    ("affinize exam33-gd.halg --delta --show-brackets", 0),
    ("conformalize exam32-gd.halg", 0),
    ("gd-extract quadratic-from-exam32.halg", 0),
    ("conformalize exam32-gd.halg --current", 0),
    ("solve-alpha svir.halg --degree 2", 0),
    ("cocycles virasoro.halg --max-degree 3", 0),
    ("extend virasoro.halg --cocycle virasoro-lambda3.cocycle", 0),
    ("cocycles quadratic-from-exam32.halg --max-degree 3", 0),
    ("verify-thm51 exam32-gd.halg --cocycle exam32-cocycles.cocycle", 0),
    ("construct derivation exam35-doubled.halg --shift s", 0),
    ("construct poisson poisson-example.halg", 1),
    ("construct poisson poisson-example-repaired.halg", 0),
    ("construct star exam32-gd.halg --map alpha", 0),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("text", "json"), default="text")
    args = ap.parse_args()
    bad = 0
    for line, want in RUNS:
        # corpus file names resolve against corpus/
        argv = [str(CORPUS / a) if a.endswith((".halg", ".cocycle")) else a for a in line.split()]
        rep, code = run(argv + ["--format", args.format])
        rep.command = line
        print(rep.text() if args.format == "text" else rep.as_dict())
        status = "ok" if code == want else f"UNEXPECTED (wanted {want})"
        print(f"exit {code}: {status}\n")
        bad += code != want
    print(f"{len(RUNS) - bad}/{len(RUNS)} commands gave the expected exit code")
    sys.exit(1 if bad else 0)


if __name__ == "__main__":
    main()
