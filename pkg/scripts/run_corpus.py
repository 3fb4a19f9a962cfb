#!/usr/bin/env python3
"""Run the golden corpus and print a TAP report (JSON with --json)."""
import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from gcube.corpus import run_corpus  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="emit the JSON report")
    ap.add_argument("--root", type=Path, default=None, help="corpus directory")
    args = ap.parse_args()
    report = run_corpus(args.root)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report.tap())
        print(f"# total {report.seconds:.2f}s")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
