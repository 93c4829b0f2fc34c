"""Rewrite the golden CLI outputs: python tests/golden/regen.py (from the repo root)."""

import json
import pathlib
import sys

HERE = pathlib.Path(__file__).parent
sys.path.insert(0, str(HERE.parent))

from cli_harness import run_case  # noqa: E402


def main():
    cases = json.loads((HERE / "cases.json").read_text())
    for case in cases:
        (HERE / f"{case['name']}.out").write_text(run_case(case))
    print(f"wrote {len(cases)} golden files")


if __name__ == "__main__":
    main()
