import io
import os
import pathlib
import sys

from skewfree.cli import run_command

ROOT = pathlib.Path(__file__).resolve().parent.parent


def run_case(case) -> str:
    """Run one CLI invocation from the repo root; return exit code, stdout and stderr as text."""
    out, err = io.StringIO(), io.StringIO()
    old_stdin, old_cwd = sys.stdin, os.getcwd()
    sys.stdin = io.StringIO(case.get("stdin", ""))
    os.chdir(ROOT)
    try:
        code = run_command(case["argv"], stdout=out, stderr=err)
    finally:
        sys.stdin = old_stdin
        os.chdir(old_cwd)
    return f"$ skewfree {' '.join(case['argv'])}\nexit: {code}\n--- stdout\n{out.getvalue()}--- stderr\n{err.getvalue()}"
