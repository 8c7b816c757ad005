#!/usr/bin/env python3
"""
Test runner script for dynirr.

    python run_tests.py                 # whole suite
    python run_tests.py coverage        # whole suite with coverage of src/dynirr
    python run_tests.py quick           # exact-arithmetic layers only
    python run_tests.py slow            # whole suite plus the full parameter grids
    python run_tests.py unifam certify  # selected parts
    python run_tests.py tests/test_cli.py::TestCommandLine
"""

import os
import sys
import subprocess
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent
TESTS = PROJECT_ROOT / "tests"

# part name -> test module, in dependency order
PARTS = {
    "core": "test_core.py",
    "parsers": "test_parsers.py",
    "zpoly": "test_zpoly.py",
    "fppoly": "test_fppoly.py",
    "families": "test_families.py",
    "unifam": "test_unifam.py",
    "certify": "test_certify.py",
    "oracle": "test_oracle.py",
    "cli": "test_cli.py",
    "acceptance": "test_acceptance.py",  # skipped unless DYNIRR_SLOW is set
}

QUICK_PARTS = ["core", "parsers", "zpoly", "fppoly"]


def banner(title: str):
    print("=" * 70)
    print(f"dynirr - {title}")
    print("=" * 70)
    print()


def pytest_command(targets, coverage: bool = False):
    cmd = [sys.executable, "-m", "pytest", *targets, "-v", "--tb=short", "--color=yes", "-ra"]
    if coverage:
        cmd += ["--cov=src/dynirr", "--cov-report=term-missing", "--cov-report=html"]
    return cmd


def run(targets, title: str, coverage: bool = False, slow: bool = False) -> int:
    banner(title)
    cmd = pytest_command(targets, coverage)
    print(f"Running: {' '.join(cmd)}")
    print()

    env = dict(os.environ)
    if slow:
        env["DYNIRR_SLOW"] = "1"
    result = subprocess.run(cmd, cwd=PROJECT_ROOT, env=env)

    print()
    print("=" * 70)
    if result.returncode == 0:
        print("✓ All tests passed!")
        if coverage:
            print(f"✓ Coverage report generated: {PROJECT_ROOT}/htmlcov/index.html")
    else:
        print("✗ Some tests failed!")
    print("=" * 70)
    return result.returncode


def resolve(args):
    """Map part names to test files; anything else is passed to pytest unchanged."""
    targets = []
    for arg in args:
        if arg in PARTS:
            targets.append(str(TESTS / PARTS[arg]))
        else:
            targets.append(arg)
    return targets


def main(argv) -> int:
    if not argv:
        return run([str(TESTS)], "Test Suite")
    if argv[0] == "coverage":
        return run(resolve(argv[1:]) or [str(TESTS)], "Test Suite with Coverage", coverage=True)
    if argv[0] == "quick":
        return run(resolve(QUICK_PARTS), "Exact Arithmetic Tests")
    if argv[0] == "slow":
        return run(resolve(argv[1:]) or [str(TESTS)], "Full Parameter Grids", slow=True)
    if argv[0] in ("-h", "--help", "parts"):
        print(__doc__)
        print("parts: " + ", ".join(PARTS))
        return 0
    return run(resolve(argv), "Selected Tests")


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
