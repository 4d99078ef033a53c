#!/usr/bin/env python3
"""
Test runner script for congruence-lab

Runs each test category in its own pytest process and prints a summary.
"""

import subprocess
import sys
from pathlib import Path

TEST_CATEGORIES = [
    ("Arithmetic", "test_arith.py"),
    ("Power Series", "test_series.py"),
    ("Sequence Engines", "test_sequences.py"),
    ("Identities", "test_identities.py"),
    ("Oracles", "test_oracles.py"),
    ("Congruence Checks", "test_congruences.py"),
    ("Command Line", "test_cli.py"),
    ("Edge Cases", "test_edge_cases.py"),
    ("Integration Tests", "test_integration.py"),
]


def run_tests():
    """Run all test categories and return True when every one passes"""

    project_root = Path(__file__).parent
    tests_dir = project_root / "tests"

    print("congruence-lab - Test Runner")
    print("=" * 50)

    try:
        import pytest

        print(f"Using pytest from: {pytest.__file__}")
    except ImportError:
        print("ERROR: pytest not found. Please install with:")
        print("pip install -e .[dev]")
        return False

    results = {}
    overall_success = True

    for category, test_file in TEST_CATEGORIES:
        print(f"\n--- Running {category} ---")
        test_path = tests_dir / test_file

        if not test_path.exists():
            print(f"WARNING: Test file not found: {test_path}")
            results[category] = "MISSING"
            continue

        try:
            result = subprocess.run(
                [sys.executable, "-m", "pytest", str(test_path), "-v", "--tb=short"],
                capture_output=True,
                text=True,
                cwd=project_root,
            )
        except Exception as e:
            print(f"✗ {category}: ERROR - {e}")
            results[category] = f"ERROR: {e}"
            overall_success = False
            continue

        if result.returncode == 0:
            print(f"✓ {category}: PASSED")
            results[category] = "PASSED"
        else:
            print(f"✗ {category}: FAILED")
            print("STDOUT:", result.stdout[-500:])
            print("STDERR:", result.stderr[-500:])
            results[category] = "FAILED"
            overall_success = False

    print("\n" + "=" * 50)
    print("TEST SUMMARY")
    print("=" * 50)

    for category, outcome in results.items():
        status_symbol = "✓" if outcome == "PASSED" else "✗"
        print(f"{status_symbol} {category}: {outcome}")

    if overall_success:
        print("\nAll tests passed!")
    else:
        print("\nSome tests failed. Check output above for details.")
    return overall_success


def run_coverage():
    """Run the whole suite under pytest-cov"""

    print("\n" + "=" * 50)
    print("RUNNING WITH COVERAGE")
    print("=" * 50)

    try:
        import pytest_cov  # noqa: F401
    except ImportError:
        print("pytest-cov not found. Install with:")
        print("pip install -e .[dev]")
        return False

    result = subprocess.run(
        [
            sys.executable,
            "-m",
            "pytest",
            "--cov=congruence_lab",
            "--cov-report=term-missing",
            "--cov-report=html:htmlcov",
            "tests/",
            "-v",
        ],
        cwd=Path(__file__).parent,
    )

    if result.returncode == 0:
        print("\n✓ Tests passed with coverage report generated")
        print("HTML coverage report: htmlcov/index.html")
        return True
    print("\n✗ Tests with coverage failed")
    return False


def main():
    if len(sys.argv) > 1 and sys.argv[1] == "--coverage":
        success = run_coverage()
    else:
        success = run_tests()

    print("\nTo run specific tests:")
    print("  pytest tests/test_sequences.py -v")
    print("  pytest tests/test_congruences.py::TestSpotValues -v")
    print("  pytest tests/ -k 'discrepancy' -v")
    print("  pytest tests/ -m \"not slow\" -v")
    print("\nTo run with coverage:")
    print("  python run_tests.py --coverage")

    return success


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
