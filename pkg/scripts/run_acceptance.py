#!/usr/bin/env python3
"""Run the acceptance suite and show its PASS/FAIL lines."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    args = [str(ROOT / "tests" / "test_acceptance.py"), "-v", "-p", "no:cacheprovider", *sys.argv[1:]]
    sys.exit(pytest.main(args))
