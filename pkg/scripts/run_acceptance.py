"""Run the acceptance suite, one printed pass/fail line per criterion."""

import os
import subprocess
import sys

HERE = os.path.dirname(os.path.abspath(__file__))

if __name__ == "__main__":
    sys.exit(
        subprocess.call(
            [sys.executable, "-m", "pytest", os.path.join(HERE, "..", "tests", "test_acceptance.py"), "-q", "-s"]
        )
    )
