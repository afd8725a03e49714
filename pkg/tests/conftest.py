import subprocess
import sys

import pytest


@pytest.fixture
def run_cli(tmp_path):
    """Run the CLI in a subprocess, returning (exit_code, stdout, stderr)."""

    def _run(*argv, cwd=None):
        proc = subprocess.run(
            [sys.executable, "-m", "mublp", *[str(a) for a in argv]],
            capture_output=True,
            text=True,
            cwd=cwd or tmp_path,
        )
        return proc.returncode, proc.stdout, proc.stderr

    return _run
