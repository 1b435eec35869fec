import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name, args, expect", [
    ("reproduce_theorem.py", ["-K", "8"], "verdict: purely AC (balanced weights)"),
    ("root_n_scan.py", ["--kmax", "6"], "signs,N,ratio,upper_bound_ratio"),
    ("compare_periods.py", ["--max-period", "1", "-K", "8"], "purely AC"),
])
def test_script_runs(name, args, expect):
    proc = subprocess.run([sys.executable, str(SCRIPTS / name), *args], capture_output=True, text=True, check=True)
    assert expect in proc.stdout
