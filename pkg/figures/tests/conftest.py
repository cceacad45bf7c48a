import subprocess
import sys

import pytest


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    """Default CSV outputs produced by the data pipeline's own CLI."""
    out = tmp_path_factory.mktemp("csv")
    for argv in (["kcbs"], ["ncycle"]):
        subprocess.run(
            [sys.executable, "-m", "ctxgeom.cli", *argv, "--out", str(out)],
            check=True,
        )
    return out
