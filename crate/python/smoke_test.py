"""Smoke test for the `gelfand` extension module.

Uses an installed module if there is one, otherwise builds the cdylib with
cargo and loads it from a temporary directory.
"""

import importlib
import json
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("gelfand")
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "--release", "-p", "gelfand-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libgelfand.so"
    tmp = Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "gelfand.so")
    sys.path.insert(0, str(tmp))
    return importlib.import_module("gelfand")


def main():
    g = load()

    assert g.weyl_dimension("B", [1, 0]) == 5
    assert g.weyl_dimension("D", [0, 1, 1]) == g.freudenthal_dimension("D", [0, 1, 1])

    for n in range(1, 5):
        assert g.Algebra.from_id(f"heis:{n}").pfaffian_polynomial() == ("z1" if n == 1 else f"z1^{n}")
    assert not g.Algebra.from_id("free:3").is_square_integrable()

    assert g.regular_norm_sq(1, 0) == Fraction(1, 2)
    quad, exact = g.gamma_moment(12)
    assert abs(quad - exact) <= 1e-10 * exact

    op = g.FockOperator(2.0, 0.5, [0.25j], 24)
    assert op.unitarity_defect(12) < 1e-8
    assert abs(op.entry([0], [0])) <= 1.0

    sp2 = g.GroupAction.from_row("kac:3", 2)
    assert sp2.is_multiplicity_free(4)

    ladder = g.Ladder.unitary([1, 2, 3, 4], 3)
    assert ladder.c_sq(4, 2) == Fraction(4, 20)
    assert g.zonal_constant_sq(3, 3, 4) == 1

    [report] = g.verify("zonal", rank=4, degree=3)
    data = json.loads(report)
    failed = [c for c in data["cases"] if c["status"] == "fail"]
    assert not failed, failed

    print("smoke test passed")


if __name__ == "__main__":
    main()
