#!/usr/bin/env python3
"""Smoke test for the tenspec_py extension module.

Usage:
    cargo build -p tenspec-py
    python3 python/smoke_test.py

The script locates the built cdylib under target/, imports it under the
module name tenspec_py, and exercises each exported function once.
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_extension():
    candidates = []
    for profile in ("debug", "release"):
        for name in ("libtenspec_py.so", "tenspec_py.so", "libtenspec_py.dylib"):
            candidates.append(ROOT / "target" / profile / name)
    for path in candidates:
        if path.exists():
            return path
    sys.exit("extension not found; run `cargo build -p tenspec-py` first")


def main():
    lib = locate_extension()
    with tempfile.TemporaryDirectory() as tmp:
        shutil.copy(lib, pathlib.Path(tmp) / "tenspec_py.so")
        sys.path.insert(0, tmp)
        import tenspec_py as ts

        # Drazin inverse of diag(J2(0), [4]): index 2, inverse diag(0, 0, 1/4).
        a = [[0, 1, 0], [0, 0, 0], [0, 0, 4]]
        dec = ts.drazin(a)
        assert dec["index"] == 2, dec
        assert abs(dec["drazin"][2][2] - 0.25) < 1e-12, dec["drazin"]
        assert max(dec["residuals"].values()) <= 1e-8, dec["residuals"]
        assert ts.index(a) == 2
        assert ts.pole_order(a, 4) == 1
        assert ts.pole_order(a, 0) == 2

        # Defective eigenvalue: single pole of order 2 at 3.
        cls = ts.classify([[3, 1], [0, 3]])
        (point,) = cls["points"]
        assert point["tag"] == "pole" and point["order"] == 2, cls
        assert abs(point["value"][0] - 3) < 1e-7

        # Symbolic tensor product: accumulation at zero propagates.
        rep = ts.tensor(
            {"points": [{"value": [1, 0], "tag": "pole", "order": 1}]},
            {
                "points": [
                    {"value": [0, 0], "tag": "acc"},
                    {"value": [1, 0], "tag": "pole", "order": 1},
                ]
            },
        )
        assert rep["zero"]["status"] == "ACC", rep["zero"]
        assert rep["equality_holds"] is True

        # Elementary operator with diagonal factors: spectrum {3, 6}.
        el = ts.elementary([[1, 0], [0, 2]], [[3]])
        assert el["spectrum_matched"] is True, el
        assert el["probe_residual"] <= 1e-10
        values = sorted(
            (entry["value"] for entry in el["operator_spectrum"]),
            key=lambda z: (z.real, z.imag),
        )
        assert [round(z.real) for z in values] == [3, 6], values

        # Every verification suite passes a short run.
        for suite in ("drazin", "matrix-tensor", "elementary", "symbolic"):
            out = ts.verify(suite, trials=20, seed=5)
            assert out["failed"] == 0, out

        # Bad input raises instead of crashing.
        try:
            ts.drazin([[1, 2]])
        except RuntimeError:
            pass
        else:
            raise AssertionError("expected an error for a non-square matrix")

    print("tenspec_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
