"""Smoke test for the endotriv Python extension.

Build and install with `pip install --no-build-isolation ./crates/py`
(needs maturin), then run `python python/smoke_test.py`.
"""

import json
import pathlib
import sys

import endotriv

ROOT = pathlib.Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"


def check(name, cond):
    print(("ok   " if cond else "FAIL ") + name)
    return cond


def main():
    results = []

    report, ambiguous = endotriv.compute_t((PROBLEMS / "sl2z_f4.json").read_text())
    factors = json.loads(report)["answer"]["determined"]["invariant_factors"]
    results.append(check("SL(2,Z) over F4 is Z/6", factors == [6] and not ambiguous))

    _, ambiguous = endotriv.compute_t((PROBLEMS / "hnn_c3_inversion_f3.json").read_text())
    results.append(check("HNN(C3, inversion) over F3 is ambiguous", ambiguous))

    try:
        endotriv.compute_t("{")
        results.append(check("malformed input raises", False))
    except ValueError:
        results.append(check("malformed input raises", True))

    results.append(check("Omega k over F2 Q8 is endotrivial", endotriv.is_endotrivial("Q8", "F2")))
    results.append(check("tate_h0(C6, F3) = 1", endotriv.tate_h0("C6", "F3") == 1))
    results.append(check("tate_h0(C3, F2) = 0", endotriv.tate_h0("C3", "F2") == 0))
    snf = endotriv.smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    results.append(check("SNF invariant factors", snf == ["2", "6", "12"]))
    results.append(check("T(C4) over F4 is Z/2", endotriv.t_group("C4", "F4")[1] == [2]))

    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
