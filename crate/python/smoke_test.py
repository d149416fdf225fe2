#!/usr/bin/env python3
"""Smoke test for the cenalg_py extension module.

Builds nothing itself: run `cargo build -p cenalg-py` (or --release)
first. The script locates the compiled cdylib, stages it under the
importable name, and drives the main types and operations end to end.
"""

import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def stage_module() -> None:
    candidates = [
        ROOT / "target" / "release" / "libcenalg_py.so",
        ROOT / "target" / "debug" / "libcenalg_py.so",
        ROOT / "target" / "release" / "libcenalg_py.dylib",
        ROOT / "target" / "debug" / "libcenalg_py.dylib",
    ]
    built = next((c for c in candidates if c.exists()), None)
    if built is None:
        sys.exit("cenalg_py is not built; run: cargo build -p cenalg-py")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="cenalg_py_"))
    shutil.copy2(built, stage / "cenalg_py.so")
    sys.path.insert(0, str(stage))


stage_module()

import cenalg_py  # noqa: E402


def check(name: str, condition: bool) -> None:
    if not condition:
        sys.exit(f"FAIL: {name}")
    print(f"ok: {name}")


# canonical nilpotent of type (2,1) over Q: lower shift in the first block
a21 = cenalg_py.Matrix("q", [[0, 0, 0], [1, 0, 0], [0, 0, 0]])
check("jordan sizes of (2,1)", a21.jordan_sizes() == [2, 1])
check("nilpotency index", a21.nilpotency_index() == 2)
check("centralizer dimension 5", a21.centralizer_dimension() == 5)
check("structured basis size 5", a21.structured_basis_size() == 5)
cc = a21.centralizer_check()
check(
    "three routes agree",
    cc["brute"] == cc["structured"] == cc["formula"] == 5 and cc["spans_equal"],
)

# dimension formula helpers, including the quaternion factor 4
check("formula (2,1) over q", cenalg_py.dimension_formula_for([2, 1]) == 5)
check("formula (2,1) over hq", cenalg_py.dimension_formula_for([2, 1], "hq") == 20)
check("pi degree (2,2,1)", cenalg_py.pi_degree_for([2, 2, 1]) == 2)

# prime field
z2 = cenalg_py.Matrix("fp", [[0, 0], [0, 0]], p=5)
check("centralizer of 0 in M_2(F5)", z2.centralizer_dimension() == 4)
check("field tag", z2.field == "fp(5)")

# quaternions: canonical type (2,1), dimension 20 over the rational center
rows_hq = [
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
]
ah = cenalg_py.Matrix("hq", rows_hq)
check("quaternion centralizer dimension 20", ah.centralizer_dimension() == 20)

# structure report for type (2,2,1)
a221 = cenalg_py.Matrix(
    "q",
    [
        [0, 0, 0, 0, 0],
        [1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0],
    ],
)
report = json.loads(a221.structure_report_json())
check("total dim 13", report["total_dim"] == 13)
check("radical dim 8", report["radical_dim"] == 8)
check("pi degree 2", report["pi_degree"] == 2)
check("multiplicities", report["multiplicities"] == [[2, 2], [1, 1]])

# identity checks
std = json.loads(a221.standard_identity_json(trials=20, seed=0))
check("standard identity S_6 holds", std["identity"] == "S_6" and std["failures"] == [])
prod = json.loads(a221.product_identity_json(trials=20, seed=0))
check("product identity holds", prod["identity"] == "(S_4)^4" and prod["failures"] == [])

# polynomial membership: B = I + 2A for a single block
a3 = cenalg_py.Matrix("q", [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
b = cenalg_py.Matrix("q", [[1, 0, 0], [2, 1, 0], [0, 2, 1]])
check("membership recovers 1 + 2z", a3.polynomial_membership(b) == ["1", "2"])
check("indecomposable single block", a3.is_indecomposable())

# containment: Cen(J3) inside Cen(J3^2), certified by h = z^2
b3 = cenalg_py.Matrix("q", [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
contained, payload = a3.centralizer_subset_of(b3)
check("containment with h = z^2", contained and payload == ["0", "0", "1"])

# block swap on J2 + J2 is not contained; a witness comes back
a22 = cenalg_py.Matrix(
    "q",
    [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]],
)
swap = cenalg_py.Matrix(
    "q",
    [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
)
contained, witness = a22.centralizer_subset_of(swap)
check("block swap not contained", not contained and len(witness) == 4)

# split-spectrum reduction for a non-nilpotent matrix
d223 = cenalg_py.Matrix("q", [[2, 0, 0], [0, 2, 0], [0, 0, 3]])
check("split centralizer dimension", d223.centralizer_dimension() == 5)
check("non-nilpotent flag", not d223.is_nilpotent())

# errors surface as Python exceptions
try:
    d223.jordan_sizes()
    sys.exit("FAIL: jordan_sizes on a non-nilpotent matrix must raise")
except ValueError:
    print("ok: non-nilpotent input raises ValueError")

print("smoke test passed")
