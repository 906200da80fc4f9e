#!/usr/bin/env python3
"""Smoke test for the tqftrep_py extension module.

Builds the cdylib with cargo, loads it, and exercises the main types and
operations: exact scalars, recoupling coefficients, path bases, generator
matrices, relation verification, image analysis and the numeric
cross-check.
"""

import math
import pathlib
import shutil
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "tqftrep-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libtqftrep_py.so"
    target = pathlib.Path(__file__).resolve().parent / "tqftrep_py.so"
    shutil.copy2(built, target)
    sys.path.insert(0, str(target.parent))
    import tqftrep_py

    return tqftrep_py


def main():
    t = build_and_import()
    print(f"loaded {t.__name__}")

    th = t.Theory(20)
    assert repr(th) == "Theory(m=20, s=1, r_eff=5, color_max=3)"
    assert th.r_eff == 5 and th.color_max == 3

    # Exact scalar arithmetic.
    a = th.a()
    assert a.pow(20).is_one() and not a.pow(4).is_one()
    assert (a * a.inv()).is_one()
    assert a.conj() == a.pow(-1)
    assert a.root_of_unity_order() == 20
    one_plus_a = a + th.qnum(1)
    assert one_plus_a.root_of_unity_order() is None

    # Quantum integers and recoupling values.
    q2 = th.qnum(2)
    assert abs(q2.embed(1) - 2 * math.cos(math.pi / 5)) < 1e-12
    assert th.theta(1, 1, 0) == -q2
    assert th.theta(1, 1, 2) == th.qnum(3)
    assert th.twist_coeff(0, 1, 1) == -th.a_pow(-3)
    assert th.twist_coeff(2, 1, 1) == th.a_pow(1)
    assert th.admissible(1, 1, 2) and not th.admissible(1, 1, 1)
    th40 = t.Theory(40)
    for col in range(0, th40.color_max - 1):
        assert th40.sixj(col, 1, 2, 1, col + 2, col + 1).is_one()

    # Path bases and generator matrices.
    assert th.path_basis(3, 1) == [[0, 1, 0, 1], [0, 1, 2, 1]]
    assert th.path_basis(4, 2) == [[0, 1, 0, 1, 2], [0, 1, 2, 1, 2], [0, 1, 2, 3, 2]]
    g1 = th.rep_matrix(3, 1, gen=1)
    g2 = th.rep_matrix(3, 1, gen=2)
    assert g1.dim == 2
    assert g1.entry(0, 0) == th.q()  # q on the lex-first path
    lhs = g1.mul(g2).mul(g1)
    rhs = g2.mul(g1).mul(g2)
    assert all(
        lhs.entry(i, j) == rhs.entry(i, j) for i in range(2) for j in range(2)
    ), "braid relation"
    w = th.rep_matrix(3, 1, word="g1 g2^-1 g2 g1^-1")
    assert w.as_scalar().is_one()

    # Serialization round-trip is bit-exact.
    js = g2.to_json()
    assert '"variant":"rhoTilde"' in js and '"m":20' in js

    ok, report = th.verify_relations(4, 2) if th.color_max >= 2 else (True, "")
    assert ok, report

    # Image analysis: infinite at r=5, finite closure at r=4.
    assert th.generator_orders(3, 1) == [10, 10]
    order = th.rep_matrix(3, 1, word="g1 g2^-1").projective_order()
    assert order is None, "g1 g2^-1 has certified infinite projective order"
    th16 = t.Theory(16)
    assert th16.bfs_closure(3, 1, 100000) == 24
    assert th.bfs_closure(3, 1, 2000) is None
    th40b = t.Theory(40)
    assert th40b.irreducible(4, 2) == "irreducible"

    # Dehn twist scalar and Galois action.
    assert th.dehn_twist_scalar(0).is_one()
    assert th.dehn_twist_scalar(1) == -th.a_pow(3)
    th3 = t.Theory(20, 3)
    assert th.theta(2, 2, 2).galois(3) == th3.theta(2, 2, 2)

    # Numeric cross-check.
    passed, dev = th.rt_compare(3, 1, trials=50, max_len=10, seed=11)
    assert passed, f"trace deviation {dev}"

    print("smoke test passed")


if __name__ == "__main__":
    main()
