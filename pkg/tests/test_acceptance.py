"""Acceptance criteria AC1-AC9, one reported line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also written straight to the terminal when output is captured.
"""

import time
from itertools import combinations

import pytest

from qbvlab import psi
from qbvlab.feyn.complexes import build_afeyn_qbv, build_feyn_bv, top_weight
from qbvlab.feyn.phi import compare_cohomology, verify_phi, verify_phiE_truncated
from qbvlab.fmorph import delta_star, f_image, verify_f_range
from qbvlab.linalg import verify_d_squared
from qbvlab.qbv import QElement, make_u, verify_homotopy_relations

CASES = [(0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (2, 0), (2, 1)]
WEIGHTS = (0, 2)


def report(capsys, tag, ok, detail, t0):
    line = f"{tag} {'PASS' if ok else 'FAIL'}  {detail}  ({time.perf_counter() - t0:.1f}s)"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


@pytest.fixture(scope="module")
def complexes():
    out = {}
    for g, n in CASES:
        for W in WEIGHTS:
            out[g, n, W] = (build_feyn_bv(g, n, W), build_afeyn_qbv(g, n, top_weight(g, n) - W))
    return out


def test_ac1_d_squared(capsys, complexes):
    t0 = time.perf_counter()
    bad = [k for k, (s, t) in complexes.items() if not (verify_d_squared(s) and verify_d_squared(t))]
    report(capsys, "AC1", not bad, f"{2 * len(complexes)} complexes, failing {bad}", t0)


def test_ac2_homotopy_relations(capsys):
    t0 = time.perf_counter()
    rep = verify_homotopy_relations(8, 3, 4)
    counts = ", ".join(f"{a}:{c}" for a, c in sorted(rep.checked.items()))
    report(capsys, "AC2", rep.passed, f"tuples by relation arity {counts}", t0)


def test_ac3_recursions(capsys):
    t0 = time.perf_counter()
    res = psi.verify_recursions(8, 4)
    ok = all(failed == 0 and checked > 0 for checked, failed in res.values())
    report(capsys, "AC3", ok, ", ".join(f"{k} {c}/{f} failed" for k, (c, f) in res.items()), t0)


def test_ac4_p_identity(capsys):
    t0 = time.perf_counter()
    checked, bad = 0, []
    for n in range(3, 8):
        A = tuple(range(1, n + 1))
        for i, j in combinations(A, 2):
            for pair in ((i, j), (j, i)):
                checked += 1
                if not psi.check_p_identity(A, *pair):
                    bad.append((n, pair))
    report(capsys, "AC4", not bad, f"{checked} (A, i, j) checked, failing {bad}", t0)


def test_ac5_chain_map(capsys):
    t0 = time.perf_counter()
    res = verify_f_range(7)
    bad = [n for n, r in res.items() if not all(r.values())]
    report(capsys, "AC5", not bad, f"arities {min(res)}..{max(res)}, failing {bad}", t0)


def test_ac6_edge_complex(capsys):
    t0 = time.perf_counter()
    rep = verify_phiE_truncated(6)
    ok = rep.passed and set(rep.strata) == set(range(6)) and all(rep.cone_kernels[n] for n in range(6))
    report(capsys, "AC6", ok, f"dim H by stratum {rep.strata}", t0)


def test_ac7_cohomology_tables(capsys, complexes):
    t0 = time.perf_counter()
    bad, tables = [], []
    for (g, n, W), (s, t) in complexes.items():
        cmp_ = compare_cohomology(g, n, W, source=s, target=t)
        tables.append(f"({g},{n})W{W}:{cmp_.source}")
        if not cmp_.equal:
            bad.append((g, n, W))
    report(capsys, "AC7", not bad, f"failing {bad}; " + " ".join(tables), t0)


def test_ac8_phi(capsys, complexes):
    t0 = time.perf_counter()
    bad = []
    for (g, n, W), (s, t) in complexes.items():
        rep = verify_phi(g, n, W, source=s, target=t)
        if not (rep.chain_map and rep.weight):
            bad.append((g, n, W))
    report(capsys, "AC8", not bad, f"{len(complexes)} cases, failing {bad}", t0)


def test_ac9_printed_values(capsys):
    t0 = time.perf_counter()
    p3 = psi.p_polynomial(3).render()
    p4 = psi.p_polynomial(4).render()
    sign, u = make_u(1, 1, 2)
    f_delta = f_image(delta_star(1, 2)) == QElement.basis(u, sign)
    tau = psi.tau_bracket((3,))
    ok = p3 == "1" and p4 == "-(v1+v2+v3+v4)" and f_delta and tau == 1
    report(capsys, "AC9", ok, f"p_3={p3} p_4={p4} f(Delta*)=u:{f_delta} <tau_0^3>={tau}", t0)
