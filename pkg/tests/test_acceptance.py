"""Acceptance criteria, one test each, with their runtime bounds.

Every test records a ``PASS``/``FAIL`` line in ``RESULTS``; the conftest hook
prints them at the end of the session.  ``python tests/test_acceptance.py``
runs the same checks standalone.
"""

import io
import json
import time
from contextlib import redirect_stdout

import pytest

from pnormpoly.cli import main as cli_main
from pnormpoly.norms import fuzz_theorem
from pnormpoly.suites import MELLIN_TOL, SuiteConfig, run_suite

# pinned tolerances and sizes
P_STEP = 0.05
RTOL = 1e-9
FUZZ_SAMPLES = 10_000
SEED = 42

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, elapsed: float, bound: float, detail: str):
    ok = ok and elapsed < bound
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail} "
                   f"({elapsed:.2f}s, bound {bound:g}s)")
    return ok


def suite_summary(*names, **cfg):
    t0 = time.perf_counter()
    checks = [c for name in names for c in run_suite(name, SuiteConfig(seed=SEED, **cfg))]
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c.passed]
    detail = f"{len(checks) - len(failed)}/{len(checks)} checks"
    if failed:
        detail += f"; first failure {failed[0].name} {failed[0].params} {failed[0].detail}"
    return not failed, elapsed, detail, checks


def test_01_golden_identity():
    ok, elapsed, detail, _ = suite_summary("golden")
    assert record(1, "golden G_{5,3} in the p-basis", ok, elapsed, 1, detail)


def test_02_degenerations():
    ok, elapsed, detail, _ = suite_summary("degenerations")
    assert record(2, "F_{k,1} = G_{k,0} = G_{k,1} = H_{k,1} = e_k, k<=6, n<=5",
                  ok, elapsed, 10, detail)


def test_03_route_agreement():
    ok, elapsed, detail, checks = suite_summary("routes", "zk-forms")
    explicit = sum("explicit" in c.detail for c in checks)
    assert record(3, "route agreement and three Z_k forms", ok, elapsed, 300,
                  f"{detail}, {explicit} with explicit enumeration")


def test_04_matrix_entries():
    ok, elapsed, detail, checks = suite_summary("matrix", matrices=20)
    dets = sum(c.name in ("delta_1 = det", "D_1 = det") and c.passed for c in checks)
    assert record(4, "entries = traces on 20 seeded matrices", ok, elapsed, 300,
                  f"{detail}, {dets} determinant degenerations")


def test_05_positivity():
    ok, elapsed, detail, _ = suite_summary("positivity")
    assert record(5, "coefficientwise nonnegativity and gradient identities",
                  ok, elapsed, 300, detail)


def test_06_mellin():
    ok, elapsed, detail, checks = suite_summary("mellin")
    worst = max(c.value for c in checks)
    ok = ok and worst < MELLIN_TOL
    assert record(6, "Mellin closed forms and a^p representation", ok, elapsed, 30,
                  f"{detail}, max relative error {worst:.2e} < {MELLIN_TOL:g}")


@pytest.mark.parametrize("family,r,n", [("F", 2, 3), ("G", 2, 4), ("H", 2, 3)])
def test_07_fuzzing(family, r, n):
    t0 = time.perf_counter()
    rep = fuzz_theorem(family, r, n, FUZZ_SAMPLES, seed=SEED, p_step=P_STEP, rtol=RTOL)
    elapsed = time.perf_counter() - t0
    detail = (f"family {family} r={r} n={n}: {rep.samples} pairs, {rep.checked} checked, "
              f"{len(rep.counterexamples)} counterexamples, min margin {rep.min_margin:.2e}")
    if rep.counterexamples:
        detail += f"; replay {rep.counterexamples[0]}"
    assert record(7, "theorem fuzzing", rep.passed and rep.samples >= 10_000, elapsed, 600,
                  detail)


def test_08_schur_ostrowski():
    ok, elapsed, detail, _ = suite_summary("schur-ostrowski", so_samples=100)
    assert record(8, "Schur-Ostrowski signs, 100 points per case", ok, elapsed, 120, detail)


def test_09_explorer():
    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(["explore-schur", "--family", "H", "--family", "e", "--k", "1-4",
                         "--r", "1-3", "--format", "json"])
    elapsed = time.perf_counter() - t0
    data = json.loads(buf.getvalue())
    h_rows = [row for row in data["table"] if row["family"] == "H"]
    ok = (code == 0 and data["summary"]["elementary_rows_exact"]
          and {(row["k"], row["r"]) for row in h_rows}
          == {(k, r) for k in range(1, 5) for r in range(1, 4)})
    assert record(9, "Schur explorer for H_{k,r}, k<=4, r<=3", ok, elapsed, 60,
                  f"{len(h_rows)} H rows, {data['summary']['negative']} negative "
                  f"(evidence, not proof); e_k rows exact")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
