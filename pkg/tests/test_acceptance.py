"""Acceptance checks, one test per criterion.

Every comparison is exact (integer or term-map equality; byte equality for
JSON).  Runtime budgets are asserted alongside.
"""
import time

import pytest

from conftest import ACCEPTANCE
from golden import example_1112, example_1121
from grassmann_lg import laurent
from grassmann_lg.invariants import run_sweep, sweep_specs
from grassmann_lg.iseries import iseries
from grassmann_lg.periods import check_period, constant_terms_of_powers
from grassmann_lg.quiver import ModelSpec, decompose
from grassmann_lg.superpotential import closed_form, eliminate
from grassmann_lg.weights import action_matrix, weight_table

SPEC_1121 = ModelSpec(3, 3, (1, 1, 2, 1))
SPEC_1112 = ModelSpec(3, 3, (1, 1, 1, 2))
GOLDEN = (1, 12, 756, 78960, 10451700, 1587790512, 263964176784, 46763681545152,
          8685492699286260)


def record(number, label, passed):
    ACCEPTANCE.setdefault(number, []).append((label, bool(passed)))
    assert passed, label


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def test_criterion_1_action_matrices():
    am, secs = timed(lambda: action_matrix(weight_table(decompose(SPEC_1121))))
    record(1, "M exact", am.M == ((1, 1, 2, 1), (0, 1, 2, 1), (0, 0, 1, 1), (0, 0, 0, 1)))
    record(1, "Minv exact", am.Minv == ((1, -1, 0, 0), (0, 1, -2, 1), (0, 0, 1, -1), (0, 0, 0, 1)))
    record(1, f"time {secs:.2f}s < 1s", secs < 1)


@pytest.mark.parametrize("spec, oracle", [(SPEC_1121, example_1121), (SPEC_1112, example_1112)],
                         ids=["1121", "1112"])
def test_criterion_2_golden_superpotentials(spec, oracle):
    f, secs = timed(eliminate, decompose(spec))
    g, secs_closed = timed(closed_form, spec)
    tag = "".join(map(str, spec.degrees))
    record(2, f"{tag} eliminate = example", f == oracle(f.variables.names))
    record(2, f"{tag} closed_form = eliminate", g == f)
    record(2, f"{tag} time {secs:.2f}s/{secs_closed:.2f}s < 1s", secs < 1 and secs_closed < 1)


def test_criterion_3_iseries():
    series, secs = timed(iseries, ModelSpec(3, 3, (2, 1, 1, 1)), 8)
    record(3, "prefix through t^8 exact", series.coefficients == GOLDEN)
    record(3, f"time {secs:.2f}s < 1s", secs < 1)


@pytest.mark.parametrize("spec", [SPEC_1121, SPEC_1112], ids=["1121", "1112"])
def test_criterion_4_period_condition(spec):
    tag = "".join(map(str, spec.degrees))
    report4, secs4 = timed(check_period, spec, 4)
    record(4, f"{tag} N=4 in {secs4:.1f}s <= 60s", report4.match and secs4 <= 60)
    report5, secs5 = timed(check_period, spec, 5)
    record(4, f"{tag} N=5 match", report5.match and report5.lhs.coefficients == GOLDEN[:6])
    record(4, f"{tag} N=5 in {secs5:.1f}s <= 600s", secs5 <= 600)


def test_criterion_5_small_periods():
    specs = list(sweep_specs(max_n=3, max_k=3, max_l=2))
    start = time.perf_counter()
    bad = [str(s) for s in specs if not check_period(s, 4).match]
    secs = time.perf_counter() - start
    record(5, f"{len(specs) - len(bad)}/{len(specs)} specs match through N=4", not bad)
    record(5, f"time {secs:.1f}s <= 600s", secs <= 600)


def test_criterion_6_property_sweep():
    specs = list(sweep_specs(max_n=4, max_k=4, max_l=3))
    report, secs = timed(run_sweep, specs, seed=0, points=20)
    for name, (passed, total) in report.summary().items():
        record(6, f"{name} {passed}/{total}", passed == total)
    record(6, f"{len(specs)} specs in {secs:.0f}s <= 300s", secs <= 300)


def test_criterion_7_worker_determinism(monkeypatch):
    dec = decompose(SPEC_1121)
    f = eliminate(dec)
    # drop the threshold so the bigint kernel really fans out to processes
    monkeypatch.setattr(laurent, "PARALLEL_THRESHOLD", 1000)
    outputs = {w: (eliminate(dec, workers=w).to_json(),
                   constant_terms_of_powers(f, 4, workers=w).to_json(),
                   laurent.mul(laurent.power(f, 3), f, workers=w, kernel="bigint").to_json())
               for w in (1, 4, 8)}
    ref = outputs[1]
    for w in (4, 8):
        record(7, f"eliminate JSON workers={w}", outputs[w][0] == ref[0])
        record(7, f"period JSON workers={w}", outputs[w][1] == ref[1])
        record(7, f"parallel product JSON workers={w}", outputs[w][2] == ref[2])
