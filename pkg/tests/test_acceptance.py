"""
Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as the
criteria complete.  The statistical criteria use pinned seeds; the long
sweep (criterion 9) takes on the order of 15 minutes.
"""

import itertools
import time

import numpy as np
import pytest

from isingdec.harness import (
    ExperimentConfig,
    run_ber_sweep,
    wilson_interval,
)
from isingdec.ising import (
    IsingHyperParams,
    analyze_resources,
    build_from_generator,
    build_from_parity,
    complete_chain_spins,
    energy,
    gadget_value,
    multilinear_objective,
)
from isingdec.ldpc import build_code
from isingdec.oracles import (
    check_gadget,
    check_reduction,
    toy_generator_vs_ml,
    toy_parity_vs_ml,
    toy_sa_vs_exhaustive,
)

CODE_SEED = 1
MASTER_SEED = 0

PARITY_TABLE = {16: 112, 32: 224, 64: 448, 128: 896, 256: 1792,
                512: 3584, 1024: 7168}
GEN_TABLE_SPINS = {16: 45, 32: 169, 64: 733}
GEN_TABLE_DEGREE = {16: 9, 32: 26, 64: 51}


def _report(num, ok, detail, elapsed, budget):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"[{status}] criterion {num}: {detail} ({elapsed:.1f}s / "
          f"budget {budget:.0f}s)")
    assert ok, f"criterion {num}: {detail}"
    assert elapsed < budget, f"criterion {num} over budget: {elapsed:.1f}s"


def test_criterion_01_parity_table_exact():
    t0 = time.perf_counter()
    got = {}
    ok = True
    for n, want in PARITY_TABLE.items():
        res = analyze_resources(build_code(n, 8, 4, CODE_SEED), "parity")
        got[n] = (res["num_spins"], res["max_degree"])
        ok &= res["num_spins"] == want and res["max_degree"] == 12
    _report(1, ok, f"parity spins/degree {got}", time.perf_counter() - t0, 10)


def test_criterion_02_parity_alternate_setting():
    t0 = time.perf_counter()
    res = analyze_resources(build_code(1024, 4, 2, CODE_SEED), "parity")
    ok = res["num_spins"] == 3072 and res["max_degree"] == 6
    _report(2, ok, f"(1024, w_r=4, w_c=2) -> {res['num_spins']} spins, "
            f"degree {res['max_degree']}", time.perf_counter() - t0, 5)


def test_criterion_03_generator_within_tolerance():
    t0 = time.perf_counter()
    ok = True
    details = []
    for n in (16, 32, 64):
        res = analyze_resources(build_code(n, 8, 4, CODE_SEED), "generator")
        s_lo, s_hi = 0.80 * GEN_TABLE_SPINS[n], 1.20 * GEN_TABLE_SPINS[n]
        d_lo, d_hi = 0.70 * GEN_TABLE_DEGREE[n], 1.30 * GEN_TABLE_DEGREE[n]
        ok &= s_lo <= res["num_spins"] <= s_hi
        ok &= d_lo <= res["max_degree"] <= d_hi
        ok &= res["formula_spins"] > 0 and res["formula_degree"] > 0
        details.append(f"n={n}: {res['num_spins']} spins "
                       f"(formula {res['formula_spins']}), "
                       f"degree {res['max_degree']} "
                       f"(formula {res['formula_degree']:.1f})")
    _report(3, ok, "; ".join(details), time.perf_counter() - t0, 10)


def test_criterion_04_gadget_soundness():
    t0 = time.perf_counter()
    suite = check_gadget()
    # value set over the 16 combinations: {0, 1} as minima plus other
    # non-negative values
    values = sorted({gadget_value(*combo)
                     for combo in itertools.product((1, -1), repeat=4)})
    ok = suite.passed and values[0] == 0.0 and all(v >= 0 for v in values)
    _report(4, ok, f"{suite.detail}; value set {values}",
            time.perf_counter() - t0, 1)


def test_criterion_05_reduction_soundness():
    t0 = time.perf_counter()
    suite = check_reduction(lengths=(3, 4, 5), weight_factor=2.2)
    _report(5, suite.passed, suite.detail, time.perf_counter() - t0, 10)


def test_criterion_11_energy_identity():
    t0 = time.perf_counter()
    code = build_code(8, 4, 2, CODE_SEED)
    rng = np.random.default_rng(MASTER_SEED)
    r = rng.normal(0.5, 0.5, code.n)
    lam = 0.7
    params = IsingHyperParams(lambda_parity=lam, lambda_penalty=0.9)
    gen = build_from_generator(code, r, params)
    par = build_from_parity(code, r, params)
    worst = 0.0
    for _ in range(1000):
        sg = rng.choice([-1, 1], size=code.m).astype(np.int8)
        eg = energy(gen, complete_chain_spins(gen, code, sg, "generator"))
        worst = max(worst, abs(eg - multilinear_objective(code, r, sg,
                                                          "generator")))
        sp = rng.choice([-1, 1], size=code.n).astype(np.int8)
        ep = energy(par, complete_chain_spins(par, code, sp, "parity"))
        worst = max(worst, abs(ep - multilinear_objective(code, r, sp,
                                                          "parity", lam)))
    _report(11, worst <= 1e-9, f"worst |E - objective| = {worst:.2e} "
            f"over 1000 assignments per formulation",
            time.perf_counter() - t0, 10)


def test_criterion_06_parity_ground_states_match_ml():
    t0 = time.perf_counter()
    res = toy_parity_vs_ml(blocks=100, master_seed=MASTER_SEED)
    ok = res["ml_agree"] >= 95 and res["parity_satisfied"] == 100
    _report(6, ok, f"ML agreement {res['ml_agree']}/100, parity satisfied "
            f"{res['parity_satisfied']}/100", time.perf_counter() - t0, 300)


def test_criterion_07_generator_ground_states_match_ml():
    t0 = time.perf_counter()
    res = toy_generator_vs_ml(blocks=100, master_seed=MASTER_SEED)
    _report(7, res["ml_agree"] == 100, f"ML agreement {res['ml_agree']}/100",
            time.perf_counter() - t0, 300)


def test_criterion_08_sa_reaches_ground_state():
    t0 = time.perf_counter()
    res = toy_sa_vs_exhaustive(blocks=100, master_seed=MASTER_SEED)
    _report(8, res["ground_hits"] >= 90,
            f"ground-state hits {res['ground_hits']}/100",
            time.perf_counter() - t0, 120)


def test_criterion_10_noiseless_sanity():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(
        n=32, w_r=8, w_c=4, code_seed=CODE_SEED,
        decoders=("bp", "threshold", "ml-brute", "ising-parity", "ising-gen"),
        ebn0_start=60.0, ebn0_stop=60.0, ebn0_step=1.0, blocks=50,
        master_seed=MASTER_SEED)
    records = run_ber_sweep(cfg)
    bers = {rec.decoder: rec.ber for rec in records}
    ok = len(records) == 5 and all(b == 0.0 for b in bers.values())
    _report(10, ok, f"BER at 60 dB: {bers}", time.perf_counter() - t0, 300)


def test_criterion_09_short_code_ordering():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(
        n=32, w_r=8, w_c=4, code_seed=CODE_SEED,
        decoders=("threshold", "bp", "ml-brute", "ising-parity", "ising-gen"),
        ebn0_start=0.0, ebn0_stop=5.0, ebn0_step=1.0, blocks=300,
        master_seed=MASTER_SEED)
    records = run_ber_sweep(cfg)
    by = {(rec.decoder, rec.ebn0_db): rec for rec in records}
    ok = True
    details = []
    for point in (4.0, 5.0):
        bp = by[("bp", point)]
        ml = by[("ml-brute", point)]
        par = by[("ising-parity", point)]
        lo, hi = wilson_interval(bp.bit_errors, bp.bits_total)
        half = (hi - lo) / 2
        ok_ml = ml.ber <= bp.ber
        ok_par = par.ber <= bp.ber + half
        ok &= ok_ml and ok_par
        details.append(
            f"{point:.0f} dB: ml {ml.ber:.2e} <= bp {bp.ber:.2e} "
            f"[{'ok' if ok_ml else 'VIOLATED'}], ising-parity {par.ber:.2e} "
            f"<= bp + {half:.1e} [{'ok' if ok_par else 'VIOLATED'}]")
    _report(9, ok, "; ".join(details), time.perf_counter() - t0, 3600)


def test_criterion_12_scale_smoke_1024():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(
        n=1024, w_r=8, w_c=4, code_seed=CODE_SEED,
        decoders=("threshold", "ising-parity"),
        ebn0_start=5.0, ebn0_stop=5.0, ebn0_step=1.0, blocks=100,
        master_seed=MASTER_SEED,
        sa_sweeps=1000, sa_restarts=8)
    records = run_ber_sweep(cfg)
    by = {rec.decoder: rec for rec in records}
    par, thr = by["ising-parity"], by["threshold"]
    ok = par.ber < thr.ber
    _report(12, ok, f"n=1024 @5dB over {par.blocks} blocks: ising-parity "
            f"{par.ber:.4f} < threshold {thr.ber:.4f}",
            time.perf_counter() - t0, 7200)
