"""Acceptance suite: every gate at its stated tolerance, one line per check."""
import time
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

import adet
from adet import (
    PrecisionContext,
    SearchBudget,
    adjacency_matrix,
    bloch_wigner,
    central_charge_probe,
    check_periodicity,
    compare_series,
    coxeter_number,
    dilog_sum_over_Splus,
    eta_like_product,
    f_abc,
    five_term_residual,
    iterate,
    parse_diagram,
    solve_all,
    solve_positive,
    torsion_check,
    wedge_form_residual,
)

from conftest import ACCEPT_PAIRS, pair, sample_points

CTX128 = PrecisionContext(mantissa_bits=128)
CTX256 = PrecisionContext(mantissa_bits=256)

PERIODICITY_PAIRS = ACCEPT_PAIRS + ["D4,A1", "E6,A1"]


def report(line):
    print(line, flush=True)


def test_criterion_1_torsion_over_all_solutions():
    # every multistart solution of every pair satisfies |sum_i D(x_i)| < 1e-18
    t0 = time.time()
    worst = mp.mpf(0)
    total = 0
    for label in ACCEPT_PAIRS:
        p = pair(label)
        sols = solve_all(p, SearchBudget(starts=2000, seed=0), CTX128)
        assert sols.solutions, f"no solutions found for {label}"
        rep = torsion_check(sols, CTX128)
        total += len(sols.solutions)
        worst = max(worst, max(r.residual for r in rep.records))
        assert rep.passed, (label, [r.residual for r in rep.records])
    elapsed = time.time() - t0
    report(f"ACCEPTANCE 1 (torsion criterion): PASS  "
           f"max |sum D(x)| = {mp.nstr(worst, 4)} over {total} solutions, {elapsed:.1f}s")
    assert elapsed < 300


def test_criterion_2_known_closed_forms():
    sols = solve_all(pair("A1,T1"), SearchBudget(starts=2000, seed=0), CTX128)
    assert len(sols.solutions) == 2
    with CTX128.workprec():
        got = sorted(mp.re(s.x[0]) for s in sols.solutions)
        expect = [(3 - mp.sqrt(5)) / 2, (3 + mp.sqrt(5)) / 2]
        err_all = max(abs(a - b) for a, b in zip(got, expect))
        assert all(abs(mp.im(s.x[0])) < 1e-25 for s in sols.solutions)
        assert err_all < 1e-25

        pos = solve_positive(pair("A1,A1"), CTX128)
        err_pos = abs(pos.x[0] - mp.mpf(1) / 2)
        assert err_pos < 1e-30
    report(f"ACCEPTANCE 2 (closed forms): PASS  A=[2] error {mp.nstr(err_all, 4)}, "
           f"A=[1] error {mp.nstr(err_pos, 4)}")


def test_criterion_3_periodicity():
    t0 = time.time()
    rng = np.random.default_rng(0)
    worst = 0.0
    for label in PERIODICITY_PAIRS:
        p = pair(label)
        for _ in range(20):
            y = list(rng.uniform(0.5, 2.0, p.n))
            traj = iterate(p, y, 2 * p.period, CTX256)
            rep = check_periodicity(traj, CTX256)
            worst = max(worst, rep.records[0].residual)
            assert rep.records[0].residual < 1e-25, label
    elapsed = time.time() - t0
    report(f"ACCEPTANCE 3 (periodicity): PASS  max residual {worst:.3e} "
           f"over {len(PERIODICITY_PAIRS)} pairs x 20 seeds, {elapsed:.1f}s")
    assert elapsed < 120


def test_criterion_4_wedge_and_multiplicity_control():
    rng = np.random.default_rng(1)
    worst = 0.0
    for label in PERIODICITY_PAIRS:  # every pair here has rank product <= 6
        p = pair(label)
        for pt in sample_points(p, 5, rng):
            w = wedge_form_residual(p, pt, CTX128)
            worst = max(worst, w.residual)
            assert w.residual < 1e-18, label
    # negative control: one multiplicity d lowered from 2 to 1 for (T1,T1),
    # in the two-point realization (the rank-1 single-point form is vacuous)
    p = pair("T1,T1")
    first = p.S_plus()[0]
    ok = wedge_form_residual(p, [1.3], CTX128, point_b=[0.7])
    bad = wedge_form_residual(p, [1.3], CTX128, point_b=[0.7], d_override={first: 1})
    assert ok.residual < 1e-18
    assert bad.residual > 1e-3
    report(f"ACCEPTANCE 4 (constancy/wedge): PASS  max residual {mp.nstr(mp.mpf(worst), 4)}; "
           f"(T1,T1) d-control {mp.nstr(bad.residual, 4)} > 1e-3")


def test_criterion_5_dilog_sum_vanishing():
    rng = np.random.default_rng(2)
    worst = mp.mpf(0)
    for label in ACCEPT_PAIRS:
        p = pair(label)
        for pt in sample_points(p, 10, rng):
            s = dilog_sum_over_Splus(p, pt, CTX128)
            worst = max(worst, abs(s))
            assert abs(s) < 1e-18, label
    report(f"ACCEPTANCE 5 (dilog-sum vanishing): PASS  max |sum| = {mp.nstr(worst, 4)}")


def test_criterion_6_functional_equations():
    rng = np.random.default_rng(3)
    worst_five = worst_refl = worst_inv = mp.mpf(0)
    with CTX128.workprec():
        for _ in range(1000):
            r = 2 * np.sqrt(rng.uniform(0, 1, 2))
            t = rng.uniform(0, 2 * np.pi, 2)
            x, y = (r * np.exp(1j * t)).tolist()
            worst_five = max(worst_five, five_term_residual(x, y, CTX128))
            if x != 0:
                xx = mp.mpc(x)  # derived arguments at working precision
                worst_refl = max(
                    worst_refl, abs(bloch_wigner(xx, CTX128) + bloch_wigner(1 - xx, CTX128))
                )
                worst_inv = max(
                    worst_inv, abs(bloch_wigner(xx, CTX128) + bloch_wigner(1 / xx, CTX128))
                )
    assert worst_five < 1e-30
    assert worst_refl < 1e-30
    assert worst_inv < 1e-30
    report(f"ACCEPTANCE 6 (functional equations): PASS  five-term {mp.nstr(worst_five, 4)}, "
           f"reflection {mp.nstr(worst_refl, 4)}, inversion {mp.nstr(worst_inv, 4)}")


def test_criterion_7_q_series_identities():
    t0 = time.time()
    rr1_sum = f_abc([[2]], [0], Fraction(-1, 60), 200)
    rr1_prod = eta_like_product({1, 4}, 5, 200, prefactor_exp=Fraction(-1, 60))
    rep1 = compare_series(rr1_sum, rr1_prod)
    assert rep1.passed and rr1_sum.prefactor_exp == Fraction(-1, 60)

    rr2_sum = f_abc([[2]], [1], Fraction(11, 60), 200)
    rr2_prod = eta_like_product({2, 3}, 5, 200, prefactor_exp=Fraction(11, 60))
    rep2 = compare_series(rr2_sum, rr2_prod)
    assert rep2.passed and rr2_sum.prefactor_exp == Fraction(11, 60)

    ag_sum = f_abc([[2, 2], [2, 4]], [0, 0], 0, 100)
    ag_prod = eta_like_product({1, 2, 5, 6}, 7, 100)
    rep3 = compare_series(ag_sum, ag_prod)
    assert rep3.passed
    elapsed = time.time() - t0
    report(f"ACCEPTANCE 7 (q-series identities): PASS  RR to q^200, AG to q^100, {elapsed:.1f}s")
    assert elapsed < 30


def test_criterion_8_central_charge_probe():
    expect = {"A1,A1": Fraction(1, 2), "A1,T1": Fraction(2, 5)}
    errs = {}
    for label, frac in expect.items():
        probe = central_charge_probe(pair(label), CTX128)
        assert probe.rational == frac
        assert probe.error < 1e-20
        errs[label] = probe.error
    report("ACCEPTANCE 8 (central charges): PASS  "
           + ", ".join(f"{k} -> {expect[k]} (err {mp.nstr(v, 3)})" for k, v in errs.items()))


def test_criterion_9_coxeter_consistency():
    names = (
        [f"A{n}" for n in range(1, 13)]
        + [f"D{n}" for n in range(2, 11)]
        + ["E6", "E7", "E8"]
        + [f"T{n}" for n in range(1, 9)]
    )
    worst = 0.0
    for name in names:
        d = parse_diagram(name)
        lam = np.linalg.eigvalsh(adjacency_matrix(d).to_float()).max()
        gap = abs(lam - 2 * np.cos(np.pi / coxeter_number(d)))
        worst = max(worst, gap)
        assert gap < 1e-10, name
    report(f"ACCEPTANCE 9 (Coxeter spectra): PASS  max gap {worst:.3e} over {len(names)} diagrams")
