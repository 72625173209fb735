from dataclasses import replace
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

import adet
from adet import check_periodicity, constant_residual, iterate, monomial_sign, y_step
from adet.errors import DegenerateInput, DegenerateStep, WindowTooShort

from conftest import ACCEPT_PAIRS, all_pairs_up_to, pair


def test_y_step_hand_value_a1t1(ctx128):
    # single-variable recurrence with the T1 loop: Y(u+1) = [1/(1+1/Y(u))] / Y(u-1)
    out = y_step(pair("A1,T1"), [1.0], [1.0], ctx128)
    assert abs(out[0] - mp.mpf(1) / 2) < 1e-30


def test_y_step_hand_value_a1a1(ctx128):
    # both adjacency matrices vanish: Y(u+1) = 1/Y(u-1)
    out = y_step(pair("A1,A1"), [1.0], [2.0], ctx128)
    assert abs(out[0] - 1) < 1e-30
    out = y_step(pair("A1,A1"), [4.0], [0.3], ctx128)
    assert abs(out[0] - mp.mpf(1) / 4) < 1e-30


def test_y_step_constant_solution_is_fixed_point(ctx128):
    # golden-ratio fixed points: y^2 + y = 1 for (A1,T1), y^2 = 1 + y for (T1,A1)
    with ctx128.workprec():
        y = (mp.sqrt(5) - 1) / 2
        out = y_step(pair("A1,T1"), [y], [y], ctx128)
        assert abs(out[0] - y) < 1e-30
        phi = (1 + mp.sqrt(5)) / 2
        out = y_step(pair("T1,A1"), [phi], [phi], ctx128)
        assert abs(out[0] - phi) < 1e-30


def test_y_step_degenerate_inputs(ctx128):
    p = pair("A1,T1")
    with pytest.raises(DegenerateStep):
        y_step(p, [1.0], [0.0], ctx128)  # inverse of zero
    with pytest.raises(DegenerateStep):
        y_step(p, [0.0], [1.0], ctx128)  # divide by Y(u-1) = 0
    with pytest.raises(DegenerateStep):
        y_step(pair("A2,A1"), [1.0, 1.0], [-1.0, 1.0], ctx128)  # 1 + Y = 0


def test_iterate_windows_and_values(ctx128):
    p = pair("A1,A1")
    traj = iterate(p, [1.0], 32, ctx128)
    for u in range(-1, 33):
        v = traj.value(0, u)
        assert mp.isfinite(v) and v != 0
    # closed form: Y(u+1) = 1/Y(u-1) from Y(-1)=1/y, Y(0)=y
    traj = iterate(p, [2.0], 8, ctx128)
    expect = {-1: 0.5, 0: 2, 1: 2, 2: 0.5, 3: 0.5, 4: 2, 5: 2, 6: 0.5, 7: 0.5, 8: 2}
    for u, v in expect.items():
        assert abs(traj.value(0, u) - v) < 1e-30


def test_iterate_random_positive_seeds(ctx128, rng):
    p = pair("A2,A1")
    y = list(rng.uniform(0.5, 2.0, p.n))
    traj = iterate(p, y, 2 * p.period, ctx128)
    assert traj.u_max == 20
    for (k, u), v in traj.values.items():
        assert mp.isfinite(v) and v != 0


def test_iterate_zero_seed_raises(ctx128):
    with pytest.raises(DegenerateStep):
        iterate(pair("A1,A1"), [0.0], 4, ctx128)


def test_decoupling_bit_identical(ctx128, rng):
    # P+ values never read the opposite-parity copy
    p = pair("A2,A1")
    y = list(rng.uniform(0.5, 2.0, p.n))
    other = list(rng.uniform(0.5, 2.0, p.n))
    t1 = iterate(p, y, p.period, ctx128)
    t2 = iterate(p, y, p.period, ctx128, y_minus=other)
    for (k, u), v in t1.values.items():
        if p.in_P_plus(k, u):
            assert t2.values[(k, u)] == v  # bitwise equal
    assert any(
        t2.values[(k, u)] != v for (k, u), v in t1.values.items() if not p.in_P_plus(k, u)
    )


def test_y_minus_rejected_for_tadpole(ctx128):
    with pytest.raises(ValueError):
        iterate(pair("A1,T1"), [1.0], 4, ctx128, y_minus=[2.0])


def test_backward_step_recovers_previous(ctx128, rng):
    # the recurrence is symmetric in Y(u-1) <-> Y(u+1)
    for label in ("A1,T1", "A2,A1", "A2,T2"):
        p = pair(label)
        y = list(rng.uniform(0.5, 2.0, p.n))
        traj = iterate(p, y, 6, ctx128)
        lv = lambda u: [traj.value(k, u) for k in range(p.n)]
        back = y_step(p, lv(4), lv(3), ctx128)
        with ctx128.workprec():
            worst = max(abs(a - b) for a, b in zip(back, lv(2)))
        assert worst < ctx128.tau_eq


@pytest.mark.parametrize("label,period", [("A1,A1", 8), ("A1,T1", 10), ("A2,T2", 16)])
def test_periodicity_named_pairs(label, period, ctx128, rng):
    p = pair(label)
    assert p.period == period
    for _ in range(3):
        y = list(rng.uniform(0.5, 2.0, p.n))
        traj = iterate(p, y, 2 * p.period, ctx128)
        rep = check_periodicity(traj, ctx128)
        assert rep.passed, rep.records[0].residual_str
        assert rep.records[0].residual < 1e-25


def test_periodicity_window_too_short(ctx128):
    p = pair("A1,A1")
    traj = iterate(p, [1.3], p.period - 1, ctx128)
    with pytest.raises(WindowTooShort):
        check_periodicity(traj, ctx128)


@pytest.mark.slow
def test_periodicity_sweep_all_supported_pairs(ctx256):
    # every supported pair with rank product <= 8, 20 random seeds, 256 bits
    rng = np.random.default_rng(77)
    for label in all_pairs_up_to(8):
        p = pair(label)
        for _ in range(20):
            y = list(rng.uniform(0.5, 2.0, p.n))
            traj = iterate(p, y, 2 * p.period, ctx256)
            rep = check_periodicity(traj, ctx256)
            assert rep.records[0].residual < 1e-25, (label, rep.records[0].residual_str)


def test_monomial_sign_examples(ctx128):
    p = pair("A1,A1")
    assert monomial_sign(p, 0, 0, ctx128) == 1  # Y(0) = y itself
    assert monomial_sign(p, 0, 2, ctx128) == -1  # Y(2) = 1/y
    with pytest.raises(ValueError):
        monomial_sign(p, 0, 1, ctx128)  # (0,1) not in P+
    with pytest.raises(ValueError):
        monomial_sign(p, 0, 99, ctx128)  # outside the S+ window


# frozen from the epsilon-limit runs; cross-checked against the central-charge
# rationals below (count of negatives / per-index appearances in S+)
NEG_COUNTS = {
    "A1,A1": (2, 4),
    "A1,T1": (4, 10),
    "A1,T2": (8, 14),
    "A2,A1": (6, 5),
    "A2,T1": (12, 12),
    "A1,A2": (4, 5),
    "A3,A1": (12, 6),
    "T1,T1": (6, 12),
}


@pytest.mark.parametrize("label", ACCEPT_PAIRS)
def test_monomial_sign_counts(label, ctx128):
    p = pair(label)
    signs = [monomial_sign(p, k, u, ctx128) for (k, u) in p.S_plus()]
    assert all(s in (-1, 1) for s in signs)
    neg, per_index = NEG_COUNTS[label]
    assert sum(1 for s in signs if s == -1) == neg
    assert len(p.S_plus()) // p.n == per_index


@pytest.mark.parametrize("label", ACCEPT_PAIRS)
def test_monomial_count_matches_central_charge(label, ctx128):
    # sum_i L(x_i)/L(1) at the positive solution equals (# negative monomials
    # per index window); ties the sign structure to the dilogarithm identity
    neg, per_index = NEG_COUNTS[label]
    probe = adet.central_charge_probe(pair(label), ctx128)
    assert probe.rational == Fraction(neg, per_index)


@pytest.mark.slow
def test_monomial_sign_never_unstable_small_pairs(ctx128):
    # classification is monotone across the epsilon schedule for rr' <= 6
    for label in all_pairs_up_to(6):
        p = pair(label)
        picks = p.S_plus()[:: max(1, len(p.S_plus()) // 12)]
        for (k, u) in picks:
            assert monomial_sign(p, k, u, ctx128) in (-1, 1), (label, k, u)


def test_escalation_on_extreme_magnitudes():
    # deep-epsilon seeds push |Y| past 1e30, forcing the 256-bit re-run
    p = pair("A1,T2")
    ctx = replace(adet.DEFAULT_CONTEXT, degeneracy_tol=0.0)
    traj = iterate(p, [1e-8] * p.n, p.period - 1, ctx)
    assert traj.precision_bits == 256


def test_constant_residual_values(ctx128):
    with ctx128.workprec():
        p = pair("A1,A1")
        assert constant_residual(p, [1.0], ctx128) < 1e-30
        assert abs(constant_residual(p, [2.0], ctx128) - 3) < 1e-30
        y = (mp.sqrt(5) - 1) / 2
        assert constant_residual(pair("A1,T1"), [y], ctx128) < 1e-25
        phi = (1 + mp.sqrt(5)) / 2
        assert constant_residual(pair("T1,A1"), [phi], ctx128) < 1e-25


def test_constant_residual_solver_outputs(ctx128):
    for label in ("A1,T1", "A2,A1", "A1,T2"):
        p = pair(label)
        sol = adet.solve_positive(p, ctx128)
        assert constant_residual(p, list(sol.y), ctx128) < ctx128.tau_res


def test_constant_residual_degenerate_inputs(ctx128):
    p = pair("A2,A1")
    with pytest.raises(DegenerateInput):
        constant_residual(p, [0.0, 1.0], ctx128)
    with pytest.raises(DegenerateInput):
        constant_residual(p, [1.0, -1.0], ctx128)


def test_trajectory_json_dump(ctx128):
    p = pair("A2,A1")
    traj = iterate(p, [1.0, 1.5], 4, ctx128)
    obj = traj.to_json_obj()
    assert obj["pair"] == "A2,A1"
    assert obj["u"] == list(range(-1, 5))
    assert set(obj["values"]) == {"(0,0)", "(1,0)"}
    assert all(len(v) == 6 for v in obj["values"].values())
    assert all(len(entry) == 2 for v in obj["values"].values() for entry in v)
