import math
from itertools import product

import numpy as np
import pytest

import tasec.secrecy as secrecy
from tasec.channel import RngStream, Scenario
from tasec.errors import UnsupportedSchemeError
from tasec.secrecy import (AscEstimate, Method, asc_btas_closed,
                           asc_etas_closed, asc_otas_mc, asc_quadrature,
                           instantaneous_cs, mc_asc)
from tasec.selection import TasScheme

from oracles import asc_integral_oracle

# Single-antenna ASC at unit SNRs, frozen by high-precision evaluation of
# delta_e(1, 2)/ln 2 and cross-checked against the quadrature oracle below.
SINGLE_ANTENNA_UNIT_ASC = 0.33906037855497906
BTAS_M2_UNIT_ASC = 0.5349406657580305
ETAS_M2_UNIT_ASC = 0.4822404699069068

DB_GRID = (-10.0, 0.0, 10.0, 20.0, 30.0)


def scenario_db(gb_db, ge_db, m):
    return Scenario(10.0 ** (gb_db / 10.0), 10.0 ** (ge_db / 10.0), m)


# ----------------------------------------------------------------------------
# Instantaneous secrecy capacity and the estimate container
# ----------------------------------------------------------------------------

def test_instantaneous_cs_values():
    assert instantaneous_cs(5.0, 5.0) == 0.0
    assert instantaneous_cs(3.0, 1.0) == 1.0
    assert instantaneous_cs(1.0, 3.0) == 0.0
    assert instantaneous_cs(0.0, 0.0) == 0.0


@pytest.mark.parametrize("gb,ge", [(-1.0, 0.0), (0.0, -0.5),
                                   (float("nan"), 1.0), (1.0, float("inf"))])
def test_instantaneous_cs_domain(gb, ge):
    with pytest.raises(ValueError):
        instantaneous_cs(gb, ge)


def test_asc_estimate_invariants():
    with pytest.raises(ValueError):
        AscEstimate(-0.1, Method.CLOSED)
    with pytest.raises(ValueError):
        AscEstimate(1.0, Method.MC)  # missing trials/std_error
    with pytest.raises(ValueError):
        AscEstimate(1.0, Method.MC, trials=10, std_error=-1.0)
    with pytest.raises(ValueError):
        AscEstimate(1.0, Method.CLOSED, trials=10)
    est = AscEstimate(1.0, Method.MC, trials=10, std_error=0.1)
    assert est.method is Method.MC


# ----------------------------------------------------------------------------
# Closed forms
# ----------------------------------------------------------------------------

def test_closed_form_reference_values():
    assert asc_btas_closed(Scenario(1.0, 1.0, 1)).value == pytest.approx(
        SINGLE_ANTENNA_UNIT_ASC, rel=1e-12)
    assert asc_btas_closed(Scenario(1.0, 1.0, 2)).value == pytest.approx(
        BTAS_M2_UNIT_ASC, rel=1e-12)
    assert asc_etas_closed(Scenario(1.0, 1.0, 2)).value == pytest.approx(
        ETAS_M2_UNIT_ASC, rel=1e-12)


def test_closed_forms_coincide_at_single_antenna():
    for gb_db, ge_db in product(DB_GRID, DB_GRID):
        scenario = scenario_db(gb_db, ge_db, 1)
        assert abs(asc_btas_closed(scenario).value
                   - asc_etas_closed(scenario).value) <= 1e-14


def test_etas_factor_m_identity():
    for gb_db, ge_db, m in product(DB_GRID, DB_GRID, (1, 2, 4, 8)):
        scenario = scenario_db(gb_db, ge_db, m)
        folded = Scenario(scenario.gamma_b0, scenario.gamma_e0 / m, 1)
        assert abs(asc_etas_closed(scenario).value
                   - asc_etas_closed(folded).value) <= 1e-14


def test_etas_factor_m_against_unit_reference():
    # M=8 with an 8x stronger eavesdropper folds back onto the unit case
    assert asc_etas_closed(Scenario(1.0, 8.0, 8)).value == pytest.approx(
        SINGLE_ANTENNA_UNIT_ASC, rel=1e-12)


def test_closed_form_monotonicity_on_grid():
    for closed in (asc_btas_closed, asc_etas_closed):
        for m in (1, 2, 4, 8):
            for ge_db in DB_GRID:
                values = [closed(scenario_db(g, ge_db, m)).value for g in DB_GRID]
                assert all(b >= a for a, b in zip(values, values[1:]))
            for gb_db in DB_GRID:
                values = [closed(scenario_db(gb_db, g, m)).value for g in DB_GRID]
                assert all(b <= a for a, b in zip(values, values[1:]))
        for gb_db, ge_db in product(DB_GRID, DB_GRID):
            values = [closed(scenario_db(gb_db, ge_db, m)).value for m in (1, 2, 4, 8)]
            assert all(b >= a for a, b in zip(values, values[1:]))


def test_btas_antenna_cap():
    with pytest.raises(ValueError):
        asc_btas_closed(Scenario(1.0, 1.0, 65))
    # at the cap the alternating sum still evaluates (conditioning is the
    # caller's problem out there); well inside it the sum stays accurate
    assert asc_btas_closed(Scenario(1.0, 1.0, 64)).value >= 0.0
    scenario = Scenario(1.0, 1.0, 16)
    assert asc_btas_closed(scenario).value == pytest.approx(
        asc_quadrature(scenario, TasScheme.BTAS).value, abs=1e-6)


def test_closed_forms_match_independent_oracle():
    for gb_db, ge_db, m in product((-10.0, 0.0, 20.0), (-10.0, 0.0, 20.0), (1, 4)):
        scenario = scenario_db(gb_db, ge_db, m)
        gb, ge = scenario.gamma_b0, scenario.gamma_e0
        btas_oracle = asc_integral_oracle(
            lambda x: -math.expm1(-x / ge),
            lambda x: 1.0 - (-math.expm1(-x / gb)) ** m)
        etas_oracle = asc_integral_oracle(
            lambda x: -math.expm1(-(m / ge) * x),
            lambda x: math.exp(-x / gb))
        assert asc_btas_closed(scenario).value == pytest.approx(btas_oracle, abs=1e-9)
        assert asc_etas_closed(scenario).value == pytest.approx(etas_oracle, abs=1e-9)


# ----------------------------------------------------------------------------
# Quadrature route
# ----------------------------------------------------------------------------

def test_quadrature_random_unit_reference():
    est = asc_quadrature(Scenario(1.0, 1.0, 3), TasScheme.RANDOM)
    assert est.method is Method.QUAD and est.trials is None
    assert est.value == pytest.approx(SINGLE_ANTENNA_UNIT_ASC, abs=1e-9)


def test_quadrature_matches_closed_forms():
    scenario = Scenario(1.0, 1.0, 2)
    assert asc_quadrature(scenario, TasScheme.ETAS).value == pytest.approx(
        asc_etas_closed(scenario).value, abs=1e-8)
    assert asc_quadrature(scenario, TasScheme.BTAS).value == pytest.approx(
        asc_btas_closed(scenario).value, abs=1e-8)


def test_quadrature_rejects_otas():
    with pytest.raises(UnsupportedSchemeError):
        asc_quadrature(Scenario(1.0, 1.0, 2), TasScheme.OTAS)


def test_quadrature_dominant_eavesdropper_vanishes():
    est = asc_quadrature(Scenario(1.0, 1e9, 2), TasScheme.BTAS)
    assert est.value < 1e-6


def test_quadrature_random_independent_of_antennas():
    values = [asc_quadrature(Scenario(10.0, 2.0, m), TasScheme.RANDOM).value
              for m in (1, 2, 8)]
    assert abs(values[0] - values[1]) <= 1e-12
    assert abs(values[0] - values[2]) <= 1e-12


# ----------------------------------------------------------------------------
# Monte Carlo route
# ----------------------------------------------------------------------------

def test_mc_trials_validation():
    with pytest.raises(ValueError):
        mc_asc(Scenario(1.0, 1.0, 2), TasScheme.BTAS, 1, RngStream(1))


def test_mc_random_gains_nothing_from_antennas():
    one = mc_asc(Scenario(10.0, 1.0, 1), TasScheme.RANDOM, 1_000_000, RngStream(3, 0))
    many = mc_asc(Scenario(10.0, 1.0, 8), TasScheme.RANDOM, 1_000_000, RngStream(3, 1))
    combined = math.hypot(one.std_error, many.std_error)
    assert abs(one.value - many.value) <= 4.0 * combined


def test_mc_matches_etas_closed_form():
    scenario = Scenario(10.0, 10.0, 2)
    est = mc_asc(scenario, TasScheme.ETAS, 1_000_000, RngStream(42, 5))
    assert est.trials == 1_000_000 and est.std_error > 0.0
    assert abs(est.value - asc_etas_closed(scenario).value) <= 4.0 * est.std_error


def test_mc_no_legitimate_snr_no_secrecy():
    est = mc_asc(Scenario(1e-9, 1.0, 2), TasScheme.OTAS, 10_000, RngStream(9))
    assert est.value < 1e-8


def test_mc_thread_count_does_not_change_result():
    scenario = Scenario(10.0, 3.0, 4)
    serial = mc_asc(scenario, TasScheme.OTAS, 200_000, RngStream(7, 2), threads=1)
    parallel = mc_asc(scenario, TasScheme.OTAS, 200_000, RngStream(7, 2), threads=8)
    assert serial.value == parallel.value
    assert serial.std_error == parallel.std_error


def test_mc_deterministic_for_fixed_stream():
    scenario = Scenario(10.0, 3.0, 4)
    a = mc_asc(scenario, TasScheme.RANDOM, 70_000, RngStream(21, 0))
    b = mc_asc(scenario, TasScheme.RANDOM, 70_000, RngStream(21, 0))
    assert a.value == b.value and a.std_error == b.std_error


def test_otas_mc_single_antenna_matches_closed():
    scenario = Scenario(10.0, 10.0, 1)
    est = asc_otas_mc(scenario, 1_000_000, RngStream(42, 11))
    assert abs(est.value - asc_btas_closed(scenario).value) <= 4.0 * est.std_error


def test_otas_mc_dominates_closed_forms():
    scenario = Scenario(10.0, 10.0, 8)
    est = asc_otas_mc(scenario, 1_000_000, RngStream(42, 12))
    btas = asc_btas_closed(scenario).value
    etas = asc_etas_closed(scenario).value
    assert est.value >= max(btas, etas) - 4.0 * est.std_error
    # at this operating point the optimum is visibly above both
    assert est.value - max(btas, etas) > 4.0 * est.std_error


def test_btas_sign_fault_hook_breaks_agreement(monkeypatch):
    from tasec.verification import check_closed_vs_quadrature

    scenario = Scenario(1.0, 1.0, 2)
    healthy = asc_btas_closed(scenario).value
    monkeypatch.setattr(secrecy, "_BTAS_TERM_SIGN", -1.0)
    assert asc_btas_closed(scenario).value != healthy
    assert not check_closed_vs_quadrature().passed
    monkeypatch.setattr(secrecy, "_BTAS_TERM_SIGN", 1.0)
    assert asc_btas_closed(scenario).value == healthy
