import math

import numpy as np
import pytest
from scipy.optimize import brentq

from bicm.core.asymptotics import alpha_bicm, alpha_cm
from bicm.core.capacity import (
    CapacityInverter,
    awgn_capacity,
    awgn_snr,
    bicm_capacity,
    bicm_capacity_mc,
    bicm_capacity_via_difference,
    bit_level_conditional_ami,
    bit_level_rates,
    capacity_curve,
    capacity_function,
    cm_capacity,
    degenerate_bit_levels,
    f_awgn,
    f_curve,
    g_awgn,
    invert_capacity,
    labeling_crossover,
    min_ebn0,
    resolve_quadrature,
    snr_gap,
)
from bicm.core.constants import LOG2E, REFERENCE_CROSSOVERS_8PAM
from bicm.core.constellations import Constellation, from_db, pam, psk, to_db
from bicm.core.labelings import brgc, bsgc, fbc, nbc
from bicm.errors import DomainError, RangeError
from bicm.models import BitDistribution, ChannelSpec, QuadratureSpec


def test_awgn_closed_forms() -> None:
    assert awgn_capacity(1.0) == pytest.approx(0.5 * math.log2(3.0))
    assert awgn_capacity(1.0, dimension=2) == pytest.approx(1.0)
    assert awgn_snr(awgn_capacity(3.7)) == pytest.approx(3.7)
    assert to_db(f_awgn(0.05)) == pytest.approx(-1.441, abs=1e-3)
    h = 1e-6
    numeric = (f_awgn(0.8 + h) - f_awgn(0.8 - h)) / (2 * h)
    assert g_awgn(0.8) == pytest.approx(numeric, rel=1e-6)


def test_binary_input_saturates(quad: QuadratureSpec) -> None:
    bpsk = Constellation(pam(2), nbc(1))
    assert cm_capacity(bpsk, from_db(20.0), quad) == pytest.approx(1.0, abs=1e-6)
    assert bicm_capacity(bpsk, 1.0, quad) == pytest.approx(cm_capacity(bpsk, 1.0, quad), abs=1e-12)
    assert cm_capacity(bpsk, 0.0, quad) == 0.0


def test_bicm_forms_and_chain_rule(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), brgc(3))
    snr = from_db(5.0)
    direct = bicm_capacity(constellation, snr, quad)
    assert bicm_capacity_via_difference(constellation, snr, quad) == pytest.approx(direct, abs=1e-10)
    levels = bit_level_rates(constellation, snr, quad)
    assert sum(levels["bicm"]) == pytest.approx(direct, abs=1e-10)
    cm = cm_capacity(constellation, snr, quad)
    assert sum(levels["chain"]) == pytest.approx(cm, abs=1e-10)
    assert bit_level_conditional_ami(constellation, snr, 0, quad) == pytest.approx(levels["chain"][0], abs=1e-12)
    assert direct <= cm + 1e-12
    with pytest.raises(DomainError):
        bit_level_conditional_ami(constellation, snr, 3, quad)


def test_nbc_loses_more_than_brgc_at_high_snr(quad: QuadratureSpec) -> None:
    snr = from_db(15.0)
    assert bicm_capacity(Constellation(pam(8), brgc(3)), snr, quad) > bicm_capacity(
        Constellation(pam(8), nbc(3)), snr, quad
    )


def test_monte_carlo_agrees_with_quadrature(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), brgc(3))
    snr = from_db(5.0)
    estimate = bicm_capacity_mc(constellation, snr, samples=200_000, seed=7)
    assert estimate.stderr > 0.0
    assert abs(estimate.value - bicm_capacity(constellation, snr, quad)) <= 4.0 * estimate.stderr + 1e-6


def test_quadrature_converges_at_low_snr() -> None:
    constellation = Constellation(psk(8), brgc(3))
    snr = from_db(-5.0)
    coarse = bicm_capacity(constellation, snr, QuadratureSpec(nodes=24))
    fine = bicm_capacity(constellation, snr, QuadratureSpec(nodes=64))
    assert coarse == pytest.approx(fine, rel=1e-6)


@pytest.mark.parametrize("labeling", [brgc(3), nbc(3), fbc(3)])
def test_low_snr_slope_matches_coefficient(labeling, quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), labeling)
    snr = 1e-3
    assert bicm_capacity(constellation, snr, quad) / snr == pytest.approx(alpha_bicm(constellation).alpha, rel=0.01)
    assert cm_capacity(constellation, snr, quad) / snr == pytest.approx(alpha_cm(constellation).alpha, rel=0.01)


def test_bsgc_slope_vanishes(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), bsgc(3))
    assert bicm_capacity(constellation, 1e-3, quad) / 1e-3 < 0.01


def test_degenerate_levels_contribute_nothing(quad: QuadratureSpec) -> None:
    shaped = Constellation(pam(8), brgc(3), bits=BitDistribution(p0=(0.5, 1.0, 1.0)))
    assert degenerate_bit_levels(shaped) == [(1, 1), (2, 1)]
    antipodal = Constellation(pam(2), nbc(1))
    snr = from_db(0.0)
    # the surviving pair is an antipodal binary input
    assert bicm_capacity(shaped, snr, quad) == pytest.approx(cm_capacity(antipodal, snr, quad), abs=1e-10)


def test_inversion(quad: QuadratureSpec) -> None:
    inverter = CapacityInverter(capacity_function(None, "awgn"))
    assert inverter.invert(1.0) == pytest.approx(awgn_snr(1.0), rel=1e-10)
    assert invert_capacity(lambda s: awgn_capacity(s), 2.0) == pytest.approx(awgn_snr(2.0), rel=1e-10)
    bicm = CapacityInverter(capacity_function(Constellation(pam(8), brgc(3)), "bicm", quad))
    with pytest.raises(RangeError):
        bicm.invert(3.5)
    with pytest.raises(DomainError, match="Rc > 0"):
        bicm.invert(0.0)
    snr = bicm.invert(1.5)
    assert bicm_capacity(Constellation(pam(8), brgc(3)), snr, quad) == pytest.approx(1.5, abs=1e-9)


def test_capacity_curve_points(quad: QuadratureSpec) -> None:
    curve = capacity_curve(Constellation(pam(4), brgc(2)), "bicm", [-5.0, 0.0, 5.0], quad=quad)
    assert [p.snr_db for p in curve.points] == pytest.approx([-5.0, 0.0, 5.0])
    rates = [p.rate for p in curve.points]
    assert rates == sorted(rates)
    assert curve.points[1].ebn0 == pytest.approx(1.0 / rates[1])


def test_f_curve_and_fading(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), brgc(3))
    plain = f_curve(constellation, "bicm", [0.5, 1.0], quad=quad)
    faded = f_curve(constellation, "bicm", [0.5, 1.0], quad=quad, channel=ChannelSpec(fading_second_moment=2.0))
    assert to_db(plain.zero_rate_ebn0 or 0.0) == pytest.approx(-0.41, abs=0.005)
    for a, b in zip(plain.points, faded.points, strict=True):
        assert b.ebn0 == pytest.approx(a.ebn0 / 2.0)
    assert plain.points[0].ebn0_db > -0.41


def test_awgn_f_curve_limit() -> None:
    curve = f_curve(None, "awgn", [0.05, 1.0])
    assert curve.points[0].ebn0_db == pytest.approx(to_db(f_awgn(0.05)), abs=1e-9)
    assert curve.zero_rate_ebn0 == pytest.approx(1.0 / LOG2E)


def test_brgc_minimum_is_at_zero_rate(quad: QuadratureSpec) -> None:
    result = min_ebn0(Constellation(pam(8), brgc(3)), "bicm", np.geomspace(1e-3, 2.5, 40), quad=quad)
    assert result.at_zero_rate
    assert result.rate == 0.0
    assert result.ebn0_db == pytest.approx(-0.41, abs=0.005)


def test_bsgc_minimum_is_interior(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), bsgc(3))
    inverter = CapacityInverter(capacity_function(constellation, "bicm", quad))
    assert to_db(inverter.invert(0.01) / 0.01) > 5.0
    result = min_ebn0(constellation, "bicm", np.geomspace(1e-2, 2.5, 40), quad=quad)
    assert not result.at_zero_rate
    assert result.interior_roots
    assert 0.0 < result.rate < 2.5
    assert math.isfinite(result.ebn0_db)


def test_zero_rate_gap(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), brgc(3))
    assert snr_gap(constellation, "bicm", 0.0, quad=quad).gap_db == pytest.approx(1.18, abs=0.01)
    assert snr_gap(Constellation(pam(8), bsgc(3)), "bicm", 0.0).gap == math.inf
    positive = snr_gap(constellation, "bicm", 1.0, quad=quad)
    assert positive.gap > 1.0
    with pytest.raises(DomainError):
        snr_gap(constellation, "bicm", -1.0)


@pytest.mark.parametrize(("pair", "rate"), list(REFERENCE_CROSSOVERS_8PAM.items()))
def test_eight_pam_labeling_crossovers(pair: tuple[str, str], rate: float, quad: QuadratureSpec) -> None:
    builders = {"nbc": nbc, "fbc": fbc, "brgc": brgc}
    first, second = (builders[name](3) for name in pair)
    crossings = labeling_crossover(Constellation(pam(8), first), first, second, quad=quad)
    assert any(abs(c.rate - rate) <= 0.02 for c in crossings)


@pytest.mark.parametrize("snr", [10.0, 100.0])
def test_doubling_nodes_leaves_rates_unchanged(snr: float) -> None:
    constellation = Constellation(pam(8), brgc(3))
    assert resolve_quadrature(constellation, snr).nodes >= 128
    for capacity in (cm_capacity, bicm_capacity):
        default = capacity(constellation, snr)
        doubled = capacity(constellation, snr, QuadratureSpec(nodes=128))
        assert abs(default - doubled) < 1e-9


def test_fixed_high_order_rule_is_finite() -> None:
    constellation = Constellation(pam(8), brgc(3))
    fixed = cm_capacity(constellation, 100.0, QuadratureSpec(nodes=400, adaptive=False))
    assert math.isfinite(fixed)
    assert fixed == pytest.approx(cm_capacity(constellation, 100.0), abs=1e-8)


def test_quadrature_is_resolved_once_per_input() -> None:
    constellation = Constellation(pam(8), brgc(3))
    assert resolve_quadrature(constellation, 0.0).nodes == 64
    assert not resolve_quadrature(constellation, 10.0).adaptive
    sampled = QuadratureSpec(method="monte-carlo", samples=1000)
    assert resolve_quadrature(constellation, 10.0, sampled) is sampled
    fixed = QuadratureSpec(nodes=32, adaptive=False)
    assert resolve_quadrature(constellation, 10.0, fixed) is fixed


@pytest.mark.parametrize(("alphabet", "nodes"), [(pam(8), 256), (psk(8), 64)])
@pytest.mark.parametrize("snr", [1.0, 10.0])
def test_cm_capacity_ignores_the_labeling(alphabet, nodes: int, snr: float) -> None:
    quad = QuadratureSpec(nodes=nodes, adaptive=False)
    labelings = (brgc(3), nbc(3), bsgc(3), fbc(3))
    rates = [cm_capacity(Constellation(alphabet, labeling), snr, quad) for labeling in labelings]
    assert max(rates) - min(rates) <= 1e-10


@pytest.mark.parametrize("alphabet", [pam(8), psk(8)])
def test_cm_capacity_stays_below_awgn(alphabet) -> None:
    constellation = Constellation(alphabet, brgc(3))
    for db in np.arange(-10.0, 25.0 + 1e-9, 5.0):
        snr = from_db(float(db))
        assert cm_capacity(constellation, snr) < awgn_capacity(snr, alphabet.dimension)


@pytest.mark.parametrize(
    "constellation",
    [
        Constellation(pam(8), brgc(3)),
        Constellation(pam(8), nbc(3), bits=BitDistribution(p0=(0.3, 0.6, 0.45))),
        Constellation(psk(8), fbc(3)),
    ],
)
@pytest.mark.parametrize("snr", [0.1, 1.0, 10.0])
def test_direct_and_difference_bicm_forms_agree(constellation: Constellation, snr: float) -> None:
    assert bicm_capacity_via_difference(constellation, snr) == pytest.approx(
        bicm_capacity(constellation, snr), abs=1e-8
    )


def test_eight_psk_fbc_low_snr_slope() -> None:
    constellation = Constellation(psk(8), fbc(3))
    snr = 1e-3
    assert bicm_capacity(constellation, snr) / snr == pytest.approx(alpha_bicm(constellation).alpha, rel=0.01)


@pytest.mark.parametrize("seed", [3, 5, 8])
def test_monte_carlo_agrees_for_random_distributions(seed: int) -> None:
    rng = np.random.default_rng(seed)
    p0 = tuple(float(p) for p in rng.uniform(0.2, 0.8, size=3))
    alphabet = pam(8) if seed % 2 else psk(8)
    constellation = Constellation(alphabet, brgc(3), bits=BitDistribution(p0=p0))
    snr = from_db(float(rng.uniform(-5.0, 10.0)))
    exact = bicm_capacity(constellation, snr)
    estimate = bicm_capacity_mc(constellation, snr, samples=200_000, seed=seed)
    assert abs(estimate.value - exact) <= 3.0 * estimate.stderr


def test_bsgc_eb_n0_maps_to_two_rates(quad: QuadratureSpec) -> None:
    constellation = Constellation(pam(8), bsgc(3))
    inverter = CapacityInverter(capacity_function(constellation, "bicm", quad))
    minimum = min_ebn0(constellation, "bicm", np.geomspace(1e-2, 2.5, 40), quad=quad)

    def ebn0(rate: float) -> float:
        return inverter.invert(rate) / rate

    low, high = 1e-2, 2.5
    target = min(ebn0(low), ebn0(high))
    assert target > minimum.ebn0
    first = brentq(lambda r: ebn0(r) - target, low, minimum.rate, xtol=1e-10)
    second = brentq(lambda r: ebn0(r) - target, minimum.rate, high, xtol=1e-10)
    assert second - first > 0.1
    # one Eb/N0, two SNRs, two capacities
    snr_first, snr_second = target * first, target * second
    assert bicm_capacity(constellation, snr_first, quad) == pytest.approx(first, abs=1e-6)
    assert bicm_capacity(constellation, snr_second, quad) == pytest.approx(second, abs=1e-6)


def test_f_curve_needs_increasing_rates() -> None:
    with pytest.raises(DomainError, match="strictly increasing"):
        f_curve(None, "awgn", [1.0, 0.5])
    with pytest.raises(DomainError, match="strictly increasing"):
        f_curve(None, "awgn", [0.5, 0.5])
    assert [p.rate for p in f_curve(None, "awgn", [0.5, 1.0]).points] == [0.5, 1.0]
