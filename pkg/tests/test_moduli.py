import pytest

from quadloci.algebra import QQ, param
from quadloci.grr import TautClass, rf, rf_param
from quadloci.moduli import (
    BoundaryCoefficientNonpositive,
    Calibration,
    InvariantViolated,
    ModuliDivisor,
    NotPartitionOfK,
    SeriesParams,
    UnsupportedParam,
    brill_noether_bound,
    dp12_slope,
    fit_calibration,
    hodge_admissible_coeff,
    hurwitz_report,
    k3_rank4_class,
    k3_rank4_kappa11_coefficient,
    known_divisor,
    kosz_class,
    kosz_closed_form,
    kosz_intro_form,
    kosz_prefactor_ratio,
    kosz_rank,
    pelda_slope,
    petri_class,
    petri_decomposition_report,
    series_params,
    slope,
    virtual_slope_from_pushforward,
)
from quadloci.symfunc import Partition

G = rf_param("g")
K = rf_param("k")
I = rf_param("i")


def q(x):
    return x.num.constant_value() / x.den.constant_value()


# -- rank-3 quadric divisor -------------------------------------------------

def test_petri_small_genus():
    p4 = petri_class(4)
    assert p4.lam == rf(34)
    assert all(p4.deltas[i] == rf(4) for i in (0, 1, 2))
    assert q(slope(p4)) == QQ(17, 2)
    assert petri_class(5).lam == rf(164) and petri_class(5).deltas[0] == rf(20)
    assert petri_class(6).lam == rf(896) and petri_class(6).deltas[0] == rf(112)
    assert petri_class(7).lam == rf(5280) and petri_class(7).deltas[0] == rf(672)


def test_petri_symbolic_slope():
    assert petri_class("g").slope() == (rf(7) * G + rf(6)) / G


def test_petri_guard():
    with pytest.raises(UnsupportedParam):
        petri_class(3)


def test_known_divisor_theta():
    th = known_divisor("theta", 5)
    assert th.lam == rf(4 * 33)
    assert th.deltas[0] == rf(16)
    assert th.deltas[1] == rf(4 * 15)
    assert th.deltas[2] == rf(4 * 21)


def test_known_divisor_gonality():
    gon = known_divisor("gonality", 3)
    assert gon.lam == rf(12)
    assert gon.deltas[0] == rf(QQ(3, 2))
    assert q(slope(gon)) == 8


def test_known_divisor_branch_matches_petri_g4():
    br = known_divisor("branch", 2)
    assert br.lam == rf(34) and br.deltas[0] == rf(4)
    assert br.ellipsis


def test_known_divisor_next_gonality():
    assert known_divisor("next_gonality", 3) == QQ(6 * 9 + 14 * 3 + 3, 12)


def test_known_divisor_guards():
    with pytest.raises(UnsupportedParam):
        known_divisor("theta", 2)
    with pytest.raises(UnsupportedParam):
        known_divisor("mystery", 5)


def test_decomposition_reports():
    for g in (4, 5, 6, 7):
        rep = petri_decomposition_report(g)
        assert rep.display_slope_matches
        assert rep.slope_in_component_hull
    rep7 = petri_decomposition_report(7)
    slopes = dict((n, s) for n, _, s in rep7.components)
    assert slopes["gonality(k=4)"] == QQ(15, 2)
    assert slopes["next_gonality(k=4)"] == QQ(31, 4)
    assert slopes["theta(g=7)"] == QQ(129, 16)
    weights = [w for _, w, _ in rep7.components]
    assert weights == [QQ(16), QQ(4), QQ(1)]
    with pytest.raises(UnsupportedParam):
        petri_decomposition_report(8)


# -- slope series -----------------------------------------------------------

def test_series_params_values():
    p = series_params(1, 1)
    assert (p.r, p.s, p.a, p.g, p.d) == (7, 3, 4, 24, 28)
    assert p.rank_bound == 6 and p.corank == 2
    p2 = series_params(2, 1)
    assert (p2.r, p2.s, p2.a, p2.g, p2.d) == (11, 4, 5, 48, 55)
    assert p2.rank_bound == 7
    assert series_params(1, 2).g == 7 * 17


def test_series_params_invariants_range():
    for ell in range(1, 26):
        for series in (1, 2):
            p = series_params(series, ell)
            assert 2 * (p.r - 1) * p.s == p.a * (2 * p.r - 1 - p.a)
            assert p.g == (p.r + 1) * (p.g - p.d + p.r)


def test_series_params_guards():
    with pytest.raises(UnsupportedParam):
        series_params(3, 1)
    with pytest.raises(UnsupportedParam):
        series_params(1, 0)
    with pytest.raises(InvariantViolated):
        SeriesParams(r=7, s=3, a=3, g=24, d=28)
    with pytest.raises(InvariantViolated):
        SeriesParams(r=7, s=3, a=4, g=25, d=28)


def test_pelda_slope_values():
    assert pelda_slope(1, 1) == rf(QQ(34423, 5320))
    assert pelda_slope(1, 1, "deficit") == rf(QQ(34423, 5320))
    v = pelda_slope(2, 1)
    assert q(v) < QQ(6) + QQ(12, 49)
    # frozen reduction of the second-series deficit at l=1:
    # 6 + 12/49 - 16*23*47/(5*11*10846*49)
    assert q(v) == QQ(6) + QQ(12, 49) - QQ(16 * 23 * 47, 5 * 11 * 10846 * 49)


def test_pelda_closed_equals_deficit_symbolically():
    assert pelda_slope(1, "ell", "closed") == pelda_slope(1, "ell", "deficit")


def test_pelda_below_brill_noether():
    for ell in range(1, 11):
        g1 = (4 * ell - 1) * (9 * ell - 1)
        assert q(pelda_slope(1, ell)) < QQ(6) + QQ(12, g1 + 1)
        g2 = 4 * (3 * ell + 1) * (2 * ell + 1)
        assert q(pelda_slope(2, ell)) < QQ(6) + QQ(12, g2 + 1)


def test_brill_noether_bound():
    assert q(brill_noether_bound(24)) == QQ(162, 25)


# -- pushforward machinery --------------------------------------------------

def test_beta_cancellation_and_rescale_invariance():
    p = series_params(1, 1)
    res = virtual_slope_from_pushforward(p, Calibration(QQ(1)))
    assert param("beta") not in res.slope.num.variables()
    scaled = virtual_slope_from_pushforward(
        p, Calibration(QQ(1)), class_scales=(5, 5 * QQ(2 * 33, 8))
    )
    assert scaled.slope == res.slope


def test_calibration_fit_is_exact_on_target():
    rep = fit_calibration()
    check = virtual_slope_from_pushforward(rep.fit_point, rep.fitted)
    assert check.slope == rep.fit_target
    # the cross-validation outcome is reported, not silently absorbed
    assert rep.series2_matches == (rep.series2_computed == rep.series2_expected)
    assert rep.dp12_matches == (rep.dp12_computed == rep.dp12_expected)
    if not (rep.series2_matches and rep.dp12_matches and rep.multiplier_positive):
        assert rep.notes


def test_dp12():
    d = dp12_slope()
    assert d.slope == QQ(373, 54)
    assert d.below_bound
    assert d.pencil_coefficients == (6, 38)
    assert d.prefactor_from_formula == 5
    assert d.prefactor_in_application == 10
    assert d.factor_two_discrepancy


def test_dp12_class_matches_pencil_module():
    # the genus-12 locus is the e=6 degenerate-pencil class: its reported
    # coefficients must be the ones the pencil presentation produces
    from quadloci.algebra import ALPHA, BETA, symmetric_reduce, sym, Polynomial
    from quadloci.loci import pencil_class_quot

    d = dp12_slope()
    e = 6
    n_beta = 19  # C(7,2) - 2
    reduced = symmetric_reduce(
        symmetric_reduce(pencil_class_quot(e), ALPHA, e), BETA, n_beta
    )
    X = Polynomial.variable
    cE, cF = X(sym("e1(a)")), X(sym("e1(b)"))
    f_coeff, e_coeff = d.pencil_coefficients
    assert d.prefactor_from_formula == e - 1
    assert reduced == (e - 1) * (f_coeff * cF - e_coeff * cE)


# -- surface moduli ----------------------------------------------------------

def test_k3_rank4_symbolic():
    cls = k3_rank4_class()
    assert cls.coefficient("lambda") == (rf(2) * G * G - rf(13) * G + rf(9)) / (G + rf(1))
    assert cls.coefficient("gamma") == rf(2) / (G + rf(1))
    assert cls.coefficient("kappa11").is_zero()


def test_k3_rank4_numeric_instance():
    cls = k3_rank4_class(11)
    assert cls.coefficient("lambda") == rf(9)
    assert cls.coefficient("gamma") == rf(QQ(1, 6))


def test_k3_rank4_kappa11_before_basis_change():
    assert k3_rank4_kappa11_coefficient() == -(G - rf(1)) / (rf(2) * (G + rf(1)))


def test_kosz_numeric_small():
    k1 = kosz_class(1)
    assert (k1.lam, k1.gamma) == (rf(-8), rf(QQ(2, 3)))
    k2 = kosz_class(2)
    assert (k2.lam, k2.gamma) == (rf(-7), rf(QQ(1, 2)))


def test_kosz_numeric_matches_closed():
    for i in range(1, 9):
        kn = kosz_class(i)
        kc = kosz_closed_form(i)
        assert kn.lam == kc.lam and kn.gamma == kc.gamma


def test_kosz_symbolic_matches_closed():
    ks = kosz_class("i")
    kc = kosz_closed_form("i")
    assert ks.lam == kc.lam and ks.gamma == kc.gamma


def test_kosz_intro_prefactor_ratio():
    ratio = kosz_prefactor_ratio("i")
    assert ratio == rf(2) * (rf(2) * I + rf(1)) / (I + rf(1))
    ki = kosz_intro_form("i")
    kc = kosz_closed_form("i")
    assert ki.lam == (kc.lam * ratio).reduce()
    assert ki.gamma == (kc.gamma * ratio).reduce()
    # the two displays carry the same (lambda : gamma) direction
    assert (ki.lam / ki.gamma).reduce() == (kc.lam / kc.gamma).reduce()


def test_kosz_ranks():
    for i in range(1, 9):
        rg, rh, closed = kosz_rank(i)
        assert rg == rh == closed
    assert kosz_rank(2)[2] == 378
    rg, rh, closed = kosz_rank("i")
    assert rg == rh == closed


def test_kosz_guard():
    with pytest.raises(UnsupportedParam):
        kosz_class(0)


# -- cover spaces -----------------------------------------------------------

def test_hurwitz_report_core():
    rep = hurwitz_report()
    assert rep.canonical == TautClass(
        {"lambda": 8, "D3": QQ(1, 6), "D0": QQ(-3, 2)}
    )
    assert rep.canonical_in_gamma == TautClass(
        {"lambda": 12, "gamma": 1, "D0": -2}
    )
    assert rep.structural_identity_holds
    assert rep.rank4_class == TautClass(
        {"lambda": (rf(5) * K + rf(12)) / K, "gamma": (K - rf(6)) / K, "D0": -1}
    )
    assert rep.alpha_solved == K - rf(6)
    assert rep.hrk4_unit_coeff == K


def test_hurwitz_hodge_coefficients():
    rep = hurwitz_report()
    six = rf(6) * K - rf(5)
    assert rep.hodge_d0 == rf(3) * (K - rf(1)) / (rf(4) * six)
    assert rep.hodge_d3 == (rf(3) * K - rf(7)) / (rf(12) * six)
    assert rep.hodge_d2_derived == rf(-1) / (rf(2) * six)
    assert rep.hodge_d2_published == rf(-1) / (rf(4) * six)
    assert rep.hodge_d2_factor_two


def test_hurwitz_published_coefficient_differs():
    rep = hurwitz_report()
    # k / A_k^(k-4) never equals the published 1/6 on the sampled range
    assert all(not match for _, match in rep.hrk4_coeff_samples.values())
    assert rep.hrk4_coeff_samples[6][0] == QQ(6, 35)


def test_hodge_admissible_coeff_values():
    k = 8
    assert hodge_admissible_coeff(2, Partition([1] * k), k) == QQ(
        3 * (k - 1), 2 * (6 * k - 5)
    )
    assert hodge_admissible_coeff(2, Partition([3] + [1] * (k - 3)), k) == QQ(
        3 * k - 7, 6 * (6 * k - 5)
    )
    assert hodge_admissible_coeff(2, Partition([2, 2] + [1] * (k - 4)), k) == -QQ(
        1, 2 * (6 * k - 5)
    )


def test_hodge_admissible_coeff_guards():
    with pytest.raises(NotPartitionOfK):
        hodge_admissible_coeff(2, Partition([2, 1]), 8)
    with pytest.raises(ValueError):
        hodge_admissible_coeff(1, Partition([1] * 8), 8)


# -- slope functional ---------------------------------------------------------

def test_slope_examples():
    d = ModuliDivisor(4, rf(34), {0: rf(4)})
    assert q(slope(d)) == QQ(17, 2)
    gon = known_divisor("gonality", 3)
    assert q(slope(gon)) == 8
    triv = ModuliDivisor(2, rf(1), {0: rf(1)})
    assert q(slope(triv)) == 1


def test_slope_uses_minimum():
    d = ModuliDivisor(5, rf(10), {0: rf(2), 1: rf(1)})
    assert q(slope(d)) == 10


def test_slope_guards():
    with pytest.raises(BoundaryCoefficientNonpositive):
        slope(ModuliDivisor(4, rf(34), {}))
    with pytest.raises(BoundaryCoefficientNonpositive):
        slope(ModuliDivisor(4, rf(34), {0: rf(-4)}))


def test_boundary_coefficient_ellipsis_guard():
    br = known_divisor("branch", 3)
    assert br.boundary_coefficient(0) == br.deltas[0]
    assert br.boundary_coefficient(1) == br.deltas[1]
    with pytest.raises(UnsupportedParam):
        br.boundary_coefficient(2)
    th = known_divisor("theta", 6)
    assert th.boundary_coefficient(3) == th.deltas[3]
    pet = petri_class(6)
    assert pet.boundary_coefficient(3) == rf(112)
