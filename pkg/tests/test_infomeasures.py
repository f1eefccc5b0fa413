import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tunnelinfo.errors import (
    BoundViolation,
    ConvolutionUnderresolved,
    InvalidOrder,
    NegativeVariance,
    NotNormalized,
    ZeroProbabilityTerm,
)
from tunnelinfo.infomeasures import (
    EUR_BOUND,
    REFERENCE_FIT_I_T,
    REFERENCE_FIT_S_T,
    Density,
    DiscreteDist,
    MeasureRecord,
    MomentSet,
    debruijn_check,
    disequilibrium_continuous,
    disequilibrium_discrete,
    fisher_continuous,
    fisher_discrete,
    fit_measures,
    lmc_discrete,
    lmc_measures,
    lmc_near_equilibrium,
    local_extrema,
    measure_record,
    measure_series,
    renyi,
    shannon_continuous,
    shannon_discrete,
    uncertainty_product,
)
from tunnelinfo.numerics import integrate
from tunnelinfo.quantum_state import phi, psi, psi_dx


def gaussian(sigma, mu=0.0):
    f = lambda x: np.exp(-0.5 * ((x - mu) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))  # noqa: E731
    df = lambda x: -(x - mu) / sigma ** 2 * f(x)  # noqa: E731
    return Density(f, mu - 40 * sigma, mu + 40 * sigma, (mu,), df)


def iswp_density(width=1.0):
    f = lambda x: 2 / width * np.sin(math.pi * x / width) ** 2  # noqa: E731
    df = lambda x: 2 * math.pi / width ** 2 * np.sin(2 * math.pi * x / width)  # noqa: E731
    return Density(f, 0.0, width, (width / 2,), df)


def uniform(width):
    return Density(lambda x: np.full_like(x, 1.0 / width), 0.0, width)


# -- continuous closed forms ------------------------------------------------

@pytest.mark.parametrize("sigma", [0.3, 1.0, 2.5])
def test_gaussian_closed_forms(sigma):
    g = gaussian(sigma)
    assert shannon_continuous(g) == pytest.approx(0.5 * math.log(2 * math.pi * math.e * sigma ** 2), abs=1e-12)
    assert fisher_continuous(g) == pytest.approx(1 / sigma ** 2, rel=1e-12)
    assert disequilibrium_continuous(g) == pytest.approx(1 / (2 * sigma * math.sqrt(math.pi)), rel=1e-12)
    ms = uncertainty_product(g, mean_k=0.0, mean_k2=1 / (4 * sigma ** 2))
    assert fisher_continuous(g) * ms.var_x == pytest.approx(1.0, abs=1e-10)


def test_gaussian_pair_saturates_bounds():
    sx = 0.7
    gx, gk = gaussian(sx), gaussian(1 / (2 * sx))
    ms = uncertainty_product(gx, gk)
    assert ms.product == pytest.approx(0.5, abs=1e-10)
    assert shannon_continuous(gx) + shannon_continuous(gk) == pytest.approx(EUR_BOUND, abs=1e-10)
    assert fisher_continuous(gx) * fisher_continuous(gk) == pytest.approx(4.0, abs=1e-10)
    s_t = shannon_continuous(gx) + shannon_continuous(gk)
    d_t = disequilibrium_continuous(gx) * disequilibrium_continuous(gk)
    # e^{S_T} D_T = pi e * 1 / (4 pi sx sk) = e / 2 for sx sk = 1/2
    assert lmc_measures(s_t, d_t) == pytest.approx(math.e / 2, rel=1e-10)


def test_uniform_closed_forms():
    for width in (0.5, 1.0, 3.0):
        u = uniform(width)
        assert shannon_continuous(u) == pytest.approx(math.log(width), abs=1e-12)
        assert disequilibrium_continuous(u) == pytest.approx(1 / width, rel=1e-12)
    assert lmc_measures(0.0, 1.0) == 1.0


def test_iswp_ground_closed_forms():
    width = 1.344e-10
    d = iswp_density(width)
    assert fisher_continuous(d) == pytest.approx(4 * math.pi ** 2 / width ** 2, rel=1e-8)
    assert shannon_continuous(d) == pytest.approx(math.log(2 * width) - 1, abs=1e-8)
    assert disequilibrium_continuous(d) == pytest.approx(1.5 / width, rel=1e-10)
    ms = uncertainty_product(d, mean_k=0.0, mean_k2=(math.pi / width) ** 2)
    assert ms.dx == pytest.approx(width * math.sqrt(1 / 12 - 1 / (2 * math.pi ** 2)), rel=1e-10)


def test_fisher_falls_back_to_differences():
    g = gaussian(1.2)
    no_df = Density(g.f, g.lo, g.hi, g.breakpoints)
    assert fisher_continuous(no_df) == pytest.approx(1 / 1.2 ** 2, rel=1e-6)


def test_not_normalized():
    bad = Density(lambda x: np.full_like(x, 2.0), 0.0, 1.0)
    with pytest.raises(NotNormalized):
        shannon_continuous(bad)
    with pytest.raises(NotNormalized):
        fisher_continuous(bad)


def test_negative_variance_and_bound():
    with pytest.raises(NegativeVariance):
        MomentSet(0.0, -1.0, 0.0, 1.0)
    g = gaussian(1.0)
    with pytest.raises(BoundViolation):
        uncertainty_product(g, mean_k=0.0, mean_k2=0.01)


def test_d_equals_exp_minus_h2():
    for d in (gaussian(0.8), iswp_density(2.0)):
        assert disequilibrium_continuous(d) == pytest.approx(math.exp(-renyi(d, 2.0)), rel=1e-10)


# -- discrete ----------------------------------------------------------------

def test_discrete_shannon():
    assert shannon_discrete(DiscreteDist(np.full(8, 1 / 8)), base=2) == pytest.approx(3.0)
    assert shannon_discrete(DiscreteDist([1.0, 0.0, 0.0])) == 0.0
    assert shannon_discrete(DiscreteDist([0.5, 0.25, 0.25]), base=2) == pytest.approx(1.5)


def test_discrete_fisher():
    assert fisher_discrete(DiscreteDist(np.full(5, 0.2))) == 0.0
    assert fisher_discrete(DiscreteDist([0.5, 0.5])) == 0.0
    assert fisher_discrete(DiscreteDist([0.25, 0.75])) == pytest.approx(1.0)
    with pytest.raises(ZeroProbabilityTerm):
        fisher_discrete(DiscreteDist([0.0, 1.0]))


def test_discrete_validation():
    with pytest.raises(NotNormalized):
        DiscreteDist([0.5, 0.6])
    with pytest.raises(ValueError):
        DiscreteDist([1.5, -0.5])


def test_lmc_discrete():
    eq = DiscreteDist(np.full(4, 0.25))
    assert disequilibrium_discrete(eq) == 0.0
    assert lmc_discrete(eq) == 0.0
    p = DiscreteDist([0.26, 0.24, 0.25, 0.25])
    s = shannon_discrete(p)
    # near equilibrium S D ~ (2/N) S (ln N - S)
    assert lmc_discrete(p) == pytest.approx(lmc_near_equilibrium(s, 4), rel=1e-2)
    assert lmc_measures(1.0, 2.0, kind="product") == 2.0
    with pytest.raises(ValueError):
        lmc_measures(1.0, 2.0, kind="bogus")


@given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=12), st.floats(0.1, 5.0))
def test_renyi_discrete_properties(weights, a):
    p = np.array(weights) / np.sum(weights)
    p = p / p.sum()
    d = DiscreteDist(p)
    if abs(a - 1) < 1e-3:
        return
    h = renyi(d, a)
    assert -1e-12 <= h <= math.log(len(p)) + 1e-12
    n = len(p)
    assert renyi(DiscreteDist(np.full(n, 1 / n)), a) == pytest.approx(math.log(n))


def test_renyi_two_point_and_errors():
    p = 0.3
    assert renyi(DiscreteDist([p, 1 - p]), 2.0) == pytest.approx(-math.log(p * p + (1 - p) ** 2))
    for bad in (0.0, 1.0, -2.0):
        with pytest.raises(InvalidOrder):
            renyi(DiscreteDist([0.5, 0.5]), bad)
    with pytest.raises(TypeError):
        renyi([0.5, 0.5], 2.0)


@given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=10))
def test_shannon_discrete_bounds(weights):
    p = np.array(weights) / np.sum(weights)
    d = DiscreteDist(p / p.sum())
    assert 0.0 <= shannon_discrete(d) <= math.log(len(p)) + 1e-12
    assert disequilibrium_discrete(d) >= 0.0


# -- de Bruijn ----------------------------------------------------------------

def test_debruijn_gaussian_analytic():
    sigma = 0.9
    g = gaussian(sigma)
    # S(t) = 1/2 ln(2 pi e (sigma^2 + t)) so dS/dt at 0 is 1 / (2 sigma^2)
    analytic_rate = 1 / (2 * sigma ** 2)
    assert analytic_rate == pytest.approx(0.5 * fisher_continuous(g), rel=1e-10)
    t_step = 1e-4 * sigma ** 2
    assert debruijn_check(g, fisher_continuous(g), t_step) < 1e-3


def test_debruijn_iswp_ground():
    width = 1.0
    d = iswp_density(width)
    var = width ** 2 * (1 / 12 - 1 / (2 * math.pi ** 2))
    assert debruijn_check(d, 4 * math.pi ** 2 / width ** 2, 1e-4 * var) < 0.05


def test_debruijn_errors():
    g = gaussian(1.0)
    with pytest.raises(ValueError):
        debruijn_check(g, 1.0, 0.0)
    with pytest.raises(ConvolutionUnderresolved):
        debruijn_check(g, 1.0, 1e-4, points_per_sigma=2)
    with pytest.raises(ConvolutionUnderresolved):
        debruijn_check(g, 1.0, 1e-12, max_points=1000)


# -- superposition measures ---------------------------------------------------

def _position_density(s, t=0.0):
    lo, hi = s.position_support()

    def f(x):
        return np.abs(psi(s, x, t)) ** 2

    def df(x):
        return 2 * (np.conj(psi(s, x, t)) * psi_dx(s, x, t)).real

    return Density(f, lo, hi, s.breakpoints, df)


def test_record_invariants(dswp_sup):
    r = measure_record(dswp_sup, 0.3)
    assert r.s_t == pytest.approx(r.s_x + r.s_k)
    assert r.i_t == pytest.approx(r.i_x * r.i_k)
    assert r.d_t == pytest.approx(r.d_x * r.d_k)
    assert r.c_t == pytest.approx(math.exp(r.s_t) * r.d_t)
    assert r.norm_x == pytest.approx(1.0, abs=1e-9) and r.norm_k == pytest.approx(1.0, abs=1e-9)
    assert r.violations() == []
    assert set(r.renyi) == {0.5, 2.0, 3.0}


def test_record_matches_standalone_functions(dswp_sup):
    r = measure_record(dswp_sup, 0.0)
    rho = _position_density(dswp_sup)
    assert r.s_x == pytest.approx(shannon_continuous(rho), rel=1e-9)
    assert r.i_x == pytest.approx(fisher_continuous(rho), rel=1e-8)
    assert r.d_x == pytest.approx(disequilibrium_continuous(rho), rel=1e-9)
    assert r.renyi[2.0][0] == pytest.approx(renyi(rho, 2.0), rel=1e-9)


def test_renyi_limit_brackets_shannon(dswp_sup):
    rho = _position_density(dswp_sup)
    s = shannon_continuous(rho)
    lo, hi = renyi(rho, 1 + 1e-6), renyi(rho, 1 - 1e-6)
    assert lo <= s <= hi
    assert hi - lo < 1e-4


def test_debruijn_dswp(dswp_sup):
    rho = _position_density(dswp_sup)
    r = measure_record(dswp_sup, 0.0)
    assert debruijn_check(rho, r.i_x, 1e-4 * r.var_x) < 0.05


def _truncated_k_moments(s, t):
    n = lambda k: np.abs(phi(s, k, t)) ** 2  # noqa: E731
    res = integrate(lambda k: np.stack([k * n(k), k * k * n(k)]), -s.k_cut, s.k_cut, 0.0,
                    breakpoints=[0.0], initial_panels=200, rtol=1e-12)
    return res.value, n


def test_momentum_moments_from_position_space(dswp_sup, iswp_sup):
    # <k>, <k^2> come from psi'; the same moments over n(k) on |k| <= k_cut
    # agree up to the truncated tail of k^2 n(k)
    for s in (dswp_sup, iswp_sup):
        r = measure_record(s, 0.13)
        (m1, m2), n = _truncated_k_moments(s, 0.13 * s.period)
        full = r.var_k + r.mean_k ** 2
        assert abs(m1 - r.mean_k) < 1e-9 * r.dk
        assert 0 < 1 - m2 / full < 1e-4
    # ISWP: psi has kinks at the walls, so n ~ C / k^4 and the missing tail is
    # 2 int_kc^inf C / k^2 dk; C is averaged over the oscillation near kc
    kc = iswp_sup.k_cut
    ks = np.linspace(0.9 * kc, kc, 20001)
    c = np.mean(ks ** 4 * (n(ks) + n(-ks))) / 2
    assert full - m2 == pytest.approx(2 * c / kc, rel=0.01)


def test_shannon_sum_is_unit_invariant(dswp_sup, iswp_sup):
    for s in (dswp_sup, iswp_sup):
        si = measure_record(s, 0.2)
        ang = measure_record(s, 0.2, length_unit=1e-10)
        assert ang.s_t == pytest.approx(si.s_t, abs=1e-8)
        assert ang.i_t == pytest.approx(si.i_t, rel=1e-8)
        assert ang.dx_dk == pytest.approx(si.dx_dk, rel=1e-8)
        assert abs(ang.s_x - si.s_x) > 1.0


def test_invalid_orders_rejected(dswp_sup):
    with pytest.raises(InvalidOrder):
        measure_record(dswp_sup, 0.0, renyi_orders=(1.0,))


@pytest.fixture(scope="module")
def short_series(dswp_sup):
    return measure_series(dswp_sup, 17)


def test_series_layout(short_series):
    assert [r.t_over_T for r in short_series] == [j / 16 for j in range(17)]


def test_series_complementarity(short_series):
    s_x = [r.s_x for r in short_series]
    i_x = [r.i_x for r in short_series]
    assert local_extrema(s_x, "max") == local_extrema(i_x, "min") == [4, 12]
    assert local_extrema(s_x, "min") == local_extrema(i_x, "max") == [0, 8, 16]
    d_t = [r.d_t for r in short_series]
    s_t = [r.s_t for r in short_series]
    assert local_extrema(d_t, "max") == local_extrema(s_t, "min")


def test_dx_minimal_in_a_well(short_series):
    dx = [r.dx for r in short_series]
    assert int(np.argmin(dx)) in (0, 8, 16)


def test_series_requires_samples(dswp_sup):
    with pytest.raises(ValueError):
        measure_series(dswp_sup, 4)


def test_fit_round_trip_reference():
    wt = np.linspace(0, math.pi / 2, 33)
    recs = []
    for w in wt:
        s_t = math.log(np.polynomial.polynomial.polyval(w, REFERENCE_FIT_S_T))
        i_t = math.exp(np.polynomial.polynomial.polyval(w, REFERENCE_FIT_I_T))
        recs.append(MeasureRecord(w / (2 * math.pi), *([0.0] * 9), s_t, 0.0, 0.0, i_t, *([0.0] * 6)))
    fs, fi = fit_measures(recs)
    np.testing.assert_allclose(fs.coefficients, REFERENCE_FIT_S_T, atol=1e-6)
    np.testing.assert_allclose(fi.coefficients, REFERENCE_FIT_I_T, atol=1e-6)


def test_local_extrema():
    v = [1, 2, 3, 2, 1, 2, 3]
    assert local_extrema(v, "max") == [2, 6]
    assert local_extrema(v, "min") == [0, 4]
    with pytest.raises(ValueError):
        local_extrema(v, "saddle")
