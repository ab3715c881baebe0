#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "ehf/series.hpp"
#include "ehf/suites.hpp"

using namespace ehf;

namespace {
const cplx I(0.0, 1.0);
double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

// Naive oracle: build every term from scratch with epochs, O(N^2) thetas.
cplx v_series_brute(cplx t0, const std::vector<cplx>& tm, cplx q, cplx p, int N, cplx y = 1.0) {
    cplx sum = 0.0;
    for (int n = 0; n <= N; ++n) {
        cplx term = theta(t0 * std::pow(q, 2 * n), p) / theta(t0, p) * std::pow(q * y, n);
        term *= epoch(t0, n, q, p) / epoch(q, n, q, p);
        for (cplx t : tm) term *= epoch(t, n, q, p) / epoch(q * t0 / t, n, q, p);
        sum += term;
    }
    return sum;
}
}  // namespace

TEST_CASE("eval_V: single term, brute force, permutation invariance") {
    NomePair nome(0.4, 0.5);
    cplx t0(0.3);
    // N = 0 termination: the sum is the single n = 0 term.
    VSeriesSpec s0(t0, {0.2, 0.25, 0.35, 1.0, cplx(0.5) * t0 * t0 / (0.2 * 0.25 * 0.35)},
                   SeriesBase(nome), 4, 0);
    CHECK(eval_V(s0) == cplx(1.0));

    cplx q = nome.q, p = nome.p;
    int N = 3;
    cplx t4 = std::pow(q, -N);
    std::vector<cplx> tm = {0.2, cplx(0.25, 0.1), 0.35, t4};
    tm.push_back(q * t0 * t0 / (tm[0] * tm[1] * tm[2] * tm[3]));
    VSeriesSpec spec(t0, tm, SeriesBase(nome), 4, N);
    cplx fast = eval_V(spec);
    CHECK(rel(fast, v_series_brute(t0, tm, q, p, N)) < 1e-13);

    std::swap(tm[0], tm[2]);
    VSeriesSpec perm(t0, tm, SeriesBase(nome), 4, N);
    CHECK(rel(fast, eval_V(perm)) < 1e-12);
}

TEST_CASE("VSeriesSpec validation") {
    NomePair nome(0.4, 0.5);
    // not a q^{-N} entry in the named slot
    CHECK_THROWS_AS(VSeriesSpec(0.3, {0.2, 0.3, 0.4, 0.5, 0.6}, SeriesBase(nome), 4, 2),
                    std::invalid_argument);
    // balancing violated
    CHECK_THROWS_AS(
        VSeriesSpec(0.3, {0.2, 0.3, 0.4, std::pow(nome.q, -2), 0.6}, SeriesBase(nome), 4, 2),
        std::invalid_argument);
}

TEST_CASE("Frenkel-Turaev: N = 0, N = 1 brute force, N = 5 random") {
    NomePair nome(0.4, 0.5);
    SeriesBase base(nome);
    {
        auto rep = frenkel_turaev_check(0.3, 0.2, 0.25, 0.35, 0,
                                        nome.q * 0.09 / (0.2 * 0.25 * 0.35), base);
        CHECK(rep.rel_residual < 1e-15);
        CHECK(rel(rep.lhs, 1.0) < 1e-15);
    }
    {
        cplx t0(0.3), t1(0.2), t2(0.25), t3(0.35);
        int N = 1;
        cplx t4 = std::pow(cplx(0.5), -N);
        cplx t5 = cplx(0.5) * t0 * t0 / (t1 * t2 * t3 * t4);
        auto rep = frenkel_turaev_check(t0, t1, t2, t3, N, t5, base);
        CHECK(rep.rel_residual < 1e-13);
        // independent 2-term evaluation
        cplx brute = v_series_brute(t0, {t1, t2, t3, t4, t5}, 0.5, 0.4, N);
        CHECK(rel(rep.lhs, brute) < 1e-14);
    }
    {
        auto rng = Rng(7);
        NomePair nm(cplx(0.35, 0.1), cplx(0.45, -0.05));
        auto pt = samplers::frenkel_turaev_point(rng, nm, 5);
        auto rep = frenkel_turaev_check(pt[0], pt[1], pt[2], pt[3], 5, pt[4], SeriesBase(nm));
        CHECK(rep.rel_residual < 1e-12);
    }
}

TEST_CASE("R_n and T_n basics") {
    SeriesBase base(0.5, cplx(0.22, 0.1));
    auto rng = Rng(11);
    RnParams par = samplers::rn_point(rng, base);
    cplx z = std::exp(I * 0.8);

    CHECK(eval_R(0, z, par) == cplx(1.0));
    CHECK(eval_T(0, z, par) == cplx(1.0));
    CHECK_THROWS_AS(eval_R(-1, z, par), std::domain_error);

    // p-shift invariance (total ellipticity) and z -> 1/z symmetry
    CHECK(rel(eval_R(2, base.p * z, par), eval_R(2, z, par)) < 1e-11);
    CHECK(rel(eval_R(2, 1.0 / z, par), eval_R(2, z, par)) < 1e-12);
    CHECK(rel(eval_T(1, 1.0 / z, par), eval_T(1, z, par)) < 1e-12);

    // independent 2-term expansion of R_1
    const cplx q = base.q, p = base.p;
    cplx A = par.A();
    cplx v0 = par.t[3] / par.t[4];
    std::array<cplx, 7> tm = {q / (par.t[0] * par.t[4]),
                              q / (par.t[1] * par.t[4]),
                              q / (par.t[2] * par.t[4]),
                              par.t[3] * z,
                              par.t[3] / z,
                              1.0 / q,
                              A / par.t[4]};
    cplx term1 = theta(v0 * q * q, p) / theta(v0, p) * q;
    for (cplx t : tm) term1 *= theta(t, p) / theta(q * v0 / t, p);
    term1 *= theta(v0, p) / theta(q, p);  // m = 0 factor (t0)_1/(q)_1
    CHECK(rel(eval_R(1, z, par), 1.0 + term1) < 1e-13);
}

TEST_CASE("three-term recurrence for R_n with two gauges") {
    SeriesBase base(0.5, cplx(0.22, 0.1));
    auto rng = Rng(23);
    for (int n = 0; n <= 3; ++n) {
        RnParams par = samplers::rn_point(rng, base);
        cplx z = std::exp(I * rng.uniform(0.3, 2.8));
        auto r1 = check_recurrence_R(n, z, par, cplx(0.8, 0.1), cplx(1.2, -0.2));
        CHECK(r1.rel_residual < 1e-10);
        auto r2 = check_recurrence_R(n, z, par, cplx(1.1, 0.3), cplx(0.7, 0.15));
        CHECK(r2.rel_residual < 1e-10);
        // gauge independence: both gauges verify the same relation
        CHECK(std::abs(r1.rel_residual - r2.rel_residual) < 1e-9);
    }
}

TEST_CASE("D_mu annihilates R_n") {
    SeriesBase base(0.5, cplx(0.22, 0.1));
    auto rng = Rng(31);
    for (int n = 0; n <= 3; ++n) {
        RnParams par = samplers::rn_point(rng, base);
        auto rep = check_Dmu_annihilates_R(n, std::exp(I * 1.1), par);
        CHECK(rep.rel_residual < 1e-9);
    }
}

TEST_CASE("equal-gamma(z) points give equal R_n") {
    // gamma(z) is a degree-two map; locate the second preimage of gamma(z0)
    // on the reciprocal circle by scanning and bisecting, then compare R_n.
    SeriesBase base(0.5, cplx(0.22, 0.1));
    auto rng = Rng(41);
    RnParams par = samplers::rn_point(rng, base);
    cplx xi(0.8, 0.1), eta(1.2, -0.2);
    auto gamma = [&](cplx z) {
        return theta(z * xi, base.p) * theta(z / xi, base.p) /
               (theta(z * eta, base.p) * theta(z / eta, base.p));
    };
    cplx z0 = 1.17 * std::exp(I * 0.9);
    cplx target = gamma(z0);
    double r = 1.0 / std::abs(z0);
    auto fval = [&](double phi) { return std::abs(gamma(r * std::exp(I * phi)) - target); };
    // coarse scan
    double best_phi = 0.0, best = 1e300;
    for (int k = 0; k < 2000; ++k) {
        double phi = 2.0 * 3.14159265358979 * k / 2000;
        double v = fval(phi);
        if (v < best) {
            best = v;
            best_phi = phi;
        }
    }
    // golden-section polish
    double a = best_phi - 0.01, b = best_phi + 0.01;
    for (int it = 0; it < 200; ++it) {
        double m1 = a + 0.382 * (b - a), m2 = a + 0.618 * (b - a);
        if (fval(m1) < fval(m2))
            b = m2;
        else
            a = m1;
    }
    cplx z1 = r * std::exp(I * (a + b) / 2.0);
    REQUIRE(std::abs(gamma(z1) - target) < 1e-11);
    CHECK(std::abs(z1 - z0) > 0.1);  // genuinely different point
    CHECK(rel(eval_R(2, z1, par), eval_R(2, z0, par)) < 1e-10);
}

TEST_CASE("12V11 contiguous relations, all kinds, n <= 3") {
    SeriesBase base(0.5, cplx(0.22, 0.1));
    auto rng = Rng(57);
    for (int kind = 1; kind <= 3; ++kind)
        for (int n = 0; n <= 3; ++n) {
            auto [t0, t] = samplers::e12_point(rng, base, n);
            auto rep = check_E_contiguous(kind, t0, t, n, base);
            INFO("kind ", kind, " n ", n);
            CHECK(rep.rel_residual < 1e-10);
        }
}

TEST_CASE("E-series inversion identity on a terminating 10V9") {
    NomePair nome(cplx(0.3, 0.08), 0.45);
    auto rng = Rng(71);
    int N = 3;
    auto pt = samplers::frenkel_turaev_point(rng, nome, N);
    const cplx q = nome.q, p = nome.p;
    cplx t0 = pt[0], rt = std::sqrt(t0);
    std::array<cplx, 5> tm = {pt[1], pt[2], pt[3], std::pow(q, -N), pt[4]};
    std::vector<cplx> tt = {t0,     tm[0],   tm[1],        tm[2],  tm[3],
                            tm[4],  q * rt, -q * rt, q * rt / std::sqrt(p),
                            -q * rt * std::sqrt(p)};
    std::vector<cplx> ww;
    for (cplx t : tm) ww.push_back(q * t0 / t);
    ww.insert(ww.end(), {rt, -rt, std::sqrt(p) * rt, -rt / std::sqrt(p)});

    double big = 1.0;
    cplx direct = eval_E(tt, ww, q, p, -1.0, N, kDefaultTailEps, &big);
    std::vector<cplx> ti(tt.size()), wi(ww.size());
    for (size_t j = 0; j < tt.size(); ++j) ti[j] = 1.0 / tt[j];
    for (size_t j = 0; j < ww.size(); ++j) wi[j] = 1.0 / ww[j];
    cplx inverted = eval_E(ti, wi, 1.0 / q, p, -1.0, N);
    double scale = std::max({std::abs(direct), std::abs(inverted), big});
    CHECK(std::abs(direct - inverted) / scale < 1e-12);

    // and the E-form with the very-well-poised quadruple equals the V-form
    VSeriesSpec vs(t0, {tm[0], tm[1], tm[2], tm[3], tm[4]}, SeriesBase(nome), 4, N);
    CHECK(std::abs(direct - eval_V(vs)) / scale < 1e-12);
}
