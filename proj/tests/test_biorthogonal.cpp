#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "ehf/biorthogonal.hpp"
#include "ehf/suites.hpp"

using namespace ehf;

namespace {
const cplx I(0.0, 1.0);
double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
const ContourSpec kCircle = ContourSpec::circle(1.0, 64, 1e-12);

BiorthParams default_params() {
    Rng rng(1234);
    NomePair nome(cplx(0.05, 0.02), cplx(0.47, 0.05));
    return samplers::biorth_point(rng, nome, 2);
}
}  // namespace

TEST_CASE("weight symmetry and total mass") {
    BiorthParams par = default_params();
    cplx z = std::exp(I * 0.77);
    CHECK(rel(weight(z, par), weight(1.0 / z, par)) < 1e-13);

    // kappa-normalized integral of the bare weight is N(t): the beta integral
    // in disguise with t5 -> pq/A.
    cplx total = inner_product(0, 0, 0, 0, par, kCircle);
    cplx N = norm_constant(par);
    CHECK(std::isfinite(std::abs(N)));
    CHECK(rel(total, N) < 1e-9);

    // and indeed the six-parameter beta product with t6 = pq/A matches N
    GammaTable g(par.nome);
    std::array<cplx, 6> full = {par.t[0], par.t[1], par.t[2], par.t[3], par.t[4],
                                par.nome.p * par.nome.q / par.A()};
    cplx beta_rhs = 1.0;
    for (int j = 0; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k) beta_rhs *= g(full[j] * full[k]);
    CHECK(rel(beta_rhs, N) < 1e-12);
}

TEST_CASE("Gram matrix is diagonal with h_n entries") {
    BiorthParams par = default_params();
    cplx N = norm_constant(par);
    CHECK(rel(h_norm(0, par), 1.0) < 1e-14);
    for (int n = 0; n <= 2; ++n)
        for (int m = 0; m <= 2; ++m) {
            cplx val = inner_product(n, 0, m, 0, par, kCircle) / N;
            INFO("entry ", n, " ", m);
            if (n == m)
                CHECK(rel(val, h_norm(n, par)) < 1e-7);
            else
                CHECK(std::abs(val) < 1e-7);
        }
}

TEST_CASE("two-index p-shifted box is rejected honestly") {
    BiorthParams par = default_params();
    CHECK_THROWS_AS(inner_product(1, 1, 1, 1, par, kCircle), pole_error);
    CHECK_THROWS_AS(inner_product(0, 2, 0, 2, par, kCircle), std::domain_error);
}

TEST_CASE("admissibility predicate reacts to the index box") {
    BiorthParams par = default_params();
    CHECK(par.admissible(2, 2));
    // deep q-shifts of t4 eventually leave the unit circle
    CHECK_FALSE(par.admissible(2, 12));
}

TEST_CASE("unit-circle products") {
    PeriodTriple pe(std::exp(cplx(0.0, 0.4)), 1.0, cplx(0.1, 0.8));
    std::array<cplx, 5> g = {cplx(-0.02, -0.21), cplx(0.04, -0.19), cplx(-0.05, -0.24),
                             cplx(0.03, -0.22), cplx(0.01, -0.35)};
    cplx u(0.12, 0.05);

    auto [r00, s00] = unit_circle_products(0, 0, u, g, pe);
    CHECK(r00 == cplx(1.0));
    CHECK(s00 == cplx(1.0));

    // (w1 <-> w2, n <-> m) symmetry
    auto [r12, s12] = unit_circle_products(1, 2, u, g, pe);
    PeriodTriple swapped(pe.omega2, pe.omega1, pe.omega3);
    auto [r21, s21] = unit_circle_products(2, 1, u, g, swapped);
    CHECK(rel(r12, r21) < 1e-12);
    CHECK(rel(s12, s21) < 1e-12);

    // modular invariance r_n(u; w1, w2, w3) = r_n(u; w1, -w3, w2)
    for (int n = 1; n <= 2; ++n) {
        cplx a = eval_r_additive(n, u, g, pe.omega1, pe.omega2, pe.omega3);
        cplx b = eval_r_additive(n, u, g, pe.omega1, -pe.omega3, pe.omega2);
        INFO("n ", n);
        CHECK(rel(a, b) < 1e-10);
    }
}
