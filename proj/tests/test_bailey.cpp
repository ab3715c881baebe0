#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <complex>

#include "doctest.h"
#include "ehf/bailey.hpp"
#include "ehf/suites.hpp"

using namespace ehf;

namespace {
const cplx I(0.0, 1.0);
double rel(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}
const ContourSpec kSpec = ContourSpec::circle(1.0, 64, 1e-10, 1 << 11);
const NomePair kNome{0.3, 0.3};
}  // namespace

TEST_CASE("derive_beta basics") {
    CircleFn zero = [](cplx) { return cplx(0.0); };
    CircleFn bz = derive_beta(zero, 0.6, kNome, kSpec);
    CHECK(std::abs(bz(std::exp(I * 0.4))) == 0.0);

    CircleFn onefn = [](cplx) { return cplx(1.0); };
    CircleFn b1 = derive_beta(onefn, 0.6, kNome, kSpec);
    cplx w = std::exp(I * 1.3);
    CHECK(rel(b1(w), b1(1.0 / w)) < 1e-12);  // kernel w <-> 1/w symmetry
    CHECK(std::isfinite(std::abs(b1(w))));

    CircleFn symf = [](cplx z) { return z + 1.0 / z; };
    CircleFn bs = derive_beta(symf, 0.6, kNome, kSpec);
    CHECK(rel(bs(w), bs(1.0 / w)) < 1e-12);
}

TEST_CASE("beta-integral seed pair satisfies the defining relation") {
    Rng rng(3);
    std::array<cplx, 4> a;
    for (auto& ak : a) ak = rng.ring(0.5, 0.75);
    cplx t = std::sqrt(kNome.p * kNome.q / (a[0] * a[1] * a[2] * a[3]));
    BaileyPair seed = make_beta_seed_pair(a, t, kNome);
    std::array<cplx, 3> ws = {std::exp(I * 0.4), std::exp(I * 1.3), std::exp(I * 2.2)};
    auto rep = pair_validity_check(seed, ws, kSpec, 1e-9);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.rel_residual < 1e-9);

    CHECK_THROWS_AS(make_beta_seed_pair(a, t * 1.01, kNome), std::invalid_argument);
}

TEST_CASE("lemma 1 preserves pair validity (alpha = 1 seed)") {
    CircleFn onefn = [](cplx) { return cplx(1.0); };
    BaileyPair seed = make_pair_from_alpha(onefn, 0.6, kNome, kSpec);
    BaileyPair step = lemma1_step(seed, 0.8, 0.65, kSpec);
    CHECK(rel(step.t, cplx(0.48)) < 1e-15);  // parameter moves t -> s t
    std::array<cplx, 3> ws = {std::exp(I * 0.4), std::exp(I * 1.3), std::exp(I * 2.2)};
    auto rep = pair_validity_check(step, ws, kSpec, 1e-7);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.rel_residual < 1e-7);
}

TEST_CASE("lemma 2 after lemma 1 returns to the original parameter") {
    CircleFn onefn = [](cplx) { return cplx(1.0); };
    BaileyPair seed = make_pair_from_alpha(onefn, 0.6, kNome, kSpec);
    BaileyPair step = lemma1_step(seed, 0.8, 0.65, kSpec);
    BaileyPair back = lemma2_step(step, 0.8, 0.65, kSpec);
    CHECK(rel(back.t, seed.t) < 1e-15);
    std::array<cplx, 3> ws = {std::exp(I * 0.4), std::exp(I * 1.3), std::exp(I * 2.2)};
    auto rep = pair_validity_check(back, ws, kSpec, 1e-6);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.rel_residual < 1e-6);
}

TEST_CASE("lemma 1 on the beta seed is the key V transformation in disguise") {
    // Validity of the transformed pair states Pbeta * V(A-params) = V(B-params)
    // where the two parameter octets differ by the epsilon = 1/t rescaling of
    // the kind-1 transformation; check both the pair validity and the
    // transformation itself at the same data.
    Rng rng(5);
    NomePair nome(0.3, 0.3);
    std::array<cplx, 4> a;
    for (auto& ak : a) ak = rng.ring(0.55, 0.72);
    cplx t = std::sqrt(nome.p * nome.q / (a[0] * a[1] * a[2] * a[3]));
    const cplx s = 0.8, u = 0.65;

    BaileyPair seed = make_beta_seed_pair(a, t, nome);
    BaileyPair step = lemma1_step(seed, s, u, kSpec);
    std::array<cplx, 2> ws = {std::exp(I * 0.9), std::exp(I * 2.1)};
    auto rep = pair_validity_check(step, ws, kSpec, 1e-7);
    REQUIRE(rep.verdict == Verdict::pass);

    cplx pq = nome.p * nome.q;
    cplx w = ws[0];
    std::array<cplx, 8> A = {s * w, s / w, u, pq / (t * t * s * s * u),
                             t * a[0], t * a[1], t * a[2], t * a[3]};
    VParams va{A, nome};
    CHECK(va.balancing_defect() < 1e-12);
    if (va.standard_contour()) {
        auto e7 = check_E7_transform(1, va, kSpec);
        CHECK(e7.verdict == Verdict::pass);
        CHECK(e7.rel_residual < 1e-7);
    }
}

TEST_CASE("(A,A) and (A,C) inversions: census and verdicts") {
    std::array<cplx, 2> xs = {std::exp(I * 0.7), std::exp(I * 1.9)};
    CircleFn zero = [](cplx) { return cplx(0.0); };
    auto r0 = inversion_check_AA(zero, 0.5, kNome, kSpec, xs);
    CHECK(r0.verdict == Verdict::pass);  // exactly zero round trip
    CHECK(r0.abs_residual == 0.0);

    CircleFn onefn = [](cplx) { return cplx(1.0); };
    auto r1 = inversion_check_AA(onefn, 0.5, kNome, kSpec, xs);
    CHECK(r1.verdict == Verdict::inconclusive);
    CHECK(r1.meta.count("census_forward") == 1);

    CircleFn symf = [](cplx z) { return z + 1.0 / z; };
    auto r2 = inversion_check_AC(symf, 0.5, kNome, kSpec, xs);
    CHECK(r2.verdict == Verdict::inconclusive);
    CHECK(r2.meta["census"] == "failed");
}

TEST_CASE("corollary: delta_C * fhat_C = C_I kernel reproduces the rank-1 A_I2 formula") {
    Rng rng(9);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::array<cplx, 4> v;
        for (auto& x : v) x = rng.ring(0.62, 0.8);
        cplx S = v[0] * v[1] * v[2] * v[3];
        cplx t = std::sqrt(kNome.p * kNome.q / S);
        if (std::abs(t) > 0.9) continue;
        try {
            auto rep = bailey_corollary_AI2(v, t, std::exp(I * 0.9), kNome, kSpec);
            CHECK(rep.rel_residual < 1e-7);
            return;
        } catch (const pole_error&) {
            continue;
        }
    }
    FAIL("no admissible corollary point found");
}
