#include "ehf/bailey.hpp"

#include <cmath>
#include <memory>

namespace ehf {

namespace {

double rel_dist(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

CircleFn derive_beta(const CircleFn& alpha, cplx t, const NomePair& nome,
                     const ContourSpec& spec) {
    auto g = std::make_shared<GammaTable>(nome);
    return [g, alpha, t, spec](cplx w) {
        auto f = [&](cplx z) { return g->pair(t * w, z) * g->pair(t / w, z) * alpha(z); };
        QuadResult r = integrate_circle(f, spec);
        return kappa_times_mean(*g, r.value);
    };
}

BaileyPair make_pair_from_alpha(const CircleFn& alpha, cplx t, const NomePair& nome,
                                const ContourSpec& spec) {
    return BaileyPair{alpha, derive_beta(alpha, t, nome, spec), t, nome};
}

BaileyPair make_beta_seed_pair(const std::array<cplx, 4>& a, cplx t, const NomePair& nome) {
    cplx prod = a[0] * a[1] * a[2] * a[3];
    if (rel_dist(t * t * prod, nome.p * nome.q) > 1e-10)
        throw std::invalid_argument("make_beta_seed_pair: need t^2 prod a_k = pq");
    auto g = std::make_shared<GammaTable>(nome);
    CircleFn alpha = [g, a](cplx z) {
        cplx v = g->inv_self_dual(z * z);
        for (cplx ak : a) v *= g->pair(ak, z);
        return v;
    };
    cplx c = (*g)(t * t);
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) c *= (*g)(a[j] * a[k]);
    CircleFn beta = [g, a, t, c](cplx w) {
        cplx v = c;
        for (cplx ak : a) v *= g->pair(t * ak, w);
        return v;
    };
    return BaileyPair{alpha, beta, t, nome};
}

BaileyPair lemma1_step(const BaileyPair& pair, cplx s, cplx u, const ContourSpec& spec) {
    auto g = std::make_shared<GammaTable>(pair.nome);
    const cplx t = pair.t;
    CircleFn a_old = pair.alpha, b_old = pair.beta;
    CircleFn alpha = [g, a_old, t, s, u](cplx w) {
        return g->pair(t * u, w) / g->pair(t * s * s * u, w) * a_old(w);
    };
    CircleFn beta = [g, b_old, t, s, u, spec](cplx w) {
        cplx pre = (*g)(t * t * s * s) * g->pair(t * t * s * u, w) /
                   ((*g)(s * s) * (*g)(t * t) * g->pair(s * u, w));
        auto f = [&](cplx x) {
            return g->pair(s * w, x) * g->pair(s / w, x) * g->pair(u, x) *
                   g->inv_self_dual(x * x) / g->pair(t * t * s * s * u, x) * b_old(x);
        };
        QuadResult r = integrate_circle(f, spec);
        return pre * kappa_times_mean(*g, r.value);
    };
    return BaileyPair{alpha, beta, s * t, pair.nome};
}

BaileyPair lemma2_step(const BaileyPair& pair, cplx s, cplx u, const ContourSpec& spec) {
    auto g = std::make_shared<GammaTable>(pair.nome);
    // Input pair carries parameter s t; the displayed formulas are written in
    // terms of the output parameter t.
    const cplx t = pair.t / s;
    CircleFn a_old = pair.alpha, b_old = pair.beta;
    CircleFn alpha = [g, a_old, t, s, u, spec](cplx w) {
        cplx pre = (*g)(s * s * t * t) * g->pair(u, w) * g->inv_self_dual(w * w) /
                   ((*g)(s * s) * (*g)(t * t) * g->pair(t * t * s * s * u, w));
        auto f = [&](cplx x) {
            return g->pair(t * t * s * u, x) * g->pair(s * w, x) * g->pair(s / w, x) /
                   g->pair(s * u, x) * a_old(x);
        };
        QuadResult r = integrate_circle(f, spec);
        return pre * kappa_times_mean(*g, r.value);
    };
    CircleFn beta = [g, b_old, t, s, u](cplx w) {
        return g->pair(t * u, w) / g->pair(t * s * s * u, w) * b_old(w);
    };
    return BaileyPair{alpha, beta, t, pair.nome};
}

VerificationReport pair_validity_check(const BaileyPair& pair, std::span<const cplx> samples,
                                       const ContourSpec& spec, double tol) {
    CircleFn derived = derive_beta(pair.alpha, pair.t, pair.nome, spec);
    VerificationReport worst;
    worst.id = "bailey-pair-validity";
    worst.tolerance = tol;
    worst.verdict = Verdict::pass;
    double worst_rel = -1.0;
    for (cplx w : samples) {
        cplx lhs = pair.beta(w), rhs = derived(w);
        auto rep = make_report(worst.id, lhs, rhs, tol);
        if (rep.rel_residual > worst_rel) {
            worst_rel = rep.rel_residual;
            rep.meta["w"] = format_complex(w);
            rep.meta["samples"] = std::to_string(samples.size());
            worst = rep;
        }
    }
    return worst;
}

namespace {

// Pole census for a circle contour: every "converging" modulus must sit
// inside the circle with margin, every "diverging" one outside.
bool census_ok(std::span<const double> inside, std::span<const double> outside, double margin) {
    double lo = std::exp(-margin), hi = std::exp(margin);
    for (double m : inside)
        if (m >= lo) return false;
    for (double m : outside)
        if (m <= hi) return false;
    return true;
}

std::string census_diag(std::span<const double> inside, std::span<const double> outside) {
    std::string s = "inside:";
    for (double m : inside) s += " " + format_double(m);
    s += " outside:";
    for (double m : outside) s += " " + format_double(m);
    return s;
}

}  // namespace

VerificationReport inversion_check_AA(const CircleFn& f, cplx t, const NomePair& nome,
                                      const ContourSpec& spec, std::span<const cplx> samples) {
    auto g = std::make_shared<GammaTable>(nome);
    double at = std::abs(t);
    // Forward kernel Gamma(t^{-1} w^{±} z^{±}) on |z| = |w| = 1: pole strings
    // start at |z| = |t| (diverging) and 1/|t| (converging).  Inverse kernel
    // Gamma(t w^{±} x^{±}) on |w| = 1: strings start at |t| (converging) and
    // 1/|t| (diverging).  Both censuses cannot pass with one circle.
    double fwd_in[] = {1.0 / at};
    double fwd_out[] = {at};
    double inv_in[] = {at};
    double inv_out[] = {1.0 / at};
    bool ok = census_ok(fwd_in, fwd_out, 0.02) && census_ok(inv_in, inv_out, 0.02);

    auto forward = [&](cplx w) {
        auto h = [&](cplx z) {
            return g->pair(w / t, z) * g->pair(1.0 / (t * w), z) * g->inv_self_dual(z * z) *
                   f(z);
        };
        QuadResult r = integrate_circle(h, spec);
        return kappa_times_mean(*g, r.value) / (*g)(1.0 / (t * t));
    };
    ContourSpec outer = spec;
    outer.adaptive = false;
    outer.nodes = std::max(outer.nodes, 256);
    double worst = 0.0;
    cplx lhs{}, rhs{};
    for (cplx x : samples) {
        auto h = [&](cplx w) {
            return g->pair(t * x, w) * g->pair(t / x, w) * g->inv_self_dual(w * w) * forward(w);
        };
        QuadResult r = integrate_circle(h, outer);
        cplx back = kappa_times_mean(*g, r.value) / (*g)(t * t);
        cplx want = f(x);
        double rel = std::abs(back - want) / std::max({std::abs(back), std::abs(want), 1e-30});
        if (rel >= worst) {
            worst = rel;
            lhs = back;
            rhs = want;
        }
    }
    auto rep = make_report("inversion-AA", lhs, rhs, 1e-6);
    rep.rel_residual = worst;
    rep.verdict = worst <= 1e-6 ? Verdict::pass : Verdict::fail;
    if (!ok && rep.abs_residual != 0.0 && rep.verdict == Verdict::fail)
        rep.verdict = Verdict::inconclusive;
    if (!ok) {
        rep.meta["census"] = "failed";
        rep.meta["census_forward"] = census_diag(fwd_in, fwd_out);
        rep.meta["census_inverse"] = census_diag(inv_in, inv_out);
    }
    return rep;
}

VerificationReport inversion_check_AC(const CircleFn& f, cplx t, const NomePair& nome,
                                      const ContourSpec& spec, std::span<const cplx> samples) {
    auto g = std::make_shared<GammaTable>(nome);
    double at = std::abs(t);
    double fwd_in[] = {1.0 / at};
    double fwd_out[] = {at};
    double inv_in[] = {at};
    double inv_out[] = {1.0 / at};
    bool ok = census_ok(fwd_in, fwd_out, 0.02) && census_ok(inv_in, inv_out, 0.02);

    // delta_A(z, w; 1/t) at n = 1, squared kernel over the z2 = 1/z1 torus.
    cplx gd = (*g)(t * t) * (*g)(1.0 / (t * t));
    auto forward = [&](cplx w) {
        auto h = [&](cplx z) {
            cplx k = g->pair(w / t, z) * g->pair(1.0 / (t * w), z);
            return k * k * g->inv_self_dual(z * z) * f(z) / gd;
        };
        QuadResult r = integrate_circle(h, spec);
        return kappa_times_mean(*g, r.value);
    };
    ContourSpec outer = spec;
    outer.adaptive = false;
    outer.nodes = std::max(outer.nodes, 256);
    double worst = 0.0;
    cplx lhs{}, rhs{};
    for (cplx x : samples) {
        auto h = [&](cplx w) {
            return g->pair(t * x, w) * g->pair(t / x, w) * g->inv_self_dual(w * w) * forward(w);
        };
        QuadResult r = integrate_circle(h, outer);
        cplx back = kappa_times_mean(*g, r.value);
        cplx want = f(x);
        double rel = std::abs(back - want) / std::max({std::abs(back), std::abs(want), 1e-30});
        if (rel >= worst) {
            worst = rel;
            lhs = back;
            rhs = want;
        }
    }
    auto rep = make_report("inversion-AC", lhs, rhs, 1e-6);
    rep.rel_residual = worst;
    rep.verdict = worst <= 1e-6 ? Verdict::pass : Verdict::fail;
    if (!ok && rep.abs_residual != 0.0 && rep.verdict == Verdict::fail)
        rep.verdict = Verdict::inconclusive;
    if (!ok) {
        rep.meta["census"] = "failed";
        rep.meta["census_forward"] = census_diag(fwd_in, fwd_out);
        rep.meta["census_inverse"] = census_diag(inv_in, inv_out);
    }
    return rep;
}

VerificationReport bailey_corollary_AI2(const std::array<cplx, 4>& v, cplx t, cplx x,
                                        const NomePair& nome, const ContourSpec& spec) {
    cplx S = v[0] * v[1] * v[2] * v[3];
    cplx pq = nome.p * nome.q;
    if (rel_dist(t * t * S, pq) > 1e-10)
        throw std::invalid_argument("bailey_corollary_AI2: need t^2 prod v = pq");
    // Dictionary: s_m = v_m, t1 = t x; the reflected sixth parameter
    // pq/(S t1) = t/x closes the A_I^(2) rank-1 kernel.
    cplx t1 = t * x;
    GammaTable g(nome);
    std::array<cplx, 6> ts = {v[0], v[1], v[2], v[3], t1, t / x};
    for (cplx c : ts)
        if (std::abs(c) > std::exp(-0.02))
            throw pole_error("bailey_corollary_AI2: kernel coefficient too close to the torus");
    auto fker = [&](cplx z) {
        cplx val = g.inv_self_dual(z * z);
        for (cplx c : ts) val *= g.pair(c, z);
        return val;
    };
    QuadResult r = integrate_circle(fker, spec);
    cplx lhs = g(S) * kappa_times_mean(g, r.value);
    cplx rhs = 1.0;
    for (cplx vm : v) rhs *= g(t1 * vm) / g(S * t1 / vm);
    for (int l = 0; l < 4; ++l)
        for (int m = l + 1; m < 4; ++m) rhs *= g(S / (v[l] * v[m]));
    auto rep = make_report("bailey-corollary-AI2", lhs, rhs, 1e-7);
    rep.meta["nodes"] = std::to_string(r.nodes);
    return rep;
}

}  // namespace ehf
