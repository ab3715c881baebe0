#include "ehf/biorthogonal.hpp"

#include <cmath>

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};

cplx expi(cplx x) { return std::exp(2.0 * kPi * kI * x); }
}  // namespace

bool BiorthParams::admissible(int n_max, int m_max, double margin) const {
    double cap = std::exp(-margin);
    double aq = std::abs(nome.q), ap = std::abs(nome.p);
    cplx Av = A();
    if (std::abs(nome.p * nome.q) >= std::abs(Av)) return false;
    for (int j = 0; j < 4; ++j)
        if (std::abs(t[j]) > cap) return false;
    if (std::abs(t[4]) * std::pow(aq, -m_max) > cap) return false;
    if (ap * std::pow(aq, 1 - n_max) / std::abs(Av) > cap) return false;
    return true;
}

cplx weight(cplx z, const BiorthParams& par) {
    GammaTable g(par.nome);
    cplx v = g.inv_self_dual(z * z) / (g(par.A() * z) * g(par.A() / z));
    for (cplx tm : par.t) v *= g.pair(tm, z);
    return v;
}

cplx norm_constant(const BiorthParams& par) {
    GammaTable g(par.nome);
    cplx num = 1.0;
    for (int m = 0; m < 5; ++m)
        for (int k = m + 1; k < 5; ++k) num *= g(par.t[m] * par.t[k]);
    cplx den = 1.0;
    for (int m = 0; m < 5; ++m) den *= g(par.A() / par.t[m]);
    return num / den;
}

cplx inner_product(int n, int l, int m, int k, const BiorthParams& par, const ContourSpec& spec) {
    if (n < 0 || l < 0 || m < 0 || k < 0)
        throw std::domain_error("inner_product: indices must be nonnegative");
    if (k != l || (k != 0 && k != 1))
        throw std::domain_error("inner_product: only k = l = 0 (and the gated k = l = 1 probe)");
    if (!par.admissible(std::max(n, m), std::max(n, m)))
        throw pole_error("inner_product: unit circle cannot separate the pole sequences");
    if (k == 1) {
        // The p-shifted two-index contour needs p^{1-l} q^{1-n} / A inside:
        // its first member is 1/A with |A| < 1, so T never works.  Recorded
        // honestly instead of silently integrating past crossed poles.
        throw pole_error("inner_product: k = l = 1 box is not T-admissible for |A| < 1");
    }

    GammaTable g(par.nome);
    RnParams base = par.rn();
    RnParams swapped{par.t, SeriesBase(par.nome.swapped())};
    cplx A = par.A();

    auto f = [&](cplx z) {
        cplx v = g.inv_self_dual(z * z) / (g(A * z) * g(A / z));
        for (cplx tm : par.t) v *= g.pair(tm, z);
        cplx Tn = eval_T(n, z, base);
        if (l > 0) Tn *= eval_T(l, z, swapped);
        cplx Rm = eval_R(m, z, base);
        if (k > 0) Rm *= eval_R(k, z, swapped);
        return v * Tn * Rm;
    };
    QuadResult r = integrate_circle(f, spec);
    return kappa_times_mean(g, r.value);
}

cplx h_norm(int nn, const BiorthParams& par) {
    const cplx q = par.nome.q, p = par.nome.p;
    const auto& t = par.t;
    const cplx A = par.A();
    auto ep = [&](cplx x) { return epoch(x, nn, par.nome); };
    cplx num = theta(A / (q * t[4]), p) * ep(q) * ep(q * t[3] / t[4]) * ep(t[0] * t[1]) *
               ep(t[0] * t[2]) * ep(t[1] * t[2]) * ep(A * t[3]) * std::pow(q, -nn);
    cplx den = theta(A * std::pow(q, 2 * nn) / (t[4] * q), p) * ep(1.0 / (t[3] * t[4])) *
               ep(t[0] * t[3]) * ep(t[1] * t[3]) * ep(t[2] * t[3]) * ep(A / (q * t[3])) *
               ep(A / (q * t[4]));
    if (std::abs(den) < 1e-280) throw std::domain_error("h_norm: vanishing denominator epoch");
    return num / den;
}

namespace {

RnParams additive_params(const std::array<cplx, 5>& g, cplx w1, cplx w2, cplx w3) {
    // Series base q = e^{2 pi i w1/w2} may sit on the unit circle; only the
    // theta base p = e^{2 pi i w3/w2} must stay inside.
    SeriesBase base(expi(w1 / w2), expi(w3 / w2));
    return RnParams{{expi(g[0] / w2), expi(g[1] / w2), expi(g[2] / w2), expi(g[3] / w2),
                     expi(g[4] / w2)},
                    base};
}

}  // namespace

cplx eval_r_additive(int n, cplx u, const std::array<cplx, 5>& g, cplx w1, cplx w2, cplx w3) {
    return eval_R(n, expi(u / w2), additive_params(g, w1, w2, w3));
}

cplx eval_s_additive(int n, cplx u, const std::array<cplx, 5>& g, cplx w1, cplx w2, cplx w3) {
    return eval_T(n, expi(u / w2), additive_params(g, w1, w2, w3));
}

std::pair<cplx, cplx> unit_circle_products(int n, int m, cplx u, const std::array<cplx, 5>& g,
                                           const PeriodTriple& pe) {
    cplx r = eval_r_additive(n, u, g, pe.omega1, pe.omega2, pe.omega3) *
             eval_r_additive(m, u, g, pe.omega2, pe.omega1, pe.omega3);
    cplx s = eval_s_additive(n, u, g, pe.omega1, pe.omega2, pe.omega3) *
             eval_s_additive(m, u, g, pe.omega2, pe.omega1, pe.omega3);
    return {r, s};
}

}  // namespace ehf
