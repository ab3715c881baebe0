#include "ehf/gamma.hpp"

#include <cmath>

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};
constexpr double kPoleTol = 1e-10;

cplx expi(cplx x) { return std::exp(2.0 * kPi * kI * x); }
}  // namespace

GammaTable::GammaTable(cplx p, cplx q, double tail_eps)
    : p_(p), q_(q), pq_(p * q), tail_eps_(tail_eps) {
    if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
        throw std::domain_error("GammaTable: |p|, |q| must be < 1");
    rho_ = std::max(std::abs(p), std::abs(q));
    series_cap_ = 0.85;
    if (rho_ > 0.0) {
        // d_n decays like rho^n; the series argument is bounded by cap/rho,
        // so terms decay like cap^n.  Table depth for |term| < eps/10.
        int depth = static_cast<int>(std::ceil(std::log(tail_eps * 0.1) / std::log(series_cap_))) + 4;
        dn_over_n_.resize(depth + 1);
        cplx pn = 1.0, qn = 1.0;
        for (int n = 1; n <= depth; ++n) {
            pn *= p_;
            qn *= q_;
            // d_n = 1/((1-p^n)(1-q^n)) - 1, written without the cancelling
            // subtraction so the tail keeps its q^n-sized values.
            cplx num = pn + qn - pn * qn;
            dn_over_n_[n] = num / ((1.0 - pn) * (1.0 - qn)) / static_cast<double>(n);
        }
    }
    poch_pp_ = qpoch_inf(p, p, tail_eps);
    poch_qq_ = qpoch_inf(q, q, tail_eps);
}

bool GammaTable::series_valid(cplx z) const {
    if (dn_over_n_.empty()) return false;
    double m = std::max(std::abs(z), std::abs(pq_ / z));
    return rho_ * m <= series_cap_ && std::abs(z) > 0.0;
}

cplx GammaTable::eval_series(cplx z) const {
    cplx w = pq_ / z;
    if (std::abs(1.0 - z) < kPoleTol)
        throw pole_error("Gamma(z;p,q): argument within 1e-10 of pole lattice");
    cplx sum = 0.0;
    cplx zn = 1.0, wn = 1.0;
    double floor = tail_eps_ * 0.5;
    for (size_t n = 1; n < dn_over_n_.size(); ++n) {
        zn *= z;
        wn *= w;
        cplx term = dn_over_n_[n] * (zn - wn);
        sum += term;
        if (std::abs(term) < floor && n > 4) break;
    }
    return (1.0 - w) / (1.0 - z) * std::exp(sum);
}

cplx GammaTable::eval_product(cplx z) const {
    if (z == cplx(0.0)) throw std::domain_error("Gamma(z;p,q): z must be nonzero");
    double scale = std::max(std::abs(z), std::abs(pq_ / z)) + 1.0;
    int np = product_truncation_order(std::abs(p_), scale, tail_eps_);
    int nq = product_truncation_order(std::abs(q_), scale, tail_eps_);
    cplx inv_z = pq_ / z;  // z^{-1} p q
    cplx num = 1.0, den = 1.0;
    cplx pj = 1.0;
    for (int j = 0; j < np; ++j) {
        cplx zq = z * pj;       // z p^j q^k as k runs
        cplx wq = inv_z * pj;   // z^{-1} p^{j+1} q^{k+1} as k runs
        for (int k = 0; k < nq; ++k) {
            cplx d = 1.0 - zq;
            if (std::abs(d) < kPoleTol)
                throw pole_error("Gamma(z;p,q): argument within 1e-10 of pole lattice");
            den *= d;
            num *= 1.0 - wq;
            zq *= q_;
            wq *= q_;
        }
        pj *= p_;
    }
    return num / den;
}

cplx GammaTable::operator()(cplx z) const {
    if (series_valid(z)) return eval_series(z);
    return eval_product(z);
}

cplx GammaTable::inv_self_dual(cplx x) const {
    return -theta(x, p_, tail_eps_) * theta(x, q_, tail_eps_) / x;
}

cplx egamma(cplx z, const NomePair& nome) {
    GammaTable table(nome);
    return table(z);
}

VerificationReport egamma_symmetry_check(cplx z, const NomePair& nome) {
    GammaTable a(nome.p, nome.q, nome.tail_eps);
    GammaTable b(nome.q, nome.p, nome.tail_eps);
    // Force the product route so the two base orderings are computed
    // independently rather than through the symmetric series.
    cplx lhs = a.eval_product(z);
    cplx rhs = b.eval_product(z);
    return make_report("egamma-symmetry", lhs, rhs, 1e-13);
}

PeriodTriple::PeriodTriple(cplx w1, cplx w2, cplx w3) : omega1(w1), omega2(w2), omega3(w3) {
    if (w1 == cplx(0.0) || w2 == cplx(0.0) || w3 == cplx(0.0))
        throw std::domain_error("PeriodTriple: periods must be nonzero");
    q = expi(w1 / w2);
    p = expi(w3 / w2);
    r = expi(w3 / w1);
    qt = expi(-w2 / w1);
    pt = expi(-w2 / w3);
    rt = expi(-w1 / w3);
    standard_regime = std::abs(p) < 1.0 && std::abs(q) < 1.0;
    unit_circle_regime = std::abs(p) < 1.0 && std::abs(r) < 1.0 && std::abs(q) <= 1.0 + 1e-12;
}

cplx b22(cplx u, cplx w1, cplx w2) {
    return u * u / (w1 * w2) - u / w1 - u / w2 + w1 / (6.0 * w2) + w2 / (6.0 * w1) + 0.5;
}

cplx p_cubic(cplx u, const PeriodTriple& pe) {
    cplx h = (pe.omega1 + pe.omega2 + pe.omega3) / 2.0;
    cplx s2 = pe.omega1 * pe.omega1 + pe.omega2 * pe.omega2 + pe.omega3 * pe.omega3;
    cplx v = u - h;
    return v * (v * v - 0.25 * s2) / (3.0 * pe.omega1 * pe.omega2 * pe.omega3);
}

cplx mod_egamma(cplx u, const PeriodTriple& pe, GRep rep) {
    if (rep == GRep::auto_select) rep = pe.standard_regime ? GRep::gamma_pair : GRep::modular;
    if (rep == GRep::gamma_pair) {
        if (!pe.standard_regime)
            throw std::domain_error("mod_egamma: gamma_pair representation needs |p|,|q| < 1");
        GammaTable g1(pe.p, pe.q);
        GammaTable g2(pe.r, pe.qt);
        return g1(expi(u / pe.omega2)) * g2(pe.r * expi(-u / pe.omega1));
    }
    if (std::abs(pe.rt) >= 1.0 || std::abs(pe.pt) >= 1.0)
        throw std::domain_error("mod_egamma: modular representation needs |rt|,|pt| < 1");
    GammaTable g(pe.rt, pe.pt);
    return std::exp(-kPi * kI * p_cubic(u, pe)) * g(expi(-u / pe.omega3));
}

cplx hyperbolic_gamma(cplx u, cplx omega1, cplx omega2) {
    cplx q = expi(omega1 / omega2);
    cplx qt = expi(-omega2 / omega1);
    if (std::abs(q) >= 1.0 || std::abs(qt) >= 1.0)
        throw std::domain_error("hyperbolic_gamma: need Im(omega1/omega2) > 0");
    return qpoch_inf(expi(u / omega2), q) / qpoch_inf(expi(u / omega1) * qt, qt);
}

cplx eta_quotient(cplx tau) {
    if (tau.imag() < 0.0) throw std::domain_error("eta_quotient: Im(tau) must be >= 0");
    cplx phase = std::exp(-kPi * kI * (tau + 1.0 / tau) / 12.0);
    return phase / std::sqrt(-kI * tau);
}

}  // namespace ehf
