#include "ehf/qseries.hpp"

#include <algorithm>
#include <cmath>

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};
}  // namespace

NomePair::NomePair(cplx p_, cplx q_, double tail_eps_) : p(p_), q(q_), tail_eps(tail_eps_) {
    if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0)
        throw std::domain_error("NomePair: bases must satisfy |p| < 1 and |q| < 1");
    if (!(tail_eps > 0.0)) throw std::domain_error("NomePair: tail_eps must be positive");
    trunc_p = product_truncation_order(std::abs(p), 1.0, tail_eps);
    trunc_q = product_truncation_order(std::abs(q), 1.0, tail_eps);
}

int product_truncation_order(double base_mag, double scale, double eps) {
    if (base_mag == 0.0) return 1;
    scale = std::max(scale, 1e-300);
    double bound = eps * (1.0 - base_mag) / scale;
    if (bound >= 1.0) return 1;
    int n = static_cast<int>(std::ceil(std::log(bound) / std::log(base_mag)));
    return std::max(n, 1) + 2;
}

cplx qpoch_inf(cplx t, cplx q, double tail_eps) {
    double qm = std::abs(q);
    if (qm >= 1.0) throw std::domain_error("qpoch_inf: |q| must be < 1");
    if (t == cplx(0.0)) return 1.0;
    if (q == cplx(0.0)) return 1.0 - t;
    int n = product_truncation_order(qm, std::abs(t), tail_eps);
    cplx prod = 1.0, tq = t;
    for (int k = 0; k < n; ++k) {
        prod *= (1.0 - tq);
        tq *= q;
    }
    return prod;
}

cplx log_qpoch_inf(cplx t, cplx q, double tail_eps) {
    double qm = std::abs(q);
    if (qm >= 1.0) throw std::domain_error("log_qpoch_inf: |q| must be < 1");
    if (t == cplx(0.0)) return 0.0;
    if (q == cplx(0.0)) return std::log(1.0 - t);
    int n = product_truncation_order(qm, std::abs(t), tail_eps);
    cplx sum = 0.0, tq = t;
    for (int k = 0; k < n; ++k) {
        sum += std::log(1.0 - tq);
        tq *= q;
    }
    return sum;
}

cplx theta(cplx z, cplx p, double tail_eps) {
    if (z == cplx(0.0)) throw std::domain_error("theta: argument must be nonzero");
    if (std::abs(p) >= 1.0) throw std::domain_error("theta: |p| must be < 1");
    return qpoch_inf(z, p, tail_eps) * qpoch_inf(p / z, p, tail_eps);
}

cplx theta_prod(std::initializer_list<cplx> zs, cplx p) {
    cplx prod = 1.0;
    for (cplx z : zs) prod *= theta(z, p);
    return prod;
}

cplx theta1(cplx u, cplx tau) {
    if (tau.imag() <= 0.0) throw std::domain_error("theta1: Im(tau) must be positive");
    cplx p = std::exp(2.0 * kPi * kI * tau);
    cplx z = std::exp(2.0 * kPi * kI * u);
    cplx p8 = std::exp(2.0 * kPi * kI * tau / 8.0);
    return kI * p8 * std::exp(-kPi * kI * u) * qpoch_inf(p, p) * theta(z, p);
}

cplx epoch(cplx t, int n, const NomePair& nome) {
    return epoch(t, n, nome.q, nome.p, nome.tail_eps);
}

cplx epoch(cplx t, int n, cplx q, cplx p, double tail_eps) {
    if (n < 0) throw std::domain_error("epoch: negative order not supported");
    cplx prod = 1.0, tq = t;
    for (int j = 0; j < n; ++j) {
        prod *= theta(tq, p, tail_eps);
        tq *= q;
    }
    return prod;
}

cplx wellpoised_h(cplx z, std::span<const cplx> t, cplx p) {
    if (t.empty()) throw std::invalid_argument("wellpoised_h: empty parameter list");
    cplx t0 = t[0];
    cplx prod = 1.0;
    for (cplx tj : t) prod *= theta(tj * z, p) / theta(t0 * z / tj, p);
    return prod;
}

namespace {

bool match_up_to_permutation(std::vector<cplx> a, std::vector<cplx> b, double tol) {
    auto lex = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), lex);
    std::sort(b.begin(), b.end(), lex);
    for (size_t i = 0; i < a.size(); ++i) {
        double scale = std::max(std::abs(a[i]), std::abs(b[i]));
        if (std::abs(a[i] - b[i]) > tol * std::max(scale, 1.0)) return false;
    }
    return true;
}

bool quadruple_matches(std::span<const cplx> t, cplx p, double tol) {
    size_t r = t.size() - 1;
    if (t.size() < 5) return false;
    cplx t0 = t[0];
    for (cplx root : {std::sqrt(t0), -std::sqrt(t0)}) {
        cplx q = t[r - 3] / root;
        cplx expect[4] = {q * root, -q * root, q * root / std::sqrt(p), -q * root * std::sqrt(p)};
        // sqrt(t0/p) and sqrt(p t0) each carry their own sign freedom.
        bool ok = std::abs(t[r - 3] - expect[0]) <= tol * std::max(std::abs(expect[0]), 1.0) &&
                  std::abs(t[r - 2] - expect[1]) <= tol * std::max(std::abs(expect[1]), 1.0);
        bool ok2 = std::abs(t[r - 1] - expect[2]) <= tol * std::max(std::abs(expect[2]), 1.0) ||
                   std::abs(t[r - 1] + expect[2]) <= tol * std::max(std::abs(expect[2]), 1.0);
        bool ok3 = std::abs(t[r] - expect[3]) <= tol * std::max(std::abs(expect[3]), 1.0) ||
                   std::abs(t[r] + expect[3]) <= tol * std::max(std::abs(expect[3]), 1.0);
        if (ok && ok2 && ok3) return true;
    }
    return false;
}

}  // namespace

RatioFlags classify_ratio(std::span<const cplx> t, std::span<const cplx> w, cplx p, double tol) {
    if (t.size() != w.size()) throw std::invalid_argument("classify_ratio: length mismatch");
    RatioFlags flags;

    cplx pt = 1.0, pw = 1.0;
    for (size_t i = 0; i < t.size(); ++i) {
        pt *= t[i];
        pw *= w[i];
    }
    flags.balanced = std::abs(pt - pw) <= tol * std::max({std::abs(pt), std::abs(pw), 1.0});

    std::vector<cplx> tinv(t.size());
    for (size_t i = 0; i < t.size(); ++i) tinv[i] = 1.0 / t[i];
    flags.well_poised = match_up_to_permutation(std::vector<cplx>(w.begin(), w.end()), tinv, tol);

    flags.very_well_poised = flags.well_poised && quadruple_matches(t, p, tol);

    if (flags.balanced) {
        // Ellipticity of h(z) = prod theta(t_j z)/theta(w_j z) under z -> pz.
        const cplx samples[3] = {cplx(1.13, 0.21), cplx(0.83, -0.44), cplx(-0.37, 0.95)};
        double worst = 0.0;
        for (cplx z : samples) {
            cplx h = 1.0, hp = 1.0;
            for (size_t j = 0; j < t.size(); ++j) {
                h *= theta(t[j] * z, p) / theta(w[j] * z, p);
                hp *= theta(t[j] * p * z, p) / theta(w[j] * p * z, p);
            }
            worst = std::max(worst, std::abs(hp - h) / std::max(std::abs(h), 1e-300));
        }
        flags.ellipticity_residual = worst;
    }
    return flags;
}

}  // namespace ehf
