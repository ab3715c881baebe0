#include "ehf/series.hpp"

#include <cmath>

namespace ehf {

namespace {
constexpr double kCoefZero = 1e-280;

double rel_dist(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}
}  // namespace

VSeriesSpec::VSeriesSpec(cplx t0_, std::vector<cplx> params_, SeriesBase base_, int term_index_,
                         int N_, cplx y_)
    : t0(t0_), params(std::move(params_)), base(base_), y(y_), term_index(term_index_), N(N_) {
    if (params.empty()) throw std::invalid_argument("VSeriesSpec: empty parameter list");
    if (term_index < 1 || term_index > static_cast<int>(params.size()))
        throw std::invalid_argument("VSeriesSpec: termination index out of range");
    if (N < 0) throw std::invalid_argument("VSeriesSpec: negative termination order");
    cplx probe = params[term_index - 1] * std::pow(base.q, N);
    if (std::abs(probe - 1.0) > 1e-10)
        throw std::invalid_argument("VSeriesSpec: named parameter is not q^{-N}");
    if (balancing_defect() > 1e-10)
        throw std::invalid_argument("VSeriesSpec: balancing condition violated");
}

double VSeriesSpec::balancing_defect() const {
    int r = static_cast<int>(params.size()) + 4;
    cplx prod = 1.0;
    for (cplx t : params) prod *= t;
    cplx target = std::pow(t0, (r - 5) / 2) * std::pow(base.q, (r - 7) / 2);
    return rel_dist(prod, target);
}

cplx eval_V(const VSeriesSpec& spec, double* max_term) {
    const cplx q = spec.base.q, p = spec.base.p;
    const double eps = spec.base.tail_eps;
    // Running term ratio: O(N * r) theta evaluations, no overflow-prone
    // epoch recomputation per term.
    cplx sum = 1.0, term = 1.0;
    double biggest = 1.0;
    cplx qn = 1.0;    // q^n
    cplx q2n = 1.0;   // q^{2n}
    for (int n = 0; n < spec.N; ++n) {
        cplx ratio = theta(spec.t0 * q2n * q * q, p, eps) / theta(spec.t0 * q2n, p, eps) * q *
                     spec.y;
        // m = 0 factor: (t0)_n / (q)_n.
        {
            cplx den = theta(q * qn, p, eps);
            if (std::abs(den) < 1e-13) throw vseries_error("eval_V: vanishing denominator", 0, n);
            ratio *= theta(spec.t0 * qn, p, eps) / den;
        }
        for (size_t m = 0; m < spec.params.size(); ++m) {
            cplx den = theta(q * spec.t0 / spec.params[m] * qn, p, eps);
            if (std::abs(den) < 1e-13)
                throw vseries_error("eval_V: vanishing denominator", static_cast<int>(m + 1), n);
            ratio *= theta(spec.params[m] * qn, p, eps) / den;
        }
        term *= ratio;
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        qn *= q;
        q2n *= q * q;
    }
    if (max_term) *max_term = biggest;
    return sum;
}

cplx eval_E(std::span<const cplx> t, std::span<const cplx> w, cplx q, cplx p, cplx y, int n_terms,
            double tail_eps, double* max_term) {
    if (t.size() != w.size() + 1)
        throw std::invalid_argument("eval_E: need r+1 numerator and r denominator parameters");
    cplx sum = 1.0, term = 1.0, qn = 1.0;
    double biggest = 1.0;
    for (int n = 0; n < n_terms; ++n) {
        cplx ratio = y;
        ratio *= theta(t[0] * qn, p, tail_eps) / theta(q * qn, p, tail_eps);  // w0 = q
        for (size_t j = 0; j < w.size(); ++j)
            ratio *= theta(t[j + 1] * qn, p, tail_eps) / theta(w[j] * qn, p, tail_eps);
        term *= ratio;
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        qn *= q;
    }
    if (max_term) *max_term = biggest;
    return sum;
}

cplx eval_V12_11(const V12Params& v, const SeriesBase& base, double* max_term) {
    VSeriesSpec spec(v.t0, std::vector<cplx>(v.t.begin(), v.t.end()), base, v.term_index + 1,
                     v.N);
    return eval_V(spec, max_term);
}

VerificationReport frenkel_turaev_check(cplx t0, cplx t1, cplx t2, cplx t3, int N, cplx t5,
                                        const SeriesBase& base) {
    const cplx q = base.q;
    cplx t4 = std::pow(q, -N);
    cplx bal = t1 * t2 * t3 * t4 * t5;
    if (rel_dist(bal, q * t0 * t0) > 1e-10)
        throw std::invalid_argument("frenkel_turaev_check: prod t_m != q t0^2");

    VSeriesSpec spec(t0, {t1, t2, t3, t4, t5}, base, 4, N);
    double biggest = 1.0;
    cplx sum = eval_V(spec, &biggest);

    auto ep = [&](cplx x) { return epoch(x, N, base.q, base.p, base.tail_eps); };
    cplx qt0 = q * t0;
    cplx rhs = ep(qt0) * ep(qt0 / (t1 * t2)) * ep(qt0 / (t1 * t3)) * ep(qt0 / (t2 * t3)) /
               (ep(qt0 / (t1 * t2 * t3)) * ep(qt0 / t1) * ep(qt0 / t2) * ep(qt0 / t3));

    auto rep = make_report("frenkel-turaev", sum, rhs, 1e-12, biggest);
    rep.meta["N"] = std::to_string(N);
    rep.meta["max_term"] = format_double(biggest);
    return rep;
}

namespace {

V12Params r_params(int n, cplx z, const RnParams& par, bool dual) {
    const cplx q = par.base.q;
    const auto& t = par.t;
    cplx A = par.A();
    V12Params v;
    if (!dual) {
        v.t0 = t[3] / t[4];
        v.t = {q / (t[0] * t[4]), q / (t[1] * t[4]), q / (t[2] * t[4]),
               t[3] * z,          t[3] / z,          std::pow(q, -n),
               A * std::pow(q, n - 1) / t[4]};
    } else {
        v.t0 = A * t[3] / q;
        v.t = {A / t[0], A / t[1], A / t[2], t[3] * z, t[3] / z, std::pow(q, -n),
               A * std::pow(q, n - 1) / t[4]};
    }
    v.term_index = 5;
    v.N = n;
    return v;
}

}  // namespace

cplx eval_R(int n, cplx z, const RnParams& par) {
    if (n < 0) throw std::domain_error("eval_R: n must be >= 0");
    return eval_V12_11(r_params(n, z, par, false), par.base);
}

cplx eval_T(int n, cplx z, const RnParams& par) {
    if (n < 0) throw std::domain_error("eval_T: n must be >= 0");
    return eval_V12_11(r_params(n, z, par, true), par.base);
}

namespace {

struct Gauge {
    cplx xi, eta, p;
    double eps;
    cplx gamma(cplx z) const {
        return theta(z * xi, p, eps) * theta(z / xi, p, eps) /
               (theta(z * eta, p, eps) * theta(z / eta, p, eps));
    }
};

}  // namespace

VerificationReport check_recurrence_R(int n, cplx z, const RnParams& par, cplx xi, cplx eta) {
    if (n < 0) throw std::domain_error("check_recurrence_R: n must be >= 0");
    const cplx q = par.base.q, p = par.base.p;
    const auto& t = par.t;
    const cplx A = par.A();
    Gauge g{xi, eta, p, par.base.tail_eps};

    auto rho = [&](cplx x) {
        cplx num = theta_prod({x, t[3] / (t[4] * x), q * t[3] / (t[4] * x), q * x / (t[0] * t[1]),
                               q * x / (t[0] * t[2]), q * x / (t[1] * t[2]), q * q * eta * x / A,
                               q * q * x / (A * eta)},
                              p);
        cplx den = theta_prod({q * t[4] * x * x / A, q * q * t[4] * x * x / A}, p);
        if (std::abs(den) < kCoefZero)
            throw std::domain_error("check_recurrence_R: degenerate gauge");
        return num / den;
    };
    cplx delta = theta_prod({q * q * t[3] / A, q / (t[0] * t[4]), q / (t[1] * t[4]),
                             q / (t[2] * t[4]), t[3] * eta, t[3] / eta},
                            p);

    cplx gz = g.gamma(z);
    cplx alpha_np1 = g.gamma(std::pow(q, n + 1) / t[4]);
    cplx beta_nm1 = g.gamma(std::pow(q, n - 2) * A);

    double b0 = 1.0, b1 = 1.0, b2 = 1.0;
    cplx rn = eval_V12_11(r_params(n, z, par, false), par.base, &b0);
    cplx rnp = eval_V12_11(r_params(n + 1, z, par, false), par.base, &b1);
    cplx rho_minus = rho(std::pow(q, -n));
    cplx rnm = 0.0;
    if (n >= 1)  // rho(q^0) = 0 kills the n = 0 branch
        rnm = eval_V12_11(r_params(n - 1, z, par, false), par.base, &b2);

    cplx cplus = (gz - alpha_np1) * rho(A * std::pow(q, n - 1) / t[4]);
    cplx cminus = (gz - beta_nm1) * rho_minus;
    cplx term_plus = cplus * (rnp - rn);
    cplx term_minus = cminus * (rnm - rn);
    cplx term_zero = delta * (gz - g.gamma(t[3])) * rn;

    double inner = std::max({std::abs(cplus) * std::max(b0, b1), std::abs(cminus) * b2,
                             std::abs(delta * (gz - g.gamma(t[3]))) * b0});
    double scale = std::max({std::abs(term_plus), std::abs(term_minus), std::abs(term_zero),
                             inner});
    auto rep = make_report("recurrence-R", term_plus + term_minus, -term_zero, 1e-10, scale);
    rep.meta["n"] = std::to_string(n);
    return rep;
}

cplx dmu_coefficient(cplx z, cplx mu, const RnParams& par) {
    const cplx q = par.base.q, p = par.base.p;
    const auto& t = par.t;
    const cplx A = par.A();
    cplx num = theta_prod({p * q * mu * z / t[4], p * q * q * z / (A * mu), t[4] * z / q}, p);
    for (int r = 0; r < 5; ++r) num *= theta(t[r] * z, p);
    return num / theta_prod({z * z, q * z * z}, p);
}

cplx dmu_kappa(cplx mu, const RnParams& par) {
    const cplx q = par.base.q, p = par.base.p;
    const auto& t = par.t;
    cplx val = theta_prod({par.A() * mu / (q * t[4]), 1.0 / mu}, p);
    for (int r = 0; r < 4; ++r) val *= theta(t[r] * t[4] / q, p);
    return val;
}

VerificationReport check_Dmu_annihilates_R(int n, cplx z, const RnParams& par) {
    const cplx q = par.base.q;
    cplx mu = std::pow(q, n);
    double b0 = 1.0, b1 = 1.0, b2 = 1.0;
    cplx rz = eval_V12_11(r_params(n, z, par, false), par.base, &b0);
    cplx rqz = eval_V12_11(r_params(n, q * z, par, false), par.base, &b1);
    cplx rzq = eval_V12_11(r_params(n, z / q, par, false), par.base, &b2);
    cplx cu = dmu_coefficient(z, mu, par), cd = dmu_coefficient(1.0 / z, mu, par);
    cplx up = cu * (rqz - rz);
    cplx down = cd * (rzq - rz);
    cplx diag = dmu_kappa(mu, par) * rz;
    double inner = std::max({std::abs(cu) * std::max(b0, b1), std::abs(cd) * std::max(b0, b2),
                             std::abs(dmu_kappa(mu, par)) * b0});
    double scale = std::max({std::abs(up), std::abs(down), std::abs(diag), inner});
    auto rep = make_report("dmu-annihilates-R", up + down, -diag, 1e-9, scale);
    rep.meta["n"] = std::to_string(n);
    return rep;
}

namespace {

// 12V11 value with termination bookkeeping in slot 5 (0-based) and guard for
// zero prefactors: when |coef| vanishes the series is not evaluated at all.
cplx e12(cplx t0, std::array<cplx, 7> t, int N, const SeriesBase& base,
         double* max_term = nullptr) {
    V12Params v;
    v.t0 = t0;
    v.t = t;
    v.term_index = 5;
    v.N = N;
    return eval_V12_11(v, base, max_term);
}

}  // namespace

VerificationReport check_E_contiguous(int kind, cplx t0, const std::array<cplx, 7>& t, int n,
                                      const SeriesBase& base) {
    const cplx q = base.q, p = base.p;
    if (rel_dist(t[5], std::pow(q, -n)) > 1e-10)
        throw std::invalid_argument("check_E_contiguous: t6 must equal q^{-n}");

    auto shifted_up = [&](std::array<cplx, 7> s) {
        // t0 -> q^2 t0, t1..t5 -> q t_r
        for (int r = 0; r < 5; ++r) s[r] *= q;
        return s;
    };

    cplx term1 = 0.0, term2 = 0.0, term3 = 0.0;
    double inner = 1.0;  // largest inner series term times its coefficient
    double big = 1.0;
    std::string id = "e12-contiguous-" + std::to_string(kind);

    if (kind == 1) {
        cplx e = e12(t0, t, n, base, &big);
        inner = std::max(inner, big);
        std::array<cplx, 7> td = t;
        td[5] /= q;  // q^{-(n+1)}
        td[6] *= q;
        cplx ed = e12(t0, td, n + 1, base, &big);
        inner = std::max(inner, big);
        cplx coef = theta_prod({q * t0, q * q * t0, q * t[6] / t[5], t[5] * t[6] / (q * t0)}, p) /
                    theta_prod({q * t0 / t[5], q * q * t0 / t[5], t0 / t[6], t[6] / (q * t0)}, p);
        for (int r = 0; r < 5; ++r) coef *= theta(t[r], p) / theta(q * t0 / t[r], p);
        term1 = e;
        term2 = -ed;
        if (std::abs(coef) > kCoefZero) {
            std::array<cplx, 7> ts = shifted_up(t);
            ts[6] *= q;
            term3 = -coef * e12(q * q * t0, ts, n, base, &big);
            inner = std::max(inner, std::abs(coef) * big);
        }
    } else if (kind == 2) {
        std::array<cplx, 7> s1 = shifted_up(t);
        s1[6] *= q;  // (q t1..q t5, t6, q t7)
        cplx c1 = theta(t[6], p);
        for (int r = 0; r < 5; ++r) c1 *= theta(t[r] * t[5] / (q * t0), p);
        c1 /= theta_prod({t[5] / (q * t0), t[5] / (q * q * t0), t[5] / t[6]}, p);
        term1 = c1 * e12(q * q * t0, s1, n, base, &big);
        inner = std::max(inner, std::abs(c1) * big);

        cplx c2 = theta(t[5], p);
        if (std::abs(c2) > kCoefZero) {
            std::array<cplx, 7> s2 = shifted_up(t);
            s2[5] *= q;  // (q t1..q t6, t7)
            for (int r = 0; r < 5; ++r) c2 *= theta(t[r] * t[6] / (q * t0), p);
            c2 /= theta_prod({t[6] / (q * t0), t[6] / (q * q * t0), t[6] / t[5]}, p);
            term2 = c2 * e12(q * q * t0, s2, n - 1, base, &big);
            inner = std::max(inner, std::abs(c2) * big);
        }

        cplx cr = 1.0 / theta_prod({q * t0, q * q * t0}, p);
        for (int r = 0; r < 5; ++r) cr *= theta(q * t0 / t[r], p);
        term3 = -cr * e12(t0, t, n, base, &big);
        inner = std::max(inner, std::abs(cr) * big);
    } else if (kind == 3) {
        cplx e = e12(t0, t, n, base, &big);
        inner = std::max(inner, big);
        cplx c1 = theta_prod({t[5], t0 / t[5], q * t0 / t[5]}, p) /
                  theta_prod({q * t[5] / t[6], t[5] / t[6]}, p);
        for (int r = 0; r < 5; ++r) c1 *= theta(q * t0 / (t[6] * t[r]), p);
        if (std::abs(theta(t[5], p)) > kCoefZero) {
            std::array<cplx, 7> s1 = t;
            s1[5] *= q;  // q^{-(n-1)}
            s1[6] /= q;
            term1 = c1 * (e12(t0, s1, n - 1, base, &big) - e);
            inner = std::max(inner, std::abs(c1) * big);
        }
        cplx c2 = theta_prod({t[6], t0 / t[6], q * t0 / t[6]}, p) /
                  theta_prod({q * t[6] / t[5], t[6] / t[5]}, p);
        for (int r = 0; r < 5; ++r) c2 *= theta(q * t0 / (t[5] * t[r]), p);
        {
            std::array<cplx, 7> s2 = t;
            s2[5] /= q;
            s2[6] *= q;
            term2 = c2 * (e12(t0, s2, n + 1, base, &big) - e);
            inner = std::max(inner, std::abs(c2) * big);
        }
        cplx c0 = theta(q * t0 / (t[5] * t[6]), p);
        for (int r = 0; r < 5; ++r) c0 *= theta(t[r], p);
        term3 = c0 * e;
    } else {
        throw std::invalid_argument("check_E_contiguous: kind must be 1, 2 or 3");
    }

    double scale = std::max({std::abs(term1), std::abs(term2), std::abs(term3), inner});
    auto rep = make_report(id, term1 + term2, -term3, 1e-10, scale);
    rep.meta["n"] = std::to_string(n);
    rep.meta["inner_scale"] = format_double(inner);
    return rep;
}

}  // namespace ehf
