#include "ehf/beta.hpp"

#include <cmath>

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};

cplx expi(cplx x) { return std::exp(2.0 * kPi * kI * x); }

double rel_dist(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

void require_inside(std::span<const cplx> ts, double margin) {
    double cap = std::exp(-margin);
    for (cplx t : ts)
        if (std::abs(t) > cap)
            throw pole_error("contour margin violated: parameter modulus too close to 1");
}
}  // namespace

cplx kappa_times_mean(const GammaTable& g, cplx mean) {
    // kappa \oint f dz/z = (p;p)(q;q)/(4 pi i) * 2 pi i * mean = (p;p)(q;q)/2 * mean.
    return g.poch_pp() * g.poch_qq() / 2.0 * mean;
}

BetaParams BetaParams::from_free(const std::array<cplx, 5>& t5, const NomePair& nome) {
    BetaParams par{{}, nome};
    cplx prod = 1.0;
    for (int i = 0; i < 5; ++i) {
        par.t[i] = t5[i];
        prod *= t5[i];
    }
    par.t[5] = nome.p * nome.q / prod;
    return par;
}

double BetaParams::balancing_defect() const {
    cplx prod = 1.0;
    for (cplx x : t) prod *= x;
    return rel_dist(prod, nome.p * nome.q);
}

VParams VParams::from_free(const std::array<cplx, 7>& t7, const NomePair& nome) {
    VParams par{{}, nome};
    cplx prod = 1.0;
    for (int i = 0; i < 7; ++i) {
        par.t[i] = t7[i];
        prod *= t7[i];
    }
    cplx pq = nome.p * nome.q;
    par.t[7] = pq * pq / prod;
    return par;
}

double VParams::balancing_defect() const {
    cplx prod = 1.0;
    for (cplx x : t) prod *= x;
    cplx pq = nome.p * nome.q;
    return rel_dist(prod, pq * pq);
}

bool VParams::standard_contour(double margin) const {
    double cap = std::exp(-margin);
    for (cplx x : t)
        if (std::abs(x) > cap) return false;
    return true;
}

VerificationReport elliptic_beta_check(const BetaParams& par, const ContourSpec& spec) {
    if (par.balancing_defect() > 1e-12)
        throw std::invalid_argument("elliptic_beta_check: prod t_j != pq");
    require_inside(par.t, 0.02);
    GammaTable g(par.nome);
    auto f = [&](cplx z) {
        cplx v = g.inv_self_dual(z * z);
        for (cplx tk : par.t) v *= g.pair(tk, z);
        return v;
    };
    QuadResult q = integrate_circle(f, spec);
    cplx lhs = kappa_times_mean(g, q.value);
    cplx rhs = 1.0;
    for (int j = 0; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k) rhs *= g(par.t[j] * par.t[k]);
    auto rep = make_report("elliptic-beta", lhs, rhs, 1e-9);
    rep.meta["nodes"] = std::to_string(q.nodes);
    rep.meta["quad_err"] = format_double(q.err_est);
    return rep;
}

VerificationReport rahman_check(const std::array<cplx, 5>& t, cplx q, const ContourSpec& spec) {
    require_inside(t, 0.02);
    if (std::abs(q) >= 1.0) throw std::domain_error("rahman_check: |q| must be < 1");
    cplx A = t[0] * t[1] * t[2] * t[3] * t[4];
    auto f = [&](cplx z) {
        cplx num = qpoch_inf(z * z, q) * qpoch_inf(1.0 / (z * z), q) * qpoch_inf(A * z, q) *
                   qpoch_inf(A / z, q);
        cplx den = 1.0;
        for (cplx tm : t) den *= qpoch_inf(tm * z, q) * qpoch_inf(tm / z, q);
        return num / den;
    };
    QuadResult r = integrate_circle(f, spec);
    cplx lhs = qpoch_inf(q, q) / 2.0 * r.value;
    cplx rhs = 1.0;
    for (int m = 0; m < 5; ++m) {
        cplx others = 1.0;  // A / t_m without the 0/0 at the t_m = 0 limit
        for (int k = 0; k < 5; ++k)
            if (k != m) others *= t[k];
        rhs *= qpoch_inf(others, q);
    }
    for (int j = 0; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k) rhs /= qpoch_inf(t[j] * t[k], q);
    auto rep = make_report("rahman", lhs, rhs, 1e-10);
    rep.meta["nodes"] = std::to_string(r.nodes);
    return rep;
}

VerificationReport askey_wilson_check(const std::array<cplx, 4>& t, cplx q,
                                      const ContourSpec& spec) {
    require_inside(t, 0.02);
    if (std::abs(q) >= 1.0) throw std::domain_error("askey_wilson_check: |q| must be < 1");
    auto f = [&](cplx z) {
        cplx num = qpoch_inf(z * z, q) * qpoch_inf(1.0 / (z * z), q);
        cplx den = 1.0;
        for (cplx tm : t) den *= qpoch_inf(tm * z, q) * qpoch_inf(tm / z, q);
        return num / den;
    };
    QuadResult r = integrate_circle(f, spec);
    cplx lhs = qpoch_inf(q, q) / 2.0 * r.value;
    cplx rhs = qpoch_inf(t[0] * t[1] * t[2] * t[3], q);
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) rhs /= qpoch_inf(t[j] * t[k], q);
    auto rep = make_report("askey-wilson", lhs, rhs, 1e-10);
    rep.meta["nodes"] = std::to_string(r.nodes);
    return rep;
}

namespace {

// G(u) through the modular representation with a shared Gamma table; valid
// under the modified-beta theorem hypotheses in both regimes.
struct ModG {
    const PeriodTriple& pe;
    GammaTable g;
    explicit ModG(const PeriodTriple& pe_) : pe(pe_), g(pe_.rt, pe_.pt) {}
    cplx operator()(cplx u) const {
        return std::exp(-kPi * kI * p_cubic(u, pe)) * g(expi(-u / pe.omega3));
    }
    // 1 / (G(2u) G(-2u)) with the Gamma(x) Gamma(1/x) pair folded into thetas.
    cplx inv_pm2(cplx u) const {
        cplx x = expi(-2.0 * u / pe.omega3);
        cplx phase = std::exp(kPi * kI * (p_cubic(2.0 * u, pe) + p_cubic(-2.0 * u, pe)));
        return phase * (-theta(x, pe.rt) * theta(x, pe.pt) / x);
    }
};

}  // namespace

VerificationReport modified_beta_check(const std::array<cplx, 6>& g, const PeriodTriple& pe,
                                       const ContourSpec& spec) {
    cplx sum_w = pe.omega1 + pe.omega2 + pe.omega3;
    cplx sum_g = 0.0;
    for (cplx gj : g) sum_g += gj;
    if (rel_dist(sum_g, sum_w) > 1e-12)
        throw std::invalid_argument("modified_beta_check: sum g_j != sum omega_k");
    for (cplx gj : g)
        if ((gj / pe.omega3).imag() >= 0.0)
            throw pole_error("modified_beta_check: Im(g_j/omega3) must be negative");

    ModG G(pe);
    auto f = [&](cplx u) {
        cplx v = G.inv_pm2(u);
        for (cplx gj : g) v *= G(gj + u) * G(gj - u);
        return v / pe.omega2;
    };
    ContourSpec seg = spec;
    seg.kind = ContourSpec::Kind::segment;
    seg.a = -pe.omega3 / 2.0;
    seg.b = pe.omega3 / 2.0;
    QuadResult r = integrate_segment(f, seg);

    cplx pp = qpoch_inf(pe.p, pe.p), rr = qpoch_inf(pe.r, pe.r);
    cplx kappa_t;
    if (std::abs(pe.q) < 1.0 - 1e-8) {
        kappa_t = -pp * rr * qpoch_inf(pe.q, pe.q) / (2.0 * qpoch_inf(pe.qt, pe.qt));
    } else {
        kappa_t = -pp * rr * eta_quotient(pe.omega1 / pe.omega2) / 2.0;
    }
    cplx lhs = kappa_t * r.value;

    cplx rhs = 1.0;
    for (int j = 0; j < 6; ++j)
        for (int m = j + 1; m < 6; ++m) rhs *= G(g[j] + g[m]);

    auto rep = make_report("modified-beta", lhs, rhs, 1e-8);
    rep.meta["nodes"] = std::to_string(r.nodes);
    rep.meta["regime"] = std::abs(pe.q) < 1.0 - 1e-8 ? "standard" : "unit-circle";
    return rep;
}

namespace {

// log S(u; w1, w2).
cplx log_S(cplx u, cplx w1, cplx w2, cplx q, cplx qt) {
    return log_qpoch_inf(expi(u / w2), q) - log_qpoch_inf(expi(u / w1) * qt, qt);
}

}  // namespace

VerificationReport mellin_barnes_check(const std::array<cplx, 5>& g, cplx omega1, cplx omega2,
                                       double t_cut, const ContourSpec& spec, double tol) {
    cplx q = expi(omega1 / omega2), qt = expi(-omega2 / omega1);
    if (std::abs(q) >= 1.0 || std::abs(qt) >= 1.0)
        throw std::domain_error("mellin_barnes_check: need Im(omega1/omega2) > 0");
    cplx A = 0.0;
    for (cplx gj : g) A += gj;
    for (cplx gj : g)
        if ((gj / omega2).real() <= 0.0)
            throw std::domain_error("mellin_barnes_check: Re(g_j/omega2) must be positive");
    if (((A - omega1) / omega2).real() >= 1.0)
        throw std::domain_error("mellin_barnes_check: Re((A-omega1)/omega2) must be < 1");

    auto logS = [&](cplx u) { return log_S(u, omega1, omega2, q, qt); };
    auto f = [&](cplx u) {
        cplx ln = logS(2.0 * u) + logS(-2.0 * u) + logS(A + u) + logS(A - u);
        for (cplx gj : g) ln -= logS(gj + u) + logS(gj - u);
        return std::exp(ln) / omega2;
    };
    ContourSpec seg = spec;
    seg.kind = ContourSpec::Kind::segment;
    seg.a = -kI * omega2 * t_cut;
    seg.b = kI * omega2 * t_cut;
    QuadResult r = integrate_segment(f, seg);

    // Endpoint magnitude and local decay rate give the tail heuristic.
    double f_end = std::abs(f(seg.b)), f_in = std::abs(f(kI * omega2 * (t_cut * 0.9)));
    double rate = std::log(std::max(f_in, 1e-300) / std::max(f_end, 1e-300)) / (0.1 * t_cut);
    double tail = rate > 0.0 ? 2.0 * f_end / rate : 2.0 * f_end * t_cut;

    auto Sval = [&](cplx u) { return std::exp(log_S(u, omega1, omega2, q, qt)); };
    cplx rhs = -2.0 * qpoch_inf(qt, qt) / qpoch_inf(q, q);
    for (cplx gj : g) rhs *= Sval(A - gj);
    for (int j = 0; j < 5; ++j)
        for (int m = j + 1; m < 5; ++m) rhs /= Sval(g[j] + g[m]);

    auto rep = make_report("mellin-barnes", r.value, rhs, tol);
    rep.meta["nodes"] = std::to_string(r.nodes);
    rep.meta["t_cut"] = format_double(t_cut);
    rep.meta["tail_estimate"] = format_double(tail);
    double scale = std::max(std::abs(r.value), std::abs(rhs));
    if (rep.verdict == Verdict::fail && tail > tol * std::max(scale, 1e-300))
        rep.verdict = Verdict::inconclusive;
    return rep;
}

cplx eval_Vfn(const VParams& par, const ContourSpec& spec) {
    if (par.balancing_defect() > 1e-12)
        throw std::invalid_argument("eval_Vfn: prod t_j != p^2 q^2");
    if (!par.standard_contour())
        throw pole_error("eval_Vfn: parameters leave the unit-circle contour inadmissible");
    GammaTable g(par.nome);
    auto f = [&](cplx z) {
        cplx v = g.inv_self_dual(z * z);
        for (cplx tk : par.t) v *= g.pair(tk, z);
        return v;
    };
    QuadResult q = integrate_circle(f, spec);
    return kappa_times_mean(g, q.value);
}

namespace {

VerificationReport untestable(std::string id, const std::string& why) {
    VerificationReport rep;
    rep.id = std::move(id);
    rep.verdict = Verdict::untestable;
    rep.meta["reason"] = why;
    return rep;
}

}  // namespace

VerificationReport check_E7_transform(int kind, const VParams& par, const ContourSpec& spec) {
    const cplx pq = par.nome.p * par.nome.q;
    GammaTable g(par.nome);
    std::string id = "e7-transform-" + std::to_string(kind);
    if (!par.standard_contour()) return untestable(id, "original parameters leave |t|<1");

    cplx lhs = eval_Vfn(par, spec);
    const auto& t = par.t;

    auto try_branch = [&](const std::array<cplx, 8>& s, cplx prefactor) -> VerificationReport {
        VParams sp{s, par.nome};
        if (!sp.standard_contour())
            return untestable(id, "transformed parameters leave |t|<1 at this point");
        cplx rhs = prefactor * eval_Vfn(sp, spec);
        return make_report(id, lhs, rhs, 1e-8);
    };

    VerificationReport best;
    best.verdict = Verdict::untestable;
    auto consider = [&](const VerificationReport& cand, const char* branch) {
        if (cand.verdict == Verdict::untestable) {
            if (best.id.empty()) best = cand;
            return;
        }
        if (best.id.empty() || best.verdict == Verdict::untestable ||
            cand.rel_residual < best.rel_residual) {
            best = cand;
            best.meta["branch"] = branch;
        }
    };

    if (kind == 1) {
        cplx eps = std::sqrt(t[0] * t[1] * t[2] * t[3] / pq);
        cplx prefactor = 1.0;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k)
                prefactor *= g(t[j] * t[k]) * g(t[j + 4] * t[k + 4]);
        for (int sign = 0; sign < 2; ++sign) {
            cplx e = sign ? -eps : eps;
            std::array<cplx, 8> s;
            for (int j = 0; j < 4; ++j) s[j] = t[j] / e;
            for (int j = 4; j < 8; ++j) s[j] = t[j] * e;
            consider(try_branch(s, prefactor), sign ? "-sqrt" : "+sqrt");
        }
    } else if (kind == 2) {
        cplx T = t[0] * t[1] * t[2] * t[3], U = t[4] * t[5] * t[6] * t[7];
        cplx prefactor = 1.0;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) prefactor *= g(t[j] * t[k + 4]);
        cplx rT = std::sqrt(T), rU = std::sqrt(U);
        for (int sa = 0; sa < 2; ++sa)
            for (int sb = 0; sb < 2; ++sb) {
                cplx a = sa ? -rT : rT, b = sb ? -rU : rU;
                std::array<cplx, 8> s;
                for (int j = 0; j < 4; ++j) s[j] = a / t[j];
                for (int j = 4; j < 8; ++j) s[j] = b / t[j];
                consider(try_branch(s, prefactor), sa == sb ? "aligned" : "opposed");
            }
    } else if (kind == 3) {
        cplx prefactor = 1.0;
        for (int j = 0; j < 8; ++j)
            for (int k = j + 1; k < 8; ++k) prefactor *= g(t[j] * t[k]);
        cplx root = std::sqrt(pq);
        for (int sign = 0; sign < 2; ++sign) {
            cplx e = sign ? -root : root;
            std::array<cplx, 8> s;
            for (int j = 0; j < 8; ++j) s[j] = e / t[j];
            consider(try_branch(s, prefactor), sign ? "-sqrt" : "+sqrt");
        }
    } else {
        throw std::invalid_argument("check_E7_transform: kind must be 1, 2 or 3");
    }
    if (best.id.empty()) best.id = id;
    return best;
}

VerificationReport check_V_contiguous(int kind, const VParams& par, const ContourSpec& spec) {
    const cplx q = par.nome.q, p = par.nome.p;
    const auto& t = par.t;
    std::string id = "v-contiguous-" + std::to_string(kind);

    auto shifted = [&](int up, int down) {
        VParams s = par;
        s.t[up] *= q;
        s.t[down] /= q;
        return s;
    };
    auto V = [&](const VParams& v) { return eval_Vfn(v, spec); };

    cplx term1, term2, term3;
    if (kind == 1) {
        VParams v67 = shifted(5, 7);  // q t6, t8/q
        VParams v77 = shifted(6, 7);  // q t7, t8/q
        if (!v67.standard_contour() || !v77.standard_contour())
            return untestable(id, "shifted parameters leave |t|<1");
        term1 = t[6] * theta_prod({t[7] * t[6] / q, t[7] / (q * t[6])}, p) * V(v67);
        term2 = -t[5] * theta_prod({t[7] * t[5] / q, t[7] / (q * t[5])}, p) * V(v77);
        term3 = -t[6] * theta_prod({t[5] * t[6], t[5] / t[6]}, p) * V(par);
    } else if (kind == 2) {
        VParams w67 = shifted(7, 5);  // t6/q, q t8
        VParams w77 = shifted(7, 6);  // t7/q, q t8
        if (!w67.standard_contour() || !w77.standard_contour())
            return untestable(id, "shifted parameters leave |t|<1");
        cplx c1 = t[5] * theta(t[6] / (q * t[7]), p);
        for (int k = 0; k < 5; ++k) c1 *= theta(t[5] * t[k] / q, p);
        cplx c2 = t[6] * theta(t[5] / (q * t[7]), p);
        for (int k = 0; k < 5; ++k) c2 *= theta(t[6] * t[k] / q, p);
        cplx c3 = t[5] * theta(t[6] / t[5], p);
        for (int k = 0; k < 5; ++k) c3 *= theta(t[7] * t[k], p);
        term1 = c1 * V(w67);
        term2 = -c2 * V(w77);
        term3 = -c3 * V(par);
    } else {
        throw std::invalid_argument("check_V_contiguous: kind must be 1 or 2");
    }
    double scale = std::max({std::abs(term1), std::abs(term2), std::abs(term3)});
    return make_report(id, term1 + term2, -term3, 1e-8, scale);
}

namespace {

// U(t) = V(t) / prod_{k=1}^{7} Gamma(t_k t_8, t_k / t_8).
cplx eval_U(const VParams& par, const GammaTable& g, const ContourSpec& spec) {
    cplx den = 1.0;
    for (int k = 0; k < 7; ++k) den *= g(par.t[k] * par.t[7]) * g(par.t[k] / par.t[7]);
    return eval_Vfn(par, spec) / den;
}

}  // namespace

VerificationReport check_ehe(cplx a, const std::array<cplx, 5>& t, cplx z, const NomePair& nome,
                             const ContourSpec& spec) {
    const cplx q = nome.q, p = nome.p;
    cplx prod_t = t[0] * t[1] * t[2] * t[3] * t[4];
    cplx pq = p * q;
    cplx t8 = pq * pq / (a * a * prod_t);
    GammaTable g(nome);

    auto U_at = [&](cplx zz) {
        VParams par{{t[0], t[1], t[2], t[3], t[4], a * zz, a / zz, t8}, nome};
        if (!par.standard_contour())
            throw pole_error("check_ehe: evaluation point leaves |t|<1");
        return eval_U(par, g, spec);
    };

    cplx fz = U_at(z), fqz = U_at(q * z), fzq = U_at(z / q);

    cplx Aplus = theta_prod({a * z / (q * t8), a * t8 * z, t8 / (a * z)}, p) /
                 theta_prod({z * z, 1.0 / (q * z * z)}, p);
    for (cplx tk : t) Aplus *= theta(a * tk / (q * z), p);
    cplx Aminus = theta_prod({a / (q * t8 * z), a * t8 / z, t8 * z / a}, p) /
                  theta_prod({1.0 / (z * z), z * z / q}, p);
    for (cplx tk : t) Aminus *= theta(a * tk * z / q, p);
    cplx Azero = theta(a * a / q, p);
    for (cplx tk : t) Azero *= theta(tk * t8, p);

    cplx term1 = Aplus * (fqz - fz);
    cplx term2 = Aminus * (fzq - fz);
    cplx term3 = Azero * fz;
    double scale = std::max({std::abs(term1), std::abs(term2), std::abs(term3)});
    auto rep = make_report("ehe", term1 + term2, -term3, 1e-7, scale);
    return rep;
}

VerificationReport residue_identity_check(const std::array<cplx, 5>& t, const NomePair& nome,
                                          const ContourSpec& spec) {
    const cplx p = nome.p, q = nome.q;
    cplx A = t[0] * t[1] * t[2] * t[3] * t[4];
    const cplx t5 = t[4];
    if (std::abs(p * t5) >= 1.0)
        throw std::domain_error("residue_identity_check: need |p t5| < 1");
    // |t5| < 1 is allowed: the ledger is empty and the check reduces to the
    // plain beta integral evaluation.
    for (int m = 0; m < 4; ++m)
        if (std::abs(t[m]) >= 1.0)
            throw std::domain_error("residue_identity_check: need |t_m| < 1 for m <= 4");
    if (std::abs(p * q) >= std::abs(A))
        throw std::domain_error("residue_identity_check: need |pq| < |A|");

    GammaTable g(nome);
    auto f = [&](cplx z) {
        cplx v = g.inv_self_dual(z * z) / (g(A * z) * g(A / z));
        for (cplx tm : t) v *= g.pair(tm, z);
        return v;
    };
    QuadResult r = integrate_circle(f, spec);
    ResidueLedger ledger = residue_correction(t, nome);
    cplx lhs = kappa_times_mean(g, r.value) + ledger.total();

    cplx t6 = p * q / A;
    std::array<cplx, 6> full = {t[0], t[1], t[2], t[3], t[4], t6};
    cplx rhs = 1.0;
    for (int j = 0; j < 6; ++j)
        for (int k = j + 1; k < 6; ++k) rhs *= g(full[j] * full[k]);

    auto rep = make_report("residue-identity", lhs, rhs, 1e-8);
    rep.meta["nodes"] = std::to_string(r.nodes);
    rep.meta["crossed_poles"] = std::to_string(ledger.included_n.size());
    return rep;
}

}  // namespace ehf
