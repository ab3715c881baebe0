#include "ehf/multivariate.hpp"

#include <cmath>
#include <memory>

namespace ehf {

namespace {

double rel_dist(cplx a, cplx b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

constexpr double kPi = 3.141592653589793238462643383279502884;

// Values of Gamma / theta along c * (roots of unity); all torus kernel
// arguments reduce to ring lookups with exact index arithmetic.
struct Ring {
    int M = 0;
    std::vector<cplx> w, thp, thq;
    const GammaTable* G = nullptr;

    void rebuild(int m, const GammaTable& g) {
        M = m;
        G = &g;
        w.resize(M);
        thp.resize(M);
        thq.resize(M);
        for (int k = 0; k < M; ++k) {
            double ang = 2.0 * kPi * k / M;
            w[k] = cplx(std::cos(ang), std::sin(ang));
            thp[k] = theta(w[k], g.p());
            thq[k] = theta(w[k], g.q());
        }
    }
    int idx(long k) const {
        long m = k % M;
        return static_cast<int>(m < 0 ? m + M : m);
    }
    std::vector<cplx> gamma_ring(cplx c) const {
        std::vector<cplx> v(M);
        for (int k = 0; k < M; ++k) v[k] = (*G)(c * w[k]);
        return v;
    }
    std::vector<cplx> theta_ring(cplx c, cplx base) const {
        std::vector<cplx> v(M);
        for (int k = 0; k < M; ++k) v[k] = theta(c * w[k], base);
        return v;
    }
    // 1/(Gamma(w^k) Gamma(w^-k)) = -theta(w^k;p) theta(w^k;q) / w^k.
    cplx inv_pair(long k) const {
        int m = idx(k);
        return -thp[m] * thq[m] * w[idx(-k)];
    }
};

void require_ring_margin(std::span<const cplx> coeffs, double margin) {
    double cap = std::exp(-margin);
    for (cplx c : coeffs)
        if (std::abs(c) > cap || std::abs(c) < 1.0 / 50.0)
            throw pole_error("multivariate: coefficient ring too close to the torus (or tiny)");
}

}  // namespace

const char* to_string(RootFamily f) {
    switch (f) {
        case RootFamily::C_I: return "C_I";
        case RootFamily::C_II: return "C_II";
        case RootFamily::A_I1: return "A_I1";
        case RootFamily::A_I2: return "A_I2";
        case RootFamily::A_II1: return "A_II1";
        case RootFamily::A_II2: return "A_II2";
    }
    return "?";
}

void RootSystemParams::validate() const {
    if (n < 1 || n > 2) throw std::invalid_argument("RootSystemParams: rank must be 1 or 2");
    auto need = [&](size_t nt, size_t ns) {
        if (t.size() != nt || s.size() != ns)
            throw std::invalid_argument("RootSystemParams: wrong parameter counts");
    };
    switch (family) {
        case RootFamily::C_I: need(2 * n + 4, 0); break;
        case RootFamily::C_II: need(6, 0); break;
        case RootFamily::A_I1: need(n + 2, n + 2); break;
        case RootFamily::A_I2: need(n, n + 3); break;
        case RootFamily::A_II1: need(n + 1, 4); break;
        case RootFamily::A_II2: need(3, 3); break;
    }
    if (constraint_defect() > 1e-12)
        throw std::invalid_argument("RootSystemParams: balancing constraint violated");
}

double RootSystemParams::constraint_defect() const {
    const cplx pq = nome.p * nome.q;
    cplx pt = 1.0, ps = 1.0;
    for (cplx x : t) pt *= x;
    for (cplx x : s) ps *= x;
    switch (family) {
        case RootFamily::C_I: return rel_dist(pt, pq);
        case RootFamily::C_II: return rel_dist(std::pow(tc, 2 * n - 2) * pt, pq);
        case RootFamily::A_I1: return rel_dist(pt * ps, pq);
        case RootFamily::A_I2: {
            // |pq| < |t_j S| inequality, no product equation.
            for (cplx tj : t)
                if (std::abs(pq) >= std::abs(tj * ps)) return 1.0;
            return 0.0;
        }
        case RootFamily::A_II1: return rel_dist(std::pow(tc, n - 1) * pt * ps, pq);
        case RootFamily::A_II2: return rel_dist(std::pow(tc * sc, n - 1) * pt * ps, pq);
    }
    return 1.0;
}

RootSystemParams RootSystemParams::make(RootFamily family, int n, std::vector<cplx> t,
                                        std::vector<cplx> s, cplx tc, cplx sc,
                                        const NomePair& nome) {
    RootSystemParams par{family, n, std::move(t), std::move(s), tc, sc, nome};
    if (family != RootFamily::A_I2) {
        // Solve the trailing t entry from the constraint.
        cplx pq = nome.p * nome.q;
        cplx prod = 1.0;
        for (size_t i = 0; i + 1 < par.t.size(); ++i) prod *= par.t[i];
        for (cplx x : par.s) prod *= x;
        switch (family) {
            case RootFamily::C_I: break;
            case RootFamily::C_II: prod *= std::pow(tc, 2 * n - 2); break;
            case RootFamily::A_II1: prod *= std::pow(tc, n - 1); break;
            case RootFamily::A_II2: prod *= std::pow(tc * sc, n - 1); break;
            default: break;
        }
        par.t.back() = pq / prod;
    }
    par.validate();
    return par;
}

namespace {

// ---- closed-form products -------------------------------------------------

cplx rhs_closed_form(const RootSystemParams& par, const GammaTable& g) {
    const auto& t = par.t;
    const auto& s = par.s;
    const int n = par.n;
    switch (par.family) {
        case RootFamily::C_I: {
            cplx v = 1.0;
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j) v *= g(t[i] * t[j]);
            return v;
        }
        case RootFamily::C_II: {
            cplx v = 1.0;
            for (int j = 1; j <= n; ++j) {
                v *= g(std::pow(par.tc, j)) / g(par.tc);
                for (int m = 0; m < 6; ++m)
                    for (int k = m + 1; k < 6; ++k) v *= g(std::pow(par.tc, j - 1) * t[m] * t[k]);
            }
            return v;
        }
        case RootFamily::A_I1: {
            cplx S = 1.0, T = 1.0;
            for (cplx x : s) S *= x;
            for (cplx x : t) T *= x;
            cplx v = 1.0;
            for (size_t m = 0; m < s.size(); ++m) v *= g(S / s[m]) * g(T / t[m]);
            for (size_t k = 0; k < s.size(); ++k)
                for (size_t m = 0; m < t.size(); ++m) v *= g(s[k] * t[m]);
            return v;
        }
        case RootFamily::A_I2: {
            cplx S = 1.0;
            for (cplx x : s) S *= x;
            cplx v = 1.0;
            for (size_t k = 0; k < t.size(); ++k)
                for (size_t m = 0; m < s.size(); ++m) v *= g(t[k] * s[m]) / g(S * t[k] / s[m]);
            for (size_t l = 0; l < s.size(); ++l)
                for (size_t m = l + 1; m < s.size(); ++m) v *= g(S / (s[l] * s[m]));
            return v;
        }
        case RootFamily::A_II1: {
            cplx A = 1.0;
            for (cplx x : t) A *= x;
            cplx v = 1.0;
            for (size_t k = 0; k < t.size(); ++k)
                for (int i = 0; i < 4; ++i) v *= g(t[k] * s[i]);
            for (size_t j = 0; j < t.size(); ++j)
                for (size_t k = j + 1; k < t.size(); ++k) v *= g(par.tc * t[j] * t[k]);
            if (n % 2 == 1) {
                cplx th = std::pow(par.tc, (n + 1) / 2);
                v *= g(th) * g(A) / g(th * A);
                cplx tl = std::pow(par.tc, (n - 1) / 2);
                for (int i = 0; i < 4; ++i)
                    for (int m = i + 1; m < 4; ++m) v *= g(tl * s[i] * s[m]);
            } else {
                v *= g(A);
                cplx th = std::pow(par.tc, n / 2);
                for (int i = 0; i < 4; ++i) v *= g(th * s[i]) / g(th * A * s[i]);
            }
            return v;
        }
        case RootFamily::A_II2: {
            const cplx tt = par.tc, ss = par.sc;
            cplx v = 1.0;
            if (n % 2 == 1) {
                v *= g(std::pow(tt, (n + 1) / 2)) * g(std::pow(ss, (n + 1) / 2));
                cplx tl = std::pow(tt, (n - 1) / 2), sl = std::pow(ss, (n - 1) / 2);
                for (int i = 0; i < 3; ++i)
                    for (int k = i + 1; k < 3; ++k) v *= g(tl * t[i] * t[k]) * g(sl * s[i] * s[k]);
                for (int j = 1; j <= (n + 1) / 2; ++j)
                    for (int i = 0; i < 3; ++i)
                        for (int k = 0; k < 3; ++k) v *= g(std::pow(tt * ss, j - 1) * t[i] * s[k]);
                for (int j = 1; j <= (n - 1) / 2; ++j) {
                    v *= g(std::pow(tt * ss, j));
                    for (int i = 0; i < 3; ++i)
                        for (int k = i + 1; k < 3; ++k)
                            v *= g(std::pow(tt, j - 1) * std::pow(ss, j) * t[i] * t[k]) *
                                 g(std::pow(tt, j) * std::pow(ss, j - 1) * s[i] * s[k]);
                }
            } else {
                for (int i = 0; i < 3; ++i)
                    v *= g(std::pow(tt, n / 2) * t[i]) * g(std::pow(ss, n / 2) * s[i]);
                v *= g(std::pow(tt, n / 2 - 1) * t[0] * t[1] * t[2]) *
                     g(std::pow(ss, n / 2 - 1) * s[0] * s[1] * s[2]);
                for (int j = 1; j <= n / 2; ++j) {
                    v *= g(std::pow(tt * ss, j));
                    for (int i = 0; i < 3; ++i)
                        for (int k = 0; k < 3; ++k) v *= g(std::pow(tt * ss, j - 1) * t[i] * s[k]);
                    for (int i = 0; i < 3; ++i)
                        for (int k = i + 1; k < 3; ++k)
                            v *= g(std::pow(tt, j - 1) * std::pow(ss, j) * t[i] * t[k]) *
                                 g(std::pow(tt, j) * std::pow(ss, j - 1) * s[i] * s[k]);
                }
            }
            return v;
        }
    }
    throw std::logic_error("rhs_closed_form: unreachable");
}

// ---- quadrature side --------------------------------------------------------

struct KernelCache {
    Ring ring;
    // per-variable factor (index of the torus node) and ring arrays for the
    // coupling coefficients.
    std::vector<cplx> pervar;
    std::vector<cplx> couple_t, couple_s;
};

// Builds the per-variable factor array for the given family.
void rebuild_cache(KernelCache& c, const RootSystemParams& par, const GammaTable& g, int M) {
    c.ring.rebuild(M, g);
    const Ring& R = c.ring;
    c.pervar.assign(M, 1.0);
    auto mul_plus = [&](cplx coeff) {
        auto gr = R.gamma_ring(coeff);
        for (int k = 0; k < M; ++k) c.pervar[k] *= gr[k];
    };
    auto mul_minus = [&](cplx coeff) {
        auto gr = R.gamma_ring(coeff);
        for (int k = 0; k < M; ++k) c.pervar[k] *= gr[R.idx(-k)];
    };
    auto div_minus = [&](cplx coeff) {
        auto gr = R.gamma_ring(coeff);
        for (int k = 0; k < M; ++k) c.pervar[k] /= gr[R.idx(-k)];
    };
    switch (par.family) {
        case RootFamily::C_I:
        case RootFamily::C_II:
            for (cplx tm : par.t) {
                mul_plus(tm);
                mul_minus(tm);
            }
            // 1/Gamma(z^{±2}) fold.
            for (int k = 0; k < M; ++k) c.pervar[k] *= R.inv_pair(2 * k);
            if (par.family == RootFamily::C_II) c.couple_t = R.gamma_ring(par.tc);
            break;
        case RootFamily::A_I1:
            for (cplx sm : par.s) mul_plus(sm);
            for (cplx tm : par.t) mul_minus(tm);
            break;
        case RootFamily::A_I2: {
            cplx S = 1.0;
            for (cplx x : par.s) S *= x;
            for (cplx tk : par.t) mul_plus(tk);
            for (cplx sm : par.s) mul_minus(sm);
            for (cplx tk : par.t) div_minus(S * tk);
            c.couple_t = R.gamma_ring(S);
            break;
        }
        case RootFamily::A_II1:
            for (cplx tk : par.t) mul_minus(tk);
            for (cplx si : par.s) mul_plus(si);
            c.couple_t = R.gamma_ring(par.tc);
            break;
        case RootFamily::A_II2:
            for (cplx tk : par.t) mul_plus(tk);
            for (cplx sk : par.s) mul_minus(sk);
            c.couple_t = R.gamma_ring(par.tc);
            c.couple_s = R.gamma_ring(par.sc);
            break;
    }
}

// Kernel value at torus indices; A-type families use n+1 indices that sum to
// zero mod M, C-type use the free indices only.
cplx kernel_value(const KernelCache& c, const RootSystemParams& par,
                  std::span<const long> ix) {
    const Ring& R = c.ring;
    cplx v = 1.0;
    for (long k : ix) v *= c.pervar[R.idx(k)];
    switch (par.family) {
        case RootFamily::C_I:
        case RootFamily::C_II:
            for (size_t a = 0; a < ix.size(); ++a)
                for (size_t b = a + 1; b < ix.size(); ++b) {
                    long su = ix[a] + ix[b], di = ix[a] - ix[b];
                    v *= R.inv_pair(su) * R.inv_pair(di);
                    if (par.family == RootFamily::C_II)
                        v *= c.couple_t[R.idx(su)] * c.couple_t[R.idx(-su)] *
                             c.couple_t[R.idx(di)] * c.couple_t[R.idx(-di)];
                }
            return v;
        case RootFamily::A_I1:
        case RootFamily::A_I2:
        case RootFamily::A_II1:
        case RootFamily::A_II2:
            for (size_t a = 0; a < ix.size(); ++a)
                for (size_t b = a + 1; b < ix.size(); ++b) {
                    long su = ix[a] + ix[b], di = ix[a] - ix[b];
                    v *= R.inv_pair(di);
                    if (par.family == RootFamily::A_I2) v *= c.couple_t[R.idx(-su)];
                    if (par.family == RootFamily::A_II1) v *= c.couple_t[R.idx(su)];
                    if (par.family == RootFamily::A_II2)
                        v *= c.couple_t[R.idx(su)] * c.couple_s[R.idx(-su)];
                }
            return v;
    }
    throw std::logic_error("kernel_value: unreachable");
}

std::vector<cplx> margin_coefficients(const RootSystemParams& par) {
    std::vector<cplx> cs(par.t.begin(), par.t.end());
    cs.insert(cs.end(), par.s.begin(), par.s.end());
    switch (par.family) {
        case RootFamily::C_II: cs.push_back(par.tc); break;
        case RootFamily::A_II1: cs.push_back(par.tc); break;
        case RootFamily::A_II2:
            cs.push_back(par.tc);
            cs.push_back(par.sc);
            break;
        case RootFamily::A_I2: {
            cplx S = 1.0;
            for (cplx x : par.s) S *= x;
            for (cplx tk : par.t) cs.push_back(par.nome.p * par.nome.q / (S * tk));
            break;
        }
        default: break;
    }
    return cs;
}

}  // namespace

VerificationReport multi_beta_check(const RootSystemParams& par, const ContourSpec& spec) {
    par.validate();
    require_ring_margin(margin_coefficients(par), 0.02);
    GammaTable g(par.nome);

    auto cache = std::make_shared<KernelCache>();
    const bool ctype = par.family == RootFamily::C_I || par.family == RootFamily::C_II;

    QuadResult qres;
    if (par.n == 1) {
        auto f = [&, cache](int k, int M) {
            if (cache->ring.M != M) rebuild_cache(*cache, par, g, M);
            if (ctype) {
                long ix[1] = {k};
                return kernel_value(*cache, par, ix);
            }
            long ix[2] = {k, -k};
            return kernel_value(*cache, par, ix);
        };
        qres = integrate_circle_indexed(f, spec);
    } else {
        auto f = [&, cache](int i, int j, int M) {
            if (cache->ring.M != M) rebuild_cache(*cache, par, g, M);
            if (ctype) {
                long ix[2] = {i, j};
                return kernel_value(*cache, par, ix);
            }
            long ix[3] = {i, j, -i - j};
            return kernel_value(*cache, par, ix);
        };
        ContourSpec ts = spec;
        ts.kind = ContourSpec::Kind::torus2;
        if (ts.max_nodes > 512) ts.max_nodes = 512;
        qres = integrate_torus2_indexed(f, ts);
    }

    cplx pw = std::pow(g.poch_pp() * g.poch_qq(), par.n);
    double fact = ctype ? std::pow(2.0, par.n) * (par.n == 2 ? 2.0 : 1.0)
                        : (par.n == 2 ? 6.0 : 2.0);
    cplx lhs = pw / fact * qres.value;
    cplx rhs = rhs_closed_form(par, g);

    double tol = par.n == 2 ? 1e-6 : (par.family == RootFamily::C_I ? 1e-9 : 1e-8);
    std::string id = std::string("multi-beta-") + to_string(par.family) + "-n" +
                     std::to_string(par.n);
    auto rep = make_report(id, lhs, rhs, tol);
    rep.meta["nodes"] = std::to_string(qres.nodes);
    rep.meta["quad_err"] = format_double(qres.err_est);
    return rep;
}

// ---- van Diejen operators ---------------------------------------------------

void VanDiejenParams::validate() const {
    if (n < 1 || n > 2) throw std::invalid_argument("VanDiejenParams: rank must be 1 or 2");
    size_t want = family == VdFamily::type_I ? 2 * n + 6 : 8;
    if (t.size() != want) throw std::invalid_argument("VanDiejenParams: wrong parameter count");
    if (constraint_defect() > 1e-12)
        throw std::invalid_argument("VanDiejenParams: balancing constraint violated");
}

double VanDiejenParams::constraint_defect() const {
    cplx prod = 1.0;
    for (cplx x : t) prod *= x;
    if (family == VdFamily::type_II) prod *= std::pow(tc, 2 * n - 2);
    cplx pq = nome.p * nome.q;
    return rel_dist(prod, pq * pq);
}

bool VanDiejenParams::hermiticity_admissible(double margin) const {
    double cap = std::exp(-margin);
    double aq = std::abs(nome.q);
    for (cplx tm : t)
        if (std::abs(tm) > aq * cap) return false;
    if (family == VdFamily::type_II && n > 1 && std::abs(tc) > aq * cap) return false;
    // theta(q z^2; p) zeros must clear the shift annulus: sqrt(|p/q|) < |q|.
    if (std::abs(nome.p) > std::pow(aq, 3) * cap) return false;
    return true;
}

namespace {

cplx vd_coefficient(const VanDiejenParams& par, const std::vector<cplx>& z, size_t j) {
    const cplx p = par.nome.p, q = par.nome.q;
    cplx v = 1.0;
    for (cplx tm : par.t) v *= theta(tm * z[j], p);
    v /= theta(z[j] * z[j], p) * theta(q * z[j] * z[j], p);
    for (size_t k = 0; k < z.size(); ++k) {
        if (k == j) continue;
        if (par.family == VdFamily::type_II)
            v *= theta(par.tc * z[j] * z[k], p) * theta(par.tc * z[j] / z[k], p);
        v /= theta(z[j] * z[k], p) * theta(z[j] / z[k], p);
    }
    return v;
}

}  // namespace

cplx vandiejen_apply(const VanDiejenParams& par, const GridFn& f, const std::vector<cplx>& z) {
    par.validate();
    if (z.size() != static_cast<size_t>(par.n))
        throw std::invalid_argument("vandiejen_apply: wrong point dimension");
    const cplx q = par.nome.q;
    std::vector<cplx> zinv(z.size());
    for (size_t i = 0; i < z.size(); ++i) zinv[i] = 1.0 / z[i];
    cplx fz = f(z);
    cplx acc = 0.0;
    for (size_t j = 0; j < z.size(); ++j) {
        std::vector<cplx> up = z, dn = z;
        up[j] *= q;
        dn[j] /= q;
        acc += vd_coefficient(par, z, j) * (f(up) - fz);
        acc += vd_coefficient(par, zinv, j) * (f(dn) - fz);
    }
    return acc;
}

namespace {

// Ring caches for the hermiticity weights with the Delta * A_j cancellations
// folded in (the raw A_j has theta(z_j^2;p) poles on the torus nodes).
struct VdCache {
    Ring ring;
    std::vector<std::vector<cplx>> Gt;   // Gamma(t_k w^m)
    std::vector<std::vector<cplx>> Ttm;  // theta(t_k w^m; p)
    std::vector<cplx> Tqs;               // theta(q w^m; p)
    std::vector<cplx> Gc, Tc;            // coupling rings (type II)

    void rebuild(const VanDiejenParams& par, const GammaTable& g, int M) {
        ring.rebuild(M, g);
        Gt.clear();
        Ttm.clear();
        for (cplx tm : par.t) {
            Gt.push_back(ring.gamma_ring(tm));
            Ttm.push_back(ring.theta_ring(tm, g.p()));
        }
        Tqs = ring.theta_ring(g.q(), g.p());
        if (par.family == VdFamily::type_II && par.n > 1) {
            Gc = ring.gamma_ring(par.tc);
            Tc = ring.theta_ring(par.tc, g.p());
        }
    }

    cplx gammas_at(long k) const {
        cplx v = 1.0;
        int a = ring.idx(k), b = ring.idx(-k);
        for (const auto& gr : Gt) v *= gr[a] * gr[b];
        return v;
    }
    // Plain weight factor for one variable.
    cplx var_center(long k) const { return gammas_at(k) * ring.inv_pair(2 * k); }
    // Delta * A_j factors for the shifted variable.
    cplx var_plus(long k) const {
        int k2 = ring.idx(2 * k);
        cplx v = gammas_at(k) * (-ring.thq[k2] * ring.w[ring.idx(-2 * k)]) / Tqs[k2];
        for (const auto& tr : Ttm) v *= tr[ring.idx(k)];
        return v;
    }
    cplx var_minus(long k) const {
        int k2 = ring.idx(2 * k);
        cplx v = gammas_at(k) * ring.thq[k2] / Tqs[ring.idx(-2 * k)];
        for (const auto& tr : Ttm) v *= tr[ring.idx(-k)];
        return v;
    }
    // Delta cross factor with A_j's cross part folded; a is the shifted
    // variable's index, b the spectator's. `invert` selects A_j(z^{-1}).
    cplx cross_shift(const VanDiejenParams& par, long a, long b, bool invert) const {
        long su = a + b, di = a - b;
        cplx v = ring.thq[ring.idx(su)] * ring.thq[ring.idx(di)] * ring.w[ring.idx(-su)] *
                 ring.w[ring.idx(-di)];
        if (invert) v *= ring.w[ring.idx(2 * a)];
        if (par.family == VdFamily::type_II) {
            v *= Gc[ring.idx(su)] * Gc[ring.idx(-su)] * Gc[ring.idx(di)] * Gc[ring.idx(-di)];
            v *= invert ? Tc[ring.idx(-su)] * Tc[ring.idx(b - a)]
                        : Tc[ring.idx(su)] * Tc[ring.idx(di)];
        }
        return v;
    }
    // Full Delta cross factor (no operator attached).
    cplx cross_center(const VanDiejenParams& par, long a, long b) const {
        long su = a + b, di = a - b;
        cplx v = ring.inv_pair(su) * ring.inv_pair(di);
        if (par.family == VdFamily::type_II)
            v *= Gc[ring.idx(su)] * Gc[ring.idx(-su)] * Gc[ring.idx(di)] * Gc[ring.idx(-di)];
        return v;
    }
};

struct HermResult {
    cplx forward, backward, plain;
};

HermResult hermiticity_sums(const VanDiejenParams& par, const GridFn& phi, const GridFn& psi,
                            const ContourSpec& spec, const GammaTable& g) {
    auto cache = std::make_shared<VdCache>();
    const cplx q = par.nome.q;

    // Evaluates phi(z) * (D psi)(z) * Delta(z) with the folded weights, plus
    // the mirrored integrand and the plain phi psi weight, in one pass.
    auto node_value = [&](std::span<const long> ix) -> std::array<cplx, 3> {
        const Ring& R = cache->ring;
        size_t nn = ix.size();
        std::vector<cplx> z(nn);
        for (size_t i = 0; i < nn; ++i) z[i] = R.w[R.idx(ix[i])];
        cplx phiz = phi(z), psiz = psi(z);

        cplx dpsi_w = 0.0, dphi_w = 0.0;
        for (size_t j = 0; j < nn; ++j) {
            cplx wp = cache->var_plus(ix[j]);
            cplx wm = cache->var_minus(ix[j]);
            for (size_t v = 0; v < nn; ++v) {
                if (v == j) continue;
                wp *= cache->var_center(ix[v]);
                wm *= cache->var_center(ix[v]);
            }
            for (size_t a = 0; a < nn; ++a)
                for (size_t b = a + 1; b < nn; ++b) {
                    if (a != j && b != j) {
                        cplx cc = cache->cross_center(par, ix[a], ix[b]);
                        wp *= cc;
                        wm *= cc;
                    } else {
                        long other = (a == j) ? ix[b] : ix[a];
                        wp *= cache->cross_shift(par, ix[j], other, false);
                        wm *= cache->cross_shift(par, ix[j], other, true);
                    }
                }
            std::vector<cplx> up = z, dn = z;
            up[j] *= q;
            dn[j] /= q;
            dpsi_w += wp * (psi(up) - psiz) + wm * (psi(dn) - psiz);
            dphi_w += wp * (phi(up) - phiz) + wm * (phi(dn) - phiz);
        }
        cplx weight = 1.0;
        for (size_t v = 0; v < nn; ++v) weight *= cache->var_center(ix[v]);
        for (size_t a = 0; a < nn; ++a)
            for (size_t b = a + 1; b < nn; ++b) weight *= cache->cross_center(par, ix[a], ix[b]);
        return {phiz * dpsi_w, psiz * dphi_w, weight * phiz * psiz};
    };

    HermResult out{};
    if (par.n == 1) {
        std::vector<cplx> acc1, acc2, acc3;
        auto f = [&, cache](int k, int M) -> cplx {
            if (cache->ring.M != M) {
                cache->rebuild(par, g, M);
                acc1.clear();
                acc2.clear();
                acc3.clear();
            }
            long ix[1] = {k};
            auto v = node_value(ix);
            acc2.push_back(v[1]);
            acc3.push_back(v[2]);
            return v[0];
        };
        QuadResult r = integrate_circle_indexed(f, spec);
        out.forward = r.value;
        out.backward = tree_sum(acc2) / static_cast<double>(acc2.size());
        out.plain = tree_sum(acc3) / static_cast<double>(acc3.size());
    } else {
        std::vector<cplx> acc2, acc3;
        auto f = [&, cache](int i, int j, int M) -> cplx {
            if (cache->ring.M != M) {
                cache->rebuild(par, g, M);
                acc2.clear();
                acc3.clear();
            }
            long ix[2] = {i, j};
            auto v = node_value(ix);
            acc2.push_back(v[1]);
            acc3.push_back(v[2]);
            return v[0];
        };
        ContourSpec ts = spec;
        ts.kind = ContourSpec::Kind::torus2;
        if (ts.max_nodes > 256) ts.max_nodes = 256;
        QuadResult r = integrate_torus2_indexed(f, ts);
        out.forward = r.value;
        out.backward = tree_sum(acc2) / static_cast<double>(acc2.size());
        out.plain = tree_sum(acc3) / static_cast<double>(acc3.size());
    }
    return out;
}

cplx vd_prefactor(const VanDiejenParams& par, const GammaTable& g) {
    cplx pw = std::pow(g.poch_pp() * g.poch_qq(), par.n);
    double fact = std::pow(2.0, par.n) * (par.n == 2 ? 2.0 : 1.0);
    return pw / fact;
}

}  // namespace

VerificationReport vandiejen_hermiticity(const VanDiejenParams& par, const GridFn& phi,
                                         const GridFn& psi, const ContourSpec& spec) {
    par.validate();
    if (!par.hermiticity_admissible())
        throw pole_error("vandiejen_hermiticity: pole rings intrude on the shift annulus");
    GammaTable g(par.nome);
    HermResult h = hermiticity_sums(par, phi, psi, spec, g);
    cplx pre = vd_prefactor(par, g);
    cplx lhs = pre * h.forward, rhs = pre * h.backward;
    double scale = std::max({std::abs(lhs), std::abs(rhs), std::abs(pre * h.plain)});
    std::string id = std::string("vandiejen-hermiticity-") +
                     (par.family == VdFamily::type_I ? "I" : "II") + "-n" + std::to_string(par.n);
    return make_report(id, lhs, rhs, par.n == 1 ? 1e-8 : 1e-6, scale);
}

cplx vandiejen_inner(const VanDiejenParams& par, const GridFn& phi, const GridFn& psi,
                     const ContourSpec& spec) {
    par.validate();
    GammaTable g(par.nome);
    auto cache = std::make_shared<VdCache>();
    auto weight_at = [&](std::span<const long> ix) {
        cplx v = 1.0;
        for (long k : ix) v *= cache->var_center(k);
        for (size_t a = 0; a < ix.size(); ++a)
            for (size_t b = a + 1; b < ix.size(); ++b)
                v *= cache->cross_center(par, ix[a], ix[b]);
        return v;
    };
    QuadResult r;
    if (par.n == 1) {
        auto f = [&, cache](int k, int M) {
            if (cache->ring.M != M) cache->rebuild(par, g, M);
            long ix[1] = {k};
            std::vector<cplx> z{cache->ring.w[cache->ring.idx(k)]};
            return weight_at(ix) * phi(z) * psi(z);
        };
        r = integrate_circle_indexed(f, spec);
    } else {
        auto f = [&, cache](int i, int j, int M) {
            if (cache->ring.M != M) cache->rebuild(par, g, M);
            long ix[2] = {i, j};
            std::vector<cplx> z{cache->ring.w[cache->ring.idx(i)],
                                cache->ring.w[cache->ring.idx(j)]};
            return weight_at(ix) * phi(z) * psi(z);
        };
        ContourSpec ts = spec;
        ts.kind = ContourSpec::Kind::torus2;
        if (ts.max_nodes > 256) ts.max_nodes = 256;
        r = integrate_torus2_indexed(f, ts);
    }
    return vd_prefactor(par, g) * r.value;
}

cplx eval_V_multi(const VanDiejenParams& par, const ContourSpec& spec) {
    GridFn one = [](const std::vector<cplx>&) { return cplx(1.0); };
    return vandiejen_inner(par, one, one, spec);
}

}  // namespace ehf
