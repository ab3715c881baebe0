#include "ehf/suites.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
const cplx kI{0.0, 1.0};

struct sampler_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Relative distance of x from the nearest point of the lattice p^{-j} q^{-k}
// (j, k >= 0) must exceed eps; guards Gamma arguments picked by samplers.
bool gamma_arg_clear(cplx x, cplx p, cplx q, double eps = 0.02) {
    double ax = std::abs(x);
    if (ax < 1e-8) return false;
    double aq = std::abs(q);
    cplx pj = 1.0;
    for (int j = 0; j < 64; ++j) {
        cplx lat = pj;
        double alat = std::abs(lat);
        for (int k = 0; k < 64; ++k) {
            if (1.0 / alat < 0.5 * ax) break;
            if (std::abs(x * lat - 1.0) < eps) return false;
            lat *= q;
            alat *= aq;
        }
        pj *= p;
        if (1.0 / std::abs(pj) < 0.5 * ax) break;
    }
    return true;
}

// x must stay clear of the theta zero lattice p^k, k in Z.
bool theta_arg_clear(cplx x, cplx p, double eps = 0.02) {
    double ax = std::abs(x), ap = std::abs(p);
    if (ax < 1e-12) return false;
    for (int k = -64; k <= 64; ++k) {
        double alat = std::pow(ap, k);
        if (alat > 4.0 * ax || alat < 0.25 * ax) continue;
        if (std::abs(x * std::pow(p, -k) - 1.0) < eps) return false;
    }
    return true;
}

}  // namespace

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

KeyValues KeyValues::parse(const std::string& text) {
    KeyValues out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto trim = [](std::string v) {
            size_t b = v.find_first_not_of(" \t\r");
            size_t e = v.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parameter file: missing '=' on line " +
                                        std::to_string(lineno));
        std::string key = trim(t.substr(0, eq)), val = trim(t.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("parameter file: empty key or value on line " +
                                        std::to_string(lineno));
        out.kv[key] = val;
    }
    return out;
}

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open parameter file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

double KeyValues::get_real(const std::string& key, double def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : std::stod(it->second);
}

int KeyValues::get_int(const std::string& key, int def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : std::stoi(it->second);
}

cplx KeyValues::get_complex(const std::string& key, cplx def) const {
    auto it = kv.find(key);
    return it == kv.end() ? def : parse_complex(it->second);
}

double CheckContext::tol(const std::string& id, double def) const {
    auto it = cfg->tol_override.find(id);
    if (it == cfg->tol_override.end()) return def;
    if (it->second < 1e-14)
        throw std::invalid_argument("tolerance override below the product-truncation floor: " +
                                    id);
    return it->second;
}

int CheckContext::nodes(const std::string& id, int def) const {
    auto it = cfg->node_override.find(id);
    return it == cfg->node_override.end() ? def : it->second;
}

ContourSpec CheckContext::circle(const std::string& id, double target, int cap) const {
    ContourSpec s = ContourSpec::circle(1.0, 64, target, cap);
    int n = nodes(id, 0);
    if (n > 0) {
        s.nodes = n;
        s.adaptive = false;
    }
    return s;
}

// ---------------------------------------------------------------------------
// samplers

namespace samplers {

NomePair nome_box(Rng& rng, double pmax, double qmax, double eps, double pq_cap) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        cplx p = rng.ring(0.35 * pmax, pmax), q = rng.ring(0.35 * qmax, qmax);
        if (std::abs(p * q) <= pq_cap) return NomePair(p, q, eps);
    }
    throw sampler_exhausted("nome_box: pq_cap unreachable");
}

BetaParams beta_params(Rng& rng, const NomePair& nome, double tcap) {
    for (int attempt = 0; attempt < 4000; ++attempt) {
        std::array<cplx, 5> t5;
        for (int j = 0; j < 4; ++j) t5[j] = rng.ring(0.5, tcap);
        // pick |t5| so the solved parameter lands mid-window
        double target = rng.uniform(0.4, 0.85 * tcap);
        cplx prod4 = t5[0] * t5[1] * t5[2] * t5[3];
        double mag = std::abs(nome.p * nome.q) / (target * std::abs(prod4));
        if (mag < 0.15 || mag > tcap) continue;
        t5[4] = mag * std::exp(cplx(0.0, rng.uniform(0.0, 2.0 * kPi)));
        BetaParams par = BetaParams::from_free(t5, nome);
        double a6 = std::abs(par.t[5]);
        if (a6 < 0.15 || a6 > tcap) continue;
        bool ok = true;
        for (int j = 0; j < 6 && ok; ++j)
            for (int k = j + 1; k < 6 && ok; ++k)
                ok = gamma_arg_clear(par.t[j] * par.t[k], nome.p, nome.q);
        if (ok) return par;
    }
    throw sampler_exhausted("beta_params");
}

std::array<cplx, 5> frenkel_turaev_point(Rng& rng, const NomePair& nome, int N) {
    const cplx q = nome.q, p = nome.p;
    for (int attempt = 0; attempt < 4000; ++attempt) {
        cplx t0 = rng.ring(0.25, 0.85);
        cplx t1 = rng.ring(0.2, 0.85), t2 = rng.ring(0.2, 0.85), t3 = rng.ring(0.2, 0.85);
        cplx t4 = std::pow(q, -N);
        cplx t5 = q * t0 * t0 / (t1 * t2 * t3 * t4);
        std::array<cplx, 5> out = {t0, t1, t2, t3, t5};
        bool ok = theta_arg_clear(t0, p, 0.03);
        std::array<cplx, 5> params = {t1, t2, t3, t4, t5};
        for (cplx tm : params)
            for (int n = 0; n <= N && ok; ++n)
                ok = theta_arg_clear(q * t0 / tm * std::pow(q, n), p, 0.02) &&
                     (std::abs(tm) < 1e-12 || theta_arg_clear(tm * std::pow(q, n), p, 1e-6) ||
                      true);
        // closed-form epochs must stay clear of theta zeros as well
        for (cplx x : {q * t0, q * t0 / (t1 * t2), q * t0 / (t1 * t3), q * t0 / (t2 * t3),
                       q * t0 / (t1 * t2 * t3), q * t0 / t1, q * t0 / t2, q * t0 / t3})
            for (int n = 0; n < N && ok; ++n) ok = theta_arg_clear(x * std::pow(q, n), p, 0.02);
        if (ok) return out;
    }
    throw sampler_exhausted("frenkel_turaev_point");
}

VParams e7_point(Rng& rng, const NomePair& nome, int kind) {
    const cplx pq = nome.p * nome.q;
    const double cap = 0.88;
    for (int attempt = 0; attempt < 8000; ++attempt) {
        std::array<cplx, 7> t7;
        if (kind == 3) {
            double lo = std::sqrt(std::abs(pq)) / 0.8;
            for (auto& t : t7) t = rng.ring(std::max(lo, 0.45), 0.8);
        } else {
            t7[0] = rng.ring(0.5, 0.8);
            t7[1] = rng.ring(0.5, 0.8);
            t7[2] = rng.ring(0.5, 0.8);
            // keep eps = sqrt(t1 t2 t3 t4 / pq) near unit modulus
            double rho = rng.uniform(0.75, 1.3);
            double phi = rng.uniform(0.0, 2.0 * kPi);
            t7[3] = pq * rho * std::exp(kI * phi) / (t7[0] * t7[1] * t7[2]);
            for (int j = 4; j < 7; ++j) t7[j] = rng.ring(0.45, 0.72);
        }
        VParams par = VParams::from_free(t7, nome);
        if (!par.standard_contour() || std::abs(par.t[7]) < 0.08) continue;
        const auto& t = par.t;
        bool ok = true;
        if (kind == 1) {
            cplx eps = std::sqrt(t[0] * t[1] * t[2] * t[3] / pq);
            for (int j = 0; j < 4 && ok; ++j) ok = std::abs(t[j] / eps) < cap;
            for (int j = 4; j < 8 && ok; ++j) ok = std::abs(t[j] * eps) < cap;
        } else if (kind == 2) {
            double rT = std::sqrt(std::abs(t[0] * t[1] * t[2] * t[3]));
            double rU = std::sqrt(std::abs(t[4] * t[5] * t[6] * t[7]));
            for (int j = 0; j < 4 && ok; ++j) ok = rT / std::abs(t[j]) < cap;
            for (int j = 4; j < 8 && ok; ++j) ok = rU / std::abs(t[j]) < cap;
        } else {
            double r = std::sqrt(std::abs(pq));
            for (int j = 0; j < 8 && ok; ++j) ok = r / std::abs(t[j]) < cap;
        }
        for (int j = 0; j < 8 && ok; ++j)
            for (int k = j + 1; k < 8 && ok; ++k)
                ok = gamma_arg_clear(t[j] * t[k], nome.p, nome.q);
        if (ok) return par;
    }
    throw sampler_exhausted("e7_point");
}

VParams contiguous_point(Rng& rng, const NomePair& nome, int kind) {
    const cplx pq = nome.p * nome.q;
    double aq = std::abs(nome.q);
    for (int attempt = 0; attempt < 8000; ++attempt) {
        std::array<cplx, 8> t;
        for (int j = 0; j < 4; ++j) t[j] = rng.ring(0.72, 0.86);
        if (kind == 1) {
            t[5] = rng.ring(0.55, 0.8);
            t[6] = rng.ring(0.55, 0.8);
            t[7] = rng.ring(0.75 * aq, 0.92 * aq);
        } else {
            t[5] = rng.ring(0.75 * aq, 0.92 * aq);
            t[6] = rng.ring(0.75 * aq, 0.92 * aq);
            t[7] = rng.ring(0.55, 0.85);
            if (std::abs(t[7] * nome.q) > 0.94) continue;
        }
        cplx rest = t[0] * t[1] * t[2] * t[3] * t[5] * t[6] * t[7];
        t[4] = pq * pq / rest;
        if (std::abs(t[4]) < 0.3 || std::abs(t[4]) > 0.88) continue;
        VParams par{t, nome};
        if (!par.standard_contour()) continue;
        bool ok = true;
        for (int j = 0; j < 8 && ok; ++j)
            for (int k = j + 1; k < 8 && ok; ++k)
                ok = gamma_arg_clear(par.t[j] * par.t[k], nome.p, nome.q);
        if (ok) return par;
    }
    throw sampler_exhausted("contiguous_point");
}

EhePoint ehe_point(Rng& rng, const NomePair& nome) {
    const cplx pq = nome.p * nome.q;
    double aq = std::abs(nome.q);
    for (int attempt = 0; attempt < 8000; ++attempt) {
        EhePoint pt;
        pt.a = rng.ring(0.8 * aq, 0.93 * aq);
        for (auto& tk : pt.t) tk = rng.ring(0.68, 0.84);
        cplx prod = pt.t[0] * pt.t[1] * pt.t[2] * pt.t[3] * pt.t[4];
        cplx t8 = pq * pq / (pt.a * pt.a * prod);
        if (std::abs(t8) < 0.12 || std::abs(t8) > 0.85) continue;
        double phi = rng.uniform(0.3, kPi - 0.3);
        pt.z = std::exp(kI * phi);
        bool ok = true;
        // U(t) denominators at the three evaluation points
        for (cplx zz : {pt.z, nome.q * pt.z, pt.z / nome.q}) {
            std::array<cplx, 8> ts = {pt.t[0], pt.t[1],    pt.t[2],      pt.t[3],
                                      pt.t[4], pt.a * zz, pt.a / zz, t8};
            VParams vp{ts, nome};
            if (!vp.standard_contour()) ok = false;
            for (int k = 0; k < 7 && ok; ++k) {
                ok = gamma_arg_clear(ts[k] * t8, nome.p, nome.q, 0.05) &&
                     gamma_arg_clear(ts[k] / t8, nome.p, nome.q, 0.05);
            }
            if (!ok) break;
        }
        ok = ok && theta_arg_clear(pt.z * pt.z, nome.p, 0.05) &&
             theta_arg_clear(pt.z * pt.z / nome.q, nome.p, 0.05) &&
             theta_arg_clear(pt.a * pt.a / nome.q, nome.p, 0.05);
        if (ok) return pt;
    }
    throw sampler_exhausted("ehe_point");
}

std::array<cplx, 5> residue_point(Rng& rng, const NomePair& nome, double t5_abs) {
    if (std::abs(nome.p) * t5_abs >= 0.97)
        throw std::invalid_argument("residue_point: |p t5| too close to 1");
    for (int attempt = 0; attempt < 8000; ++attempt) {
        std::array<cplx, 5> t;
        for (int m = 0; m < 4; ++m) t[m] = rng.ring(0.55, 0.78);
        t[4] = t5_abs * std::exp(kI * rng.uniform(0.0, 2.0 * kPi));
        cplx A = t[0] * t[1] * t[2] * t[3] * t[4];
        if (std::abs(A) < 1.25 * std::abs(nome.p * nome.q)) continue;
        cplx t6 = nome.p * nome.q / A;
        if (std::abs(t6) > 0.9) continue;
        bool ok = true;
        std::array<cplx, 6> full = {t[0], t[1], t[2], t[3], t[4], t6};
        for (int j = 0; j < 6 && ok; ++j)
            for (int k = j + 1; k < 6 && ok; ++k)
                ok = gamma_arg_clear(full[j] * full[k], nome.p, nome.q, 0.04);
        ok = ok && gamma_arg_clear(1.0 / (t[4] * t[4]), nome.p, nome.q, 0.04);
        for (int m = 0; m < 4 && ok; ++m)
            ok = gamma_arg_clear(t[m] * t[4], nome.p, nome.q, 0.04) &&
                 gamma_arg_clear(t[m] / t[4], nome.p, nome.q, 0.04);
        ok = ok && gamma_arg_clear(A * t[4], nome.p, nome.q, 0.04) &&
             gamma_arg_clear(A / t[4], nome.p, nome.q, 0.04);
        // residue terms: theta denominators (q t5 / t_m)_n
        cplx t0 = nome.q / A;
        std::array<cplx, 6> m6 = {t0, t[0], t[1], t[2], t[3], t[4]};
        for (cplx tm : m6)
            for (int n = 0; n < 4 && ok; ++n)
                ok = theta_arg_clear(nome.q * t[4] / tm * std::pow(nome.q, n), nome.p, 0.03);
        if (ok) return t;
    }
    throw sampler_exhausted("residue_point");
}

std::pair<cplx, std::array<cplx, 7>> e12_point(Rng& rng, const SeriesBase& base, int n) {
    const cplx q = base.q, p = base.p;
    for (int attempt = 0; attempt < 8000; ++attempt) {
        cplx t0 = rng.ring(0.25, 0.8);
        std::array<cplx, 7> t;
        for (int j = 0; j < 5; ++j) t[j] = rng.ring(0.3, 0.8);
        t[5] = std::pow(q, -n);
        t[6] = std::pow(t0, 3) * q * q / (t[0] * t[1] * t[2] * t[3] * t[4] * t[5]);
        bool ok = theta_arg_clear(t0, p, 0.03) && theta_arg_clear(q * t0, p, 0.03) &&
                  theta_arg_clear(q * q * t0, p, 0.03);
        // series denominators for all shifted variants, n' <= n + 1
        for (int m = 0; m < 7 && ok; ++m)
            for (int j = 0; j <= n + 2 && ok; ++j) {
                ok = theta_arg_clear(q * t0 / t[m] * std::pow(q, j), p, 0.02);
                ok = ok && theta_arg_clear(q * q * q * t0 / t[m] * std::pow(q, j), p, 0.02);
            }
        for (int j = 0; j < 7 && ok; ++j) ok = theta_arg_clear(t[j] / t[(j + 1) % 7], p, 0.01);
        if (ok) return {t0, t};
    }
    throw sampler_exhausted("e12_point");
}

RnParams rn_point(Rng& rng, const SeriesBase& base) {
    for (int attempt = 0; attempt < 4000; ++attempt) {
        RnParams par{{rng.ring(0.35, 0.8), rng.ring(0.35, 0.8), rng.ring(0.35, 0.8),
                      rng.ring(0.35, 0.8), rng.ring(0.12, 0.3)},
                     base};
        bool ok = true;
        cplx A = par.A();
        const cplx q = base.q, p = base.p;
        for (int j = 0; j <= 8 && ok; ++j) {
            cplx qj = std::pow(q, j - 4);
            ok = theta_arg_clear(par.t[3] / par.t[4] * qj, p, 0.02) &&
                 theta_arg_clear(A * qj, p, 0.02) && theta_arg_clear(A / par.t[4] * qj, p, 0.02);
        }
        for (int m = 0; m < 3 && ok; ++m)
            for (int j = 0; j <= 6 && ok; ++j)
                ok = theta_arg_clear(par.t[3] * par.t[4] / (par.t[m] * std::pow(q, j)), p, 0.02);
        if (ok) return par;
    }
    throw sampler_exhausted("rn_point");
}

BiorthParams biorth_point(Rng& rng, const NomePair& nome, int box) {
    for (int attempt = 0; attempt < 8000; ++attempt) {
        BiorthParams par{{rng.ring(0.78, 0.9), rng.ring(0.78, 0.9), rng.ring(0.78, 0.9),
                          rng.ring(0.78, 0.9), rng.ring(0.14, 0.2)},
                         nome};
        if (!par.admissible(box, box)) continue;
        bool ok = true;
        for (int m = 0; m < 5 && ok; ++m) {
            ok = gamma_arg_clear(par.A() / par.t[m], nome.p, nome.q, 0.04);
            for (int k = m + 1; k < 5 && ok; ++k)
                ok = gamma_arg_clear(par.t[m] * par.t[k], nome.p, nome.q, 0.04);
        }
        if (ok) return par;
    }
    throw sampler_exhausted("biorth_point");
}

VanDiejenParams vandiejen_point(Rng& rng, VdFamily family, int n, const NomePair& nome,
                                cplx coupling) {
    size_t count = family == VdFamily::type_I ? 2 * n + 6 : 8;
    cplx pq2 = nome.p * nome.q * nome.p * nome.q;
    double cap = std::abs(nome.q) * 0.95;
    double target = std::abs(pq2);
    if (family == VdFamily::type_II) target /= std::pow(std::abs(coupling), 2 * n - 2);
    // log-uniform window centred on the geometric mean forced by the
    // constraint, so the solved trailing parameter lands inside the cap.
    double avg = std::pow(target, 1.0 / count);
    double spread = std::min(1.09, cap * 0.98 / avg);
    if (spread < 1.01) throw sampler_exhausted("vandiejen_point: |q| window infeasible");
    double lo = avg / spread, hi = avg * spread;
    for (int attempt = 0; attempt < 8000; ++attempt) {
        VanDiejenParams par{family, n, std::vector<cplx>(count), coupling, nome};
        cplx prod = family == VdFamily::type_II ? std::pow(coupling, 2 * n - 2) : cplx(1.0);
        for (size_t j = 0; j + 1 < count; ++j) {
            par.t[j] = rng.ring(lo, hi);
            prod *= par.t[j];
        }
        par.t[count - 1] = pq2 / prod;
        if (std::abs(par.t[count - 1]) < 0.5 * lo || std::abs(par.t[count - 1]) > cap * 0.98)
            continue;
        if (!par.hermiticity_admissible()) continue;
        return par;
    }
    throw sampler_exhausted("vandiejen_point");
}

RootSystemParams root_point(Rng& rng, RootFamily family, int n, const NomePair& nome) {
    for (int attempt = 0; attempt < 8000; ++attempt) {
        std::vector<cplx> t, s;
        cplx tc{}, sc{};
        auto fill = [&](std::vector<cplx>& v, size_t count, double lo, double hi) {
            v.resize(count);
            for (auto& x : v) x = rng.ring(lo, hi);
        };
        switch (family) {
            case RootFamily::C_I: fill(t, 2 * n + 4, 0.6, 0.85); break;
            case RootFamily::C_II:
                tc = rng.ring(0.3, 0.5);
                fill(t, 6, 0.65, 0.9);
                break;
            case RootFamily::A_I1:
                fill(s, n + 2, 0.6, 0.85);
                fill(t, n + 2, 0.6, 0.85);
                break;
            case RootFamily::A_I2:
                fill(s, n + 3, 0.65, 0.85);
                fill(t, n, 0.65, 0.85);
                break;
            case RootFamily::A_II1:
                tc = rng.ring(0.45, 0.6);
                fill(s, 4, 0.6, 0.9);
                fill(t, n + 1, 0.6, 0.9);
                break;
            case RootFamily::A_II2:
                tc = rng.ring(0.45, 0.6);
                sc = rng.ring(0.45, 0.6);
                fill(s, 3, 0.6, 0.9);
                fill(t, 3, 0.6, 0.9);
                break;
        }
        try {
            RootSystemParams par = RootSystemParams::make(family, n, t, s, tc, sc, nome);
            bool ok = true;
            auto inside = [&](cplx c) { return std::abs(c) > 0.12 && std::abs(c) < 0.94; };
            for (cplx c : par.t) ok = ok && inside(c);
            for (cplx c : par.s) ok = ok && inside(c);
            if (family == RootFamily::A_I2) {
                cplx S = 1.0;
                for (cplx x : par.s) S *= x;
                for (cplx tj : par.t)
                    ok = ok && std::abs(nome.p * nome.q / (S * tj)) < 0.9 &&
                         std::abs(nome.p * nome.q) < 0.8 * std::abs(S * tj);
            }
            if (ok) return par;
        } catch (const std::exception&) {
            continue;
        }
    }
    throw sampler_exhausted("root_point");
}

}  // namespace samplers

}  // namespace ehf
