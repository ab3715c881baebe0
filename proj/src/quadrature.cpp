#include "ehf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ehf {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double scale_of(cplx a, cplx b) { return std::max({std::abs(a), std::abs(b), 1e-30}); }
}  // namespace

ContourSpec ContourSpec::circle(double radius, int nodes, double target, int cap) {
    ContourSpec s;
    s.kind = Kind::circle;
    s.radius = radius;
    s.nodes = nodes;
    s.target_rel = target;
    s.max_nodes = cap;
    s.validate();
    return s;
}

ContourSpec ContourSpec::segment(cplx a, cplx b, int nodes, double target, int cap) {
    ContourSpec s;
    s.kind = Kind::segment;
    s.a = a;
    s.b = b;
    s.nodes = nodes;
    s.target_rel = target;
    s.max_nodes = cap;
    return s;
}

ContourSpec ContourSpec::torus2(int nodes, double target, int cap) {
    ContourSpec s;
    s.kind = Kind::torus2;
    s.nodes = nodes;
    s.target_rel = target;
    s.max_nodes = cap;
    s.validate();
    return s;
}

void ContourSpec::validate() const {
    if (kind != Kind::segment && (!power_of_two(nodes) || nodes < 16))
        throw std::invalid_argument("ContourSpec: nodes must be a power of two >= 16");
}

cplx tree_sum(const std::vector<cplx>& v) {
    // Pairwise reduction in fixed index order: bit-reproducible per node count.
    if (v.empty()) return 0.0;
    std::vector<cplx> level = v;
    while (level.size() > 1) {
        size_t half = (level.size() + 1) / 2;
        std::vector<cplx> next(half);
        for (size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
        if (level.size() % 2) next[half - 1] = level.back();
        level.swap(next);
    }
    return level[0];
}

QuadResult integrate_circle_indexed(const std::function<cplx(int, int)>& f,
                                    const ContourSpec& spec) {
    spec.validate();
    int m = spec.nodes;
    std::vector<cplx> vals(m);
    for (int k = 0; k < m; ++k) vals[k] = f(k, m);
    cplx prev = tree_sum(vals) / static_cast<double>(m);

    QuadResult res;
    res.value = prev;
    res.nodes = m;
    if (!spec.adaptive) {
        res.converged = true;
        return res;
    }
    while (m < spec.max_nodes) {
        m *= 2;
        vals.resize(m);
        for (int k = 0; k < m; ++k) vals[k] = f(k, m);
        cplx cur = tree_sum(vals) / static_cast<double>(m);
        double diff = std::abs(cur - prev);
        res.value = cur;
        res.nodes = m;
        res.err_est = diff;
        if (diff <= spec.target_rel * scale_of(cur, prev)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

QuadResult integrate_circle(const std::function<cplx(cplx)>& f, const ContourSpec& spec) {
    double r = spec.radius;
    auto g = [&](int k, int m) {
        double ang = 2.0 * kPi * k / m;
        return f(r * cplx(std::cos(ang), std::sin(ang)));
    };
    return integrate_circle_indexed(g, spec);
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    // Newton iteration on P_n with the usual cosine initial guesses.
    std::vector<double> x(order), w(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double xi = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (xi * p0 - p1) / (xi * xi - 1.0);
            double dx = p0 / pp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = -xi;
        x[order - 1 - i] = xi;
        double wi = 2.0 / ((1.0 - xi * xi) * pp * pp);
        w[i] = wi;
        w[order - 1 - i] = wi;
    }
    auto [pos, inserted] = cache.emplace(order, std::make_pair(std::move(x), std::move(w)));
    (void)inserted;
    return pos->second;
}

QuadResult integrate_segment(const std::function<cplx(cplx)>& f, const ContourSpec& spec) {
    cplx mid = (spec.a + spec.b) / 2.0, half = (spec.b - spec.a) / 2.0;
    auto eval = [&](int order) {
        const auto& [x, w] = gauss_legendre(order);
        std::vector<cplx> vals(order);
        for (int i = 0; i < order; ++i) vals[i] = w[i] * f(mid + half * x[i]);
        return half * tree_sum(vals);
    };
    int order = std::max(spec.nodes, 4);
    cplx prev = eval(order);
    QuadResult res;
    res.value = prev;
    res.nodes = order;
    if (!spec.adaptive) {
        res.converged = true;
        return res;
    }
    while (order < spec.max_nodes) {
        order *= 2;
        cplx cur = eval(order);
        double diff = std::abs(cur - prev);
        res.value = cur;
        res.nodes = order;
        res.err_est = diff;
        if (diff <= spec.target_rel * scale_of(cur, prev)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

QuadResult integrate_torus2_indexed(const std::function<cplx(int, int, int)>& f,
                                    const ContourSpec& spec) {
    spec.validate();
    int m = spec.nodes;
    auto eval = [&](int mm) {
        std::vector<cplx> vals;
        vals.reserve(static_cast<size_t>(mm) * mm);
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j) vals.push_back(f(i, j, mm));
        return tree_sum(vals) / (static_cast<double>(mm) * mm);
    };
    cplx prev = eval(m);
    QuadResult res;
    res.value = prev;
    res.nodes = m;
    if (!spec.adaptive) {
        res.converged = true;
        return res;
    }
    while (m < spec.max_nodes) {
        m *= 2;
        cplx cur = eval(m);
        double diff = std::abs(cur - prev);
        res.value = cur;
        res.nodes = m;
        res.err_est = diff;
        if (diff <= spec.target_rel * scale_of(cur, prev)) {
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    return res;
}

QuadResult integrate_torus2(const std::function<cplx(cplx, cplx)>& f, const ContourSpec& spec) {
    auto g = [&](int i, int j, int m) {
        double a1 = 2.0 * kPi * i / m, a2 = 2.0 * kPi * j / m;
        return f(cplx(std::cos(a1), std::sin(a1)), cplx(std::cos(a2), std::sin(a2)));
    };
    return integrate_torus2_indexed(g, spec);
}

cplx ResidueLedger::total() const {
    cplx s = 0.0;
    for (cplx t : terms) s += t;
    return c0 * s;
}

ResidueLedger residue_correction(const std::array<cplx, 5>& t, const NomePair& nome, int n_max) {
    const cplx p = nome.p, q = nome.q;
    const cplx t5 = t[4];
    if (std::abs(p * t5) >= 1.0)
        throw std::domain_error("residue_correction: need |p t5| < 1");
    ResidueLedger ledger;
    cplx A = 1.0;
    for (cplx tm : t) A *= tm;
    if (std::abs(A) <= std::abs(p * q))
        throw std::domain_error("residue_correction: need |pq| < |A|");
    cplx t0 = q / A;  // prod_{m=0}^5 t_m = q

    GammaTable G(nome);
    ledger.c0 = (G.pair(t[0], t5) * G.pair(t[1], t5) * G.pair(t[2], t5) * G.pair(t[3], t5)) /
                (G(1.0 / (t5 * t5)) * G.pair(A, t5));

    std::array<cplx, 6> m6 = {t0, t[0], t[1], t[2], t[3], t5};
    for (int n = 0; n <= n_max; ++n) {
        if (std::abs(t5) * std::pow(std::abs(q), n) <= 1.0) break;
        cplx qn = std::pow(q, n);
        cplx term = qn * theta(t5 * t5 * qn * qn, p) / theta(t5 * t5, p);
        for (cplx tm : m6) term *= epoch(tm * t5, n, nome) / epoch(q * t5 / tm, n, nome);
        ledger.terms.push_back(term);
        ledger.included_n.push_back(n);
    }
    return ledger;
}

}  // namespace ehf
