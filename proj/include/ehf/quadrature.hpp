// Contour integration engine: equispaced trapezoid on circles (geometric
// convergence for integrands analytic in an annulus), adaptive Gauss-Legendre
// on straight segments, tensor trapezoid on the 2-torus, and the residue
// ledger that stands in for contour deformation.
#pragma once

#include <functional>

#include "ehf/gamma.hpp"
#include "ehf/qseries.hpp"

namespace ehf {

struct ContourSpec {
    enum class Kind { circle, segment, torus2 };
    Kind kind = Kind::circle;
    double radius = 1.0;              // circle
    cplx a{}, b{};                    // segment endpoints
    int nodes = 64;                   // initial node count / GL order (power of two >= 16)
    bool adaptive = true;
    double target_rel = 1e-11;
    int max_nodes = 1 << 14;          // doubling cap (per axis for torus2)

    static ContourSpec circle(double radius = 1.0, int nodes = 64, double target = 1e-11,
                              int cap = 1 << 14);
    static ContourSpec segment(cplx a, cplx b, int nodes = 32, double target = 1e-11,
                               int cap = 2048);
    static ContourSpec torus2(int nodes = 16, double target = 1e-10, int cap = 512);

    void validate() const;
};

struct QuadResult {
    cplx value{};
    double err_est = 0.0;   // last-doubling difference (a posteriori heuristic)
    int nodes = 0;          // per axis
    bool converged = false;
};

// (1/2 pi i) \oint f(z) dz/z over the positively oriented circle.
QuadResult integrate_circle(const std::function<cplx(cplx)>& f, const ContourSpec& spec);

// Index-aware variant: f(k, M) is the integrand at node exp(2 pi i k / M) * radius.
// Lets kernel builders exploit exact root-of-unity index arithmetic.
QuadResult integrate_circle_indexed(const std::function<cplx(int, int)>& f,
                                    const ContourSpec& spec);

// \int_a^b f(u) du by adaptive-order Gauss-Legendre.
QuadResult integrate_segment(const std::function<cplx(cplx)>& f, const ContourSpec& spec);

// (1/2 pi i)^2 \oint\oint f(z1,z2) dz1/z1 dz2/z2 over the unit 2-torus.
QuadResult integrate_torus2(const std::function<cplx(cplx, cplx)>& f, const ContourSpec& spec);
QuadResult integrate_torus2_indexed(const std::function<cplx(int, int, int)>& f,
                                    const ContourSpec& spec);

// Gauss-Legendre nodes/weights on [-1,1]; cached per order.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int order);

// Deterministic pairwise (tree) summation in index order.
cplx tree_sum(const std::vector<cplx>& v);

// Residue bookkeeping for moving the elliptic beta contour back to the unit
// circle when |t5| > 1: crossed poles sit at z = t5 q^n with |t5 q^n| > 1.
struct ResidueLedger {
    cplx c0{};
    std::vector<cplx> terms;
    std::vector<int> included_n;

    cplx total() const;
};

// Parameters t1..t5 with |p t5| < 1; t0 is defined through prod_{m=0}^5 t_m = q.
ResidueLedger residue_correction(const std::array<cplx, 5>& t, const NomePair& nome,
                                 int n_max = 64);

}  // namespace ehf
