// Infinite q-products, theta functions and elliptic Pochhammer symbols.
// Everything else in the library is assembled from these primitives.
#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace ehf {

using cplx = std::complex<double>;

inline constexpr double kDefaultTailEps = 1e-16;

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Base pair (p, q) with |p|, |q| < 1 and the truncation policy for the
// infinite products built on them.  The truncation orders chosen by the
// policy are recorded for reproducibility.
struct NomePair {
    cplx p;
    cplx q;
    double tail_eps = kDefaultTailEps;
    int trunc_p = 0;
    int trunc_q = 0;

    NomePair(cplx p_, cplx q_, double tail_eps_ = kDefaultTailEps);

    NomePair swapped() const { return NomePair(q, p, tail_eps); }
};

// Truncation order N with |q|^N * scale / (1 - |q|) < eps.
int product_truncation_order(double base_mag, double scale, double eps);

// (t;q)_inf = prod_{n>=0} (1 - t q^n), |q| < 1.
cplx qpoch_inf(cplx t, cplx q, double tail_eps = kDefaultTailEps);

// log (t;q)_inf, safe for |t| far above overflow range of the plain product.
cplx log_qpoch_inf(cplx t, cplx q, double tail_eps = kDefaultTailEps);

// theta(z;p) = (z;p)_inf (p/z;p)_inf, z != 0.
cplx theta(cplx z, cplx p, double tail_eps = kDefaultTailEps);

// theta(a;p) theta(b;p) ... for a list of arguments.
cplx theta_prod(std::initializer_list<cplx> zs, cplx p);

// Jacobi theta_1(u|tau) with unit period convention, via the product form
// i p^{1/8} e^{-pi i u} (p;p)_inf theta(e^{2 pi i u}; p), p = e^{2 pi i tau}.
cplx theta1(cplx u, cplx tau);

// Elliptic Pochhammer (t)_n = prod_{j=0}^{n-1} theta(t q^j; p), n >= 0.
cplx epoch(cplx t, int n, const NomePair& nome);

// Same with explicit series base; used for the q -> q^{-1} inversion identity.
cplx epoch(cplx t, int n, cplx q, cplx p, double tail_eps = kDefaultTailEps);

struct RatioFlags {
    bool balanced = false;
    bool well_poised = false;
    bool very_well_poised = false;
    // max relative deviation of h(pz)/h(z) from 1 over the sample points;
    // only meaningful when balanced.
    double ellipticity_residual = 0.0;
};

// Classification of the meromorphic theta ratio
//   h(z) = prod_j theta(t_j z; p) / theta(w_j z; p).
// well-poisedness is tested up to permutation; the very-well-poised flag
// requires the trailing quadruple {q sqrt(t0), -q sqrt(t0), q sqrt(t0/p),
// -q sqrt(p t0)} with q recovered from the quadruple itself.
RatioFlags classify_ratio(std::span<const cplx> t, std::span<const cplx> w, cplx p,
                          double tol = 1e-12);

// h(z) = prod_j theta(t_j z;p) / theta(t_0 z / t_j; p), the scaled well-poised
// ratio; exposed for the ellipticity property tests.
cplx wellpoised_h(cplx z, std::span<const cplx> t, cplx p);

}  // namespace ehf
