// Elliptic gamma functions: the standard double-product Gamma(z;p,q), the
// modified G(u;omega) that survives |q| = 1, and the hyperbolic S(u;w1,w2).
#pragma once

#include <vector>

#include "ehf/qseries.hpp"
#include "ehf/report.hpp"

namespace ehf {

// Evaluator for Gamma(z;p,q) with fixed bases.  Construction precomputes the
// coefficient table for the log-series route
//     Gamma(z) = (1-pq/z)/(1-z) * exp( sum_n d_n (z^n - (pq/z)^n)/n ),
//     d_n = 1/((1-p^n)(1-q^n)) - 1,
// which converges geometrically like (max(|p|,|q|) * max(|z|,|pq/z|))^n and
// therefore covers the unit circle.  Outside its annulus the truncated double
// product is used.  Arguments within relative distance 1e-10 of the pole
// lattice p^{-j} q^{-k} raise pole_error.
class GammaTable {
  public:
    GammaTable(cplx p, cplx q, double tail_eps = kDefaultTailEps);
    explicit GammaTable(const NomePair& nome) : GammaTable(nome.p, nome.q, nome.tail_eps) {}

    cplx operator()(cplx z) const;

    // Gamma(a z) Gamma(a / z) in one call.
    cplx pair(cplx a, cplx z) const { return (*this)(a * z) * (*this)(a / z); }

    // 1 / (Gamma(x) Gamma(1/x)) = -theta(x;p) theta(x;q) / x, entire in x.
    // This is how the kernels' Gamma(z^{±2}) denominators are evaluated so
    // that quadrature nodes at theta zeros stay finite.
    cplx inv_self_dual(cplx x) const;

    cplx p() const { return p_; }
    cplx q() const { return q_; }
    cplx pq() const { return pq_; }
    // (p;p)_inf (q;q)_inf, used by the integral prefactors.
    cplx poch_pp() const { return poch_pp_; }
    cplx poch_qq() const { return poch_qq_; }

    // Forced-route evaluations, kept public so tests can pit the two
    // representations against each other.
    cplx eval_series(cplx z) const;
    cplx eval_product(cplx z) const;
    bool series_valid(cplx z) const;

  private:
    cplx p_, q_, pq_;
    double tail_eps_;
    double rho_;        // max(|p|, |q|)
    double series_cap_; // series route used while rho * max(|z|,|pq/z|) <= cap
    std::vector<cplx> dn_over_n_;
    cplx poch_pp_, poch_qq_;
};

// Convenience single evaluations.
cplx egamma(cplx z, const NomePair& nome);

// Gamma(z;p,q) = Gamma(z;q,p) residual report.
VerificationReport egamma_symmetry_check(cplx z, const NomePair& nome);

// Quasi-period triple and the six derived bases.
struct PeriodTriple {
    cplx omega1, omega2, omega3;
    cplx q, p, r;     // e^{2 pi i w1/w2}, e^{2 pi i w3/w2}, e^{2 pi i w3/w1}
    cplx qt, pt, rt;  // e^{-2 pi i w2/w1}, e^{-2 pi i w2/w3}, e^{-2 pi i w1/w3}
    bool standard_regime = false;    // |p|, |q| < 1 (and then |r|, |qt| < 1)
    bool unit_circle_regime = false; // |p|, |r| < 1 and |q| <= 1

    PeriodTriple(cplx w1, cplx w2, cplx w3);
};

// B_{2,2}(u) with explicit period pair:
//   u^2/(w1 w2) - u/w1 - u/w2 + w1/(6 w2) + w2/(6 w1) + 1/2.
cplx b22(cplx u, cplx w1, cplx w2);
inline cplx b22(cplx u, const PeriodTriple& pe) { return b22(u, pe.omega1, pe.omega2); }

// Odd cubic P with P(u + (w1+w2+w3)/2) = u (u^2 - (w1^2+w2^2+w3^2)/4) / (3 w1 w2 w3).
cplx p_cubic(cplx u, const PeriodTriple& pe);

enum class GRep {
    auto_select,
    gamma_pair,  // Gamma(e^{2 pi i u/w2};p,q) Gamma(r e^{-2 pi i u/w1};r,qt)
    modular      // e^{-pi i P(u)} Gamma(e^{-2 pi i u/w3}; rt, pt)
};

cplx mod_egamma(cplx u, const PeriodTriple& pe, GRep rep = GRep::auto_select);

// S(u;w1,w2) = (e^{2 pi i u/w2}; q)_inf / (e^{2 pi i u/w1} qt; qt)_inf.
cplx hyperbolic_gamma(cplx u, cplx omega1, cplx omega2);

// (q;q)_inf / (qt;qt)_inf for q = e^{2 pi i tau}, qt = e^{-2 pi i / tau},
// evaluated through the eta-function modular closed form
// e^{-pi i (tau + 1/tau)/12} / sqrt(-i tau); finite for real tau where the
// individual products diverge.
cplx eta_quotient(cplx tau);

}  // namespace ehf
