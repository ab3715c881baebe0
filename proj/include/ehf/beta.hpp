// The univariate elliptic beta integral, its Rahman / Askey-Wilson /
// Mellin-Barnes degenerations, the modified (unit-circle) version, the
// eight-parameter V function with its E7 transformations, contiguous
// relations, the elliptic hypergeometric equation, and the residue identity.
#pragma once

#include <array>

#include "ehf/gamma.hpp"
#include "ehf/quadrature.hpp"
#include "ehf/report.hpp"
#include "ehf/series.hpp"

namespace ehf {

struct BetaParams {
    std::array<cplx, 6> t;
    NomePair nome;

    // Solve t6 from the balancing constraint prod t_j = pq.
    static BetaParams from_free(const std::array<cplx, 5>& t5, const NomePair& nome);
    double balancing_defect() const;
};

struct VParams {
    std::array<cplx, 8> t;
    NomePair nome;

    static VParams from_free(const std::array<cplx, 7>& t7, const NomePair& nome);
    double balancing_defect() const;  // prod t_j vs p^2 q^2
    bool standard_contour(double margin = 0.02) const;  // all |t_j| <= e^{-margin}
};

// kappa * \int_T prod_k Gamma(t_k z^{±}) / Gamma(z^{±2}) dz/z  vs
// prod_{j<k} Gamma(t_j t_k), kappa = (p;p)(q;q)/(4 pi i).
VerificationReport elliptic_beta_check(const BetaParams& par, const ContourSpec& spec);

// p -> 0 degenerations (plain q-products).
VerificationReport rahman_check(const std::array<cplx, 5>& t, cplx q, const ContourSpec& spec);
VerificationReport askey_wilson_check(const std::array<cplx, 4>& t, cplx q,
                                      const ContourSpec& spec);

// Modified elliptic beta integral on the cut [-w3/2, w3/2]; works with
// |q| = 1 through the modular representation of G and the eta-function
// closed form for the prefactor.
VerificationReport modified_beta_check(const std::array<cplx, 6>& g, const PeriodTriple& pe,
                                       const ContourSpec& spec);

// Mellin-Barnes q-beta integral on the truncated line i w2 [-T, T].
// Three-valued verdict: the tail estimate may dominate the tolerance.
VerificationReport mellin_barnes_check(const std::array<cplx, 5>& g, cplx omega1, cplx omega2,
                                       double t_cut, const ContourSpec& spec, double tol = 1e-5);

// V(t) = kappa \int_T prod_j Gamma(t_j z^{±}) / Gamma(z^{±2}) dz/z.
cplx eval_Vfn(const VParams& par, const ContourSpec& spec);

// E7 Weyl group transformations of V; kind 1, 2 or 3.  Square-root branches
// are resolved by trying both signs and recording the accepted one.
VerificationReport check_E7_transform(int kind, const VParams& par, const ContourSpec& spec);

// Three-term contiguous relations in (t6, t7, t8); kind 1 or 2.
VerificationReport check_V_contiguous(int kind, const VParams& par, const ContourSpec& spec);

// Elliptic hypergeometric equation residual on U(t) = V(t)/prod_{k<8}
// Gamma(t_k t_8, t_k / t_8) with t6 = a z, t7 = a / z and
// t8 = p^2 q^2 / (a^2 prod t_k).
VerificationReport check_ehe(cplx a, const std::array<cplx, 5>& t, cplx z, const NomePair& nome,
                             const ContourSpec& spec);

// Analytic continuation of the beta integral for |t5| > 1: product RHS vs
// kappa \int_T + residue ledger.
VerificationReport residue_identity_check(const std::array<cplx, 5>& t, const NomePair& nome,
                                          const ContourSpec& spec);

// Helper shared with the multivariate module: (p;p)(q;q)/2 * mean-value,
// i.e. kappa \oint ... dz/z for a unit-circle mean Q.
cplx kappa_times_mean(const GammaTable& g, cplx mean);

}  // namespace ehf
