// Two-index biorthogonality of the R/T families under the elliptic beta
// measure, the norm constants h_n, and the unit-circle product variants.
#pragma once

#include "ehf/beta.hpp"
#include "ehf/series.hpp"

namespace ehf {

struct BiorthParams {
    std::array<cplx, 5> t;  // t0..t4
    NomePair nome;

    cplx A() const { return t[0] * t[1] * t[2] * t[3] * t[4]; }
    RnParams rn() const { return RnParams{t, SeriesBase(nome)}; }

    // Admissibility of the plain unit circle for index boxes m <= m_max
    // (base-q shifts of t4) and n <= n_max (the p q^{1-n}/A pole string),
    // with the contour-margin convention of the quadrature module.  The
    // theorem's contour depends on the indices; this predicate answers
    // whether T itself separates every listed pole sequence.
    bool admissible(int n_max, int m_max, double margin = 0.02) const;
};

// Weight kernel prod_m Gamma(t_m z^{±}) / Gamma(z^{±2}, A z^{±}) without the
// kappa prefactor (inner_product applies kappa).
cplx weight(cplx z, const BiorthParams& par);

// N(t) = prod_{m<k} Gamma(t_m t_k) / prod_m Gamma(A / t_m).
cplx norm_constant(const BiorthParams& par);

// kappa * \int_T T_{nl}(z) R_{mk}(z) weight(z) dz/z restricted to the
// T-admissible index range; k = l = 0 is the supported rational case,
// k, l > 0 attempts are gated by the same predicate and throw pole_error
// ("untestable") when T cannot separate the pole sequences.
cplx inner_product(int n, int l, int m, int k, const BiorthParams& par, const ContourSpec& spec);

// h_n(q,p) normalization constant.
cplx h_norm(int n, const BiorthParams& par);

// r^mod_{nm}(u) = r_n(u; w1,w2,w3) r_m(u; w2,w1,w3) and the dual s^mod,
// with t_j = e^{2 pi i g_j / w2} and z = e^{2 pi i u / w2} per ordering.
std::pair<cplx, cplx> unit_circle_products(int n, int m, cplx u, const std::array<cplx, 5>& g,
                                           const PeriodTriple& pe);

// r_n(u; w1, w2, w3): the additive-notation R_n.
cplx eval_r_additive(int n, cplx u, const std::array<cplx, 5>& g, cplx w1, cplx w2, cplx w3);
cplx eval_s_additive(int n, cplx u, const std::array<cplx, 5>& g, cplx w1, cplx w2, cplx w3);

}  // namespace ehf
