// Terminating very-well-poised elliptic hypergeometric series and the
// identities built on them: the Frenkel-Turaev sum, the 12V11 family
// R_n / T_n with its three-term recurrence, and the contiguous relations.
#pragma once

#include <array>
#include <optional>

#include "ehf/qseries.hpp"
#include "ehf/report.hpp"

namespace ehf {

struct vseries_error : std::runtime_error {
    int param_index;
    int term_index;
    vseries_error(const std::string& msg, int m, int n)
        : std::runtime_error(msg), param_index(m), term_index(n) {}
};

// Base pair for terminating series.  A finite sum only needs |p| < 1 for the
// theta factors; the series base q may sit on or outside the unit circle
// (the unit-circle biorthogonal products and the q -> 1/q inversion identity
// both need that freedom).
struct SeriesBase {
    cplx q;
    cplx p;
    double tail_eps = kDefaultTailEps;

    SeriesBase(cplx q_, cplx p_, double tail_eps_ = kDefaultTailEps)
        : q(q_), p(p_), tail_eps(tail_eps_) {
        if (std::abs(p) >= 1.0) throw std::domain_error("SeriesBase: |p| must be < 1");
        if (q == cplx(0.0)) throw std::domain_error("SeriesBase: q must be nonzero");
    }
    SeriesBase(const NomePair& nm) : q(nm.q), p(nm.p), tail_eps(nm.tail_eps) {}
};

// Spec for r+1_V_r(t0; t1..t_{r-4}; q,p; y):
//   sum_{n>=0} theta(t0 q^{2n};p)/theta(t0;p)
//              prod_{m=0}^{r-4} (t_m)_n / (q t0 / t_m)_n * (q y)^n.
// Exactly one parameter must equal q^{-N}; the caller names it.
struct VSeriesSpec {
    cplx t0;
    std::vector<cplx> params;  // t1 .. t_{r-4}
    SeriesBase base;
    cplx y = 1.0;
    int term_index = 0;  // 1-based position in params of the q^{-N} entry
    int N = 0;

    VSeriesSpec(cplx t0_, std::vector<cplx> params_, SeriesBase base_, int term_index_, int N_,
                cplx y_ = 1.0);

    // Relative deviation of prod t_k from t0^{(r-5)/2} q^{(r-7)/2} (odd r,
    // positive sign).  Checked against 1e-10 at construction.
    double balancing_defect() const;
};

// `max_term` (optional) receives the largest partial-term magnitude; residual
// normalizations use it so that cancelling sums are judged against working
// precision rather than their cancelled value.
cplx eval_V(const VSeriesSpec& spec, double* max_term = nullptr);

// General terminating r+1_E_r(t0..tr; w1..wr; q,p; y) with w0 = q.  The
// series base is explicit so the q -> q^{-1} inversion identity can be
// evaluated directly.
cplx eval_E(std::span<const cplx> t, std::span<const cplx> w, cplx q, cplx p, cplx y, int n_terms,
            double tail_eps = kDefaultTailEps, double* max_term = nullptr);

// Terminating 12V11 with named termination slot (0-based index into t, N).
struct V12Params {
    cplx t0;
    std::array<cplx, 7> t;
    int term_index = 5;
    int N = 0;
};
cplx eval_V12_11(const V12Params& v, const SeriesBase& base, double* max_term = nullptr);

// Frenkel-Turaev: 10V9(t0; t1..t5; q,p) with t4 = q^{-N} and
// prod_{m=1}^5 t_m = q t0^2 against the closed product.
VerificationReport frenkel_turaev_check(cplx t0, cplx t1, cplx t2, cplx t3, int N, cplx t5,
                                        const SeriesBase& base);

// Biorthogonal-series parameter pack t0..t4; A = prod t_m.
struct RnParams {
    std::array<cplx, 5> t;
    SeriesBase base;
    cplx A() const { return t[0] * t[1] * t[2] * t[3] * t[4]; }
};

// R_n(z;q,p), 12V11 with parameters
//   (t3/t4; q/(t0 t4), q/(t1 t4), q/(t2 t4), t3 z, t3/z, q^{-n}, A q^{n-1}/t4).
cplx eval_R(int n, cplx z, const RnParams& par);
// Dual T_n: (A t3/q; A/t0, A/t1, A/t2, t3 z, t3/z, q^{-n}, A q^{n-1}/t4).
cplx eval_T(int n, cplx z, const RnParams& par);

// Three-term recurrence for R_n with gauge parameters xi, eta.
VerificationReport check_recurrence_R(int n, cplx z, const RnParams& par, cplx xi, cplx eta);

// Operator D_mu = V_mu(z)(T - 1) + V_mu(1/z)(T^{-1} - 1) + kappa_mu with
// mu = q^n annihilates R_n; returns the normalized residual at z.
VerificationReport check_Dmu_annihilates_R(int n, cplx z, const RnParams& par);
cplx dmu_kappa(cplx mu, const RnParams& par);
cplx dmu_coefficient(cplx z, cplx mu, const RnParams& par);  // V_mu(z)

// Contiguous relations for E(t) = 12V11(t0; t1..t7;q,p) with the terminating
// parameter in slot t6 (t6 = q^{-n}).  kind: 1, 2, or 3 (= combined form).
VerificationReport check_E_contiguous(int kind, cplx t0, const std::array<cplx, 7>& t, int n,
                                      const SeriesBase& base);

}  // namespace ehf
