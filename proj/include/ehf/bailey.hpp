// Integral Bailey pairs: the defining Gamma-kernel transform, the two Bailey
// lemmas, and the (A,A)/(A,C) Fourier-type inversions at rank 1.
#pragma once

#include <functional>

#include "ehf/beta.hpp"

namespace ehf {

using CircleFn = std::function<cplx(cplx)>;

struct BaileyPair {
    CircleFn alpha;
    CircleFn beta;
    cplx t;
    NomePair nome;
};

// beta(w) = kappa \int_T Gamma(t w^{±} z^{±}) alpha(z) dz/z as a quadrature
// closure.
CircleFn derive_beta(const CircleFn& alpha, cplx t, const NomePair& nome,
                     const ContourSpec& spec);

BaileyPair make_pair_from_alpha(const CircleFn& alpha, cplx t, const NomePair& nome,
                                const ContourSpec& spec);

// Seed pair whose defining relation is the elliptic beta integral:
//   alpha0(z) = prod_k Gamma(a_k z^{±}) / Gamma(z^{±2}),
//   beta0(w)  = Gamma(t^2) prod_{j<k} Gamma(a_j a_k) prod_k Gamma(t a_k w^{±}),
// valid for t^2 prod a_k = pq.
BaileyPair make_beta_seed_pair(const std::array<cplx, 4>& a, cplx t, const NomePair& nome);

// First lemma: (alpha, beta) w.r.t. t  ->  (alpha', beta') w.r.t. s t.
BaileyPair lemma1_step(const BaileyPair& pair, cplx s, cplx u, const ContourSpec& spec);
// Second lemma: (alpha, beta) w.r.t. s t  ->  (alpha', beta') w.r.t. t.
BaileyPair lemma2_step(const BaileyPair& pair, cplx s, cplx u, const ContourSpec& spec);

// Defining-relation residual at the given sample points (max over samples).
VerificationReport pair_validity_check(const BaileyPair& pair, std::span<const cplx> samples,
                                       const ContourSpec& spec, double tol = 1e-7);

// Round-trip inversion checks at n = 1 with cycle D taken as the unit circle;
// a pole census decides between a quantitative verdict and `inconclusive`.
VerificationReport inversion_check_AA(const CircleFn& f, cplx t, const NomePair& nome,
                                      const ContourSpec& spec, std::span<const cplx> samples);
VerificationReport inversion_check_AC(const CircleFn& f, cplx t, const NomePair& nome,
                                      const ContourSpec& spec, std::span<const cplx> samples);

// Corollary consistency at n = 1: with delta_C * fhat_C equal to the C_I
// kernel, the (A,C) forward relation is the A_I^(2) integration formula.
// Parameters: v1..v4 free, coupling t and the A_n point x with
// t^2 prod v = pq enforced by the caller.
VerificationReport bailey_corollary_AI2(const std::array<cplx, 4>& v, cplx t, cplx x,
                                        const NomePair& nome, const ContourSpec& spec);

}  // namespace ehf
