// Multiple elliptic beta integrals on the C_n and A_n root systems at rank
// n <= 2, and the van Diejen difference operators with their hermiticity
// checks.  Torus kernels are evaluated through per-ring caches: on the unit
// torus every Gamma/theta argument is a coefficient times a root of unity,
// so each coefficient costs one ring of evaluations per node count instead
// of one evaluation per node pair.
#pragma once

#include <functional>

#include "ehf/beta.hpp"

namespace ehf {

enum class RootFamily { C_I, C_II, A_I1, A_I2, A_II1, A_II2 };

const char* to_string(RootFamily f);

struct RootSystemParams {
    RootFamily family;
    int n = 1;              // rank, 1 or 2
    std::vector<cplx> t;    // per-variable parameters (meaning depends on family)
    std::vector<cplx> s;    // second group for the A families
    cplx tc{};              // coupling t (C_II, A_II1, A_II2)
    cplx sc{};              // coupling s (A_II2)
    NomePair nome;

    // Expected sizes: C_I t:2n+4; C_II t:6; A_I1 s,t:n+2; A_I2 t:n, s:n+3;
    // A_II1 t:n+1, s:4; A_II2 t:3, s:3.
    void validate() const;
    double constraint_defect() const;

    // Solve the last entry of t from the family constraint.
    static RootSystemParams make(RootFamily family, int n, std::vector<cplx> t,
                                 std::vector<cplx> s, cplx tc, cplx sc, const NomePair& nome);
};

// Torus quadrature of the family kernel with kappa_n normalization vs the
// closed-form product.
VerificationReport multi_beta_check(const RootSystemParams& par, const ContourSpec& spec);

// Quadrature side only (used for ||1||^2 norms of the van Diejen ground state,
// where the kernel carries 2n+6 / 8 parameters and no closed form is claimed).
enum class VdFamily { type_I, type_II };

struct VanDiejenParams {
    VdFamily family;
    int n = 1;
    std::vector<cplx> t;  // 2n+6 (type I) or 8 (type II)
    cplx tc{};            // coupling (type II)
    NomePair nome;

    void validate() const;
    double constraint_defect() const;  // prod = p^2 q^2 (with tc^{2n-2} for II)
    // Pole rings clear the [|q|, 1/|q|] annulus needed by the q-shift argument.
    bool hermiticity_admissible(double margin = 0.02) const;
};

using GridFn = std::function<cplx(const std::vector<cplx>&)>;

// D f at the point z: sum_j A_j(z)(f(.. q z_j ..) - f(z)) + A_j(z^-1)(f(.. z_j/q ..) - f(z)).
cplx vandiejen_apply(const VanDiejenParams& par, const GridFn& f, const std::vector<cplx>& z);

// <phi, D psi> - <D phi, psi> residual under the type I / II weights.
VerificationReport vandiejen_hermiticity(const VanDiejenParams& par, const GridFn& phi,
                                         const GridFn& psi, const ContourSpec& spec);

// ||1||^2 = kappa_n^C \int Delta^{I,II} dz/z.
cplx eval_V_multi(const VanDiejenParams& par, const ContourSpec& spec);

// <phi, psi> under the same weight (hermiticity inner product).
cplx vandiejen_inner(const VanDiejenParams& par, const GridFn& phi, const GridFn& psi,
                     const ContourSpec& spec);

}  // namespace ehf
