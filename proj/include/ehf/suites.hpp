// Check registry, suite execution, parameter files and report emission for
// the command-line harness and the acceptance suite.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <random>

#include "ehf/bailey.hpp"
#include "ehf/beta.hpp"
#include "ehf/biorthogonal.hpp"
#include "ehf/multivariate.hpp"
#include "ehf/series.hpp"

namespace ehf {

// Deterministic sampling helper; identical across platforms for a given seed
// (raw engine bits, no distribution objects).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    // Magnitude log-uniform in [rmin, rmax], phase uniform.
    cplx ring(double rmin, double rmax) {
        double r = rmin * std::exp(unit() * std::log(rmax / rmin));
        double phi = 2.0 * 3.141592653589793 * unit();
        return r * cplx(std::cos(phi), std::sin(phi));
    }

  private:
    std::mt19937_64 eng_;
};

uint64_t fnv1a(const std::string& s);

// key = value text file; '#' starts a comment.  Complex literals use "a+bi".
struct KeyValues {
    std::map<std::string, std::string> kv;

    static KeyValues parse(const std::string& text);
    static KeyValues parse_file(const std::string& path);
    bool has(const std::string& key) const { return kv.count(key) != 0; }
    double get_real(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    cplx get_complex(const std::string& key, cplx def) const;
};

struct SuiteConfig {
    std::vector<std::string> suites;  // empty = all registered suites
    std::map<std::string, double> tol_override;
    std::map<std::string, int> node_override;
    uint64_t seed = 812;
    KeyValues params;
    bool timings = false;  // include wall times / timestamp (breaks byte determinism)
};

struct CheckContext {
    const SuiteConfig* cfg;
    uint64_t seed;

    Rng rng(const std::string& id) const { return Rng(seed ^ fnv1a(id)); }
    double tol(const std::string& id, double def) const;
    int nodes(const std::string& id, int def) const;
    ContourSpec circle(const std::string& id, double target = 1e-11, int cap = 1 << 14) const;
};

struct CheckDef {
    std::string suite;
    std::string id;
    std::string describes;  // one-line statement of the identity under test
    std::function<std::vector<VerificationReport>(const CheckContext&)> run;
};

const std::vector<CheckDef>& check_registry();
std::vector<std::string> suite_names();

// Executes the selected suites; throws std::invalid_argument on unknown ids.
std::vector<VerificationReport> run_suites(const SuiteConfig& cfg);

int exit_code_for(const std::vector<VerificationReport>& reports);

void emit_json(std::ostream& os, const std::vector<VerificationReport>& reports,
               const SuiteConfig& cfg);
void emit_csv(std::ostream& os, const std::vector<VerificationReport>& reports,
              const SuiteConfig& cfg);
std::vector<VerificationReport> parse_json_reports(const std::string& text);

// ---- shared admissible-parameter samplers (suite defaults and acceptance) --

namespace samplers {

NomePair nome_box(Rng& rng, double pmax, double qmax, double eps = kDefaultTailEps,
                  double pq_cap = 1.0);
// |t_j| <= tcap with prod t = pq, rejection on the solved parameter.
BetaParams beta_params(Rng& rng, const NomePair& nome, double tcap = 0.8);
// Frenkel-Turaev data (t0, t1, t2, t3, t5) for given N with generic margins.
std::array<cplx, 5> frenkel_turaev_point(Rng& rng, const NomePair& nome, int N);
// V-function parameters admissible for the E7 transformation of the given kind.
VParams e7_point(Rng& rng, const NomePair& nome, int kind);
// V-function parameters admissible for the contiguous relation of the given
// kind (kind 1 shifts t8 down, kind 2 shifts t6/t7 down).
VParams contiguous_point(Rng& rng, const NomePair& nome, int kind);
// (a, t1..t5, z) for the elliptic hypergeometric equation.
struct EhePoint {
    cplx a;
    std::array<cplx, 5> t;
    cplx z;
};
EhePoint ehe_point(Rng& rng, const NomePair& nome);
// t1..t5 with |t5| in (outside_lo, outside_hi) outside the unit circle.
std::array<cplx, 5> residue_point(Rng& rng, const NomePair& nome, double t5_abs);
// 12V11 contiguous-relation data: t0, t1..t7 with t6 = q^{-n}.
std::pair<cplx, std::array<cplx, 7>> e12_point(Rng& rng, const SeriesBase& base, int n);
// R_n / T_n parameter pack with generic magnitudes (series-only checks).
RnParams rn_point(Rng& rng, const SeriesBase& base);
// Biorthogonal parameters admissible for the (n,m) <= box on the unit circle.
BiorthParams biorth_point(Rng& rng, const NomePair& nome, int box);
// van Diejen parameters satisfying the hermiticity pole restrictions.
VanDiejenParams vandiejen_point(Rng& rng, VdFamily family, int n, const NomePair& nome,
                                cplx coupling);
// Multivariate family points (solved constraints, ring margins respected).
RootSystemParams root_point(Rng& rng, RootFamily family, int n, const NomePair& nome);

}  // namespace samplers

}  // namespace ehf
