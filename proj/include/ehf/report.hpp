// Machine-readable outcome of a single identity check.
#pragma once

#include <map>
#include <string>

#include "ehf/qseries.hpp"

namespace ehf {

enum class Verdict { pass, fail, inconclusive, untestable };

const char* to_string(Verdict v);

struct VerificationReport {
    std::string id;
    std::string suite;
    cplx lhs{};
    cplx rhs{};
    double abs_residual = 0.0;
    double rel_residual = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::fail;
    // Grid metadata: node counts, truncation orders, branch notes, diagnostics.
    // Kept as ordered string pairs so report emission is byte-deterministic.
    std::map<std::string, std::string> meta;
    double wall_ms = 0.0;

    bool passed() const { return verdict == Verdict::pass; }
};

// Residuals normalized by the largest term magnitude, never by a sum that
// may cancel.  `scale` should be max(|term_i|) over the identity's terms;
// when zero the comparison falls back to absolute.
VerificationReport make_report(std::string id, cplx lhs, cplx rhs, double tolerance,
                               double scale = 0.0);

// Shortest round-trip decimal formatting; used everywhere a double or a
// complex value ends up in a report so that identical runs emit identical
// bytes.
std::string format_double(double x);
std::string format_complex(cplx z);  // "a+bi" / "a-bi"
cplx parse_complex(const std::string& s);

}  // namespace ehf
