#include "ehf/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

namespace ehf {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::untestable: return "untestable";
    }
    return "unknown";
}

VerificationReport make_report(std::string id, cplx lhs, cplx rhs, double tolerance,
                               double scale) {
    VerificationReport r;
    r.id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.tolerance = tolerance;
    r.abs_residual = std::abs(lhs - rhs);
    double denom = std::max({scale, std::abs(lhs), std::abs(rhs)});
    r.rel_residual = denom > 0.0 ? r.abs_residual / denom : r.abs_residual;
    r.verdict = r.rel_residual <= tolerance ? Verdict::pass : Verdict::fail;
    return r;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_complex(cplx z) {
    std::string s = format_double(z.real());
    if (!std::signbit(z.imag())) s += "+";
    s += format_double(z.imag());
    s += "i";
    return s;
}

cplx parse_complex(const std::string& s) {
    // Grammar: <real>, <real><sign><imag>i, or <imag>i.
    const char* c = s.c_str();
    char* end = nullptr;
    double a = std::strtod(c, &end);
    if (end == c) throw std::invalid_argument("parse_complex: bad literal '" + s + "'");
    if (*end == '\0') return cplx(a, 0.0);
    if (*end == 'i') return cplx(0.0, a);
    const char* c2 = end;
    double b = std::strtod(c2, &end);
    if (end == c2 || *end != 'i')
        throw std::invalid_argument("parse_complex: bad literal '" + s + "'");
    return cplx(a, b);
}

}  // namespace ehf
