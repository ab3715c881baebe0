// Python bindings for the main operations.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ehf/suites.hpp"

namespace py = pybind11;
using namespace ehf;

namespace {

py::dict report_to_dict(const VerificationReport& r) {
    py::dict d;
    d["id"] = r.id;
    d["suite"] = r.suite;
    d["verdict"] = std::string(to_string(r.verdict));
    d["lhs"] = r.lhs;
    d["rhs"] = r.rhs;
    d["abs_residual"] = r.abs_residual;
    d["rel_residual"] = r.rel_residual;
    d["tolerance"] = r.tolerance;
    py::dict meta;
    for (const auto& [k, v] : r.meta) meta[py::str(k)] = v;
    d["meta"] = meta;
    return d;
}

RootFamily family_from_string(const std::string& s) {
    if (s == "C_I") return RootFamily::C_I;
    if (s == "C_II") return RootFamily::C_II;
    if (s == "A_I1") return RootFamily::A_I1;
    if (s == "A_I2") return RootFamily::A_I2;
    if (s == "A_II1") return RootFamily::A_II1;
    if (s == "A_II2") return RootFamily::A_II2;
    throw std::invalid_argument("unknown root family: " + s);
}

}  // namespace

PYBIND11_MODULE(_ehf, m) {
    m.doc() = "Elliptic hypergeometric functions: evaluators and identity checks";

    py::register_exception<pole_error>(m, "PoleError");

    py::class_<NomePair>(m, "NomePair")
        .def(py::init<cplx, cplx, double>(), py::arg("p"), py::arg("q"),
             py::arg("tail_eps") = kDefaultTailEps)
        .def_readonly("p", &NomePair::p)
        .def_readonly("q", &NomePair::q)
        .def_readonly("tail_eps", &NomePair::tail_eps)
        .def_readonly("trunc_p", &NomePair::trunc_p)
        .def_readonly("trunc_q", &NomePair::trunc_q);

    py::class_<PeriodTriple>(m, "PeriodTriple")
        .def(py::init<cplx, cplx, cplx>(), py::arg("omega1"), py::arg("omega2"),
             py::arg("omega3"))
        .def_readonly("q", &PeriodTriple::q)
        .def_readonly("p", &PeriodTriple::p)
        .def_readonly("r", &PeriodTriple::r)
        .def_readonly("standard_regime", &PeriodTriple::standard_regime)
        .def_readonly("unit_circle_regime", &PeriodTriple::unit_circle_regime);

    m.def("qpoch_inf", &qpoch_inf, py::arg("t"), py::arg("q"),
          py::arg("tail_eps") = kDefaultTailEps, "(t;q)_inf infinite product");
    m.def(
        "theta", [](cplx z, cplx p) { return theta(z, p); }, py::arg("z"), py::arg("p"),
        "theta(z;p) = (z;p)_inf (p/z;p)_inf");
    m.def("theta1", &theta1, py::arg("u"), py::arg("tau"), "Jacobi theta_1(u|tau)");
    m.def(
        "epoch", [](cplx t, int n, cplx q, cplx p) { return epoch(t, n, q, p); }, py::arg("t"),
        py::arg("n"), py::arg("q"), py::arg("p"), "elliptic Pochhammer (t)_n");

    m.def(
        "egamma", [](cplx z, cplx p, cplx q) { return GammaTable(p, q)(z); }, py::arg("z"),
        py::arg("p"), py::arg("q"), "elliptic gamma function");
    m.def(
        "mod_egamma",
        [](cplx u, const PeriodTriple& pe) { return mod_egamma(u, pe); }, py::arg("u"),
        py::arg("periods"), "modified elliptic gamma G(u; omega)");
    m.def("hyperbolic_gamma", &hyperbolic_gamma, py::arg("u"), py::arg("omega1"),
          py::arg("omega2"));

    m.def(
        "eval_v_series",
        [](cplx t0, std::vector<cplx> params, cplx q, cplx p, int term_index, int N, cplx y) {
            VSeriesSpec spec(t0, std::move(params), SeriesBase(q, p), term_index, N, y);
            return eval_V(spec);
        },
        py::arg("t0"), py::arg("params"), py::arg("q"), py::arg("p"), py::arg("term_index"),
        py::arg("N"), py::arg("y") = cplx(1.0),
        "terminating very-well-poised series; term_index is the 1-based q^{-N} slot");
    m.def(
        "frenkel_turaev",
        [](cplx t0, cplx t1, cplx t2, cplx t3, int N, cplx t5, cplx q, cplx p) {
            return report_to_dict(frenkel_turaev_check(t0, t1, t2, t3, N, t5, SeriesBase(q, p)));
        },
        py::arg("t0"), py::arg("t1"), py::arg("t2"), py::arg("t3"), py::arg("N"), py::arg("t5"),
        py::arg("q"), py::arg("p"));
    m.def(
        "eval_R",
        [](int n, cplx z, std::array<cplx, 5> t, cplx q, cplx p) {
            return eval_R(n, z, RnParams{t, SeriesBase(q, p)});
        },
        py::arg("n"), py::arg("z"), py::arg("t"), py::arg("q"), py::arg("p"));
    m.def(
        "eval_T",
        [](int n, cplx z, std::array<cplx, 5> t, cplx q, cplx p) {
            return eval_T(n, z, RnParams{t, SeriesBase(q, p)});
        },
        py::arg("n"), py::arg("z"), py::arg("t"), py::arg("q"), py::arg("p"));

    m.def(
        "integrate_circle",
        [](const std::function<cplx(cplx)>& f, int nodes, double target) {
            auto r = integrate_circle(f, ContourSpec::circle(1.0, nodes, target));
            return py::make_tuple(r.value, r.err_est, r.nodes, r.converged);
        },
        py::arg("f"), py::arg("nodes") = 64, py::arg("target_rel") = 1e-11,
        "(1/2 pi i) contour mean of f(z) dz/z over the unit circle; returns "
        "(value, err_est, nodes, converged)");

    m.def(
        "elliptic_beta",
        [](std::array<cplx, 5> t5, cplx p, cplx q) {
            NomePair nome(p, q);
            return report_to_dict(
                elliptic_beta_check(BetaParams::from_free(t5, nome), ContourSpec::circle()));
        },
        py::arg("t"), py::arg("p"), py::arg("q"),
        "beta integral check; the sixth parameter is solved from prod t = pq");
    m.def(
        "eval_vfn",
        [](std::array<cplx, 8> t, cplx p, cplx q) {
            return eval_Vfn(VParams{t, NomePair(p, q)}, ContourSpec::circle());
        },
        py::arg("t"), py::arg("p"), py::arg("q"), "eight-parameter V(t) by quadrature");
    m.def(
        "e7_transform",
        [](int kind, std::array<cplx, 8> t, cplx p, cplx q) {
            return report_to_dict(
                check_E7_transform(kind, VParams{t, NomePair(p, q)}, ContourSpec::circle()));
        },
        py::arg("kind"), py::arg("t"), py::arg("p"), py::arg("q"));
    m.def(
        "residue_ledger",
        [](std::array<cplx, 5> t, cplx p, cplx q) {
            auto led = residue_correction(t, NomePair(p, q));
            return py::make_tuple(led.c0, led.terms, led.included_n);
        },
        py::arg("t"), py::arg("p"), py::arg("q"));

    m.def(
        "multi_beta",
        [](const std::string& family, int n, std::vector<cplx> t, std::vector<cplx> s, cplx tc,
           cplx sc, cplx p, cplx q) {
            RootSystemParams par{family_from_string(family), n, std::move(t), std::move(s), tc,
                                 sc, NomePair(p, q)};
            ContourSpec spec =
                n == 1 ? ContourSpec::circle() : ContourSpec::torus2(16, 1e-8, 512);
            return report_to_dict(multi_beta_check(par, spec));
        },
        py::arg("family"), py::arg("n"), py::arg("t"), py::arg("s") = std::vector<cplx>{},
        py::arg("tc") = cplx(0.0), py::arg("sc") = cplx(0.0), py::arg("p") = cplx(0.4),
        py::arg("q") = cplx(0.4));

    m.def("suite_names", &suite_names);
    m.def(
        "run_suites",
        [](std::vector<std::string> suites, uint64_t seed) {
            SuiteConfig cfg;
            cfg.suites = std::move(suites);
            cfg.seed = seed;
            auto reports = run_suites(cfg);
            py::list out;
            for (const auto& r : reports) out.append(report_to_dict(r));
            return out;
        },
        py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 812);
    m.def(
        "report_json",
        [](std::vector<std::string> suites, uint64_t seed) {
            SuiteConfig cfg;
            cfg.suites = std::move(suites);
            cfg.seed = seed;
            auto reports = run_suites(cfg);
            std::ostringstream os;
            emit_json(os, reports, cfg);
            return os.str();
        },
        py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 812);

    m.attr("__version__") = "0.1.0";
}
