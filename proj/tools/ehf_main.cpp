// Command-line verification harness.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ehf/suites.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"ehf - elliptic hypergeometric identity verification harness"};

    std::vector<std::string> suites;
    std::vector<std::string> tol_args, node_args;
    std::string out_path, format = "json", params_path;
    uint64_t seed = 812;
    bool list = false, timings = false;

    app.add_option("suite", suites, "suite ids to run (default: all)");
    app.add_option("--tol", tol_args, "per-check tolerance override, id=value")
        ->expected(-1);
    app.add_option("--nodes", node_args, "per-check fixed node count, id=value")->expected(-1);
    app.add_option("--seed", seed, "seed for sampled parameter points");
    app.add_option("--out", out_path, "write the report to this path (default: stdout)");
    app.add_option("--format", format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--params", params_path, "key=value parameter file");
    app.add_flag("--list", list, "list suites and checks, then exit");
    app.add_flag("--timings", timings,
                 "include wall times and a start timestamp (breaks byte determinism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list) {
        std::string cur;
        for (const auto& def : ehf::check_registry()) {
            if (def.suite != cur) {
                cur = def.suite;
                std::cout << cur << "\n";
            }
            std::cout << "  " << def.id << " - " << def.describes << "\n";
        }
        return 0;
    }

    ehf::SuiteConfig cfg;
    cfg.suites = suites;
    cfg.seed = seed;
    cfg.timings = timings;
    try {
        if (!params_path.empty()) cfg.params = ehf::KeyValues::parse_file(params_path);
        for (const auto& kv : tol_args) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--tol needs id=value");
            cfg.tol_override[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        }
        for (const auto& kv : node_args) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--nodes needs id=value");
            cfg.node_override[kv.substr(0, eq)] = std::stoi(kv.substr(eq + 1));
        }
        if (cfg.params.has("seed")) cfg.seed = cfg.params.get_int("seed", static_cast<int>(seed));
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    std::vector<ehf::VerificationReport> reports;
    try {
        reports = ehf::run_suites(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    auto emit = [&](std::ostream& os) {
        if (format == "json")
            ehf::emit_json(os, reports, cfg);
        else
            ehf::emit_csv(os, reports, cfg);
    };
    if (out_path.empty()) {
        emit(std::cout);
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) {
            std::cerr << "config error: cannot open output path " << out_path << "\n";
            return 2;
        }
        emit(os);
    }

    int fails = 0, inconclusive = 0, untestable = 0;
    for (const auto& r : reports) {
        if (r.verdict == ehf::Verdict::fail) ++fails;
        if (r.verdict == ehf::Verdict::inconclusive) ++inconclusive;
        if (r.verdict == ehf::Verdict::untestable) ++untestable;
    }
    std::cerr << reports.size() << " checks: " << (reports.size() - fails - inconclusive -
                                                   untestable)
              << " pass, " << fails << " fail, " << inconclusive << " inconclusive, "
              << untestable << " untestable\n";
    return ehf::exit_code_for(reports);
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
