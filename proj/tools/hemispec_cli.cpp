// Command-line front end: closed-form spectra and Morse indices, radius-window
// scans, the identity/inequality verification suites, and the FEM cross-check.

#include <hemispec/fem.hpp>
#include <hemispec/models.hpp>
#include <hemispec/serialize.hpp>
#include <hemispec/spectra.hpp>
#include <hemispec/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using nlohmann::json;
using namespace hemispec;

namespace {

struct CommonArgs {
    std::string model_json;
    int lmax = 6;
    int refine = 5;
    std::string grid;
    std::uint64_t seed = 42;
    std::string out;
    std::string format = "json";
    std::string suite = "all";
    std::int64_t samples = 100000;
    std::string family;
    int n = 0;
    bool no_timestamp = false;
};

json run_config(const std::string& command, const CommonArgs& a) {
    json cfg;
    cfg["command"] = command;
    if (!a.model_json.empty()) cfg["model"] = json::parse(a.model_json, nullptr, false);
    cfg["lmax"] = a.lmax;
    cfg["refine"] = a.refine;
    if (!a.grid.empty()) cfg["grid"] = a.grid;
    cfg["seed"] = a.seed;
    cfg["format"] = a.format;
    if (!a.suite.empty()) cfg["suite"] = a.suite;
    cfg["samples"] = a.samples;
    if (!a.family.empty()) cfg["family"] = a.family;
    if (a.n) cfg["n"] = a.n;
    return cfg;
}

json document(const std::string& command, const CommonArgs& a) {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = run_config(command, a);
    if (!a.no_timestamp) {
        doc["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                               std::chrono::system_clock::now().time_since_epoch())
                               .count();
    }
    return doc;
}

void emit(const CommonArgs& a, const std::string& text) {
    if (a.out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + a.out);
    os << text << "\n";
}

struct GridSpec {
    double lo, hi, step;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g{};
    char c1, c2;
    std::istringstream ss(text);
    if (!(ss >> g.lo >> c1 >> g.hi >> c2 >> g.step) || c1 != ':' || c2 != ':' ||
        !(g.step > 0.0) || !(g.lo < g.hi)) {
        throw InvalidModel("grid must be lo:hi:step with lo < hi and step > 0");
    }
    return g;
}

int cmd_spectrum(const CommonArgs& a) {
    Model m = model_from_json(a.model_json);
    Spectrum spec = jacobi_spectrum(m, a.lmax);
    IndexReport strong = strong_index(m);
    IndexReport weak = weak_index(m);

    if (a.format == "csv") {
        std::string csv = "# " + std::string(kVersion) + "\n";
        csv += "# config " + run_config("spectrum", a).dump() + "\n";
        csv += spectrum_to_csv(spec);
        emit(a, csv);
    } else {
        json doc = document("spectrum", a);
        doc["model"] = json::parse(to_json(m));
        doc["spectrum"] = json::parse(to_json(spec));
        doc["index"] = json::parse(to_json(strong));
        emit(a, doc.dump(2));
    }
    std::cerr << describe(m) << ": lambda1 = " << format_double(strong.lambda1)
              << ", strong index = " << strong.strong_index
              << ", weak index = " << weak.weak_index;
    if (strong.paper_claim) {
        std::cerr << " (stated strong index " << *strong.paper_claim
                  << (strong.discrepancy_flag ? ", disagrees" : ", agrees") << ")";
    }
    std::cerr << "\n";
    return 0;
}

int cmd_index_scan(const CommonArgs& a) {
    json mj = json::parse(a.model_json, nullptr, false);
    if (mj.is_discarded() || mj.value("kind", "") != std::string("HTorusHalf") ||
        !mj.contains("n") || !mj.contains("k")) {
        throw InvalidModel("index-scan needs --model {\"kind\":\"HTorusHalf\",\"n\":..,\"k\":..}");
    }
    int n = mj["n"].get<int>(), k = mj["k"].get<int>();
    HalvedFactor halved = mj.value("halved_factor", "Second") == std::string("First")
                              ? HalvedFactor::First
                              : HalvedFactor::Second;
    GridSpec g = parse_grid(a.grid.empty() ? "0.05:0.95:0.001" : a.grid);
    IndexScanResult res = index_scan(n, k, g.lo, g.hi, g.step, halved);
    if (res.rows.empty()) throw InvalidModel("scan grid contains no admissible radii");

    std::string csv = "# " + std::string(kVersion) + "\n";
    csv += "# config " + run_config("index-scan", a).dump() + "\n";
    csv += "r,strong,weak,lambda1,lambda1_weak\n";
    for (const auto& row : res.rows) {
        csv += format_double(row.r) + "," + std::to_string(row.strong) + "," +
               std::to_string(row.weak) + "," + format_double(row.lambda1) + "," +
               format_double(row.lambda1_weak) + "\n";
    }
    emit(a, csv);
    std::cerr << "weak index = " << n + 1 << " on r in [" << format_double(res.window_lo)
              << ", " << format_double(res.window_hi) << "]; analytic window ["
              << format_double(res.analytic_lo) << ", " << format_double(res.analytic_hi)
              << "]; max endpoint deviation " << format_double(res.max_endpoint_error) << "\n";
    return 0;
}

int cmd_verify(const CommonArgs& a) {
    std::vector<SuiteEntry> entries;
    if (a.suite == "bounds" && a.family == "htorus") {
        int n_lo = a.n ? a.n : 2, n_hi = a.n ? a.n : 6;
        for (int n = n_lo; n <= n_hi; ++n) {
            for (int k = 1; k <= n - 1; ++k) {
                for (int i = 1; i * 0.05 < 1.0; ++i) {
                    Model m = make_htorus_half(n, k, i * 0.05);
                    if (!(geometric_data(m).H > 1e-9)) continue;
                    SuiteEntry e;
                    e.type = "bound";
                    e.bound = lambda1_bound_cmc(m);
                    e.ok = e.bound.slack >= -1e-9;
                    entries.push_back(std::move(e));
                }
            }
        }
    } else {
        entries = run_verify_suites(a.suite, a.seed, a.samples, 100);
    }
    json doc = document("verify", a);
    doc["reports"] = json::parse(to_json(entries));
    bool all_ok = true;
    for (const auto& e : entries) all_ok = all_ok && e.ok;
    doc["all_pass"] = all_ok;
    emit(a, doc.dump(2));
    std::cerr << entries.size() << " reports, " << (all_ok ? "all pass" : "FAILURES present")
              << "\n";
    return all_ok ? 0 : 1;
}

int cmd_fem(const CommonArgs& a) {
    Model m = model_from_json(a.model_json);
    if (m.n != 2) {
        std::cerr << "fem supports n = 2 models only\n";
        return 2;
    }
    fem::FemIndex fi = fem::fem_index(m, a.refine); // throws for refine out of range
    IndexReport engine = strong_index(m);

    json doc = document("fem", a);
    doc["model"] = json::parse(to_json(m));
    doc["eigen"] = json::parse(to_json(fi.eigen));
    doc["epsilon_gap"] = fi.epsilon_gap;

    // per-eigenvalue comparison against the closed-form engine
    Spectrum exact = jacobi_spectrum_below(m, fi.eigen.eigenvalues.back() + 1.0);
    json cmp;
    json errs = json::array();
    for (size_t i = 0; i < fi.eigen.eigenvalues.size(); ++i) {
        double ref = exact.value_at(static_cast<std::int64_t>(i));
        errs.push_back(std::abs(fi.eigen.eigenvalues[i] - ref) / std::max(1.0, std::abs(ref)));
    }
    cmp["relative_errors"] = errs;
    cmp["engine_strong_index"] = engine.strong_index;
    cmp["fem_strong_index"] = fi.num_negative;
    cmp["fem_weak_index"] = fi.num_negative_weak;
    cmp["index_agreement"] = engine.strong_index == fi.num_negative;
    if (engine.paper_claim) {
        cmp["paper_claim"] = *engine.paper_claim;
        cmp["discrepancy_flag"] = engine.discrepancy_flag;
    }
    doc["comparison"] = cmp;
    emit(a, doc.dump(2));
    std::cerr << describe(m) << ": fem index " << fi.num_negative << ", engine index "
              << engine.strong_index << ", agreement "
              << (engine.strong_index == fi.num_negative ? "true" : "false") << "\n";
    return 0;
}

int cmd_report(const CommonArgs& a) {
    json doc = document("report", a);
    json models = json::array();
    for (const Model& m : catalog_models(a.n ? a.n : 4)) {
        json entry;
        entry["model"] = json::parse(to_json(m));
        GeometricData g = geometric_data(m);
        entry["geometric_data"] = {{"H", g.H},
                                   {"normA2", g.normA2},
                                   {"normA0_2", g.normA0_2},
                                   {"potential", g.potential}};
        entry["strong"] = json::parse(to_json(strong_index(m)));
        entry["weak"] = json::parse(to_json(weak_index(m)));
        if (m.kind == ModelKind::Equator || m.kind == ModelKind::MinimalCliffordHalf) {
            entry["bound_minimal"] = json::parse(to_json(lambda1_bound_minimal(m)));
        } else if (m.kind == ModelKind::HTorusHalf && g.H > 0.0) {
            entry["bound_cmc"] = json::parse(to_json(lambda1_bound_cmc(m)));
        }
        models.push_back(std::move(entry));
    }
    doc["models"] = models;
    json windows = json::array();
    for (int n = 2; n <= (a.n ? a.n : 4); ++n) {
        for (int k = 1; k <= n - 1; ++k) {
            auto [lo, hi] = radius_window(n, k);
            windows.push_back({{"n", n}, {"k", k}, {"r_lo", lo}, {"r_hi", hi}});
        }
    }
    doc["radius_windows"] = windows;
    auto entries = run_verify_suites("all", a.seed, 10000, 20);
    bool all_ok = true;
    int fails = 0;
    for (const auto& e : entries) {
        all_ok = all_ok && e.ok;
        fails += e.ok ? 0 : 1;
    }
    doc["verify_summary"] = {{"reports", entries.size()}, {"failures", fails}};
    emit(a, doc.dump(2));
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra, Morse indices and verification suites for free-boundary "
                 "CMC hypersurfaces of the upper hemisphere"};
    app.require_subcommand(1);
    CommonArgs a;

    auto add_common = [&](CLI::App* cmd, bool with_model) {
        if (with_model) cmd->add_option("--model", a.model_json, "model descriptor JSON");
        cmd->add_option("--lmax", a.lmax, "factor degree cap for spectra");
        cmd->add_option("--refine", a.refine, "mesh refinement level");
        cmd->add_option("--grid", a.grid, "radius grid lo:hi:step");
        cmd->add_option("--seed", a.seed, "random seed (echoed into output)");
        cmd->add_option("--out", a.out, "output path (stdout if omitted)");
        cmd->add_option("--format", a.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--suite", a.suite, "verification suite name or 'all'");
        cmd->add_option("--samples", a.samples, "sample count for randomized suites");
        cmd->add_option("--family", a.family, "model family filter for bounds");
        cmd->add_option("--n", a.n, "dimension filter");
        cmd->add_flag("--no-timestamp", a.no_timestamp, "omit timestamps (reproducible output)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "closed-form Jacobi spectrum and index");
    add_common(spectrum, true);
    auto* scan = app.add_subcommand("index-scan", "H-torus radius scan of strong/weak indices");
    add_common(scan, true);
    auto* verify = app.add_subcommand("verify", "identity, inequality and bound suites");
    add_common(verify, false);
    auto* femc = app.add_subcommand("fem", "finite-element cross-check (n = 2)");
    add_common(femc, true);
    auto* report = app.add_subcommand("report", "full catalog report");
    add_common(report, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(a);
        if (scan->parsed()) return cmd_index_scan(a);
        if (verify->parsed()) return cmd_verify(a);
        if (femc->parsed()) return cmd_fem(a);
        if (report->parsed()) return cmd_report(a);
    } catch (const InvalidModel& e) {
        std::cerr << "invalid model: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDimension& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
