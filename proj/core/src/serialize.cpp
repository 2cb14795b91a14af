#include "hemispec/serialize.hpp"

#include <json.hpp>

#include <cstdio>

namespace hemispec {

using nlohmann::json;

namespace {

std::string dump(const json& j, int indent) { return j.dump(indent); }

json model_json(const Model& m) {
    json j;
    j["kind"] = to_string(m.kind);
    j["n"] = m.n;
    if (m.is_torus()) {
        j["k"] = m.k;
        j["halved_factor"] = to_string(m.halved);
    }
    if (m.kind == ModelKind::UmbilicalCap || m.kind == ModelKind::HTorusHalf) j["r"] = m.r;
    return j;
}

json spectrum_json(const Spectrum& s) {
    json lines = json::array();
    for (const auto& line : s.lines) {
        json labels = json::array();
        for (const auto& l : line.labels) labels.push_back(l);
        lines.push_back({{"value", line.value},
                         {"multiplicity", line.multiplicity},
                         {"labels", labels}});
    }
    return {{"lines", lines}, {"exact_below", s.exact_below}};
}

json index_json(const IndexReport& r) {
    json neg = json::array();
    for (const auto& line : r.negative_lines) {
        json labels = json::array();
        for (const auto& l : line.labels) labels.push_back(l);
        neg.push_back({{"value", line.value},
                       {"multiplicity", line.multiplicity},
                       {"labels", labels}});
    }
    json j{{"strong_index", r.strong_index},
           {"weak_index", r.weak_index},
           {"lambda1", r.lambda1},
           {"lambda1_weak", r.lambda1_weak},
           {"negative_lines", neg},
           {"discrepancy_flag", r.discrepancy_flag}};
    if (r.paper_claim) j["paper_claim"] = *r.paper_claim;
    return j;
}

json identity_json(const IdentityReport& r) {
    return {{"name", r.name},         {"samples", r.samples},
            {"max_residual", r.max_residual}, {"tolerance", r.tolerance},
            {"pass", r.pass},         {"notes", r.notes}};
}

json bound_json(const BoundReport& r) {
    return {{"lambda1", r.lambda1},
            {"bound", r.bound},
            {"slack", r.slack},
            {"equality", r.equality},
            {"family_params", model_json(r.family_params)}};
}

json eigen_json(const fem::EigenResult& r) {
    return {{"eigenvalues", r.eigenvalues},
            {"num_negative", r.num_negative},
            {"lambda1", r.lambda1},
            {"dof", r.dof},
            {"residual_norms", r.residual_norms}};
}

} // namespace

std::string to_json(const Model& m, int indent) { return dump(model_json(m), indent); }

Model model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidModel(std::string("malformed model JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j.contains("n")) {
        throw InvalidModel("model JSON needs at least {kind, n}");
    }
    std::string kind = j["kind"].get<std::string>();
    int n = j["n"].get<int>();
    HalvedFactor halved = HalvedFactor::Second;
    if (j.contains("halved_factor")) {
        std::string h = j["halved_factor"].get<std::string>();
        if (h == "First") {
            halved = HalvedFactor::First;
        } else if (h != "Second") {
            throw InvalidModel("halved_factor must be First or Second");
        }
    }
    try {
        if (kind == "Equator") return make_equator(n);
        if (kind == "UmbilicalCap") {
            if (!j.contains("r")) throw InvalidModel("UmbilicalCap needs r");
            return make_cap(n, j["r"].get<double>());
        }
        if (kind == "MinimalCliffordHalf") {
            if (!j.contains("k")) throw InvalidModel("MinimalCliffordHalf needs k");
            return make_clifford_half(n, j["k"].get<int>(), halved);
        }
        if (kind == "HTorusHalf") {
            if (!j.contains("k") || !j.contains("r")) throw InvalidModel("HTorusHalf needs k and r");
            return make_htorus_half(n, j["k"].get<int>(), j["r"].get<double>(), halved);
        }
    } catch (const json::exception& e) {
        throw InvalidModel(std::string("bad model field: ") + e.what());
    }
    throw InvalidModel("unknown model kind: " + kind);
}

std::string to_json(const Spectrum& s, int indent) { return dump(spectrum_json(s), indent); }
std::string to_json(const IndexReport& r, int indent) { return dump(index_json(r), indent); }
std::string to_json(const IdentityReport& r, int indent) { return dump(identity_json(r), indent); }
std::string to_json(const BoundReport& r, int indent) { return dump(bound_json(r), indent); }
std::string to_json(const fem::EigenResult& r, int indent) { return dump(eigen_json(r), indent); }

std::string to_json(const CharPolyResult& r, int indent) {
    return dump(json{{"lambda_minus", r.lambda_minus},
                     {"lambda_plus", r.lambda_plus},
                     {"gamma_minus", r.gamma_minus},
                     {"gamma_plus", r.gamma_plus},
                     {"discriminant", r.discriminant}},
                indent);
}

std::string to_json(const std::vector<SuiteEntry>& suite, int indent) {
    json arr = json::array();
    for (const auto& e : suite) {
        json j = e.type == "identity" ? identity_json(e.identity) : bound_json(e.bound);
        j["type"] = e.type;
        arr.push_back(std::move(j));
    }
    return dump(arr, indent);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_to_csv(const Spectrum& s) {
    std::string out = "# exact_below " + format_double(s.exact_below) + "\n";
    out += "value,multiplicity,labels\n";
    for (const auto& line : s.lines) {
        out += format_double(line.value) + "," + std::to_string(line.multiplicity) + ",";
        for (size_t i = 0; i < line.labels.size(); ++i) {
            if (i) out += ";";
            for (size_t j = 0; j < line.labels[i].size(); ++j) {
                if (j) out += ":";
                out += std::to_string(line.labels[i][j]);
            }
        }
        out += "\n";
    }
    return out;
}

} // namespace hemispec
