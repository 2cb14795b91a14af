#include <hemispec/models.hpp>
#include <hemispec/serialize.hpp>
#include <hemispec/spectra.hpp>
#include <hemispec/verify.hpp>

#include <doctest.h>

#include <json.hpp>

using namespace hemispec;

TEST_CASE("model JSON round trip") {
    for (const Model& m : catalog_models(5)) {
        Model back = model_from_json(to_json(m));
        CHECK(back == m);
    }
    Model first = make_htorus_half(3, 1, 0.4, HalvedFactor::First);
    CHECK(model_from_json(to_json(first)) == first);
}

TEST_CASE("model JSON contract") {
    Model m = model_from_json(R"({"kind":"UmbilicalCap","n":2,"r":0.5})");
    CHECK(m.kind == ModelKind::UmbilicalCap);
    CHECK(m.r == 0.5);
    // field presence follows the kind
    nlohmann::json j = nlohmann::json::parse(to_json(make_equator(3)));
    CHECK(!j.contains("k"));
    CHECK(!j.contains("r"));
    j = nlohmann::json::parse(to_json(make_clifford_half(3, 1)));
    CHECK(j.contains("k"));
    CHECK(!j.contains("r")); // derived, never stored
    CHECK(j["halved_factor"] == "Second");

    CHECK_THROWS_AS(model_from_json("not json"), InvalidModel);
    CHECK_THROWS_AS(model_from_json(R"({"kind":"Mystery","n":2})"), InvalidModel);
    CHECK_THROWS_AS(model_from_json(R"({"kind":"HTorusHalf","n":3,"k":1})"), InvalidModel);
    CHECK_THROWS_AS(model_from_json(R"({"kind":"HTorusHalf","n":3,"k":3,"r":0.5})"),
                    InvalidModel);
}

TEST_CASE("spectrum serialization") {
    Spectrum s = jacobi_spectrum(make_equator(2), 2);
    nlohmann::json j = nlohmann::json::parse(to_json(s));
    CHECK(j.contains("exact_below"));
    CHECK(j["lines"][0]["value"] == -2.0);
    CHECK(j["lines"][0]["multiplicity"] == 1);

    std::string csv = spectrum_to_csv(s);
    CHECK(csv.rfind("# exact_below ", 0) == 0);
    CHECK(csv.find("value,multiplicity,labels\n") != std::string::npos);
    CHECK(csv.find("-2,1,0") != std::string::npos);
}

TEST_CASE("report serialization carries the declared fields") {
    nlohmann::json idx = nlohmann::json::parse(to_json(strong_index(make_clifford_half(2, 1))));
    for (const char* key : {"strong_index", "weak_index", "lambda1", "lambda1_weak",
                            "negative_lines", "discrepancy_flag", "paper_claim"}) {
        CHECK(idx.contains(key));
    }
    nlohmann::json ident =
        nlohmann::json::parse(to_json(simons_residual(make_equator(2))));
    for (const char* key : {"name", "samples", "max_residual", "tolerance", "pass", "notes"}) {
        CHECK(ident.contains(key));
    }
    nlohmann::json bound =
        nlohmann::json::parse(to_json(lambda1_bound_minimal(make_clifford_half(3, 1))));
    for (const char* key : {"lambda1", "bound", "slack", "equality", "family_params"}) {
        CHECK(bound.contains(key));
    }
}

TEST_CASE("doubles round-trip through the CSV formatter") {
    for (double v : {1.0 / 3.0, -4.340277777777778, 1e-17, 123456.789012345678}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("serialization is deterministic") {
    std::string a = to_json(strong_index(make_htorus_half(3, 1, 0.5)));
    std::string b = to_json(strong_index(make_htorus_half(3, 1, 0.5)));
    CHECK(a == b);
}
