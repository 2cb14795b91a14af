#pragma once

#include "hemispec/fem.hpp"
#include "hemispec/models.hpp"
#include "hemispec/spectra.hpp"
#include "hemispec/verify.hpp"

#include <string>
#include <vector>

// JSON / CSV serialization.  JSON strings use the stable field names of the
// wire contract: models are {kind, n, k?, r?, halved_factor?}; reports carry
// exactly their declared fields.  Doubles in CSV are written with 17
// significant digits so they round-trip.

namespace hemispec {

inline constexpr const char* kVersion = "hemispec 0.1.0";

std::string to_json(const Model& m, int indent = -1);
Model model_from_json(const std::string& text);

std::string to_json(const Spectrum& s, int indent = -1);
std::string to_json(const IndexReport& r, int indent = -1);
std::string to_json(const IdentityReport& r, int indent = -1);
std::string to_json(const CharPolyResult& r, int indent = -1);
std::string to_json(const BoundReport& r, int indent = -1);
std::string to_json(const fem::EigenResult& r, int indent = -1);
std::string to_json(const std::vector<SuiteEntry>& suite, int indent = -1);

std::string spectrum_to_csv(const Spectrum& s);
std::string format_double(double v); // 17 significant digits

} // namespace hemispec
