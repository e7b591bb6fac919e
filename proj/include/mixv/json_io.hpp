#pragma once

#include <string>

#include "json.hpp"
#include "mixv/equivalence.hpp"
#include "mixv/models.hpp"

namespace mixv {

/// Mixture wire format, rationals as lowest-terms "p/q" strings:
/// { "alphabet": ["0","1"], "n": 3,
///   "components": [ { "weight": "1/2",
///                     "rows": [["1/3","2/3"], ...] }, ... ] }
nlohmann::json mixture_to_json(const Mixture& m);
Mixture mixture_from_json(const nlohmann::json& j);

/// Ising wire format, zero-based indices:
/// { "n": 3, "pairs": [ {"i":0,"j":1,"w":0.5}, ... ], "fields": [0.1,...] }
nlohmann::json ising_to_json(const IsingModel& m);
IsingModel ising_from_json(const nlohmann::json& j);

/// { "verdict": "equal" } or
/// { "verdict": "not_equal", "witness": {"depth": 2, "prefix": ["0","1"]} }.
nlohmann::json verdict_to_json(const Verdict& v, const Alphabet& alphabet);

/// File loaders; parse and validate, throwing std::invalid_argument with
/// context on malformed input.
Mixture load_mixture(const std::string& path);
IsingModel load_ising(const std::string& path);

}  // namespace mixv
