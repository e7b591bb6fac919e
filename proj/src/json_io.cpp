#include "mixv/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace mixv {

namespace {

using nlohmann::json;

[[noreturn]] void bad_input(const std::string& what) {
  throw std::invalid_argument(what);
}

bool is_index(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0);
}

}  // namespace

json mixture_to_json(const Mixture& m) {
  json components = json::array();
  for (std::size_t c = 0; c < m.k(); ++c) {
    json rows = json::array();
    for (const auto& row : m.components[c].table) {
      json cells = json::array();
      for (const auto& entry : row) cells.push_back(rational_str(entry));
      rows.push_back(std::move(cells));
    }
    components.push_back({{"weight", rational_str(m.weights[c])}, {"rows", std::move(rows)}});
  }
  return json{{"alphabet", m.alphabet.symbols}, {"n", m.n}, {"components", std::move(components)}};
}

Mixture mixture_from_json(const json& j) {
  if (!j.is_object()) bad_input("mixture: top level must be a JSON object");
  if (!j.contains("alphabet") || !j["alphabet"].is_array()) {
    bad_input("mixture: missing 'alphabet' array");
  }
  if (!j.contains("n") || !is_index(j["n"])) {
    bad_input("mixture: missing nonnegative 'n'");
  }
  if (!j.contains("components") || !j["components"].is_array()) {
    bad_input("mixture: missing 'components' array");
  }

  Mixture m;
  for (const auto& sym : j["alphabet"]) {
    if (!sym.is_string()) bad_input("mixture: alphabet symbols must be strings");
    m.alphabet.symbols.push_back(sym.get<std::string>());
  }
  m.n = j["n"].get<std::size_t>();
  for (const auto& comp : j["components"]) {
    if (!comp.is_object() || !comp.contains("weight") || !comp["weight"].is_string() ||
        !comp.contains("rows") || !comp["rows"].is_array()) {
      bad_input("mixture: each component needs a 'weight' string and a 'rows' array");
    }
    m.weights.push_back(parse_rational(comp["weight"].get<std::string>()));
    ProductDistribution dist;
    for (const auto& row : comp["rows"]) {
      if (!row.is_array()) bad_input("mixture: rows must be arrays of rationals");
      RationalVector cells;
      for (const auto& cell : row) {
        if (!cell.is_string()) bad_input("mixture: probabilities must be 'p/q' strings");
        cells.push_back(parse_rational(cell.get<std::string>()));
      }
      dist.table.push_back(std::move(cells));
    }
    m.components.push_back(std::move(dist));
  }
  return m;
}

json ising_to_json(const IsingModel& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) {
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"w", p.w}});
  }
  return json{{"n", m.n}, {"pairs", std::move(pairs)}, {"fields", m.fields}};
}

IsingModel ising_from_json(const json& j) {
  if (!j.is_object()) bad_input("ising: top level must be a JSON object");
  if (!j.contains("n") || !is_index(j["n"])) bad_input("ising: missing nonnegative 'n'");
  if (!j.contains("fields") || !j["fields"].is_array()) bad_input("ising: missing 'fields' array");

  IsingModel m;
  m.n = j["n"].get<std::size_t>();
  for (const auto& f : j["fields"]) {
    if (!f.is_number()) bad_input("ising: fields must be numbers");
    m.fields.push_back(f.get<double>());
  }
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) bad_input("ising: 'pairs' must be an array");
    for (const auto& p : j["pairs"]) {
      if (!p.is_object() || !p.contains("i") || !p.contains("j") || !p.contains("w") ||
          !is_index(p["i"]) || !is_index(p["j"]) || !p["w"].is_number()) {
        bad_input("ising: each pair needs unsigned 'i', 'j' and numeric 'w'");
      }
      m.pairs.push_back({p["i"].get<std::size_t>(), p["j"].get<std::size_t>(),
                         p["w"].get<double>()});
    }
  }
  return m;
}

json verdict_to_json(const Verdict& v, const Alphabet& alphabet) {
  if (v.equal) return json{{"verdict", "equal"}};
  json prefix = json::array();
  for (const auto idx : v.witness->prefix) prefix.push_back(alphabet.symbols.at(idx));
  return json{{"verdict", "not_equal"},
              {"witness", {{"depth", v.witness->depth}, {"prefix", std::move(prefix)}}}};
}

Mixture load_mixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open mixture file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad_input("mixture file '" + path + "': " + e.what());
  }
  Mixture m = mixture_from_json(j);
  require_valid(m);
  return m;
}

IsingModel load_ising(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_input("cannot open ising file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad_input("ising file '" + path + "': " + e.what());
  }
  IsingModel m = ising_from_json(j);
  require_valid(m);
  return m;
}

}  // namespace mixv
