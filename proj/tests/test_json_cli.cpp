#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "json.hpp"
#include "mixv/generators.hpp"
#include "mixv/json_io.hpp"

using namespace mixv;
using nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
  const char* path = std::getenv("MIXV_CLI");
  REQUIRE_MESSAGE(path != nullptr, "MIXV_CLI must point at the mixv binary");
  return path;
}

std::string fixture(const std::string& name) {
  const char* dir = std::getenv("MIXV_FIXTURES");
  REQUIRE_MESSAGE(dir != nullptr, "MIXV_FIXTURES must point at tests/fixtures");
  return std::string(dir) + "/" + name;
}

std::string temp_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/mixv_cli_XXXXXX";
    return std::string(mkdtemp(tmpl));
  }();
  return dir;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string err_file = temp_dir() + "/stderr.txt";
  const std::string cmd = env_prefix + cli_path() + " " + args + " 2>" + err_file;
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_file);
  std::stringstream ss;
  ss << err.rdbuf();
  result.err = ss.str();
  return result;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = temp_dir() + "/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

json strip_timing(const std::string& text) {
  json report = json::parse(text);
  report.erase("timing");
  return report;
}

}  // namespace

TEST_CASE("mixture JSON round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Mixture m = random_mixture(1 + seed % 4, 1 + seed % 3, {{"a", "b", "c"}},
                                     Seed{seed}, 14);
    const json j = mixture_to_json(m);
    const Mixture back = mixture_from_json(j);
    CHECK(mixture_to_json(back) == j);
    CHECK(back.alphabet == m.alphabet);
    CHECK(back.n == m.n);
  }
}

TEST_CASE("rationals parse to canonical lowest terms") {
  const json j = json::parse(
      R"({"alphabet":["0","1"],"n":1,"components":[{"weight":"2/2","rows":[["2/4","3/6"]]}]})");
  const Mixture m = mixture_from_json(j);
  CHECK(rational_str(m.weights[0]) == "1/1");
  CHECK(rational_str(m.components[0].table[0][0]) == "1/2");
  CHECK(validate_mixture(m).empty());
}

TEST_CASE("malformed mixtures are rejected") {
  json zero_den = json::parse(
      R"({"alphabet":["0","1"],"n":1,"components":[{"weight":"1/0","rows":[["1/2","1/2"]]}]})");
  CHECK_THROWS_AS(mixture_from_json(zero_den), std::invalid_argument);

  json garbage_rational = zero_den;
  garbage_rational["components"][0]["weight"] = "one half";
  CHECK_THROWS_AS(mixture_from_json(garbage_rational), std::invalid_argument);

  CHECK_THROWS_AS(mixture_from_json(json{{"n", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(mixture_from_json(json::array()), std::invalid_argument);
}

TEST_CASE("ising JSON round trip is bit exact") {
  const IsingModel m = random_ising(6, 0.5, {-1.7, 2.3}, {-0.9, 0.4}, Seed{31});
  const json j = ising_to_json(m);
  const IsingModel back = ising_from_json(j);
  REQUIRE(back.pairs.size() == m.pairs.size());
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    CHECK(back.pairs[i].w == m.pairs[i].w);  // exact double round trip
  }
  CHECK(back.fields == m.fields);
  CHECK_THROWS_AS(ising_from_json(json{{"n", 2}}), std::invalid_argument);
}

TEST_CASE("cli: motivating fixture pair is equal") {
  const auto r = run_cli("eq-check " + fixture("one_bit_p.json") + " " +
                         fixture("one_bit_q.json") + " --brute");
  CHECK(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["result"]["verdict"] == "equal");
  CHECK(report["result"]["brute_verdict"] == "equal");
  CHECK(report["tool"] == "mixv");
}

TEST_CASE("cli: a file always equals itself") {
  const auto r =
      run_cli("eq-check " + fixture("one_bit_p.json") + " " + fixture("one_bit_p.json"));
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli: reports are byte-stable apart from timing") {
  const std::string cmd =
      "eq-check " + fixture("one_bit_p.json") + " " + fixture("one_bit_q.json");
  const auto first = run_cli(cmd);
  const auto second = run_cli(cmd);
  CHECK(strip_timing(first.out) == strip_timing(second.out));
}

TEST_CASE("cli: gen mixture is deterministic and feeds eq-check") {
  const std::string gen_cmd = "gen mixture -n 3 -k 2 --alphabet 0,1 --seed 7";
  const auto once = run_cli(gen_cmd);
  const auto twice = run_cli(gen_cmd);
  CHECK(once.exit_code == 0);
  CHECK(once.out == twice.out);

  const std::string model = write_temp("gen_model.json", once.out);

  SUBCASE("rewrite stays equal") {
    const auto rewrite = run_cli("gen rewrite " + model + " --seed 5");
    REQUIRE(rewrite.exit_code == 0);
    const std::string rewritten = write_temp("rewritten.json", rewrite.out);
    const auto check = run_cli("eq-check " + model + " " + rewritten + " --brute");
    CHECK(check.exit_code == 0);
  }

  SUBCASE("perturbation flips the verdict and yields a verified witness") {
    const auto perturb = run_cli("gen perturb " + model + " --seed 3 --magnitude 1/7");
    REQUIRE(perturb.exit_code == 0);
    const json diag = json::parse(perturb.err);
    CHECK(diag["verdict"] == "not_equal");
    const std::string perturbed = write_temp("perturbed.json", perturb.out);
    const auto check =
        run_cli("eq-check " + model + " " + perturbed + " --brute --emit-witness");
    CHECK(check.exit_code == 1);
    const json report = json::parse(check.out);
    CHECK(report["result"]["verdict"] == "not_equal");
    CHECK(report["result"]["witness"]["verified"] == true);
    CHECK(report["result"]["brute_verdict"] == "not_equal");
    const json witness = json::parse(check.err);
    CHECK(witness.contains("prefix"));
  }

  SUBCASE("zero-magnitude perturbation stays equal") {
    const auto perturb = run_cli("gen perturb " + model + " --seed 3 --magnitude 0");
    REQUIRE(perturb.exit_code == 0);
    const std::string perturbed = write_temp("perturbed0.json", perturb.out);
    CHECK(run_cli("eq-check " + model + " " + perturbed).exit_code == 0);
  }
}

TEST_CASE("cli: ising computations") {
  SUBCASE("free single spin has log_Z = log 2") {
    const auto r = run_cli("ising partition " + fixture("ising_single_spin.json"));
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(std::abs(report["result"]["log_Z"].get<double>() - std::log(2.0)) < 1e-12);
  }

  const auto gen = run_cli("gen ising -n 5 --density 0.6 --seed 11");
  REQUIRE(gen.exit_code == 0);
  const std::string model = write_temp("ising5.json", gen.out);

  SUBCASE("partition via marginals matches brute force") {
    const auto brute = run_cli("ising partition " + model);
    const auto via = run_cli("ising partition " + model + " --via marginals");
    REQUIRE(brute.exit_code == 0);
    REQUIRE(via.exit_code == 0);
    const double a = json::parse(brute.out)["result"]["log_Z"].get<double>();
    const double b = json::parse(via.out)["result"]["log_Z"].get<double>();
    CHECK(std::abs(a - b) < 1e-9);
  }

  SUBCASE("marginal via tv matches brute force") {
    const auto brute = run_cli("ising marginal " + model + " --k 2");
    const auto via = run_cli("ising marginal " + model + " --k 2 --via tv --eps 0.05");
    REQUIRE(brute.exit_code == 0);
    REQUIRE(via.exit_code == 0);
    const double a = json::parse(brute.out)["result"]["marginal"].get<double>();
    const double b = json::parse(via.out)["result"]["marginal"].get<double>();
    CHECK(b <= a * 1.05);
    CHECK(b >= a / 1.05);
  }

  SUBCASE("tv of a model with itself is zero") {
    const auto r = run_cli("ising tv " + model + " " + model);
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["result"]["tv"].get<double>() == 0.0);
    CHECK(report["result"]["method"] == "half_l1");
  }

  SUBCASE("gadget identity residual is tiny") {
    const auto r = run_cli("ising gadget " + model + " --k 0 --h0 -10 --delta 25");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["result"]["identity_residual"].get<double>() <= 1e-9);
    CHECK(report["result"]["observed_error"].get<double>() <=
          report["result"]["error_bound"].get<double>());
  }

  SUBCASE("reduce partition reports estimate, reference, relative error") {
    const auto r = run_cli("ising reduce partition " + model + " --eps 0.1");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["result"]["relative_error"].get<double>() <= 0.1);
  }

  SUBCASE("reduce marginal") {
    const auto r = run_cli("ising reduce marginal " + model + " --k 1 --eps 0.1");
    REQUIRE(r.exit_code == 0);
    const json report = json::parse(r.out);
    CHECK(report["result"]["relative_error"].get<double>() <= 0.1);
  }
}

TEST_CASE("cli: error exit codes") {
  SUBCASE("missing file is an input error") {
    const auto r = run_cli("eq-check /nonexistent.json /nonexistent.json");
    CHECK(r.exit_code == 2);
    CHECK(json::parse(r.err)["error"] == "input");
  }

  SUBCASE("invalid json is an input error") {
    const std::string bad = write_temp("bad.json", "{not json");
    CHECK(run_cli("eq-check " + bad + " " + bad).exit_code == 2);
  }

  SUBCASE("mismatched shapes are an input error") {
    const auto gen = run_cli("gen mixture -n 2 -k 1 --alphabet 0,1 --seed 1");
    const std::string other = write_temp("other.json", gen.out);
    CHECK(run_cli("eq-check " + fixture("one_bit_p.json") + " " + other).exit_code == 2);
  }

  SUBCASE("unknown subcommand is an input error") {
    CHECK(run_cli("frobnicate").exit_code == 2);
  }

  SUBCASE("enumeration guard trips exit 3 and obeys MIXV_MAX_ENUM") {
    const auto gen = run_cli("gen ising -n 6 --density 0.2 --seed 2");
    const std::string model = write_temp("ising6.json", gen.out);
    CHECK(run_cli("ising partition " + model).exit_code == 0);
    const auto guarded = run_cli("ising partition " + model, "MIXV_MAX_ENUM=4 ");
    CHECK(guarded.exit_code == 3);
    CHECK(json::parse(guarded.err)["error"] == "guard");
  }

  SUBCASE("infeasible gadget sizing trips exit 3 naming the magnitudes") {
    const std::string huge = write_temp(
        "huge.json",
        json{{"n", 2}, {"pairs", {{{"i", 0}, {"j", 1}, {"w", 3e7}}}}, {"fields", {0.0, 0.0}}}
            .dump());
    const auto r = run_cli("ising marginal " + huge + " --k 0 --via tv --eps 0.05");
    CHECK(r.exit_code == 3);
    const json diag = json::parse(r.err);
    CHECK(diag["error"] == "guard");
    CHECK(diag["message"].get<std::string>().find("delta") != std::string::npos);
  }
}
