// mixv: equivalence checking for mixtures of product distributions and
// desk-scale Ising reductions (partition <- marginals <- TV distance).
//
// Exit codes: 0 equal/success, 1 not-equal, 2 input error, 3 enumeration
// guard or infeasible numeric parameters. Every command prints one JSON
// report on stdout; gen subcommands print the generated model instead.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mixv/equivalence.hpp"
#include "mixv/errors.hpp"
#include "mixv/generators.hpp"
#include "mixv/ising.hpp"
#include "mixv/json_io.hpp"
#include "mixv/linalg.hpp"
#include "mixv/models.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

constexpr int kExitEqual = 0;
constexpr int kExitNotEqual = 1;
constexpr int kExitInputError = 2;
constexpr int kExitGuardError = 3;

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  std::uint64_t hash = 0xcbf29ce484222325ull;  // FNV-1a
  char c;
  while (in.get(c)) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

class Report {
 public:
  Report(const std::string& command, std::vector<std::string> args)
      : start_(std::chrono::steady_clock::now()) {
    body_["tool"] = "mixv";
    body_["version"] = kVersion;
    body_["command"] = command;
    body_["args"] = std::move(args);
    body_["inputs"] = json::object();
    body_["settings"] = json::object();
  }

  void add_input(const std::string& name, const std::string& path) {
    body_["inputs"][name] = {{"path", path}, {"digest", file_digest(path)}};
  }

  json& settings() { return body_["settings"]; }
  json& result() { return body_["result"]; }

  void print() {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    body_["timing"] = {
        {"seconds", std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count()}};
    std::cout << body_.dump(2) << "\n";
  }

 private:
  json body_;
  std::chrono::steady_clock::time_point start_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
  const auto parts = split_list(text);
  if (parts.size() != 2) {
    throw std::invalid_argument(flag + " expects 'lo,hi'");
  }
  try {
    return {std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw std::invalid_argument(flag + " expects numeric 'lo,hi'");
  }
}

// --- eq-check ---------------------------------------------------------------

struct EqCheckOptions {
  std::string file_p;
  std::string file_q;
  bool brute = false;
  bool emit_witness = false;
};

int run_eq_check(const EqCheckOptions& opt, Report& report) {
  const mixv::Mixture p = mixv::load_mixture(opt.file_p);
  const mixv::Mixture q = mixv::load_mixture(opt.file_q);
  report.add_input("P", opt.file_p);
  report.add_input("Q", opt.file_q);
  report.settings()["brute"] = opt.brute;

  mixv::EquivalenceTrace trace;
  const mixv::Verdict verdict = mixv::check_equivalence(p, q, &trace);
  report.result() = mixv::verdict_to_json(verdict, p.alphabet);
  report.result()["basis_sizes"] = trace.basis_sizes;

  if (!verdict.equal) {
    // Refuse to emit a witness that does not check out.
    if (!mixv::verify_witness(p, q, verdict.witness->prefix)) {
      throw std::logic_error("eq-check: witness failed re-verification");
    }
    report.result()["witness"]["verified"] = true;
  }

  if (opt.brute) {
    const mixv::Verdict oracle = mixv::brute_force_equivalence(p, q);
    report.result()["brute_verdict"] = oracle.equal ? "equal" : "not_equal";
    if (oracle.equal != verdict.equal) {
      throw std::logic_error("eq-check: enumeration oracle disagrees with the checker");
    }
  }

  report.print();
  if (!verdict.equal && opt.emit_witness) {
    std::cerr << mixv::verdict_to_json(verdict, p.alphabet)["witness"].dump() << "\n";
  }
  return verdict.equal ? kExitEqual : kExitNotEqual;
}

// --- ising ------------------------------------------------------------------

struct IsingOptions {
  std::string model_file;
  std::string model_file_b;
  std::string via = "brute";
  std::size_t k = 0;
  int s = 1;
  double h0 = 0.0;
  double delta = 0.0;
  double eps = 0.1;
  double conf = 0.05;
};

int run_ising_partition(const IsingOptions& opt, Report& report) {
  const mixv::IsingModel model = mixv::load_ising(opt.model_file);
  report.add_input("model", opt.model_file);
  report.settings()["via"] = opt.via;
  double log_z = 0.0;
  if (opt.via == "brute") {
    log_z = mixv::partition_brute(model);
  } else if (opt.via == "marginals") {
    report.settings()["eps"] = opt.eps;
    report.settings()["conf"] = opt.conf;
    log_z = mixv::partition_via_marginals(model, mixv::exact_marginal_oracle(), opt.eps,
                                          opt.conf);
  } else {
    throw std::invalid_argument("ising partition: --via must be 'brute' or 'marginals'");
  }
  report.result()["log_Z"] = log_z;
  report.print();
  return kExitEqual;
}

int run_ising_marginal(const IsingOptions& opt, Report& report) {
  const mixv::IsingModel model = mixv::load_ising(opt.model_file);
  report.add_input("model", opt.model_file);
  report.settings()["via"] = opt.via;
  report.settings()["k"] = opt.k;
  report.settings()["s"] = opt.s;
  double marginal = 0.0;
  if (opt.via == "brute") {
    marginal = mixv::marginal_brute(model, opt.k, opt.s);
  } else if (opt.via == "tv") {
    report.settings()["eps"] = opt.eps;
    const mixv::GadgetParams params = mixv::size_gadget_params(model, opt.k, opt.s, opt.eps);
    report.settings()["h0"] = params.h0;
    report.settings()["delta"] = params.delta;
    marginal = mixv::marginal_via_tv(model, opt.k, opt.s, opt.eps, mixv::exact_tv_oracle(),
                                     opt.conf);
  } else {
    throw std::invalid_argument("ising marginal: --via must be 'brute' or 'tv'");
  }
  report.result()["marginal"] = marginal;
  report.print();
  return kExitEqual;
}

int run_ising_tv(const IsingOptions& opt, Report& report) {
  const mixv::IsingModel a = mixv::load_ising(opt.model_file);
  const mixv::IsingModel b = mixv::load_ising(opt.model_file_b);
  report.add_input("A", opt.model_file);
  report.add_input("B", opt.model_file_b);
  report.result()["tv"] = mixv::tv_brute(a, b);
  report.result()["method"] = "half_l1";
  report.print();
  return kExitEqual;
}

int run_ising_gadget(const IsingOptions& opt, Report& report) {
  const mixv::IsingModel model = mixv::load_ising(opt.model_file);
  report.add_input("model", opt.model_file);
  const mixv::GadgetParams params{opt.k, opt.h0, opt.delta};
  report.settings()["k"] = opt.k;
  report.settings()["h0"] = opt.h0;
  report.settings()["delta"] = opt.delta;
  report.settings()["eq1_tolerance"] = 1e-9;

  const auto [p0, q0] = mixv::build_marginal_gadget(model, params);
  const double sigma = std::exp(2.0 * opt.h0) / (std::exp(2.0 * opt.h0) + 1.0);
  const double dummy_marginal = mixv::marginal_brute(p0, 0, +1);

  // dtv(P0,Q0) against the closed-form decomposition through the target
  // marginal (holds for any h0; delta only needs the sign property).
  const double log_zq = mixv::partition_brute(q0);
  mixv::LogSumExp q0_minus;
  for (std::size_t c = 0; c < (std::size_t{1} << q0.n); ++c) {
    mixv::SpinConfig x(q0.n);
    for (std::size_t i = 0; i < q0.n; ++i) x[i] = (c >> i) & 1u ? +1 : -1;
    if (x[0] * x[opt.k + 1] == -1) q0_minus.add(mixv::log_config_weight(q0, x));
  }
  const double q0_mass = std::exp(q0_minus.value() - log_zq);
  const double target = mixv::marginal_brute(model, opt.k, +1);
  const double tv = mixv::tv_brute(p0, q0);
  const double rhs = sigma - q0_mass + (1.0 - std::exp(2.0 * opt.h0)) /
                                           (std::exp(2.0 * opt.h0) + 1.0) * target;
  const double bound = mixv::gadget_error_bound(model, params);

  report.result()["dummy_marginal_closed_form"] = sigma;
  report.result()["dummy_marginal_brute"] = dummy_marginal;
  report.result()["tv"] = tv;
  report.result()["identity_rhs"] = rhs;
  report.result()["identity_residual"] = std::abs(tv - rhs);
  report.result()["target_marginal"] = target;
  report.result()["error_bound"] = bound;
  report.result()["observed_error"] = std::abs(tv - target);
  report.result()["bound_informative"] = bound < 1.0;
  report.print();
  return kExitEqual;
}

int run_ising_reduce(const std::string& target, const IsingOptions& opt, Report& report) {
  const mixv::IsingModel model = mixv::load_ising(opt.model_file);
  report.add_input("model", opt.model_file);
  report.settings()["eps"] = opt.eps;
  report.settings()["conf"] = opt.conf;

  const mixv::TvOracle tv_oracle = mixv::exact_tv_oracle();
  const mixv::MarginalOracle chained = [&tv_oracle](const mixv::IsingModel& m, std::size_t k,
                                                    int s, double eps, double conf) {
    return mixv::marginal_via_tv(m, k, s, eps, tv_oracle, conf);
  };

  if (target == "partition") {
    const double estimate = mixv::partition_via_marginals(model, chained, opt.eps, opt.conf);
    const double reference = mixv::partition_brute(model);
    report.result()["log_Z"] = estimate;
    report.result()["log_Z_brute"] = reference;
    report.result()["relative_error"] = std::abs(std::expm1(estimate - reference));
  } else if (target == "marginal") {
    report.settings()["k"] = opt.k;
    report.settings()["s"] = opt.s;
    const double estimate = mixv::marginal_via_tv(model, opt.k, opt.s, opt.eps, tv_oracle,
                                                  opt.conf);
    const double reference = mixv::marginal_brute(model, opt.k, opt.s);
    report.result()["marginal"] = estimate;
    report.result()["marginal_brute"] = reference;
    report.result()["relative_error"] = std::abs(estimate - reference) / reference;
  } else {
    throw std::invalid_argument("ising reduce: target must be 'partition' or 'marginal'");
  }
  report.print();
  return kExitEqual;
}

// --- gen --------------------------------------------------------------------

struct GenOptions {
  std::size_t n = 1;
  std::size_t k = 1;
  std::string alphabet = "0,1";
  std::uint64_t seed = 0;
  std::uint64_t den_bound = 16;
  std::string input_file;
  std::string magnitude = "0";
  double density = 0.5;
  std::string weight_range = "-1,1";
  std::string field_range = "-1,1";
};

int run_gen_mixture(const GenOptions& opt) {
  mixv::Alphabet alphabet{split_list(opt.alphabet)};
  const mixv::Mixture m =
      mixv::random_mixture(opt.n, opt.k, alphabet, mixv::Seed{opt.seed}, opt.den_bound);
  std::cout << mixv::mixture_to_json(m).dump(2) << "\n";
  return kExitEqual;
}

int run_gen_rewrite(const GenOptions& opt) {
  const mixv::Mixture m = mixv::load_mixture(opt.input_file);
  const mixv::Mixture rewritten = mixv::equivalent_rewrite(m, mixv::Seed{opt.seed});
  std::cout << mixv::mixture_to_json(rewritten).dump(2) << "\n";
  return kExitEqual;
}

int run_gen_perturb(const GenOptions& opt) {
  const mixv::Mixture m = mixv::load_mixture(opt.input_file);
  const mixv::Rational magnitude = mixv::parse_rational(opt.magnitude);
  const mixv::PerturbedPair pair = mixv::perturbed_pair(m, mixv::Seed{opt.seed}, magnitude);
  std::cout << mixv::mixture_to_json(pair.mixture).dump(2) << "\n";
  // Ground-truth diagnostic on stderr so stdout stays a clean model document.
  json diag = mixv::verdict_to_json(pair.expected, m.alphabet);
  diag["component"] = pair.component;
  diag["coordinate"] = pair.coordinate;
  std::cerr << diag.dump() << "\n";
  return kExitEqual;
}

int run_gen_ising(const GenOptions& opt) {
  const mixv::IsingModel m =
      mixv::random_ising(opt.n, opt.density, parse_range(opt.weight_range, "--weight-range"),
                         parse_range(opt.field_range, "--field-range"), mixv::Seed{opt.seed});
  std::cout << mixv::ising_to_json(m).dump(2) << "\n";
  return kExitEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for mixtures of products and Ising reductions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::vector<std::string> args(argv, argv + argc);

  EqCheckOptions eq;
  auto* eq_check = app.add_subcommand("eq-check", "decide whether two mixture files are equal");
  eq_check->add_option("P", eq.file_p, "mixture JSON file")->required();
  eq_check->add_option("Q", eq.file_q, "mixture JSON file")->required();
  eq_check->add_flag("--brute", eq.brute, "also run the enumeration oracle and cross-check");
  eq_check->add_flag("--emit-witness", eq.emit_witness,
                     "echo the witness as one JSON line on stderr");

  IsingOptions is;
  auto* ising = app.add_subcommand("ising", "partition / marginal / TV computations");
  ising->require_subcommand(1);

  auto* partition = ising->add_subcommand("partition", "log partition function");
  partition->add_option("model", is.model_file)->required();
  partition->add_option("--via", is.via, "brute | marginals")->default_str("brute");
  partition->add_option("--eps", is.eps);
  partition->add_option("--conf", is.conf);

  auto* marginal = ising->add_subcommand("marginal", "atomic marginal Pr[x_k = s]");
  marginal->add_option("model", is.model_file)->required();
  marginal->add_option("--k", is.k)->required();
  marginal->add_option("--s", is.s)->check(CLI::IsMember({-1, 1}));
  marginal->add_option("--via", is.via, "brute | tv")->default_str("brute");
  marginal->add_option("--eps", is.eps);
  marginal->add_option("--conf", is.conf);

  auto* tv = ising->add_subcommand("tv", "total variation distance between two models");
  tv->add_option("A", is.model_file)->required();
  tv->add_option("B", is.model_file_b)->required();

  auto* gadget = ising->add_subcommand("gadget", "dummy-spin gadget diagnostics");
  gadget->add_option("model", is.model_file)->required();
  gadget->add_option("--k", is.k)->required();
  gadget->add_option("--h0", is.h0)->required();
  gadget->add_option("--delta", is.delta)->required();

  auto* reduce = ising->add_subcommand("reduce", "run a full reduction chain with references");
  std::string reduce_target;
  reduce->add_option("target", reduce_target, "partition | marginal")->required();
  reduce->add_option("model", is.model_file)->required();
  reduce->add_option("--k", is.k);
  reduce->add_option("--s", is.s)->check(CLI::IsMember({-1, 1}));
  reduce->add_option("--eps", is.eps);
  reduce->add_option("--conf", is.conf);

  GenOptions gen_opt;
  auto* gen = app.add_subcommand("gen", "deterministic instance generators");
  gen->require_subcommand(1);

  auto* gen_mixture = gen->add_subcommand("mixture", "random mixture of products");
  gen_mixture->add_option("-n", gen_opt.n)->required();
  gen_mixture->add_option("-k", gen_opt.k)->required();
  gen_mixture->add_option("--alphabet", gen_opt.alphabet, "comma-separated symbols");
  gen_mixture->add_option("--seed", gen_opt.seed)->required();
  gen_mixture->add_option("--den-bound", gen_opt.den_bound);

  auto* gen_rewrite = gen->add_subcommand("rewrite", "equivalent re-description of a mixture");
  gen_rewrite->add_option("mixture", gen_opt.input_file)->required();
  gen_rewrite->add_option("--seed", gen_opt.seed)->required();

  auto* gen_perturb = gen->add_subcommand("perturb", "shift one marginal entry");
  gen_perturb->add_option("mixture", gen_opt.input_file)->required();
  gen_perturb->add_option("--seed", gen_opt.seed)->required();
  gen_perturb->add_option("--magnitude", gen_opt.magnitude, "rational shift, e.g. 1/7")
      ->required();

  auto* gen_ising = gen->add_subcommand("ising", "random Ising model");
  gen_ising->add_option("-n", gen_opt.n)->required();
  gen_ising->add_option("--density", gen_opt.density);
  gen_ising->add_option("--weight-range", gen_opt.weight_range, "lo,hi");
  gen_ising->add_option("--field-range", gen_opt.field_range, "lo,hi");
  gen_ising->add_option("--seed", gen_opt.seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kExitInputError;
  }

  try {
    if (*eq_check) {
      Report report("eq-check", args);
      return run_eq_check(eq, report);
    }
    if (*partition) {
      Report report("ising partition", args);
      return run_ising_partition(is, report);
    }
    if (*marginal) {
      Report report("ising marginal", args);
      return run_ising_marginal(is, report);
    }
    if (*tv) {
      Report report("ising tv", args);
      return run_ising_tv(is, report);
    }
    if (*gadget) {
      Report report("ising gadget", args);
      return run_ising_gadget(is, report);
    }
    if (*reduce) {
      Report report("ising reduce", args);
      return run_ising_reduce(reduce_target, is, report);
    }
    if (*gen_mixture) return run_gen_mixture(gen_opt);
    if (*gen_rewrite) return run_gen_rewrite(gen_opt);
    if (*gen_perturb) return run_gen_perturb(gen_opt);
    if (*gen_ising) return run_gen_ising(gen_opt);
    std::cerr << json{{"error", "input"}, {"message", "no subcommand"}}.dump() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return kExitInputError;
  } catch (const mixv::guard_error& e) {
    std::cerr << json{{"error", "guard"}, {"message", e.what()}}.dump() << "\n";
    return kExitGuardError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitGuardError;
  }
}
