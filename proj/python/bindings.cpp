#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mixv/equivalence.hpp"
#include "mixv/errors.hpp"
#include "mixv/generators.hpp"
#include "mixv/ising.hpp"
#include "mixv/json_io.hpp"
#include "mixv/linalg.hpp"
#include "mixv/models.hpp"

namespace py = pybind11;

namespace {

using namespace mixv;

Assignment assignment_from_symbols(const Alphabet& alphabet,
                                   const std::vector<std::string>& symbols) {
  Assignment out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) {
    const auto idx = alphabet.index_of(s);
    if (!idx) throw std::invalid_argument("unknown symbol '" + s + "'");
    out.push_back(*idx);
  }
  return out;
}

std::vector<std::string> symbols_from_assignment(const Alphabet& alphabet, const Assignment& a) {
  std::vector<std::string> out;
  out.reserve(a.size());
  for (const auto idx : a) out.push_back(alphabet.symbols.at(idx));
  return out;
}

// Python-facing verdict with the witness already mapped to symbols.
struct PyVerdict {
  bool equal = true;
  std::optional<std::size_t> depth;
  std::optional<std::vector<std::string>> prefix;
};

PyVerdict make_verdict(const Verdict& v, const Alphabet& alphabet) {
  PyVerdict out;
  out.equal = v.equal;
  if (!v.equal) {
    out.depth = v.witness->depth;
    out.prefix = symbols_from_assignment(alphabet, v.witness->prefix);
  }
  return out;
}

RationalVector rationals_from_strings(const std::vector<std::string>& entries) {
  RationalVector v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(parse_rational(e));
  return v;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace mixv;

  m.doc() = "exact equivalence checking for mixtures of products and "
            "desk-scale Ising reductions";
  m.attr("__version__") = "0.1.0";

  py::register_exception<guard_error>(m, "GuardError", PyExc_RuntimeError);

  py::class_<Mixture>(m, "Mixture")
      .def_static(
          "from_json",
          [](const std::string& text) {
            Mixture mx = mixture_from_json(nlohmann::json::parse(text));
            require_valid(mx);
            return mx;
          },
          py::arg("text"))
      .def("to_json", [](const Mixture& mx) { return mixture_to_json(mx).dump(2); })
      .def_property_readonly("n", [](const Mixture& mx) { return mx.n; })
      .def_property_readonly("k", &Mixture::k)
      .def_property_readonly("alphabet",
                             [](const Mixture& mx) { return mx.alphabet.symbols; })
      .def_property_readonly("weights",
                             [](const Mixture& mx) {
                               std::vector<std::string> out;
                               for (const auto& w : mx.weights) out.push_back(rational_str(w));
                               return out;
                             })
      .def("__repr__", [](const Mixture& mx) {
        return "<Mixture n=" + std::to_string(mx.n) + " k=" + std::to_string(mx.k()) + ">";
      });

  py::class_<IsingModel>(m, "IsingModel")
      .def_static(
          "from_json",
          [](const std::string& text) {
            IsingModel model = ising_from_json(nlohmann::json::parse(text));
            require_valid(model);
            return model;
          },
          py::arg("text"))
      .def("to_json", [](const IsingModel& model) { return ising_to_json(model).dump(2); })
      .def_property_readonly("n", [](const IsingModel& model) { return model.n; })
      .def_property_readonly("num_pairs",
                             [](const IsingModel& model) { return model.pairs.size(); })
      .def("__repr__", [](const IsingModel& model) {
        return "<IsingModel n=" + std::to_string(model.n) +
               " pairs=" + std::to_string(model.pairs.size()) + ">";
      });

  py::class_<PyVerdict>(m, "Verdict")
      .def_readonly("equal", &PyVerdict::equal)
      .def_readonly("depth", &PyVerdict::depth)
      .def_readonly("prefix", &PyVerdict::prefix)
      .def("__bool__", [](const PyVerdict& v) { return v.equal; })
      .def("__repr__", [](const PyVerdict& v) {
        if (v.equal) return std::string("<Verdict equal>");
        std::string out = "<Verdict not_equal depth=" + std::to_string(*v.depth) + " prefix=[";
        for (std::size_t i = 0; i < v.prefix->size(); ++i) {
          if (i) out += ",";
          out += (*v.prefix)[i];
        }
        return out + "]>";
      });

  py::class_<GadgetParams>(m, "GadgetParams")
      .def(py::init([](std::size_t k, double h0, double delta) {
             return GadgetParams{k, h0, delta};
           }),
           py::arg("k"), py::arg("h0"), py::arg("delta"))
      .def_readonly("k", &GadgetParams::k)
      .def_readonly("h0", &GadgetParams::h0)
      .def_readonly("delta", &GadgetParams::delta);

  // mixtures
  m.def(
      "check_equivalence",
      [](const Mixture& p, const Mixture& q) {
        return make_verdict(check_equivalence(p, q), p.alphabet);
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "brute_force_equivalence",
      [](const Mixture& p, const Mixture& q) {
        return make_verdict(brute_force_equivalence(p, q), p.alphabet);
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "verify_witness",
      [](const Mixture& p, const Mixture& q, const std::vector<std::string>& prefix) {
        return verify_witness(p, q, assignment_from_symbols(p.alphabet, prefix));
      },
      py::arg("p"), py::arg("q"), py::arg("prefix"));
  m.def(
      "mixture_prob",
      [](const Mixture& mx, const std::vector<std::string>& prefix) {
        return rational_str(mixture_prob(mx, assignment_from_symbols(mx.alphabet, prefix)));
      },
      py::arg("mixture"), py::arg("prefix"),
      "Exact prefix-marginal probability as a lowest-terms 'p/q' string.");
  m.def("validate_mixture", [](const Mixture& mx) { return validate_mixture(mx); },
        py::arg("mixture"));

  // exact linear algebra
  m.def(
      "independent_subset",
      [](const std::vector<std::vector<std::string>>& vectors) {
        std::vector<RationalVector> rows;
        rows.reserve(vectors.size());
        for (const auto& v : vectors) rows.push_back(rationals_from_strings(v));
        return independent_subset(rows);
      },
      py::arg("vectors"), "Greedy maximal independent subset of exact rational vectors.");
  m.def(
      "holds_at_ones",
      [](const std::vector<std::string>& v) { return holds_at_ones(rationals_from_strings(v)); },
      py::arg("vector"));

  // ising
  m.def("log_config_weight", &log_config_weight, py::arg("model"), py::arg("config"));
  m.def("partition_brute", &partition_brute, py::arg("model"));
  m.def("marginal_brute", &marginal_brute, py::arg("model"), py::arg("k"), py::arg("s"));
  m.def("tv_brute", &tv_brute, py::arg("a"), py::arg("b"));
  m.def("eliminate_first_variable", &eliminate_first_variable, py::arg("model"));
  m.def(
      "partition_via_marginals",
      [](const IsingModel& model, double eps, double conf, const py::object& oracle) {
        MarginalOracle fn = oracle.is_none()
                                ? exact_marginal_oracle()
                                : oracle.cast<MarginalOracle>();
        return partition_via_marginals(model, fn, eps, conf);
      },
      py::arg("model"), py::arg("eps") = 0.0, py::arg("conf") = 0.0,
      py::arg("oracle") = py::none(),
      "log Z through the telescoping marginal recursion; the default oracle "
      "is the exact enumeration marginal.");
  m.def("build_marginal_gadget", &build_marginal_gadget, py::arg("model"), py::arg("params"));
  m.def("gadget_error_bound", &gadget_error_bound, py::arg("model"), py::arg("params"));
  m.def("size_gadget_params", &size_gadget_params, py::arg("model"), py::arg("k"), py::arg("s"),
        py::arg("eps"));
  m.def("log_marginal_lower_bound", &log_marginal_lower_bound, py::arg("model"));
  m.def(
      "marginal_via_tv",
      [](const IsingModel& model, std::size_t k, int s, double eps, const py::object& oracle,
         double conf) {
        TvOracle fn = oracle.is_none() ? exact_tv_oracle() : oracle.cast<TvOracle>();
        return marginal_via_tv(model, k, s, eps, fn, conf);
      },
      py::arg("model"), py::arg("k"), py::arg("s") = 1, py::arg("eps") = 0.05,
      py::arg("oracle") = py::none(), py::arg("conf") = 0.05);

  // generators
  m.def(
      "random_mixture",
      [](std::size_t n, std::size_t k, const std::vector<std::string>& alphabet,
         std::uint64_t seed, std::uint64_t denominator_bound) {
        return random_mixture(n, k, Alphabet{alphabet}, Seed{seed}, denominator_bound);
      },
      py::arg("n"), py::arg("k"), py::arg("alphabet"), py::arg("seed"),
      py::arg("denominator_bound") = 16);
  m.def(
      "equivalent_rewrite",
      [](const Mixture& mx, std::uint64_t seed) { return equivalent_rewrite(mx, Seed{seed}); },
      py::arg("mixture"), py::arg("seed"));
  m.def(
      "perturbed_pair",
      [](const Mixture& mx, std::uint64_t seed, const std::string& magnitude) {
        const PerturbedPair pair = perturbed_pair(mx, Seed{seed}, parse_rational(magnitude));
        return py::make_tuple(pair.mixture, make_verdict(pair.expected, mx.alphabet));
      },
      py::arg("mixture"), py::arg("seed"), py::arg("magnitude"),
      "Returns (perturbed mixture, enumerated ground-truth verdict).");
  m.def(
      "random_ising",
      [](std::size_t n, double pair_density, std::pair<double, double> weight_range,
         std::pair<double, double> field_range, std::uint64_t seed) {
        return random_ising(n, pair_density, weight_range, field_range, Seed{seed});
      },
      py::arg("n"), py::arg("pair_density") = 0.5,
      py::arg("weight_range") = std::pair<double, double>{-1.0, 1.0},
      py::arg("field_range") = std::pair<double, double>{-1.0, 1.0}, py::arg("seed") = 0);
}
