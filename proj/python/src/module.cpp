#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "puresets/chains.hpp"
#include "puresets/deviations.hpp"
#include "puresets/enumerate.hpp"
#include "puresets/errors.hpp"
#include "puresets/exact_stats.hpp"
#include "puresets/montecarlo.hpp"
#include "puresets/pure_set.hpp"
#include "puresets/verify.hpp"

namespace py = pybind11;
using namespace puresets;

namespace {

py::int_ to_py(const mpz_class& z) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(z.get_str(16).c_str(), nullptr, 16));
}

mpz_class from_py(const py::int_& v) { return mpz_class(py::str(v).cast<std::string>()); }

py::object to_fraction(const mpq_class& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(q.get_num()), to_py(q.get_den()));
}

// Fraction when the value fits in memory, otherwise (mantissa, exponent).
py::object scalar(const ExactScalar& s) {
  try {
    return to_fraction(s.to_rational());
  } catch (const CapacityError&) {
    return py::make_tuple(to_fraction(s.mantissa()), to_py(s.exponent()));
  }
}

ChainIndex index(const py::object& o) {
  if (py::isinstance<py::str>(o)) return ChainIndex::parse(o.cast<std::string>());
  return ChainIndex::from_f(o.cast<int>());
}

BracesStyle style(const std::string& s) {
  if (s == "plain") return BracesStyle::plain;
  if (s == "commas") return BracesStyle::commas;
  if (s == "commas_empty") return BracesStyle::commas_empty;
  throw py::value_error("style must be plain, commas or commas_empty");
}

py::dict summary(const ObservableSummary& s) {
  py::dict d;
  d["observable"] = s.obs.name();
  d["mean"] = s.mean;
  d["stderr_mean"] = s.stderr_mean;
  d["variance"] = s.variance;
  d["exact_mean"] = s.exact_mean;
  d["exact_variance"] = s.exact_variance;
  d["skewness"] = s.skewness;
  d["excess_kurtosis"] = s.excess_kurtosis;
  d["max_abs_diff_h1"] = s.max_abs_diff_h1;
  d["mean_sq_diff_h1"] = s.mean_sq_diff_h1;
  d["mean_sq_diff_stderr"] = s.mean_sq_diff_stderr;
  return d;
}

py::list checks(const std::vector<CheckResult>& rs) {
  py::list out;
  for (const auto& r : rs) {
    py::dict d;
    d["id"] = r.id;
    d["description"] = r.description;
    d["pass"] = r.pass;
    d["detail"] = r.detail;
    d["seconds"] = r.seconds;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", base);
  py::register_exception<SyntaxError>(m, "ParseError", base);
  py::register_exception<InvalidExcursion>(m, "InvalidExcursion", base);
  py::register_exception<DepthError>(m, "DepthError", base);
  py::register_exception<InvalidIndex>(m, "InvalidIndex", base);
  py::register_exception<DegenerateVariance>(m, "DegenerateVariance", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<NonConvergence>(m, "NonConvergence", base);
  py::register_exception<OverflowGuard>(m, "OverflowGuard", base);

  py::class_<PureSet>(m, "PureSet")
      .def(py::init<>())
      .def(py::init([](const std::vector<PureSet>& xs) { return PureSet::from_elements(xs); }), py::arg("elements"))
      .def_property_readonly("code", [](const PureSet& x) { return to_py(x.code()); })
      .def_property_readonly("elements", [](const PureSet& x) {
        return std::vector<PureSet>(x.elements().begin(), x.elements().end());
      })
      .def_property_readonly("depth", &PureSet::depth)
      .def("__len__", &PureSet::size)
      .def("__contains__", &PureSet::contains)
      .def("__eq__", [](const PureSet& a, const PureSet& b) { return a == b; })
      .def("__hash__", [](const PureSet& x) { return py::hash(to_py(x.code())); })
      .def("__str__", [](const PureSet& x) { return print_braces(x); })
      .def("__repr__", [](const PureSet& x) { return "PureSet(" + print_braces(x, BracesStyle::commas) + ")"; })
      .def("braces", [](const PureSet& x, const std::string& s) { return print_braces(x, style(s)); },
           py::arg("style") = "plain")
      .def("dyck", [](const PureSet& x, bool binary) { return to_dyck(x).to_string(binary); }, py::arg("binary") = false)
      .def("is_transitive", [](const PureSet& x) { return is_transitive(x); });

  m.def("decode", [](const py::int_& c) { return decode(from_py(c)); }, py::arg("code"));
  m.def("encode", [](const PureSet& x) { return to_py(encode(x)); });
  m.def("parse", [](const std::string& s) { return parse_braces(s); }, py::arg("text"));
  m.def("from_dyck", [](const std::string& w) { return from_dyck(DyckWord::parse(w)); }, py::arg("word"));
  m.def("matryoshka", &matryoshka, py::arg("k"));
  m.def("von_neumann", &von_neumann, py::arg("k"));
  m.def("universe", &universe, py::arg("k"));

  m.def(
      "chain_profile",
      [](const PureSet& x, unsigned k) {
        auto p = chain_profile(x, k);
        return py::make_tuple(p.h, p.g);
      },
      py::arg("x"), py::arg("k"), "(h, g) lists of length k + 1");

  m.def("Z", [](int k) { return scalar(Z(k)); }, py::arg("k"));
  m.def("expectation", [](const py::object& i, int k) { return scalar(expectation(index(i), k)); });
  m.def("covariance", [](const py::object& a, const py::object& b, int k) {
    return scalar(covariance(index(a), index(b), k));
  });
  m.def("correlation_squared", [](const py::object& a, const py::object& b, int k) {
    return to_fraction(correlation_squared(index(a), index(b), k));
  });
  m.def("gamma_eta", [](int terms) {
    auto g = gamma_eta(terms);
    return py::make_tuple(to_fraction(g.gamma), to_fraction(g.eta));
  });

  m.def("transitive_total", [](unsigned k) { return to_py(transitive_total(k)); }, py::arg("k"));
  m.def("games_second_fraction", [](int k) { return scalar(game_counts(k).two_fraction); }, py::arg("k"));
  m.def(
      "dkh_distribution",
      [](unsigned k) {
        py::list out;
        for (const auto& [h, e] : dkh_distribution(k).factors) out.append(py::make_tuple(h, to_py(e)));
        return out;
      },
      py::arg("k"), "factors (h, e) of prod (1 + u^h)^e; h = 0 stands for 2^e");
  m.def(
      "identity_tree_counts",
      [](unsigned max_nodes) {
        std::vector<py::int_> count(max_nodes + 1, py::int_(0));
        std::vector<mpz_class> acc(max_nodes + 1, 0);
        const auto series = identity_tree_series(max_nodes);
        for (const auto& [e, c] : series.terms())
          if (e[1] <= max_nodes) acc[e[1]] += c;
        for (unsigned n = 0; n <= max_nodes; ++n) count[n] = to_py(acc[n]);
        return count;
      },
      py::arg("max_nodes"));

  m.def(
      "run_experiment",
      [](unsigned k, std::uint64_t n, std::uint64_t seed, unsigned workers, const std::vector<std::string>& obs) {
        ExperimentConfig c;
        c.k = k;
        c.n_samples = n;
        c.seed = seed;
        c.workers = workers;
        for (const auto& o : obs) c.observables.push_back(ChainIndex::parse(o));
        ExperimentReport r;
        {
          py::gil_scoped_release release;
          r = run_experiment(c);
        }
        py::dict out;
        py::list os, ps;
        for (const auto& s : r.observables) os.append(summary(s));
        for (const auto& p : r.pairs) {
          py::dict d;
          d["a"] = p.a.name();
          d["b"] = p.b.name();
          d["correlation"] = p.correlation;
          d["stderr"] = p.stderr_corr;
          d["exact"] = p.exact;
          ps.append(d);
        }
        out["observables"] = os;
        out["pairs"] = ps;
        return out;
      },
      py::arg("k") = 5, py::arg("n") = 20000, py::arg("seed") = 1, py::arg("workers") = 1,
      py::arg("observables") = std::vector<std::string>{"h1", "h2", "h3", "g2", "g3"});

  m.def("binom_rate", &binom_rate, py::arg("x"));
  m.def(
      "gaussian_logcosh_rate",
      [](double x, int nodes) {
        RateQuery q;
        q.x = x;
        q.nodes = nodes;
        auto r = gaussian_logcosh_rate(q);
        return py::make_tuple(r.value, r.u_star, r.diverged);
      },
      py::arg("x"), py::arg("nodes") = 128, "(value, u_star or None, diverged)");
  m.def(
      "diff_extremes",
      [](int k) {
        auto e = diff_extremes(k);
        py::dict d;
        d["max_value"] = to_py(e.max_value);
        d["prob_log2"] = to_py(e.prob_log2);
        d["attaining_log2"] = to_py(e.attaining_log2);
        d["asymptotic_ratio"] = e.asymptotic_ratio;
        return d;
      },
      py::arg("k"));

  m.def(
      "verify_all",
      [](bool acceptance, unsigned k, std::uint64_t seed, unsigned workers) {
        VerifyOptions o;
        o.k = k;
        o.seed = seed;
        o.workers = workers;
        std::vector<CheckResult> r;
        {
          py::gil_scoped_release release;
          r = acceptance ? acceptance_checks(o) : cross_checks(o);
        }
        return checks(r);
      },
      py::arg("acceptance") = false, py::arg("k") = 4, py::arg("seed") = 20240611, py::arg("workers") = 1);
}
