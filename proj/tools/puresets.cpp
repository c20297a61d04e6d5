#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "puresets/chains.hpp"
#include "puresets/deviations.hpp"
#include "puresets/enumerate.hpp"
#include "puresets/errors.hpp"
#include "puresets/exact_stats.hpp"
#include "puresets/limits.hpp"
#include "puresets/montecarlo.hpp"
#include "puresets/pure_set.hpp"
#include "puresets/verify.hpp"

using json = nlohmann::ordered_json;
using namespace puresets;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string format = "json";
  unsigned k = 4;
  std::uint64_t n = 20000;
  std::uint64_t seed = 20240611;
  unsigned workers = 1;
  bool exact = true;
  bool log2 = false;
  int max_exact_k = -1;
  std::string style = "plain";
};

Code parse_code(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw CLI::ValidationError("code", "expected a non-negative decimal integer, got '" + s + "'");
  return Code(s);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json num_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

BracesStyle parse_style(const std::string& s) {
  if (s == "plain") return BracesStyle::plain;
  if (s == "commas") return BracesStyle::commas;
  if (s == "commas_empty") return BracesStyle::commas_empty;
  throw CLI::ValidationError("--style", "expected plain, commas or commas_empty");
}

std::string binary_of(const PureSet& x) {
  std::string s = encode(x).get_str(2);
  return s == "0" ? "" : s;
}

// Exact values print as p/q while they stay small, otherwise as p/q*2^e.
std::string fmt_scalar(const ExactScalar& v, bool log2_mode) {
  if (log2_mode) {
    if (v.is_zero()) return "0";
    double frac;
    mpz_class e;
    v.to_binary_float(frac, e);
    return fmt_double(frac) + "*2^" + e.get_str();
  }
  if (mpz_sizeinbase(v.exponent().get_mpz_t(), 2) <= 12) {
    mpq_class q = v.to_rational();
    if (mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 512) return q.get_str();
  }
  return v.to_string();
}

void emit(const Common& c, const std::string& command, const json& params, const json& result,
          std::optional<bool> pass = std::nullopt) {
  json env;
  env["command"] = command;
  env["version"] = kVersion;
  env["params"] = params;
  env["result"] = result;
  if (pass) env["pass"] = *pass;
  (void)c;
  std::cout << env.dump(2) << "\n";
}

void emit_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) std::cout << (i ? "," : "") << cells[i];
    std::cout << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

json profile_json(const ChainProfile& p) {
  auto t = totals(p);
  return {{"k", p.k}, {"h", p.h}, {"g", p.g}, {"chains", t.chains}, {"maximal_chains", t.maximal_chains}};
}

json check_json(const std::vector<CheckResult>& r) {
  json a = json::array();
  for (const auto& c : r)
    a.push_back({{"id", c.id}, {"description", c.description}, {"pass", c.pass}, {"detail", c.detail},
                 {"seconds", c.seconds}});
  return a;
}

std::vector<ChainIndex> parse_observables(const std::string& list) {
  std::vector<ChainIndex> v;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) v.push_back(ChainIndex::parse(item));
  return v;
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> v;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) v.push_back(std::stod(item));
  return v;
}

int cmd_stats(const Common& c) {
  Limits lim = limits();
  if (c.max_exact_k >= 0) lim.k_exact = c.max_exact_k;
  ScopedLimits guard(lim);
  const int k = static_cast<int>(c.k);
  if (k > limits().k_max) throw CapacityError("k", "stats supports k <= " + std::to_string(limits().k_max));
  std::vector<ChainIndex> idx;
  for (int n = 0; n <= k; ++n) idx.push_back(ChainIndex::H(n));
  for (int n = 1; n <= k; ++n) idx.push_back(ChainIndex::G(n));
  std::vector<std::vector<std::string>> rows;
  for (auto i : idx) {
    rows.push_back({"mean", i.name(), "", std::to_string(k), fmt_scalar(expectation(i, k), c.log2)});
    rows.push_back({"variance", i.name(), "", std::to_string(k), fmt_scalar(variance(i, k), c.log2)});
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      rows.push_back({"covariance", idx[a].name(), idx[b].name(), std::to_string(k),
                      fmt_scalar(covariance(idx[a], idx[b], k), c.log2)});
      if (variance(idx[a], k).is_zero() || variance(idx[b], k).is_zero()) continue;
      if (k <= limits().k_exact)
        rows.push_back({"corr2", idx[a].name(), idx[b].name(), std::to_string(k),
                        correlation_squared(idx[a], idx[b], k).get_str()});
      rows.push_back({"corr", idx[a].name(), idx[b].name(), std::to_string(k),
                      fmt_double(static_cast<double>(correlation(idx[a], idx[b], k)))});
    }
  if (c.format == "csv") {
    emit_csv({"quantity", "a", "b", "k", "value"}, rows);
    return 0;
  }
  json res = json::array();
  for (const auto& r : rows) {
    json e{{"quantity", r[0]}, {"a", r[1]}};
    if (!r[2].empty()) e["b"] = r[2];
    e["value"] = r[4];
    res.push_back(e);
  }
  emit(c, "stats", {{"k", k}, {"mode", c.log2 ? "log2" : "exact"}, {"max_exact_k", limits().k_exact}}, res);
  return 0;
}

int cmd_enumerate(const Common& c, const std::string& check, std::uint32_t z, unsigned max_nodes) {
  const unsigned k = c.k;
  json details;
  bool pass = true;
  if (check == "moments") {
    auto r = compare_moments_with_closed_forms(k);
    pass = r.ok;
    details = {{"first_mismatch", r.first_mismatch}};
  } else if (check == "transitive") {
    if (k <= 4) {
      auto t = transitive_counts(k);
      auto col = transitive_counts_collapsed(k);
      pass = t.by_q == col.by_q && t.total == mpz_class(static_cast<unsigned long>(transitive_brute_force(k)));
      if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [nq, v] : t.counts)
          rows.push_back({std::to_string(k), std::to_string(nq.first), std::to_string(nq.second), v.get_str()});
        emit_csv({"k", "n", "q", "count"}, rows);
        return pass ? 0 : 1;
      }
      json counts = json::array();
      for (const auto& [nq, v] : t.counts) counts.push_back({{"n", nq.first}, {"q", nq.second}, {"count", v.get_str()}});
      details = {{"total", t.total.get_str()}, {"counts", counts}};
    } else {
      auto col = transitive_counts_collapsed(k);
      auto s = col.total.get_str();
      if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [q, v] : col.by_q) rows.push_back({std::to_string(k), "", std::to_string(q), v.get_str()});
        emit_csv({"k", "n", "q", "count"}, rows);
        return 0;
      }
      details = {{"digits", s.size()}, {"leading_digit", std::string(1, s[0])}, {"total", s}};
    }
  } else if (check == "dkh") {
    auto d = dkh_distribution(k);
    json factors = json::array();
    for (const auto& [h, e] : d.factors) factors.push_back({{"h", h}, {"exponent", e.get_str()}});
    details = {{"factors", factors}, {"exponent_gcd", d.exponent_gcd().get_str()}};
    if (d.expanded) {
      const auto& t = SmallProfileTable::instance();
      CountPolynomial hist(1);
      for (auto code : iterate_S(k)) hist.add({t.h(code, k)}, 1);
      pass = *d.expanded == hist;
      json coeffs = json::array();
      for (const auto& v : d.expanded->dense()) coeffs.push_back(v.get_str());
      details["coefficients"] = coeffs;
    } else {
      mpz_class bits = 0;
      for (const auto& f : d.factors) bits += f.second;
      pass = bits == Z_integer(static_cast<int>(k) - 1);
    }
  } else if (check == "trees") {
    auto s = identity_tree_series(max_nodes);
    json counts = json::array();
    for (std::uint32_t h = 1; h <= max_nodes; ++h) {
      mpz_class total = 0;
      for (const auto& [e, v] : s.terms())
        if (e[1] == h) total += v;
      counts.push_back(total.get_str());
    }
    auto fin = finite_chain_polynomial(std::min(k, 4u));
    for (const auto& [e, v] : s.terms())
      if (e[1] <= std::min(k, 4u) + 1) pass = pass && fin.coefficient(e) == v;
    details = {{"nodes", counts}, {"finite_polynomial", fin.to_string({"v", "u"})}};
  } else if (check == "games") {
    auto g = game_tag(k);
    auto gc = game_counts(static_cast<int>(k));
    pass = gc.two && mpz_class(static_cast<unsigned long>(g.second_count)) == *gc.two;
    details = {{"second_player", g.second_count}, {"first_player", g.first_count},
               {"fraction", fmt_scalar(gc.two_fraction, false)}};
  } else if (check == "factorization") {
    json runs = json::array();
    auto w = k <= 3 ? FactorizationWeights::full : FactorizationWeights::inverse_only;
    for (unsigned l = 0; l <= (k <= 3 ? 2u : 0u); ++l) {
      auto a = random_assignment(k, l, c.seed + l, w);
      auto r = verify_factorization(k, l, a, w);
      pass = pass && r.ok;
      runs.push_back({{"l", l}, {"ok", r.ok}, {"lhs", r.lhs.get_str()}, {"rhs", r.rhs.get_str()}});
    }
    details = {{"weights", k <= 3 ? "full" : "inverse_only"}, {"runs", runs}};
  } else if (check == "shell") {
    auto r = second_shell_check(k, z);
    pass = r.ok && r.conditional_law_ok;
    json en = json::array(), ex = json::array();
    for (const auto& v : r.enumerated) en.push_back(v.get_str());
    for (const auto& v : r.expected) ex.push_back(v.get_str());
    details = {{"z", z}, {"enumerated", en}, {"expected", ex}, {"conditional_law_ok", r.conditional_law_ok}};
  } else {
    throw CLI::ValidationError("--check", "unknown check " + check);
  }
  emit(c, "enumerate", {{"k", k}, {"check", check}},
       {{"check", check}, {"k", k}, {"pass", pass}, {"details", details}}, pass);
  return pass ? 0 : 1;
}

int cmd_sample(const Common& c, const std::string& obs) {
  ExperimentConfig cfg;
  cfg.k = c.k;
  cfg.n_samples = c.n;
  cfg.seed = c.seed;
  cfg.workers = c.workers;
  cfg.observables = parse_observables(obs);
  auto r = run_experiment(cfg);
  if (c.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& o : r.observables) {
      auto nm = o.obs.name();
      rows.push_back({"mean", nm, "", fmt_double(o.mean), fmt_double(o.stderr_mean), fmt_double(o.exact_mean)});
      rows.push_back({"variance", nm, "", fmt_double(o.variance), "", fmt_double(o.exact_variance)});
      rows.push_back({"skewness", nm, "", fmt_double(o.skewness), "", "0"});
      rows.push_back({"excess_kurtosis", nm, "", fmt_double(o.excess_kurtosis), "", "0"});
      if (o.obs.kind == ChainKind::H) {
        rows.push_back({"max_abs_diff_h1", nm, "H1", fmt_double(o.max_abs_diff_h1), "", ""});
        rows.push_back({"mean_sq_diff_h1", nm, "H1", fmt_double(o.mean_sq_diff_h1), fmt_double(o.mean_sq_diff_stderr), ""});
      }
    }
    for (const auto& p : r.pairs)
      rows.push_back({"correlation", p.a.name(), p.b.name(), fmt_double(p.correlation), fmt_double(p.stderr_corr),
                      fmt_double(p.exact)});
    emit_csv({"quantity", "a", "b", "estimate", "stderr", "exact"}, rows);
    return 0;
  }
  json obs_j = json::array(), pairs = json::array();
  for (const auto& o : r.observables) {
    json e{{"observable", o.obs.name()}, {"mean", o.mean}, {"stderr", o.stderr_mean}, {"variance", o.variance},
           {"exact_mean", o.exact_mean}, {"exact_variance", o.exact_variance}, {"skewness", o.skewness},
           {"excess_kurtosis", o.excess_kurtosis}};
    if (o.obs.kind == ChainKind::H) {
      e["max_abs_diff_h1"] = o.max_abs_diff_h1;
      e["mean_sq_diff_h1"] = o.mean_sq_diff_h1;
      e["mean_sq_diff_stderr"] = o.mean_sq_diff_stderr;
    }
    obs_j.push_back(e);
  }
  for (const auto& p : r.pairs)
    pairs.push_back({{"a", p.a.name()}, {"b", p.b.name()}, {"correlation", p.correlation}, {"stderr", p.stderr_corr},
                     {"exact", p.exact}});
  emit(c, "sample", {{"k", c.k}, {"n", c.n}, {"seed", c.seed}, {"workers", c.workers}, {"observables", obs}},
       {{"schema", 1}, {"observables", obs_j}, {"pairs", pairs}});
  return 0;
}

json rate_json(double x, const RateResult& r) {
  return {{"x", x}, {"value", r.value}, {"u_star", r.u_star ? json(*r.u_star) : json(nullptr)}, {"diverged", r.diverged}};
}

int cmd_tails(const Common& c, const std::string& rate, double from, double to, unsigned steps, bool scan,
              const std::string& thresholds, bool extremes, bool sandwich) {
  if (scan) {
    TailConfig cfg;
    cfg.k = c.k;
    cfg.n_samples = c.n;
    cfg.seed = c.seed;
    cfg.workers = c.workers;
    cfg.thresholds = parse_doubles(thresholds);
    auto r = tail_scan(cfg);
    bool pass = std::all_of(r.rows.begin(), r.rows.end(), [](const TailRow& t) { return t.within_bounds; }) &&
                mpz_class(std::abs(r.max_diff_observed)) <= r.max_diff_possible;
    if (c.format == "csv") {
      std::vector<std::vector<std::string>> rows;
      for (const auto& t : r.rows)
        rows.push_back({fmt_double(t.x), std::to_string(t.hits_h1), fmt_double(t.log_bound_h1), std::to_string(t.hits_diff),
                        fmt_double(t.log_bound_diff), t.within_bounds ? "1" : "0"});
      emit_csv({"x", "hits_h1", "log_bound_h1", "hits_diff", "log_bound_diff", "within_bounds"}, rows);
      return pass ? 0 : 1;
    }
    json rows = json::array();
    const double N = static_cast<double>(c.n);
    for (const auto& t : r.rows)
      rows.push_back({{"x", t.x}, {"hits_h1", t.hits_h1}, {"log_freq_h1", num_or_null(std::log(t.hits_h1 / N))},
                      {"log_bound_h1", num_or_null(t.log_bound_h1)}, {"hits_diff", t.hits_diff},
                      {"log_freq_diff", num_or_null(std::log(t.hits_diff / N))},
                      {"log_bound_diff", num_or_null(t.log_bound_diff)}, {"within_bounds", t.within_bounds}});
    emit(c, "tails", {{"mode", "scan"}, {"k", c.k}, {"n", c.n}, {"seed", c.seed}, {"thresholds", thresholds}},
         {{"rows", rows}, {"max_diff_observed", r.max_diff_observed}, {"max_diff_possible", r.max_diff_possible.get_str()}},
         pass);
    return pass ? 0 : 1;
  }
  if (extremes) {
    auto d = diff_extremes(static_cast<int>(c.k));
    emit(c, "tails", {{"mode", "extremes"}, {"k", c.k}},
         {{"max_value", d.max_value.get_str()}, {"prob_log2", d.prob_log2.get_str()},
          {"attaining_log2", d.attaining_log2.get_str()}, {"asymptotic_ratio", d.asymptotic_ratio}});
    return 0;
  }
  if (sandwich) {
    std::vector<double> grid;
    for (unsigned i = 0; i <= steps; ++i) grid.push_back(from + (to - from) * i / std::max(1u, steps));
    auto r = sandwich_check(static_cast<int>(c.k), grid);
    json rows = json::array();
    for (const auto& s : r.rows) rows.push_back({{"u", s.u}, {"lower", s.lower}, {"value", s.value}, {"upper", s.upper}});
    emit(c, "tails", {{"mode", "sandwich"}, {"k", c.k}}, {{"rows", rows}, {"worst_margin", r.worst_margin}}, r.pass);
    return r.pass ? 0 : 1;
  }
  if (rate != "binom" && rate != "gauss") throw CLI::ValidationError("--rate", "expected binom or gauss");
  std::vector<json> rows;
  std::vector<std::vector<std::string>> csv;
  for (unsigned i = 0; i <= steps; ++i) {
    double x = steps ? from + (to - from) * i / steps : from;
    RateResult r;
    if (rate == "binom") {
      r.value = binom_rate(x);
      if (x < 1) r.u_star = 2 * std::atanh(x);
    } else {
      r = gaussian_logcosh_rate({x});
    }
    rows.push_back(rate_json(x, r));
    csv.push_back({fmt_double(x), fmt_double(r.value), r.u_star ? fmt_double(*r.u_star) : (r.diverged ? "diverged" : "")});
  }
  if (c.format == "csv") {
    emit_csv({"x", "value", "u_star"}, csv);
    return 0;
  }
  emit(c, "tails", {{"rate", rate}, {"x_from", from}, {"x_to", to}, {"steps", steps}}, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure (hereditarily finite) sets: codes, chain statistics, exact moments, sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Common c;

  auto add_format = [&](CLI::App* s, std::vector<std::string> allowed) {
    s->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed));
  };
  auto add_style = [&](CLI::App* s) {
    s->add_option("--style", c.style, "braces style")->check(CLI::IsMember({"plain", "commas", "commas_empty"}));
  };

  std::string text, code_str, word;
  auto* s_encode = app.add_subcommand("encode", "braces -> Ackermann code");
  s_encode->add_option("braces", text)->required();
  add_format(s_encode, {"json", "text"});

  auto* s_decode = app.add_subcommand("decode", "Ackermann code -> braces");
  s_decode->add_option("code", code_str)->required();
  add_style(s_decode);
  add_format(s_decode, {"json", "text"});

  auto* s_parse = app.add_subcommand("parse", "parse braces and report the set");
  s_parse->add_option("braces", text)->required();
  add_style(s_parse);
  add_format(s_parse, {"json", "text"});

  auto* s_print = app.add_subcommand("print", "print the set with a given code");
  s_print->add_option("code", code_str)->required();
  add_style(s_print);
  add_format(s_print, {"json", "text"});

  auto* s_dyck = app.add_subcommand("dyck", "Dyck word of a code, or code of a Dyck word");
  s_dyck->add_option("--code", code_str);
  s_dyck->add_option("--word", word);
  bool dyck_binary = false;
  s_dyck->add_flag("--binary", dyck_binary, "write steps as 1/0");
  add_format(s_dyck, {"json", "text"});

  auto* s_chains = app.add_subcommand("chains", "chain profile of a set");
  s_chains->add_option("code", code_str)->required();
  s_chains->add_option("--k", c.k, "universe level (default: depth)");
  add_format(s_chains, {"json", "csv"});

  auto* s_stats = app.add_subcommand("stats", "closed-form moments at level k");
  s_stats->add_option("--k", c.k)->required();
  s_stats->add_flag("--exact", c.exact, "exact rationals (default)");
  s_stats->add_flag("--log2", c.log2, "binary floating values with exact exponents");
  s_stats->add_option("--max-exact-k", c.max_exact_k, "largest k for rational R values");
  add_format(s_stats, {"json", "csv"});

  std::string check;
  std::uint32_t shell_z = 0;
  unsigned max_nodes = 12;
  auto* s_enum = app.add_subcommand("enumerate", "exhaustive checks");
  s_enum->add_option("--k", c.k)->required();
  s_enum->add_option("--check", check)
      ->required()
      ->check(CLI::IsMember({"moments", "transitive", "dkh", "trees", "games", "factorization", "shell"}));
  s_enum->add_option("--z", shell_z, "code of z for the shell check");
  s_enum->add_option("--nodes", max_nodes, "tree sizes for the trees check");
  s_enum->add_option("--seed", c.seed);
  s_enum->add_option("--workers", c.workers);
  add_format(s_enum, {"json", "csv"});

  std::string observables = "h1,h2,h3,g2,g3";
  auto* s_sample = app.add_subcommand("sample", "Monte Carlo over S_k");
  s_sample->add_option("--k", c.k);
  s_sample->add_option("--n", c.n);
  s_sample->add_option("--seed", c.seed);
  s_sample->add_option("--workers", c.workers);
  s_sample->add_option("--observables", observables);
  add_format(s_sample, {"json", "csv"});

  std::string rate = "binom", thresholds = "0,0.01,0.05";
  double x_from = 0, x_to = 1;
  unsigned steps = 10;
  bool scan = false, extremes = false, sandwich = false;
  auto* s_tails = app.add_subcommand("tails", "large-deviation rates and tail scans");
  s_tails->add_option("--rate", rate)->check(CLI::IsMember({"binom", "gauss"}));
  s_tails->add_option("--x-from", x_from);
  s_tails->add_option("--x-to", x_to);
  s_tails->add_option("--steps", steps);
  s_tails->add_flag("--scan", scan, "empirical tails from sampling");
  s_tails->add_flag("--extremes", extremes, "extremes of 2H^2 - Z_{k-2} H^1");
  s_tails->add_flag("--sandwich", sandwich, "quartic sandwich on the u grid --x-from..--x-to");
  s_tails->add_option("--thresholds", thresholds);
  s_tails->add_option("--k", c.k);
  s_tails->add_option("--n", c.n);
  s_tails->add_option("--seed", c.seed);
  s_tails->add_option("--workers", c.workers);
  add_format(s_tails, {"json", "csv"});

  bool acceptance = false;
  auto* s_verify = app.add_subcommand("verify-all", "run every cross-check");
  s_verify->add_option("--k", c.k);
  s_verify->add_option("--seed", c.seed);
  s_verify->add_option("--workers", c.workers);
  s_verify->add_option("--n", c.n, "Monte Carlo samples for the acceptance run");
  s_verify->add_flag("--acceptance", acceptance, "run the acceptance criteria instead");
  add_format(s_verify, {"json", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (s_encode->parsed()) {
      PureSet x = parse_braces(text);
      if (c.format == "text") std::cout << encode(x).get_str() << "\n";
      else emit(c, "encode", {{"braces", text}}, {{"code", encode(x).get_str()}, {"depth", depth(x)}});
    } else if (s_decode->parsed() || s_print->parsed()) {
      PureSet x = decode(parse_code(code_str));
      std::string b = print_braces(x, parse_style(c.style));
      if (c.format == "text") std::cout << b << "\n";
      else
        emit(c, s_decode->parsed() ? "decode" : "print", {{"code", code_str}, {"style", c.style}},
             {{"braces", b}, {"depth", depth(x)}, {"binary", binary_of(x)}});
    } else if (s_parse->parsed()) {
      PureSet x = parse_braces(text);
      std::string b = print_braces(x, parse_style(c.style));
      if (c.format == "text") std::cout << b << "\n";
      else emit(c, "parse", {{"braces", text}, {"style", c.style}},
                {{"code", encode(x).get_str()}, {"depth", depth(x)}, {"canonical", b}, {"size", x.size()}});
    } else if (s_dyck->parsed()) {
      if (code_str.empty() == word.empty()) throw CLI::ValidationError("dyck", "give exactly one of --code or --word");
      if (!code_str.empty()) {
        PureSet x = decode(parse_code(code_str));
        DyckWord w = to_dyck(x);
        if (c.format == "text") std::cout << w.to_string(dyck_binary) << "\n";
        else emit(c, "dyck", {{"code", code_str}},
                  {{"word", w.to_string(dyck_binary)}, {"length", w.length()}, {"max_height", w.max_height()}});
      } else {
        PureSet x = from_dyck(DyckWord::parse(word));
        if (c.format == "text") std::cout << encode(x).get_str() << "\n";
        else emit(c, "dyck", {{"word", word}}, {{"code", encode(x).get_str()}, {"braces", print_braces(x)}});
      }
    } else if (s_chains->parsed()) {
      PureSet x = decode(parse_code(code_str));
      unsigned k = s_chains->count("--k") ? c.k : depth(x);
      auto p = chain_profile(x, k);
      if (c.format == "csv") {
        std::vector<std::vector<std::string>> rows;
        for (unsigned n = 0; n <= k; ++n) rows.push_back({std::to_string(n), std::to_string(p.h[n]), std::to_string(p.g[n])});
        emit_csv({"n", "h", "g"}, rows);
      } else {
        emit(c, "chains", {{"code", code_str}, {"k", k}}, profile_json(p));
      }
    } else if (s_stats->parsed()) {
      return cmd_stats(c);
    } else if (s_enum->parsed()) {
      return cmd_enumerate(c, check, shell_z, max_nodes);
    } else if (s_sample->parsed()) {
      if (!s_sample->count("--k")) c.k = 5;
      return cmd_sample(c, observables);
    } else if (s_tails->parsed()) {
      if (!s_tails->count("--k")) c.k = 5;
      return cmd_tails(c, rate, x_from, x_to, steps, scan, thresholds, extremes, sandwich);
    } else if (s_verify->parsed()) {
      VerifyOptions o;
      o.k = c.k;
      o.seed = c.seed;
      o.workers = c.workers;
      o.mc_samples = c.n;
      auto r = acceptance ? acceptance_checks(o) : cross_checks(o);
      bool pass = all_pass(r);
      if (c.format == "text") {
        for (const auto& x : r)
          std::cout << (x.pass ? "PASS " : "FAIL ") << x.id << "  " << x.description
                    << (x.detail.empty() ? "" : "  [" + x.detail + "]") << "\n";
      } else {
        emit(c, "verify-all", {{"k", c.k}, {"seed", c.seed}, {"acceptance", acceptance}}, {{"checks", check_json(r)}},
             pass);
      }
      return pass ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error (" << e.parameter() << "): " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at byte " << e.offset() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
