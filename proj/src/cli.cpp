#include "tailbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "tailbound/oracle.hpp"

namespace tailbound::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  if (!parse_double(text, v)) {
    throw Error(Errc::Usage, fmt::format("{}: '{}' is not a number", what, text));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> values;
  for (auto part : split(text, ',')) values.push_back(parse_number(part, what));
  return values;
}

std::size_t parse_index(std::string_view text, std::string_view what) {
  text = trim(text);
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(Errc::Usage, fmt::format("{}: '{}' is not an index", what, text));
  }
  return v;
}

FiniteDistribution parse_inline_or_file(std::string_view spec) {
  if (spec.starts_with("bern:")) {
    const double q = parse_number(spec.substr(5), "--dists");
    if (!(q >= 0.0 && q <= 1.0)) throw Error(Errc::Usage, "bern:q needs q in [0, 1]");
    return make_finite({{0.0, 1.0 - q}, {1.0, q}});
  }
  return parse_distribution_file(std::string(spec));
}

std::string num(double x) { return fmt::format("{}", x); }

void print_report(const BoundReport& r, std::ostream& out) {
  fmt::print(out, "theorem: {}\n", r.theorem);
  fmt::print(out, "{:>4}  {:>14}  {:>14}  {:>14}  {:>14}\n", "k", "lambda_k", "c_k", "P_k", "c_k*P_k");
  for (Eigen::Index k = 0; k < r.ladder.size(); ++k) {
    fmt::print(out, "{:>4}  {:>14.8g}  {:>14.8g}  {:>14.8g}  {:>14.8g}\n", k + 1, r.ladder[k],
               r.coefficients[k], r.tails[k], r.coefficients[k] * r.tails[k]);
  }
  fmt::print(out, "lhs       = {}\n", num(r.lhs));
  fmt::print(out, "rhs       = {}\n", num(r.rhs));
  fmt::print(out, "slack     = {}\n", num(r.slack));
  fmt::print(out, "satisfied = {}\n", r.satisfied ? "yes" : "no");
  for (const auto& [key, value] : r.params) fmt::print(out, "{:<9} = {}\n", key, num(value));
}

struct BoundArgs {
  std::string theorem;
  std::string dist;
  std::string ladder;
  std::string phi = "pospart";
  std::string upper;
  std::string weights;
  std::string ranges;
  std::string dists;
  bool json = false;
};

int run_bound(const BoundArgs& a, std::ostream& out) {
  const std::vector<double> values = parse_list(a.ladder, "--ladder");
  const ThresholdLadder ladder(values);

  auto need_dist = [&] {
    if (a.dist.empty()) throw Error(Errc::Usage, "--dist is required for " + a.theorem);
    return parse_distribution_file(a.dist);
  };

  BoundReport report;
  if (a.theorem == "general_chebyshev") {
    report = general_chebyshev(need_dist(), parse_phi(a.phi), ladder);
  } else if (a.theorem == "markov_staircase") {
    report = markov_staircase(need_dist(), parse_phi(a.phi), ladder);
  } else if (a.theorem == "eisenberg") {
    if (a.weights.empty()) throw Error(Errc::Usage, "--weights is required for eisenberg");
    report = eisenberg(need_dist(), ladder, parse_list(a.weights, "--weights"));
  } else if (a.theorem == "reverse_markov_gen") {
    if (a.upper.empty()) throw Error(Errc::Usage, "--m is required for reverse_markov_gen");
    report = reverse_markov_gen(need_dist(), ladder, parse_number(a.upper, "--m"));
  } else if (a.theorem == "chebyshev_gen") {
    report = chebyshev_gen(need_dist(), ladder);
  } else if (a.theorem == "cantelli_gen") {
    report = cantelli_gen(need_dist(), ladder);
  } else if (a.theorem == "hoeffding_gen") {
    if (a.ranges.empty() || a.dists.empty()) {
      throw Error(Errc::Usage, "--ranges and --dists are required for hoeffding_gen");
    }
    const auto ranges = split(a.ranges, ',');
    const auto dists = split(a.dists, ',');
    if (ranges.size() != dists.size()) {
      throw Error(Errc::Usage, "--ranges and --dists must have the same length");
    }
    std::vector<RangedVariable> vars;
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      const auto ab = split(ranges[i], ':');
      if (ab.size() != 2) throw Error(Errc::Usage, fmt::format("range '{}' is not a:b", ranges[i]));
      vars.push_back(make_ranged(parse_inline_or_file(trim(dists[i])), parse_number(ab[0], "--ranges"),
                                 parse_number(ab[1], "--ranges")));
    }
    report = hoeffding_gen(vars, ladder);
  } else {
    throw Error(Errc::UnknownTheorem, fmt::format("unknown theorem '{}'", a.theorem));
  }

  if (a.json) {
    out << report_json(report) << '\n';
  } else {
    print_report(report, out);
  }
  return report.satisfied ? kSuccess : kViolated;
}

struct SolveArgs {
  std::string coeffs;
  std::string budget;
  std::vector<std::string> known;
  std::string unknown;
  bool json = false;
};

int run_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const std::vector<double> coeffs = parse_list(a.coeffs, "--coeffs");
  const double budget = parse_number(a.budget, "--budget");
  std::map<std::size_t, double> known;
  for (const auto& group : a.known) {
    for (auto pair : split(group, ',')) {
      const auto eq = pair.find('=');
      if (eq == std::string_view::npos) {
        throw Error(Errc::Usage, fmt::format("--known entry '{}' is not k=v", pair));
      }
      known[parse_index(pair.substr(0, eq), "--known")] = parse_number(pair.substr(eq + 1), "--known");
    }
  }
  const std::size_t j = parse_index(a.unknown, "--unknown");
  const TailSolution sol = solve_unknown_tail(coeffs, budget, known, j);
  if (sol.order_warning) {
    fmt::print(err, "warning: known tails are not nonincreasing in k; inputs may be infeasible\n");
  }
  if (a.json) {
    Json o;
    o["unknown"] = j;
    o["bound"] = sol.value;
    o["raw"] = sol.raw;
    o["order_warning"] = sol.order_warning;
    out << o.dump() << '\n';
  } else {
    fmt::print(out, "P_{} <= {}\n", j, num(sol.value));
    if (sol.raw != sol.value) fmt::print(out, "raw = {}\n", num(sol.raw));
  }
  return kSuccess;
}

struct VerifyArgs {
  std::string theorem = "all";
  int trials = 1000;
  std::uint64_t seed = 0;
  bool record_worst = false;
  bool json = false;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
  std::vector<oracle::Theorem> theorems;
  if (a.theorem == "all") {
    theorems.assign(std::begin(oracle::kAllTheorems), std::end(oracle::kAllTheorems));
  } else {
    theorems.push_back(oracle::parse_theorem(a.theorem));
  }
  oracle::FuzzConfig config;
  config.trials = a.trials;
  config.seed = a.seed;
  config.record_worst = a.record_worst;

  int total = 0;
  Json all = Json::array();
  if (!a.json) {
    fmt::print(out, "{:<20} {:>8} {:>10} {:>14}\n", "theorem", "trials", "violations", "worst_slack");
  }
  for (auto t : theorems) {
    const oracle::FuzzSummary s = oracle::fuzz_theorem(t, config);
    total += s.violations;
    if (a.json) {
      all.push_back(Json::parse(oracle::serialize(s)));
    } else {
      fmt::print(out, "{:<20} {:>8} {:>10} {:>14.6g}\n", s.theorem, s.trials_run, s.violations,
                 s.worst_slack);
      if (s.worst_case) fmt::print(out, "  worst case: {}\n", *s.worst_case);
    }
  }
  if (a.json) {
    out << all.dump() << '\n';
  } else {
    fmt::print(out, "total violations: {}\n", total);
  }
  return total == 0 ? kSuccess : kViolated;
}

int run_moments(const std::string& path, bool json, std::ostream& out) {
  const Moments m = moments(parse_distribution_file(path));
  if (json) {
    Json o;
    o["mean"] = m.mean;
    o["variance"] = m.variance;
    o["mean_abs"] = m.mean_abs;
    out << o.dump() << '\n';
  } else {
    fmt::print(out, "mean     = {}\nvariance = {}\nmean_abs = {}\n", num(m.mean), num(m.variance),
               num(m.mean_abs));
  }
  return kSuccess;
}

}  // namespace

FiniteDistribution parse_distribution_text(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> rows;
  std::size_t line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    rows.emplace_back(line_no, line);
  }
  if (rows.empty()) throw Error(Errc::EmptySupport, "no data rows");

  auto malformed = [](std::size_t n, std::string_view row) {
    return Error(Errc::MalformedRow, fmt::format("line {}: '{}'", n, row));
  };

  if (rows.front().second == "value,prob") {
    std::vector<Atom> atoms;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto [n, row] = rows[i];
      const auto cols = split(row, ',');
      Atom a{};
      if (cols.size() != 2 || !parse_double(cols[0], a.value) || !parse_double(cols[1], a.prob)) {
        throw malformed(n, row);
      }
      atoms.push_back(a);
    }
    return make_finite(atoms);
  }

  std::vector<double> samples;
  for (const auto& [n, row] : rows) {
    double v = 0.0;
    if (!parse_double(row, v)) throw malformed(n, row);
    samples.push_back(v);
  }
  return from_samples(samples);
}

FiniteDistribution parse_distribution_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FileNotFound, fmt::format("cannot open '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_distribution_text(buffer.str());
}

std::string report_json(const BoundReport& r) {
  auto vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  Json j;
  j["theorem"] = r.theorem;
  j["ladder"] = vec(r.ladder);
  j["coefficients"] = vec(r.coefficients);
  j["tails"] = vec(r.tails);
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["slack"] = r.slack;
  j["satisfied"] = r.satisfied;
  j["params"] = Json::object();
  for (const auto& [key, value] : r.params) j["params"][key] = value;
  return j.dump();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Staircase concentration bounds over finite distributions", "tailbound"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate a generalized inequality");
  bound_cmd->add_option("--theorem", bound.theorem, "general_chebyshev, markov_staircase, eisenberg, "
                        "reverse_markov_gen, chebyshev_gen, cantelli_gen, hoeffding_gen")->required();
  bound_cmd->add_option("--dist", bound.dist, "Distribution file (value,prob CSV or samples)");
  bound_cmd->add_option("--ladder", bound.ladder, "Thresholds l1,l2,...")->required();
  bound_cmd->add_option("--phi", bound.phi, "pospart | power:p | shifted-square:t | exp:s");
  bound_cmd->add_option("--m", bound.upper, "Upper bound M (reverse_markov_gen)");
  bound_cmd->add_option("--weights", bound.weights, "Weights a1,a2,... (eisenberg)");
  bound_cmd->add_option("--ranges", bound.ranges, "Ranges a1:b1,a2:b2,... (hoeffding_gen)");
  bound_cmd->add_option("--dists", bound.dists, "bern:q or CSV path per variable (hoeffding_gen)");
  bound_cmd->add_flag("--json", bound.json, "Emit JSON");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Bound one unknown tail from the others");
  solve_cmd->add_option("--coeffs", solve.coeffs, "Coefficients c1,c2,...")->required();
  solve_cmd->add_option("--budget", solve.budget, "Right-hand side")->required();
  solve_cmd->add_option("--known", solve.known, "Known tails k=v[,k=v...] (1-based)");
  solve_cmd->add_option("--unknown", solve.unknown, "Index of the unknown tail (1-based)")->required();
  solve_cmd->add_flag("--json", solve.json, "Emit JSON");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Randomized soundness and identity checks");
  verify_cmd->add_option("--theorem", verify.theorem, "all or a theorem identifier");
  verify_cmd->add_option("--trials", verify.trials, "Trials per theorem")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "Seed");
  verify_cmd->add_flag("--record-worst", verify.record_worst, "Serialize the worst trial");
  verify_cmd->add_flag("--json", verify.json, "Emit JSON");

  std::string moments_path;
  bool moments_json = false;
  auto* moments_cmd = app.add_subcommand("moments", "Mean, variance and mean absolute value");
  moments_cmd->add_option("--dist", moments_path, "Distribution file")->required();
  moments_cmd->add_flag("--json", moments_json, "Emit JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInputError;
  }

  try {
    if (*bound_cmd) return run_bound(bound, out);
    if (*solve_cmd) return run_solve(solve, out, err);
    if (*verify_cmd) return run_verify(verify, out);
    if (*moments_cmd) return run_moments(moments_path, moments_json, out);
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInputError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInputError;
  }
  return kInputError;
}

}  // namespace tailbound::cli
