#include "tcqed/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "tcqed/errors.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/protocols.hpp"
#include "tcqed/random.hpp"
#include "tcqed/reduced.hpp"
#include "tcqed/serialize.hpp"

namespace tcqed::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), blank));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), blank).base(), s.end());
  return s;
}

double parse_plain(const std::string& text) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(x)) throw UsageError("not a number: '" + text + "'");
  return x;
}

FieldState coherent_preset(double alpha, Parity parity, Index dim) {
  if (dim < 4) throw HeadroomError("coherent preset needs dim >= 4");
  return coherent_state<double>(alpha, dim - 2, parity).padded(dim);
}

FieldState two_level_preset(Index low, std::complex<double> c_low, Index high,
                            std::complex<double> c_high, Index dim) {
  if (high > dim - 3)
    throw HeadroomError("field needs |" + std::to_string(high) + "> plus two empty levels, dim " +
                        std::to_string(dim) + " is too small");
  return superpose({{low, c_low}, {high, c_high}}, dim);
}

FieldState explicit_recipe(const std::string& recipe, Index dim) {
  std::vector<FockTerm> terms;
  std::stringstream list(recipe);
  std::string item;
  while (std::getline(list, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("field term '" + item + "' lacks ':'");
    const double n_value = parse_plain(trim(item.substr(0, colon)));
    if (n_value < 0 || n_value != std::floor(n_value))
      throw UsageError("photon number in '" + item + "' is not a non-negative integer");
    const std::string coeff = item.substr(colon + 1);
    const auto comma = coeff.find(',');
    const double re = parse_real(trim(coeff.substr(0, comma)));
    const double im = comma == std::string::npos ? 0.0 : parse_real(trim(coeff.substr(comma + 1)));
    const auto n = static_cast<Index>(n_value);
    if (n >= dim) throw HeadroomError("photon number " + std::to_string(n) + " outside dim " +
                                      std::to_string(dim));
    terms.push_back({n, {re, im}});
  }
  if (terms.empty()) throw UsageError("field recipe has no terms");
  try {
    return superpose(std::span<const FockTerm>(terms), dim);
  } catch (const std::out_of_range& e) {
    throw HeadroomError(e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

FieldState field_file(const std::string& path, Index dim) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open field file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError("field file '" + path + "': " + e.what());
  }
  FieldState field = field_from_json(j);
  return field.dim() < dim ? field.padded(dim) : field;
}

// --------------------------------------------------------------- output --

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

struct Outputs {
  bool elements = false;
  bool concurrence = false;
  bool fidelity = false;
  bool density = false;
};

Outputs parse_outputs(const std::vector<std::string>& names) {
  Outputs o;
  for (const auto& n : names) {
    if (n == "elements") o.elements = true;
    else if (n == "concurrence") o.concurrence = true;
    else if (n == "fidelity") o.fidelity = true;
    else if (n == "density") o.density = true;
    else throw UsageError("unknown output '" + n + "'");
  }
  return o;
}

TargetState parse_target(const std::string& name, const std::string& field, double phi,
                         double eta) {
  if (name == "auto") return default_target(field);
  if (name == "bell1") return bell1_target(phi);
  if (name == "bell2") return bell2_target();
  if (name == "werner") return werner_target(eta);
  throw UsageError("unknown target '" + name + "'");
}

// ----------------------------------------------------------------- scan --

struct ScanOptions {
  std::string field = "single-photon";
  Index dim = 64;
  double gt_min = 0.0;
  double gt_max = 4.5;
  int steps = 451;
  std::vector<std::string> outputs{"elements", "concurrence", "fidelity"};
  std::string target = "auto";
  std::string phi = "0";
  std::string eta = "1";
  std::string path = "analytic";
  std::string format = "csv";
  std::string out = "-";
};

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  if (!(o.gt_min < o.gt_max)) throw UsageError("--gt-min must be below --gt-max");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");
  const Outputs want = parse_outputs(o.outputs);
  if (want.density && o.format != "json") throw UsageError("density output needs --format json");
  const FieldState field = parse_field(o.field, o.dim);
  const TargetState target = parse_target(o.target, o.field, parse_real(o.phi), parse_real(o.eta));
  std::optional<OracleEvolver> oracle;
  if (o.path == "oracle") oracle.emplace(field.dim());
  else if (o.path != "analytic" && o.path != "propagator")
    throw UsageError("unknown path '" + o.path + "'");

  auto density_at = [&](double gt) -> TwoQubitDensity {
    if (o.path == "analytic") return assemble_density(analytic_elements(field, gt));
    const JointState start = JointState::ground_qubits(field);
    return partial_trace(oracle ? oracle->evolve(start, gt) : apply_propagator(start, gt));
  };

  std::ostringstream text;
  text << std::setprecision(17);
  json samples = json::array();
  if (o.format == "csv") {
    std::vector<std::string> header{"gt"};
    if (want.elements)
      for (const char* c : {"v_plus", "v_minus", "w", "re_mu", "im_mu", "re_h_plus", "im_h_plus",
                            "re_h_minus", "im_h_minus"})
        header.emplace_back(c);
    if (want.concurrence) header.emplace_back("concurrence");
    if (want.fidelity) header.emplace_back("fidelity");
    for (std::size_t i = 0; i < header.size(); ++i) text << (i ? "," : "") << header[i];
    text << '\n';
  } else if (o.format != "json") {
    throw UsageError("unknown format '" + o.format + "'");
  }

  for (int k = 0; k < o.steps; ++k) {
    const double gt = k + 1 == o.steps ? o.gt_max
                                       : o.gt_min + (o.gt_max - o.gt_min) * k / (o.steps - 1);
    const TwoQubitDensity rho = density_at(gt);
    const XStateElements e = elements_of(rho);
    if (o.format == "csv") {
      text << gt;
      if (want.elements)
        for (double x : {e.v_plus, e.v_minus, e.w, e.mu.real(), e.mu.imag(), e.h_plus.real(),
                         e.h_plus.imag(), e.h_minus.real(), e.h_minus.imag()})
          text << ',' << x;
      if (want.concurrence) text << ',' << concurrence(rho);
      if (want.fidelity) text << ',' << fidelity(rho, target);
      text << '\n';
    } else {
      json s = {{"gt", gt}};
      if (want.elements) s["elements"] = to_json(e);
      if (want.concurrence) s["concurrence"] = concurrence(rho);
      if (want.fidelity) s["fidelity"] = fidelity(rho, target);
      if (want.density) s["density"] = to_json(rho);
      samples.push_back(std::move(s));
    }
  }
  if (o.format == "json") {
    json doc = {{"field", to_json(field)},
                {"path", o.path},
                {"target", {{"density", to_json(target.matrix)}}},
                {"samples", samples}};
    text << doc.dump(2) << '\n';
  }
  write_output(o.out, text.str(), out);
  return kOk;
}

// ----------------------------------------------------------------- plan --

struct PlanOptions {
  std::string protocol;
  int m = 30;
  std::string phi = "pi";
  int l = 1;
  std::string v_plus = "1/3";
  std::string w = "1/6";
  double gt_min = 0.0;
  double gt_max = 2.2;
  Index dim = 64;
  bool dim_given = false;
  double tol = 1e-9;
  std::string out = "-";
};

int cmd_plan(const PlanOptions& o, std::ostream& out) {
  json doc;
  bool passed = true;
  if (o.protocol == "negative-branch") {
    const NegativeBranchAnalysis analysis = bell1_negative_branch_roots();
    doc = {{"protocol", "negative-branch"}, {"analysis", to_json(analysis)}};
    passed = !analysis.any_feasible_root;
  } else {
    ProtocolPlan plan;
    try {
      if (o.protocol == "bell1") {
        plan = bell1_plan(o.m, parse_real(o.phi), o.dim_given ? o.dim : 0);
      } else if (o.protocol == "bell2") {
        plan = bell2_plan(o.l, o.dim_given ? o.dim : 8);
      } else if (o.protocol == "werner") {
        plan = werner_solve(parse_real(o.v_plus), parse_real(o.w), o.gt_min, o.gt_max);
      } else {
        throw UsageError("unknown protocol '" + o.protocol + "'");
      }
    } catch (const NoSolutionError&) {
      throw;
    } catch (const HeadroomError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    VerifyOptions options;
    options.tolerance = o.tol;
    const VerificationReport report = verify_plan(plan, options);
    doc = plan_document(plan, report);
    passed = report.passed;
  }
  write_output(o.out, doc.dump(2) + "\n", out);
  return passed ? kOk : kFailure;
}

// ------------------------------------------------------------- validate --

struct ValidateOptions {
  Index dim = 64;
  int trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::vector<std::string> fields{"bell1-m30", "single-photon", "werner"};
  std::string format = "text";
  std::string out = "-";
};

constexpr double kValidationTimes[] = {0.1, 0.5, 1.0, 2.0, 5.0, 8.673, 12.0};

int cmd_validate(const ValidateOptions& o, std::ostream& out) {
  if (o.trials < 1) throw UsageError("--trials must be at least 1");
  if (o.dim < 3) throw HeadroomError("--dim must be at least 3");
  if (o.format != "text" && o.format != "json") throw UsageError("unknown format '" + o.format + "'");
  std::vector<std::pair<std::string, FieldState>> cases;
  for (const auto& f : o.fields) cases.emplace_back(f, parse_field(f, o.dim));

  std::mt19937_64 rng(o.seed);
  const Index support = std::min<Index>(40, o.dim - 3);
  for (int t = 0; t < o.trials; ++t)
    cases.emplace_back("random-" + std::to_string(t), random_field_state(rng, o.dim, support));

  const OracleEvolver oracle(o.dim);
  std::ostringstream text;
  text << std::setprecision(6) << std::scientific;
  json rows = json::array();
  double worst = 0;
  std::string worst_case;
  for (const auto& [name, field] : cases) {
    double case_worst = 0;
    PathComparison case_cmp;
    double case_gt = 0;
    for (double gt : kValidationTimes) {
      const PathComparison c = compare_paths(oracle, field, gt);
      if (c.max_deviation() >= case_worst) {
        case_worst = c.max_deviation();
        case_cmp = c;
        case_gt = gt;
      }
    }
    if (case_worst >= worst) {
      worst = case_worst;
      worst_case = name;
    }
    const bool is_random = name.rfind("random-", 0) == 0;
    if (o.format == "json") {
      json row = to_json(case_cmp);
      row["case"] = name;
      row["gt"] = case_gt;
      rows.push_back(row);
    } else if (!is_random) {
      text << name << " max deviation " << case_worst << " at gt=" << std::defaultfloat << case_gt
           << std::scientific << '\n';
    }
  }
  const bool passed = worst <= o.tol;
  if (o.format == "json") {
    json doc = {{"dim", o.dim},           {"trials", o.trials},
                {"seed", o.seed},         {"tolerance", o.tol},
                {"gt", kValidationTimes}, {"cases", rows},
                {"max_deviation", worst}, {"worst_case", worst_case},
                {"passed", passed}};
    text.str("");
    text << doc.dump(2) << '\n';
  } else {
    text << o.trials << " random fields (dim " << o.dim << ", support <= " << support << ", seed "
         << o.seed << ")\n";
    text << "max deviation " << worst << " (" << worst_case << ")\n";
    text << (passed ? "PASS" : "FAIL") << '\n';
  }
  write_output(o.out, text.str(), out);
  return passed ? kOk : kFailure;
}

}  // namespace

// ---------------------------------------------------------------- public --

double parse_real(const std::string& raw) {
  const std::string text = trim(raw);
  static const std::regex pattern(R"(^([+-]?)(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*\*?\s*(pi)?(?:\s*/\s*(\d*\.?\d+))?$)");
  std::smatch m;
  if (text.empty() || !std::regex_match(text, m, pattern)) throw UsageError("not a number: '" + raw + "'");
  const bool has_pi = m[3].matched;
  const std::string digits = m[2].str();
  if (digits.empty() && !has_pi) throw UsageError("not a number: '" + raw + "'");
  double x = digits.empty() ? 1.0 : parse_plain(digits);
  if (has_pi) x *= std::numbers::pi;
  if (m[4].matched) {
    const double d = parse_plain(m[4].str());
    if (d == 0) throw UsageError("division by zero in '" + raw + "'");
    x /= d;
  }
  return m[1].str() == "-" ? -x : x;
}

FieldState parse_field(const std::string& raw, Index dim) {
  const std::string recipe = trim(raw);
  if (dim < 1) throw UsageError("--dim must be positive");
  FieldState field;
  static const std::regex call(R"(^([a-z-]+)\((.*)\)$)");
  std::smatch m;
  if (recipe == "vacuum") {
    if (dim < 3) throw HeadroomError("vacuum needs dim >= 3");
    field = number_state(0, dim);
  } else if (recipe == "single-photon") {
    if (dim < 4) throw HeadroomError("single-photon needs dim >= 4");
    field = number_state(1, dim);
  } else if (recipe == "bell1-m30") {
    field = two_level_preset(30, 1.0, 32, 1.0, dim);
  } else if (recipe == "bell1-m40") {
    field = two_level_preset(40, 1.0, 42, 1.0, dim);
  } else if (recipe == "werner") {
    field = two_level_preset(0, std::sqrt(0.274), 10, std::sqrt(0.726), dim);
  } else if (!recipe.empty() && recipe.front() == '@') {
    field = field_file(recipe.substr(1), dim);
  } else if (std::regex_match(recipe, m, call)) {
    const std::string name = m[1].str();
    const double arg = parse_real(m[2].str());
    if (name == "even-coherent") field = coherent_preset(arg, Parity::even, dim);
    else if (name == "odd-coherent") field = coherent_preset(arg, Parity::odd, dim);
    else if (name == "coherent") field = coherent_preset(arg, Parity::any, dim);
    else if (name == "fock") {
      if (arg < 0 || arg != std::floor(arg)) throw UsageError("fock(n) needs an integer n >= 0");
      if (arg >= dim) throw HeadroomError("fock level outside dim");
      field = number_state(static_cast<Index>(arg), dim);
    } else {
      throw UsageError("unknown field preset '" + name + "'");
    }
  } else if (recipe.find(':') != std::string::npos) {
    field = explicit_recipe(recipe, dim);
  } else {
    throw UsageError("unknown field recipe '" + recipe + "'");
  }
  if (!field.has_headroom())
    throw HeadroomError("field occupies |" + std::to_string(field.max_support()) +
                        ">; dim " + std::to_string(field.dim()) +
                        " must leave the top two levels empty");
  return field;
}

TargetState default_target(const std::string& raw) {
  const std::string recipe = trim(raw);
  if (recipe == "bell1-m30" || recipe == "bell1-m40") return bell1_target(std::numbers::pi);
  if (recipe == "werner") return werner_target(1.0);
  return bell2_target();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit Tavis-Cummings dynamics and field-controlled state preparation"};
  app.require_subcommand(1);

  ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Reduced-state time series for one field");
  scan_cmd->add_option("--field", scan.field, "Preset, 'n:re,im;...' list, or @file.json")
      ->capture_default_str();
  scan_cmd->add_option("--dim", scan.dim, "Fock truncation")->capture_default_str();
  scan_cmd->add_option("--gt-min", scan.gt_min)->capture_default_str();
  scan_cmd->add_option("--gt-max", scan.gt_max)->capture_default_str();
  scan_cmd->add_option("--steps", scan.steps, "Samples, both ends included")->capture_default_str();
  scan_cmd->add_option("--outputs", scan.outputs, "elements, concurrence, fidelity, density")
      ->delimiter(',')
      ->capture_default_str();
  scan_cmd->add_option("--target", scan.target, "auto, bell1, bell2, werner")->capture_default_str();
  scan_cmd->add_option("--phi", scan.phi, "bell1 target phase")->capture_default_str();
  scan_cmd->add_option("--eta", scan.eta, "werner target eta")->capture_default_str();
  scan_cmd->add_option("--path", scan.path, "analytic, propagator, oracle")->capture_default_str();
  scan_cmd->add_option("--format", scan.format, "csv or json")->capture_default_str();
  scan_cmd->add_option("--out", scan.out, "Output file, - for stdout")->capture_default_str();

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "Plan and verify a preparation protocol");
  plan_cmd->add_option("protocol", plan.protocol, "bell1, bell2, werner, negative-branch")
      ->required();
  plan_cmd->add_option("--m", plan.m, "bell1 base photon number")->capture_default_str();
  plan_cmd->add_option("--phi", plan.phi, "bell1 relative phase")->capture_default_str();
  plan_cmd->add_option("--l", plan.l, "bell2 odd multiple")->capture_default_str();
  plan_cmd->add_option("--v-plus", plan.v_plus, "werner target v+")->capture_default_str();
  plan_cmd->add_option("--w", plan.w, "werner target w")->capture_default_str();
  plan_cmd->add_option("--gt-min", plan.gt_min, "werner time window")->capture_default_str();
  plan_cmd->add_option("--gt-max", plan.gt_max, "werner time window")->capture_default_str();
  auto* plan_dim = plan_cmd->add_option("--dim", plan.dim, "Fock truncation");
  plan_cmd->add_option("--tol", plan.tol)->capture_default_str();
  plan_cmd->add_option("--out", plan.out)->capture_default_str();
  plan_cmd->add_option("--format", "Only json is produced")->check(CLI::IsMember({"json"}));

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Analytic versus brute-force evolution");
  validate_cmd->add_option("--dim", validate.dim)->capture_default_str();
  validate_cmd->add_option("--trials", validate.trials)->capture_default_str();
  validate_cmd->add_option("--seed", validate.seed)->capture_default_str();
  validate_cmd->add_option("--tol", validate.tol)->capture_default_str();
  validate_cmd->add_option("--field", validate.fields, "Preset fields checked besides the random ones")
      ->delimiter(',')
      ->capture_default_str();
  validate_cmd->add_option("--format", validate.format, "text or json")->capture_default_str();
  validate_cmd->add_option("--out", validate.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*scan_cmd) return cmd_scan(scan, out);
    if (*plan_cmd) {
      plan.dim_given = plan_dim->count() > 0;
      return cmd_plan(plan, out);
    }
    return cmd_validate(validate, out);
  } catch (const HeadroomError& e) {
    err << "headroom error: " << e.what() << '\n';
    return kUsage;
  } catch (const TruncationError& e) {
    err << "truncation error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoSolutionError& e) {
    err << "no solution: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace tcqed::cli
