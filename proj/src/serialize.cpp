#include "tcqed/serialize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tcqed {

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json complex_vector(const AmplitudeVector<double>& v) {
  json out = json::array();
  for (Index n = 0; n < v.size(); ++n) out.push_back(to_json(v(n)));
  return out;
}

AmplitudeVector<double> complex_vector_from(const json& j, Index dim) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim)
    throw std::invalid_argument("amplitude list length does not match dim");
  AmplitudeVector<double> v(dim);
  for (Index n = 0; n < dim; ++n) v(n) = complex_from_json(j.at(n));
  return v;
}

const char* kind_name(TargetKind k) {
  switch (k) {
    case TargetKind::bell1: return "bell1";
    case TargetKind::bell2: return "bell2";
    case TargetKind::werner: return "werner";
  }
  return "unknown";
}

json plan_params(const ProtocolPlan& plan) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Bell1Plan>) {
          return {{"m", p.m}, {"phi", p.phi}, {"purity_factor", p.purity_factor}};
        } else if constexpr (std::is_same_v<T, Bell2Plan>) {
          return {{"l", p.l}, {"photon_number", p.photon_number},
                  {"predicted_w", p.predicted_w}};
        } else {
          return {{"target_v_plus", p.target_v_plus}, {"target_w", p.target_w},
                  {"c0_sq", p.c0_sq},                 {"c10_sq", p.c10_sq},
                  {"period", p.period},               {"base_time", p.base_time},
                  {"degenerate", p.degenerate}};
        }
      },
      plan);
}

json plan_times(const ProtocolPlan& plan) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Bell1Plan>) return json::array({p.gt1});
        else if constexpr (std::is_same_v<T, Bell2Plan>) return json::array({p.gt2});
        else return json(p.times);
      },
      plan);
}

const FieldState& plan_field(const ProtocolPlan& plan) {
  return std::visit([](const auto& p) -> const FieldState& { return p.field; }, plan);
}

XStateElements plan_predicted(const ProtocolPlan& plan) {
  return std::visit(
      [](const auto& p) -> XStateElements {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Bell2Plan>) {
          XStateElements e;
          e.w = e.p = p.predicted_w;
          return e;
        } else {
          return p.predicted;
        }
      },
      plan);
}

}  // namespace

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json to_json(const FieldState& field) {
  return {{"dim", field.dim()}, {"amplitudes", complex_vector(field.amplitudes())}};
}

json to_json(const JointState& state) {
  json branches = json::object();
  for (QubitPair q : kQubitBasis)
    branches[std::string(kQubitBasisLabels[index_of(q)])] = complex_vector(state.branch(q));
  return {{"dim", state.dim()}, {"branches", branches}};
}

json to_json(const TwoQubitDensity& rho) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back(to_json(rho(r, c)));
    rows.push_back(row);
  }
  return {{"basis", {"ee", "eg", "ge", "gg"}}, {"matrix", rows}};
}

json to_json(const XStateElements& e) {
  return {{"v_plus", e.v_plus},         {"v_minus", e.v_minus},         {"w", e.w},
          {"p", e.p},                   {"h_plus", to_json(e.h_plus)}, {"h_minus", to_json(e.h_minus)},
          {"mu", to_json(e.mu)}};
}

json to_json(const PathComparison& c) {
  return {{"density_deviation", c.density_deviation},
          {"density_element", {kQubitBasisLabels[c.density_row], kQubitBasisLabels[c.density_col]}},
          {"joint_deviation", c.joint_deviation},
          {"joint_element", {{"label", kQubitBasisLabels[index_of(c.joint_label)]}, {"n", c.joint_n}}},
          {"max_deviation", c.max_deviation()}};
}

json to_json(const NegativeBranchAnalysis& analysis) {
  auto root_json = [](const NegativeBranchRoot& r) {
    json j = {{"c_m_sq", r.c_m_sq},
              {"m", r.m},
              {"residual", r.residual},
              {"jacobian_rank", r.jacobian_rank},
              {"feasible", r.feasible},
              {"max_entangled", r.max_entangled}};
    j["mu_abs"] = r.mu_abs ? json(*r.mu_abs) : json(nullptr);
    return j;
  };
  json roots = json::array();
  for (const auto& r : analysis.roots) roots.push_back(root_json(r));
  json points = json::array();
  for (const auto& r : analysis.integer_points) points.push_back(root_json(r));
  json failures = json::array();
  for (const auto& f : analysis.failures)
    failures.push_back({{"seed", {f.seed_c_m_sq, f.seed_m}}, {"reason", f.reason}});
  return {{"roots", roots},
          {"degenerate", analysis.degenerate},
          {"any_feasible_root", analysis.any_feasible_root},
          {"integer_points", points},
          {"failures", failures}};
}

json to_json(const ProtocolPlan& plan) {
  return {{"protocol", protocol_name(plan)},
          {"params", plan_params(plan)},
          {"field", to_json(plan_field(plan))},
          {"gt", plan_times(plan)},
          {"predicted", to_json(plan_predicted(plan))}};
}

json to_json(const VerificationReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    samples.push_back({{"label", s.label},
                       {"gt", s.gt},
                       {"deviation_to_target", s.deviation_to_target},
                       {"path_deviation", s.path_deviation},
                       {"fidelity", s.fidelity},
                       {"concurrence", s.concurrence},
                       {"density", to_json(s.rho)}});
  }
  json target = {{"kind", kind_name(report.target.kind)},
                 {"parameter", number_or_null(report.target.parameter)},
                 {"density", to_json(report.target.matrix)}};
  json out = {{"passed", report.passed},
              {"tolerance", report.tolerance},
              {"summary", report.summary},
              {"target", target},
              {"samples", samples}};
  if (report.peak)
    out["peak"] = {{"gt", report.peak->gt}, {"concurrence", report.peak->concurrence}};
  return out;
}

json plan_document(const ProtocolPlan& plan, const VerificationReport& report) {
  json doc = to_json(plan);
  doc["verification"] = to_json(report);
  return doc;
}

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a [re, im] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

FieldState field_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  if (dim < 1) throw std::invalid_argument("field dim must be positive");
  return FieldState::from_amplitudes(complex_vector_from(j.at("amplitudes"), dim), false);
}

JointState joint_from_json(const json& j) {
  const Index dim = j.at("dim").get<Index>();
  if (dim < 1) throw std::invalid_argument("joint state dim must be positive");
  const json& b = j.at("branches");
  return JointState::from_branches(complex_vector_from(b.at("ee"), dim),
                                   complex_vector_from(b.at("eg"), dim),
                                   complex_vector_from(b.at("ge"), dim),
                                   complex_vector_from(b.at("gg"), dim));
}

TwoQubitDensity density_from_json(const json& j) {
  const json& m = j.at("matrix");
  if (!m.is_array() || m.size() != 4) throw std::invalid_argument("density matrix must be 4x4");
  TwoQubitDensity rho;
  for (int r = 0; r < 4; ++r) {
    if (!m.at(r).is_array() || m.at(r).size() != 4)
      throw std::invalid_argument("density matrix must be 4x4");
    for (int c = 0; c < 4; ++c) rho(r, c) = complex_from_json(m.at(r).at(c));
  }
  return rho;
}

}  // namespace tcqed
