#pragma once

// JSON views of the library types. Complex numbers are [re, im] pairs.

#include <json.hpp>

#include "tcqed/fock.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/propagator.hpp"
#include "tcqed/protocols.hpp"
#include "tcqed/reduced.hpp"

namespace tcqed {

using json = nlohmann::json;

json to_json(std::complex<double> z);
json to_json(const FieldState& field);
json to_json(const JointState& state);
json to_json(const TwoQubitDensity& rho);
json to_json(const XStateElements& e);
json to_json(const PathComparison& c);
json to_json(const NegativeBranchAnalysis& analysis);
json to_json(const ProtocolPlan& plan);
json to_json(const VerificationReport& report);

/// {"protocol", "params", "field", "gt", "predicted", "verification"}.
json plan_document(const ProtocolPlan& plan, const VerificationReport& report);

std::complex<double> complex_from_json(const json& j);
FieldState field_from_json(const json& j);
JointState joint_from_json(const json& j);
TwoQubitDensity density_from_json(const json& j);

}  // namespace tcqed
