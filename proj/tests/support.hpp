#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "tcqed/fock.hpp"
#include "tcqed/propagator.hpp"
#include "tcqed/random.hpp"
#include "tcqed/reduced.hpp"

namespace tcqed::testing {

inline constexpr double kPi = 3.14159265358979323846;

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// Random joint state with every qubit label populated and the excitation
/// number kept below dim.
template <typename Engine>
JointState random_joint_state(Engine& rng, Index dim, Index support) {
  std::normal_distribution<double> normal(0.0, 1.0);
  JointState::Branches b = JointState::Branches::Zero(dim, 4);
  for (QubitPair q : kQubitBasis) {
    const Index top = std::min<Index>(support, dim - 1 - excited_count(q));
    for (Index n = 0; n <= top; ++n) b(n, index_of(q)) = {normal(rng), normal(rng)};
  }
  return JointState(b, true);
}

/// A time drawn from a fixed spread of scales.
template <typename Engine>
double random_time(Engine& rng) {
  std::uniform_real_distribution<double> u(-12.0, 12.0);
  return u(rng);
}

inline TwoQubitDensity analytic_density(const FieldState& field, double gt) {
  return assemble_density(analytic_elements(field, gt));
}

inline TwoQubitDensity propagated_density(const FieldState& field, double gt) {
  return partial_trace(apply_propagator(JointState::ground_qubits(field), gt));
}

}  // namespace tcqed::testing
