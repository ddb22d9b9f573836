#pragma once

// Brute-force reference evolution: build the truncated interaction
// Hamiltonian and exponentiate it through its eigendecomposition. Nothing
// here shares code with the closed-form propagator.

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tcqed/fock.hpp"
#include "tcqed/propagator.hpp"
#include "tcqed/reduced.hpp"

namespace tcqed {

/// H = sum_i (a^dag s-_i + s+_i a) with g = 1, on the flattened 4*dim space
/// (index = label * dim + n). Couplings that would leave the truncation are
/// omitted.
template <typename Real>
struct BasicInteractionHamiltonian {
  Index dim = 0;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> matrix;
};
using InteractionHamiltonian = BasicInteractionHamiltonian<double>;

template <typename Real = double>
BasicInteractionHamiltonian<Real> build_hamiltonian(Index dim) {
  if (dim < 3) throw std::invalid_argument("build_hamiltonian: dim must be >= 3");
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix h = Matrix::Zero(4 * dim, 4 * dim);
  auto at = [dim](QubitPair q, Index n) { return index_of(q) * dim + n; };
  // a^dag s-_i: qubit i drops e -> g while a photon is created.
  struct Lowering {
    QubitPair from;
    QubitPair to;
  };
  constexpr Lowering lowerings[] = {
      {QubitPair::ee, QubitPair::ge},  // first qubit
      {QubitPair::eg, QubitPair::gg},
      {QubitPair::ee, QubitPair::eg},  // second qubit
      {QubitPair::ge, QubitPair::gg},
  };
  for (const auto& l : lowerings) {
    for (Index n = 0; n + 1 < dim; ++n) {
      const Real coupling = std::sqrt(Real(n + 1));
      h(at(l.to, n + 1), at(l.from, n)) += coupling;
      h(at(l.from, n), at(l.to, n + 1)) += coupling;
    }
  }
  return {dim, std::move(h)};
}

/// Diagonal of (photon number + excited qubits) on the flattened space.
template <typename Real = double>
Eigen::Matrix<Real, Eigen::Dynamic, 1> excitation_diagonal(Index dim) {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> d(4 * dim);
  for (QubitPair q : kQubitBasis)
    for (Index n = 0; n < dim; ++n) d(index_of(q) * dim + n) = Real(n + excited_count(q));
  return d;
}

/// exp(-i gt H) through a cached eigendecomposition of H. Build once per
/// dim; `evolve` is const and safe to call concurrently.
template <typename Real>
class BasicOracleEvolver {
 public:
  using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicOracleEvolver(Index dim) : hamiltonian_(build_hamiltonian<Real>(dim)) {
    solver_.compute(hamiltonian_.matrix);
    if (solver_.info() != Eigen::Success)
      throw std::runtime_error("oracle: eigendecomposition failed");
  }

  Index dim() const { return hamiltonian_.dim; }
  const BasicInteractionHamiltonian<Real>& hamiltonian() const { return hamiltonian_; }

  BasicJointState<Real> evolve(const BasicJointState<Real>& state, Real gt) const {
    if (state.dim() != dim()) throw std::invalid_argument("oracle: state dim does not match evolver");
    detail::require_headroom(state);
    const auto& v = solver_.eigenvectors();
    const auto psi = state.flattened();
    AmplitudeVector<Real> coords = v.transpose().template cast<std::complex<Real>>() * psi;
    for (Index k = 0; k < coords.size(); ++k)
      coords(k) *= std::polar(Real(1), -gt * solver_.eigenvalues()(k));
    AmplitudeVector<Real> out = v.template cast<std::complex<Real>>() * coords;
    return BasicJointState<Real>::from_flattened(out, false);
  }

  /// Dense exp(-i gt H).
  ComplexMatrix unitary(Real gt) const {
    const auto& v = solver_.eigenvectors();
    AmplitudeVector<Real> phases(v.cols());
    for (Index k = 0; k < phases.size(); ++k)
      phases(k) = std::polar(Real(1), -gt * solver_.eigenvalues()(k));
    const ComplexMatrix vc = v.template cast<std::complex<Real>>();
    return vc * phases.asDiagonal() * vc.transpose();
  }

 private:
  BasicInteractionHamiltonian<Real> hamiltonian_;
  Eigen::SelfAdjointEigenSolver<Matrix> solver_;
};
using OracleEvolver = BasicOracleEvolver<double>;

template <typename Real>
BasicJointState<Real> evolve_oracle(const BasicJointState<Real>& state, Real gt) {
  return BasicOracleEvolver<Real>(state.dim()).evolve(state, gt);
}

/// Largest disagreement between the closed-form and brute-force routes.
struct PathComparison {
  double density_deviation = 0;  // max |rho_analytic - rho_oracle|
  int density_row = 0;
  int density_col = 0;
  double joint_deviation = 0;  // max |U psi - exp(-iHt) psi| over amplitudes
  QubitPair joint_label = QubitPair::gg;
  Index joint_n = 0;

  double max_deviation() const { return std::max(density_deviation, joint_deviation); }
};

inline PathComparison compare_paths(const OracleEvolver& oracle, const FieldState& field,
                                    double gt) {
  const JointState initial = JointState::ground_qubits(field);
  const JointState brute = oracle.evolve(initial, gt);
  const JointState exact = apply_propagator(initial, gt);
  const TwoQubitDensity analytic = assemble_density(analytic_elements(field, gt));
  const TwoQubitDensity traced = partial_trace(brute);

  PathComparison out;
  const Eigen::Matrix4d diff = (analytic - traced).cwiseAbs();
  out.density_deviation = diff.maxCoeff(&out.density_row, &out.density_col);
  Index row = 0, col = 0;
  out.joint_deviation = (exact.branches() - brute.branches()).cwiseAbs().maxCoeff(&row, &col);
  out.joint_label = static_cast<QubitPair>(col);
  out.joint_n = row;
  return out;
}

inline PathComparison compare_paths(const FieldState& field, double gt) {
  return compare_paths(OracleEvolver(field.dim()), field, gt);
}

}  // namespace tcqed
