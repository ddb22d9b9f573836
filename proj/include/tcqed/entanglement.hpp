#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tcqed/reduced.hpp"

namespace tcqed {

namespace detail {

/// Principal square root of a (numerically) positive semidefinite matrix;
/// negative roundoff eigenvalues are clamped to zero.
template <typename Real>
BasicTwoQubitDensity<Real> psd_sqrt(const BasicTwoQubitDensity<Real>& rho) {
  const BasicTwoQubitDensity<Real> herm = (rho + rho.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<BasicTwoQubitDensity<Real>> solver(herm);
  const Eigen::Matrix<Real, 4, 1> roots = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

template <typename Real>
void require_hermitian(const BasicTwoQubitDensity<Real>& rho, const char* who) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > Real(1e-10))
    throw std::invalid_argument(std::string(who) + ": density matrix is not Hermitian");
}

}  // namespace detail

/// sigma_y (x) sigma_y in the (ee, eg, ge, gg) basis.
template <typename Real = double>
BasicTwoQubitDensity<Real> spin_flip_operator() {
  BasicTwoQubitDensity<Real> yy = BasicTwoQubitDensity<Real>::Zero();
  yy(0, 3) = yy(3, 0) = Real(-1);
  yy(1, 2) = yy(2, 1) = Real(1);
  return yy;
}

/// Wootters concurrence. The lambdas, square roots of the spectrum of the
/// Hermitian sqrt(rho) rho~ sqrt(rho), are taken as the singular values of
/// A^T (Y x Y) A with rho = A A^dag. Going through singular values avoids
/// square roots of rounded eigenvalues, which turn a 1e-17 zero into a
/// 3e-9 lambda. Eigenvalues of rho at roundoff level count as zero; ties
/// need no special handling.
template <typename Real>
Real concurrence(const BasicTwoQubitDensity<Real>& rho) {
  detail::require_hermitian(rho, "concurrence");
  const BasicTwoQubitDensity<Real> herm = (rho + rho.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<BasicTwoQubitDensity<Real>> solver(herm);
  Eigen::Matrix<Real, 4, 1> d = solver.eigenvalues();
  const Real floor = Real(32) * std::numeric_limits<Real>::epsilon() *
                     std::max(Real(1), d.cwiseAbs().maxCoeff());
  for (int k = 0; k < 4; ++k) d(k) = d(k) > floor ? std::sqrt(d(k)) : Real(0);
  const BasicTwoQubitDensity<Real> a = solver.eigenvectors() * d.asDiagonal();
  const BasicTwoQubitDensity<Real> tau = a.transpose() * spin_flip_operator<Real>() * a;
  // Descending order; lambda_1 is the first entry.
  const Eigen::Matrix<Real, 4, 1> lambda =
      Eigen::JacobiSVD<BasicTwoQubitDensity<Real>>(tau).singularValues();
  const Real value = lambda(0) - lambda(1) - lambda(2) - lambda(3);
  return std::clamp(value, Real(0), Real(1));
}

/// Closed-form concurrence of an X-shaped matrix,
/// 2 max(0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)).
template <typename Real>
Real x_state_concurrence(const BasicTwoQubitDensity<Real>& rho) {
  using std::sqrt;
  const Real a = std::abs(rho(1, 2)) - sqrt(std::max(Real(0), rho(0, 0).real() * rho(3, 3).real()));
  const Real b = std::abs(rho(0, 3)) - sqrt(std::max(Real(0), rho(1, 1).real() * rho(2, 2).real()));
  return std::clamp(Real(2) * std::max({Real(0), a, b}), Real(0), Real(1));
}

/// Binary entropy in bits, with h(0) = h(1) = 0.
template <typename Real>
Real binary_entropy(Real x) {
  if (x <= Real(0) || x >= Real(1)) return Real(0);
  return -x * std::log2(x) - (Real(1) - x) * std::log2(Real(1) - x);
}

/// Entanglement of formation from the concurrence.
template <typename Real>
Real entanglement_of_formation(Real c) {
  if (!(c >= Real(0) && c <= Real(1)))
    throw std::invalid_argument("entanglement_of_formation: concurrence outside [0, 1]");
  return binary_entropy((Real(1) + std::sqrt(Real(1) - c * c)) / Real(2));
}

template <typename Real>
Real eof(Real c) {
  return entanglement_of_formation(c);
}

enum class TargetKind { bell1, bell2, werner };

/// A reference two-qubit state. `parameter` is the relative phase phi for
/// bell1, eta for werner, unused for bell2.
struct TargetState {
  TargetKind kind = TargetKind::bell2;
  double parameter = 0.0;
  TwoQubitDensity matrix = TwoQubitDensity::Zero();
  std::optional<Eigen::Vector4cd> pure_state;  // set for rank-1 targets
};

/// (|ee> + e^{i phi}|gg>)/sqrt(2).
inline TargetState bell1_target(double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("bell1 phase must be finite");
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = std::numbers::sqrt2 / 2;
  psi(3) = std::polar(std::numbers::sqrt2 / 2, phi);
  return {TargetKind::bell1, phi, psi * psi.adjoint(), psi};
}

/// (|eg> + |ge>)/sqrt(2).
inline TargetState bell2_target() {
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(1) = psi(2) = std::numbers::sqrt2 / 2;
  return {TargetKind::bell2, 0.0, psi * psi.adjoint(), psi};
}

/// k |Psi-><Psi-| + (1-k) I/4 written with eta = (3 - 3k)/4, 0 <= eta <= 1.
/// eta = 0 is the pure singlet.
inline TargetState werner_target(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("werner eta must lie in [0, 1]");
  TwoQubitDensity rho = TwoQubitDensity::Zero();
  rho(0, 0) = rho(3, 3) = eta / 3.0;
  rho(1, 1) = rho(2, 2) = (3.0 - 2.0 * eta) / 6.0;
  rho(1, 2) = rho(2, 1) = (-3.0 + 4.0 * eta) / 6.0;
  TargetState t{TargetKind::werner, eta, rho, std::nullopt};
  if (eta == 0.0) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(2) = std::numbers::sqrt2 / 2;
    psi(1) = -std::numbers::sqrt2 / 2;
    t.pure_state = psi;
  }
  return t;
}

inline double werner_eta_from_k(double k) {
  if (!(k >= -1.0 / 3.0 - 1e-15 && k <= 1.0)) throw std::invalid_argument("werner k must lie in [-1/3, 1]");
  return std::clamp((3.0 - 3.0 * k) / 4.0, 0.0, 1.0);
}

inline TargetState target(TargetKind kind, double parameter = 0.0) {
  switch (kind) {
    case TargetKind::bell1: return bell1_target(parameter);
    case TargetKind::bell2: return bell2_target();
    case TargetKind::werner: return werner_target(parameter);
  }
  throw std::invalid_argument("unknown target kind");
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
template <typename Real>
Real fidelity(const BasicTwoQubitDensity<Real>& rho, const BasicTwoQubitDensity<Real>& sigma) {
  const BasicTwoQubitDensity<Real> root = detail::psd_sqrt(rho);
  const BasicTwoQubitDensity<Real> inner = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<BasicTwoQubitDensity<Real>> solver(
      (inner + inner.adjoint()) / Real(2), Eigen::EigenvaluesOnly);
  const Real tr = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt().sum();
  return std::clamp(tr * tr, Real(0), Real(1));
}

/// For pure targets this is <psi|rho|psi>.
inline double fidelity(const TwoQubitDensity& rho, const TargetState& t) {
  if (t.pure_state) {
    const double f = (t.pure_state->adjoint() * rho * *t.pure_state)(0, 0).real();
    return std::clamp(f, 0.0, 1.0);
  }
  return fidelity(rho, t.matrix);
}

}  // namespace tcqed
