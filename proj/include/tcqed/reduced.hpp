#pragma once

// Two-qubit reduced density matrix, by closed-form sums over the initial
// field coefficients (qubits start in |gg>) or by tracing out the field of
// an arbitrary joint state.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tcqed/fock.hpp"
#include "tcqed/propagator.hpp"

namespace tcqed {

/// 4x4 density matrix in the basis (ee, eg, ge, gg).
template <typename Real>
using BasicTwoQubitDensity = Eigen::Matrix<std::complex<Real>, 4, 4>;
using TwoQubitDensity = BasicTwoQubitDensity<double>;

/// Independent entries of
///
///     [ v+   h+*  h+*  mu* ]
///     [ h+   w    p    h-* ]
///     [ h+   p    w    h-* ]
///     [ mu   h-   h-   v-  ]
template <typename Real>
struct BasicXStateElements {
  Real v_plus = 0;
  Real v_minus = 0;
  Real w = 0;
  Real p = 0;
  std::complex<Real> h_plus{};
  std::complex<Real> h_minus{};
  std::complex<Real> mu{};
};
using XStateElements = BasicXStateElements<double>;

/// Qubit-pair reduced state of |gg> (x) field after time gt.
template <typename Real>
BasicXStateElements<Real> analytic_elements(const BasicFieldState<Real>& field, Real gt) {
  using C = std::complex<Real>;
  using std::sqrt;
  const C i(0, 1);
  BasicXStateElements<Real> e;
  const Index top = field.max_support();
  for (Index n = 0; n <= top; ++n) {
    const Real rn = Real(n);
    const C c0 = field.coefficient(n);
    const C c1 = field.coefficient(n + 1);
    const C c2 = field.coefficient(n + 2);
    const auto here = detail::sector_factors(n, gt);      // B(n)/sqrt(C(n))
    const auto up = detail::sector_factors(n + 1, gt);    // (A(n+1)-1)/C(n+1)
    // 1 + 2 n (A(n-1)-1)/C(n-1); the n = 0 term is exactly 1.
    const Real stay = n == 0 ? Real(1) : Real(1) + rn * detail::sector_factors(n - 1, gt).two_photon;
    const Real lower = up.two_photon / Real(2);  // (A(n+1)-1)/C(n+1)

    e.v_plus += std::norm(c2) * Real(4) * (rn + 2) * (rn + 1) * lower * lower;
    e.h_plus += c1 * std::conj(c2) * (Real(-2) * i * (rn + 1)) * sqrt(rn + 2) *
                here.sin_ratio * lower;
    e.h_minus += c0 * std::conj(c1) * (i * sqrt(rn + 1) * here.sin_ratio) * stay;
    e.mu += c0 * std::conj(c2) * Real(2) * sqrt((rn + 2) * (rn + 1)) * lower * stay;
    e.w += std::norm(c1) * (rn + 1) * here.sin_ratio * here.sin_ratio;
    e.v_minus += std::norm(c0) * stay * stay;
  }
  e.p = e.w;
  return e;
}

/// Lays the elements out in the X-shaped pattern above. Rejects element sets
/// that break w = p, unit trace, or the [0, 1] range of the populations.
template <typename Real>
BasicTwoQubitDensity<Real> assemble_density(const BasicXStateElements<Real>& e,
                                            Real tol = Real(1e-10)) {
  if (e.w != e.p) throw std::invalid_argument("assemble_density: w and p differ");
  if (std::abs(e.v_plus + Real(2) * e.w + e.v_minus - Real(1)) > tol)
    throw std::invalid_argument("assemble_density: trace differs from 1");
  for (Real x : {e.v_plus, e.v_minus, e.w})
    if (x < -tol || x > Real(1) + tol)
      throw std::invalid_argument("assemble_density: population outside [0, 1]");
  using std::conj;
  BasicTwoQubitDensity<Real> rho;
  // clang-format off
  rho << e.v_plus,  conj(e.h_plus),  conj(e.h_plus),  conj(e.mu),
         e.h_plus,  e.w,             e.p,             conj(e.h_minus),
         e.h_plus,  e.p,             e.w,             conj(e.h_minus),
         e.mu,      e.h_minus,       e.h_minus,       e.v_minus;
  // clang-format on
  return rho;
}

/// Reads the elements back out of a density matrix that has the symmetric
/// layout (eg/ge entries are averaged).
template <typename Real>
BasicXStateElements<Real> elements_of(const BasicTwoQubitDensity<Real>& rho) {
  BasicXStateElements<Real> e;
  e.v_plus = rho(0, 0).real();
  e.v_minus = rho(3, 3).real();
  e.w = (rho(1, 1).real() + rho(2, 2).real()) / Real(2);
  e.p = e.w;
  e.h_plus = (rho(1, 0) + rho(2, 0)) / Real(2);
  e.h_minus = (rho(3, 1) + rho(3, 2)) / Real(2);
  e.mu = rho(3, 0);
  return e;
}

/// rho[a][b] = sum_n psi_a(n) conj(psi_b(n)).
template <typename Real>
BasicTwoQubitDensity<Real> partial_trace(const BasicJointState<Real>& state) {
  return state.branches().transpose() * state.branches().conjugate();
}

/// The eight off-X positions (ee,eg) (ee,ge) (eg,ee) (ge,ee) (eg,gg) (ge,gg)
/// (gg,eg) (gg,ge).
inline constexpr std::array<std::pair<int, int>, 8> kOffXPositions{
    {{0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 3}, {2, 3}, {3, 1}, {3, 2}}};

template <typename Real>
bool is_x_type(const BasicTwoQubitDensity<Real>& rho, Real tol) {
  return std::all_of(kOffXPositions.begin(), kOffXPositions.end(),
                     [&](auto rc) { return std::abs(rho(rc.first, rc.second)) <= tol; });
}

/// Deviations from a physical density matrix.
template <typename Real>
struct DensityCheck {
  Real hermiticity_error;  // max |rho - rho^dag|
  Real trace_error;        // |tr rho - 1|
  Real min_eigenvalue;
};

template <typename Real>
DensityCheck<Real> check_density(const BasicTwoQubitDensity<Real>& rho) {
  const BasicTwoQubitDensity<Real> herm = (rho + rho.adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<BasicTwoQubitDensity<Real>> solver(herm, Eigen::EigenvaluesOnly);
  return {(rho - rho.adjoint()).cwiseAbs().maxCoeff(), std::abs(rho.trace() - Real(1)),
          solver.eigenvalues().minCoeff()};
}

/// Hermitian and unit trace within 1e-10, eigenvalues >= -1e-9.
template <typename Real>
bool is_valid_density(const BasicTwoQubitDensity<Real>& rho) {
  const auto c = check_density(rho);
  return c.hermiticity_error <= Real(1e-10) && c.trace_error <= Real(1e-10) &&
         c.min_eigenvalue >= Real(-1e-9);
}

}  // namespace tcqed
