#pragma once

// Truncated number-basis states of a single field mode.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tcqed/errors.hpp"

namespace tcqed {

using Index = Eigen::Index;

template <typename Real>
using AmplitudeVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

enum class Parity { any, even, odd };

/// One (photon number, coefficient) pair of a superposition.
template <typename Real>
struct BasicFockTerm {
  Index n = 0;
  std::complex<Real> coefficient{};
};

/// Normalized field state c_n over n = 0..dim-1. Immutable once built.
template <typename Real>
class BasicFieldState {
 public:
  using Scalar = std::complex<Real>;
  using Vector = AmplitudeVector<Real>;

  /// Unit-norm tolerance enforced on construction.
  static constexpr Real kNormTolerance = Real(1e-12);

  /// The vacuum in a one-level space.
  BasicFieldState() : amplitudes_(Vector::Ones(1)) {}

  /// Builds a state from raw amplitudes. With `normalize` the vector is
  /// rescaled to unit norm; without it the input must already be normalized.
  static BasicFieldState from_amplitudes(Vector amplitudes, bool normalize = true) {
    if (amplitudes.size() < 1) throw std::invalid_argument("field state needs dim >= 1");
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0)) || !std::isfinite(static_cast<double>(norm)))
      throw std::invalid_argument("field state amplitudes are all zero or non-finite");
    if (normalize) {
      amplitudes /= norm;
    } else if (std::abs(amplitudes.squaredNorm() - Real(1)) > kNormTolerance) {
      throw std::invalid_argument("field state amplitudes are not normalized");
    }
    return BasicFieldState(std::move(amplitudes));
  }

  Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

  /// c_n, or zero outside [0, dim).
  Scalar coefficient(Index n) const {
    return (n >= 0 && n < dim()) ? amplitudes_(n) : Scalar(0);
  }

  /// Highest photon number with a nonzero amplitude.
  Index max_support() const {
    for (Index n = dim() - 1; n > 0; --n)
      if (amplitudes_(n) != Scalar(0)) return n;
    return 0;
  }

  /// Top two levels exactly empty, leaving room for the two-photon terms.
  bool has_headroom() const { return dim() >= 3 && max_support() <= dim() - 3; }

  /// Same amplitudes embedded in a larger truncation.
  BasicFieldState padded(Index new_dim) const {
    if (new_dim < dim()) throw std::invalid_argument("padded: new dim is smaller");
    Vector amplitudes = Vector::Zero(new_dim);
    amplitudes.head(dim()) = amplitudes_;
    return BasicFieldState(std::move(amplitudes));
  }

  Real mean_photon_number() const {
    Real total = 0;
    for (Index n = 0; n < dim(); ++n) total += Real(n) * std::norm(amplitudes_(n));
    return total;
  }

 private:
  explicit BasicFieldState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {}

  Vector amplitudes_;
};

using FieldState = BasicFieldState<double>;
using FockTerm = BasicFockTerm<double>;

/// |n> in a space of dimension `dim`.
template <typename Real = double>
BasicFieldState<Real> number_state(Index n, Index dim) {
  if (dim < 1) throw std::invalid_argument("dim must be positive");
  if (n < 0 || n >= dim)
    throw std::out_of_range("photon number " + std::to_string(n) + " outside [0, " +
                            std::to_string(dim) + ")");
  AmplitudeVector<Real> amplitudes = AmplitudeVector<Real>::Zero(dim);
  amplitudes(n) = 1;
  return BasicFieldState<Real>::from_amplitudes(std::move(amplitudes), false);
}

/// Raw amplitude vector for a list of terms; repeated n accumulate. Linear in
/// the coefficients.
template <typename Real>
AmplitudeVector<Real> assemble_amplitudes(std::span<const BasicFockTerm<Real>> terms, Index dim) {
  if (dim < 1) throw std::invalid_argument("dim must be positive");
  AmplitudeVector<Real> amplitudes = AmplitudeVector<Real>::Zero(dim);
  for (const auto& term : terms) {
    if (term.n < 0 || term.n >= dim)
      throw std::out_of_range("photon number " + std::to_string(term.n) + " outside [0, " +
                              std::to_string(dim) + ")");
    amplitudes(term.n) += term.coefficient;
  }
  return amplitudes;
}

template <typename Real>
BasicFieldState<Real> superpose(std::span<const BasicFockTerm<Real>> terms, Index dim,
                                bool normalize = true) {
  return BasicFieldState<Real>::from_amplitudes(assemble_amplitudes(terms, dim), normalize);
}

inline FieldState superpose(std::initializer_list<FockTerm> terms, Index dim,
                            bool normalize = true) {
  return superpose(std::span<const FockTerm>(terms.begin(), terms.size()), dim, normalize);
}

/// Coherent state |alpha>, optionally projected onto even or odd photon
/// numbers. Throws TruncationError when the discarded tail of the
/// (projected) distribution exceeds `tail_tolerance`.
template <typename Real = double>
BasicFieldState<Real> coherent_state(std::complex<Real> alpha, Index dim,
                                     Parity parity = Parity::any,
                                     Real tail_tolerance = Real(1e-10)) {
  using std::exp;
  using std::lgamma;
  using std::log;
  if (dim < 1) throw std::invalid_argument("dim must be positive");
  const Real r = std::abs(alpha);
  const Real r2 = r * r;
  const Real phase = std::arg(alpha);
  auto keeps = [parity](Index n) {
    return parity == Parity::any || (parity == Parity::even ? n % 2 == 0 : n % 2 == 1);
  };
  auto weight = [&](Index n) -> Real {
    if (r == Real(0)) return n == 0 ? Real(1) : Real(0);
    return exp(-r2 + Real(2 * n) * log(r) - lgamma(Real(n + 1)));
  };

  AmplitudeVector<Real> amplitudes = AmplitudeVector<Real>::Zero(dim);
  Real kept = 0;
  for (Index n = 0; n < dim; ++n) {
    if (!keeps(n)) continue;
    const Real p = weight(n);
    kept += p;
    amplitudes(n) = std::polar(std::sqrt(p), Real(n) * phase);
  }
  // Poisson tail beyond the truncation; terms decay once n exceeds |alpha|^2.
  Real tail = 0;
  for (Index n = dim; n < dim + 100000; ++n) {
    const Real p = weight(n);
    if (keeps(n)) tail += p;
    if (Real(n) > r2 && p < std::numeric_limits<Real>::min() * Real(1e4)) break;
    if (Real(n) > r2 && p < tail * std::numeric_limits<Real>::epsilon()) break;
  }
  const Real total = kept + tail;
  if (!(total > Real(0))) throw TruncationError("coherent state has no weight on the requested parity");
  if (tail / total > tail_tolerance)
    throw TruncationError("truncation dim " + std::to_string(dim) +
                          " drops tail mass " + std::to_string(static_cast<double>(tail / total)));
  return BasicFieldState<Real>::from_amplitudes(std::move(amplitudes), true);
}

/// True iff max_n |c_n c_{n+1}| <= tol, the condition for an X-shaped
/// qubit density matrix.
template <typename Real>
bool neighbor_product_zero(const BasicFieldState<Real>& state, Real tol) {
  for (Index n = 0; n + 1 < state.dim(); ++n)
    if (std::abs(state.coefficient(n) * state.coefficient(n + 1)) > tol) return false;
  return true;
}

}  // namespace tcqed
