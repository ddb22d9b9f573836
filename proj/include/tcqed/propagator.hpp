#pragma once

// Exact resonant two-qubit Tavis-Cummings evolution in the interaction
// picture. Every operator function of the photon number is evaluated on
// number states, so the propagator is exact for any gt on states whose
// excitation sectors fit inside the truncation.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "tcqed/errors.hpp"
#include "tcqed/fock.hpp"

namespace tcqed {

/// Two-qubit basis label; the enumerator value is the branch/matrix index.
enum class QubitPair : int { ee = 0, eg = 1, ge = 2, gg = 3 };

inline constexpr std::array<QubitPair, 4> kQubitBasis{QubitPair::ee, QubitPair::eg, QubitPair::ge,
                                                      QubitPair::gg};
inline constexpr std::array<std::string_view, 4> kQubitBasisLabels{"ee", "eg", "ge", "gg"};

constexpr int index_of(QubitPair q) { return static_cast<int>(q); }

/// Number of excited qubits in a basis label.
constexpr int excited_count(QubitPair q) {
  switch (q) {
    case QubitPair::ee: return 2;
    case QubitPair::eg:
    case QubitPair::ge: return 1;
    case QubitPair::gg: return 0;
  }
  return 0;
}

/// Joint qubit-field state: one amplitude column per qubit label, rows are
/// photon numbers. Flattened column-major it is ordered label-major.
template <typename Real>
class BasicJointState {
 public:
  using Scalar = std::complex<Real>;
  using Branches = Eigen::Matrix<Scalar, Eigen::Dynamic, 4>;
  using Vector = AmplitudeVector<Real>;

  static constexpr Real kNormTolerance = Real(1e-10);

  explicit BasicJointState(Branches branches, bool normalize = false)
      : branches_(std::move(branches)) {
    if (branches_.rows() < 1) throw std::invalid_argument("joint state needs dim >= 1");
    const Real norm = branches_.norm();
    if (!(norm > Real(0))) throw std::invalid_argument("joint state is zero");
    if (normalize) {
      branches_ /= norm;
    } else if (std::abs(norm * norm - Real(1)) > kNormTolerance) {
      throw std::invalid_argument("joint state is not normalized");
    }
  }

  static BasicJointState from_branches(const Vector& ee, const Vector& eg, const Vector& ge,
                                       const Vector& gg, bool normalize = false) {
    const Index dim = ee.size();
    if (eg.size() != dim || ge.size() != dim || gg.size() != dim)
      throw std::invalid_argument("joint state branches have mismatched dimensions");
    Branches b(dim, 4);
    b << ee, eg, ge, gg;
    return BasicJointState(std::move(b), normalize);
  }

  /// |q> (x) |field>.
  static BasicJointState product(QubitPair q, const BasicFieldState<Real>& field) {
    Branches b = Branches::Zero(field.dim(), 4);
    b.col(index_of(q)) = field.amplitudes();
    return BasicJointState(std::move(b));
  }

  /// |g>|g> (x) |field>, the initial state of every protocol.
  static BasicJointState ground_qubits(const BasicFieldState<Real>& field) {
    return product(QubitPair::gg, field);
  }

  Index dim() const { return branches_.rows(); }
  const Branches& branches() const { return branches_; }
  auto branch(QubitPair q) const { return branches_.col(index_of(q)); }
  Scalar amplitude(QubitPair q, Index n) const { return branches_(n, index_of(q)); }

  Real norm() const { return branches_.norm(); }

  /// <photon number + excited qubits>.
  Real mean_excitation() const {
    Real total = 0;
    for (QubitPair q : kQubitBasis)
      for (Index n = 0; n < dim(); ++n)
        total += Real(n + excited_count(q)) * std::norm(amplitude(q, n));
    return total;
  }

  /// Largest occupied excitation number (photons + excited qubits).
  Index max_excitation() const {
    Index top = 0;
    for (QubitPair q : kQubitBasis)
      for (Index n = 0; n < dim(); ++n)
        if (amplitude(q, n) != Scalar(0)) top = std::max<Index>(top, n + excited_count(q));
    return top;
  }

  /// Every occupied excitation sector {ee,N-2; eg,ge,N-1; gg,N} lies fully
  /// inside the truncation, i.e. N <= dim-1. Preserved by evolution.
  bool has_headroom() const { return max_excitation() <= dim() - 1; }

  /// Flattened amplitudes, index = label * dim + n.
  Vector flattened() const { return Eigen::Map<const Vector>(branches_.data(), 4 * dim()); }

  static BasicJointState from_flattened(const Vector& flat, bool normalize = false) {
    if (flat.size() % 4 != 0) throw std::invalid_argument("flattened joint state length not divisible by 4");
    return BasicJointState(Eigen::Map<const Branches>(flat.data(), flat.size() / 4, 4),
                           normalize);
  }

 private:
  Branches branches_;
};

using JointState = BasicJointState<double>;

/// A(n) = cos(gt sqrt(C(n))), B(n) = sin(gt sqrt(C(n))), C(n) = 2(2n+1).
template <typename Real>
struct BasicABC {
  Real a;
  Real b;
  Real c;
};

template <typename Real = double>
BasicABC<Real> abc(Index n, Real gt) {
  if (n < 0) throw std::invalid_argument("abc: photon number must be non-negative");
  const Real c = Real(2 * (2 * n + 1));
  const Real phase = gt * std::sqrt(c);
  return {std::cos(phase), std::sin(phase), c};
}

namespace detail {

/// Per-level quantities of the excitation-sector rotation with frequency
/// sqrt(C(n)). `two_photon` is 2(A(n)-1)/C(n), written with sin^2 to avoid
/// cancellation at small gt.
template <typename Real>
struct SectorFactors {
  Real cos_term;    // A(n)
  Real two_photon;  // 2 (A(n) - 1) / C(n)
  Real sin_ratio;   // B(n) / sqrt(C(n))
};

template <typename Real>
SectorFactors<Real> sector_factors(Index n, Real gt) {
  const Real c = Real(2 * (2 * n + 1));
  const Real root = std::sqrt(c);
  const Real half = std::sin(gt * root / Real(2));
  return {std::cos(gt * root), Real(-4) * half * half / c, std::sin(gt * root) / root};
}

/// Visits every nonzero matrix element <row_label, row_n| U(gt) |col_label, col_n>
/// whose row and column both lie in [0, dim). Normal-ordering shifts are
/// applied explicitly: f(n)a|n> = f(n-1) sqrt(n)|n-1>, f(n)a^dag|n> =
/// f(n+1) sqrt(n+1)|n+1>. Factors carrying an explicit n are skipped at
/// n = 0, so C(-1) is never formed.
template <typename Real, typename Visitor>
void for_each_propagator_element(Index dim, Real gt, Visitor&& visit) {
  using C = std::complex<Real>;
  const C minus_i(0, -1);
  using std::sqrt;
  constexpr QubitPair ee = QubitPair::ee, eg = QubitPair::eg, ge = QubitPair::ge,
                      gg = QubitPair::gg;
  auto emit = [&](QubitPair row, Index row_n, QubitPair col, Index col_n, C value) {
    if (row_n >= 0 && row_n < dim) visit(row, row_n, col, col_n, value);
  };

  for (Index n = 0; n < dim; ++n) {
    const Real rn = Real(n);
    const auto f_n = sector_factors(n, gt);
    const auto f_up = sector_factors(n + 1, gt);

    // Column ee: U11, U21 = U31, U41.
    emit(ee, n, ee, n, C(Real(1) + f_up.two_photon * (rn + 1)));
    emit(eg, n + 1, ee, n, minus_i * (f_up.sin_ratio * sqrt(rn + 1)));
    emit(ge, n + 1, ee, n, minus_i * (f_up.sin_ratio * sqrt(rn + 1)));
    emit(gg, n + 2, ee, n, C(f_up.two_photon * sqrt((rn + 1) * (rn + 2))));

    // Columns eg and ge: U12 = U13, U22 = U33, U23 = U32, U42 = U43.
    for (QubitPair col : {eg, ge}) {
      const QubitPair other = col == eg ? ge : eg;
      if (n >= 1) emit(ee, n - 1, col, n, minus_i * (f_n.sin_ratio * sqrt(rn)));
      emit(col, n, col, n, C((f_n.cos_term + Real(1)) / Real(2)));
      emit(other, n, col, n, C((f_n.cos_term - Real(1)) / Real(2)));
      emit(gg, n + 1, col, n, minus_i * (f_n.sin_ratio * sqrt(rn + 1)));
    }

    // Column gg: U14, U24 = U34, U44.
    if (n >= 2) {
      const auto f_down = sector_factors(n - 1, gt);
      emit(ee, n - 2, gg, n, C(f_down.two_photon * sqrt(rn * (rn - 1))));
    }
    if (n >= 1) {
      const auto f_down = sector_factors(n - 1, gt);
      emit(eg, n - 1, gg, n, minus_i * (f_down.sin_ratio * sqrt(rn)));
      emit(ge, n - 1, gg, n, minus_i * (f_down.sin_ratio * sqrt(rn)));
      emit(gg, n, gg, n, C(Real(1) + f_down.two_photon * rn));
    } else {
      emit(gg, 0, gg, 0, C(1));
    }
  }
}

template <typename Real>
void require_headroom(const BasicJointState<Real>& state) {
  if (!state.has_headroom())
    throw HeadroomError("joint state occupies excitation number " +
                        std::to_string(state.max_excitation()) + " but dim " +
                        std::to_string(state.dim()) + " only holds sectors up to " +
                        std::to_string(state.dim() - 1));
}

}  // namespace detail

/// U(gt)|psi> with U = exp(-i gt sum_i (a^dag s-_i + s+_i a)).
template <typename Real>
BasicJointState<Real> apply_propagator(const BasicJointState<Real>& state, Real gt) {
  using Branches = typename BasicJointState<Real>::Branches;
  if (!std::isfinite(static_cast<double>(gt))) throw std::invalid_argument("gt must be finite");
  detail::require_headroom(state);
  const Index dim = state.dim();
  const Branches& in = state.branches();
  Branches out = Branches::Zero(dim, 4);
  detail::for_each_propagator_element<Real>(
      dim, gt, [&](QubitPair row, Index row_n, QubitPair col, Index col_n, std::complex<Real> u) {
        const auto amplitude = in(col_n, index_of(col));
        if (amplitude != std::complex<Real>(0)) out(row_n, index_of(row)) += u * amplitude;
      });
  return BasicJointState<Real>(std::move(out), false);
}

/// Dense U(gt) on the flattened 4*dim space (index = label * dim + n).
/// Unitary on the subspace of headroom-respecting states.
template <typename Real = double>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> propagator_matrix(Index dim,
                                                                                    Real gt) {
  if (dim < 3) throw std::invalid_argument("propagator_matrix: dim must be >= 3");
  Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> u =
      Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>::Zero(4 * dim, 4 * dim);
  detail::for_each_propagator_element<Real>(
      dim, gt, [&](QubitPair row, Index row_n, QubitPair col, Index col_n, std::complex<Real> v) {
        u(index_of(row) * dim + row_n, index_of(col) * dim + col_n) = v;
      });
  return u;
}

}  // namespace tcqed
