#pragma once

// Planners for the three field-controlled preparation protocols, starting
// from |gg>:
//   bell1  - (|ee> + e^{i phi}|gg>)/sqrt(2) from (|m> + e^{-i(phi+pi)}|m+2>)/sqrt(2)
//   bell2  - (|eg> + |ge>)/sqrt(2) from the one-photon state |1>
//   werner - the eta = 1 Werner state from c0|0> + c10|10>

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcqed/entanglement.hpp"
#include "tcqed/fock.hpp"
#include "tcqed/reduced.hpp"

namespace tcqed {

// ---------------------------------------------------------------- bell1 --

struct Bell1Plan {
  int m = 0;
  double phi = 0.0;
  FieldState field;
  double gt1 = 0.0;
  /// (4m^2+12m+8)/(4m^2+12m+9); the predicted |mu| is half its square root.
  double purity_factor = 0.0;
  /// Elements at gt1 assuming A(m-1) = 1 and A(m+1) = -1 hold exactly.
  XStateElements predicted;
};

/// pi / (sqrt(4m+6) - sqrt(4m-2)): the first time the two Rabi phases of the
/// |m> and |m+2> components differ by pi.
double bell1_time(int m);
double bell1_purity_factor(int m);

/// Requires m >= 1. `dim` defaults to m + 5, the smallest truncation that
/// leaves the top two levels empty.
Bell1Plan bell1_plan(int m, double phi, Index dim = 0);

/// How far gt is from B(m-1) = B(m+1) = 0, A(m-1) = 1, A(m+1) = -1.
struct Bell1Residual {
  double abs_b_lower = 0;  // |B(m-1)|
  double abs_b_upper = 0;  // |B(m+1)|
  double a_lower = 0;      // A(m-1)
  double a_upper = 0;      // A(m+1)
};
Bell1Residual bell1_conditions_residual(int m, double gt);

// ------------------------------------------------ bell1 negative branch --

/// Residual (v+ - 1/2, v- - 1/2) of the A(m-1) = A(m+1) = -1 branch, with
/// |c_m|^2 = x, |c_{m+2}|^2 = 1 - x and m continued to the reals.
std::array<double, 2> negative_branch_residual(double c_m_sq, double m);

/// |c_m|^2 solving v- = 1/2 at fixed real m. Since v+ + v- = 1 on this
/// branch, the pair of equations collapses to this one curve. NaN at m = -1/2.
double negative_branch_curve(double m);

/// |c_m|^2 in [0, 1] and m a non-negative integer.
bool negative_branch_feasible(double c_m_sq, double m);

struct NegativeBranchRoot {
  double c_m_sq = 0;
  double m = 0;
  double residual = 0;   // max-norm of negative_branch_residual
  int jacobian_rank = 0;  // 1 everywhere on the curve
  bool feasible = false;
  /// |mu| = sqrt(x(1-x)) sqrt(4m^2+12m+8)/|(2m+3)(2m-1)| when x in [0, 1].
  std::optional<double> mu_abs;
  bool max_entangled = false;  // |mu| = 1/2
};

struct SeedFailure {
  double seed_c_m_sq = 0;
  double seed_m = 0;
  std::string reason;
};

struct NegativeBranchOptions {
  int seeds_per_axis = 32;
  double box_lo = -3.0;
  double box_hi = 3.0;
  double dedup_distance = 1e-6;
  int max_iterations = 100;
  double residual_tolerance = 1e-13;
  int integer_m_max = 10;
};

struct NegativeBranchAnalysis {
  std::vector<NegativeBranchRoot> roots;  // distinct converged roots
  std::vector<SeedFailure> failures;      // one entry per non-converged seed
  bool degenerate = false;                // every root has a rank-deficient Jacobian
  bool any_feasible_root = false;
  /// Points of the solution curve at m = 0..integer_m_max.
  std::vector<NegativeBranchRoot> integer_points;
};

/// Gauss-Newton (minimum-norm steps) from one seed. Empty on failure, with
/// `failure` filled in when given.
std::optional<NegativeBranchRoot> solve_negative_branch(double seed_c_m_sq, double seed_m,
                                                        const NegativeBranchOptions& options = {},
                                                        std::string* failure = nullptr);

NegativeBranchAnalysis bell1_negative_branch_roots(const NegativeBranchOptions& options = {});

// ---------------------------------------------------------------- bell2 --

struct Bell2Plan {
  int l = 1;
  double gt2 = 0.0;
  double predicted_w = 0.5;
  FieldState field;
  /// The only photon number m >= 1 with m/(4m-2) >= 1/2.
  int photon_number = 1;
};

/// Largest w = p reachable from |m>: m/(4m-2).
double bell2_peak_weight(int m);

/// Requires l odd and positive. gt2 = l pi / (2 sqrt(2)).
Bell2Plan bell2_plan(int l, Index dim = 8);

// --------------------------------------------------------------- werner --

/// Closed-form elements for c0|0> + c10|10>: C(9) = 38 is the only frequency.
XStateElements werner_forward(double c10_sq, double gt);

/// 2 pi / sqrt(38).
double werner_period();

struct WernerPlan {
  double target_v_plus = 0;
  double target_w = 0;
  double c0_sq = 0;
  double c10_sq = 0;
  double base_time = 0;      // smallest solution in [0, period)
  double period = 0;
  std::vector<double> times;  // all solutions in the requested window, sorted
  bool degenerate = false;    // targets met at gt = 0 by any field
  FieldState field;
  XStateElements predicted;
};

/// Solves v+(c10, gt) = target_v_plus and w(c10, gt) = target_w over
/// |c10|^2 in [0, 1] and gt in one period, then lists every lattice image
/// gt + l * period inside [gt_lo, gt_hi]. Throws NoSolutionError when the
/// targets are unreachable.
WernerPlan werner_solve(double target_v_plus, double target_w, double gt_lo = 0.0,
                        double gt_hi = 2.2);

// ------------------------------------------------------------ peak search --

struct ConcurrencePeak {
  double gt = 0;
  double concurrence = 0;
};

/// Concurrence of the analytic reduced state of |gg> (x) field at gt.
double concurrence_at(const FieldState& field, double gt);

/// First local maximum of the concurrence in [gt_lo, gt_hi] whose value is at
/// least `threshold`, bracketed on a grid of spacing `step` and refined.
std::optional<ConcurrencePeak> first_concurrence_peak(const FieldState& field, double gt_lo,
                                                      double gt_hi, double threshold,
                                                      double step = 1e-3);

/// Highest concurrence in [center - half_width, center + half_width].
ConcurrencePeak refine_concurrence_peak(const FieldState& field, double center,
                                        double half_width, int grid = 400);

// ----------------------------------------------------------- verification --

using ProtocolPlan = std::variant<Bell1Plan, Bell2Plan, WernerPlan>;

std::string protocol_name(const ProtocolPlan& plan);

struct VerifyOptions {
  double tolerance = 1e-9;
  double min_fidelity = 0.999;    // bell1 only
  double peak_half_width = 0.1;  // bell1 peak search around gt1
};

struct VerificationSample {
  std::string label;
  double gt = 0;
  TwoQubitDensity rho = TwoQubitDensity::Zero();  // field -> propagate -> trace
  double deviation_to_target = 0;                // max elementwise
  double path_deviation = 0;                     // vs closed-form elements
  double fidelity = 0;
  double concurrence = 0;
};

struct VerificationReport {
  std::string protocol;
  TargetState target;
  std::vector<VerificationSample> samples;
  std::optional<ConcurrencePeak> peak;
  double tolerance = 0;
  bool passed = false;
  std::string summary;
};

VerificationReport verify_plan(const ProtocolPlan& plan, const VerifyOptions& options = {});

}  // namespace tcqed
