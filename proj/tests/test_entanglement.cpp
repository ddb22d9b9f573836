#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcqed/entanglement.hpp"

using namespace tcqed;
using namespace tcqed::testing;

namespace {

TwoQubitDensity diag_gg() {
  TwoQubitDensity rho = TwoQubitDensity::Zero();
  rho(3, 3) = 1;
  return rho;
}

TwoQubitDensity local_phase(const TwoQubitDensity& rho, double theta, double chi) {
  // diag(e^{i theta}, 1) (x) diag(e^{i chi}, 1) in the (ee, eg, ge, gg) order.
  Eigen::Vector4cd d(std::polar(1.0, theta + chi), std::polar(1.0, theta), std::polar(1.0, chi), 1.0);
  return d.asDiagonal() * rho * d.conjugate().asDiagonal();
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("concurrence of reference states") {
  CHECK(concurrence(diag_gg()) == 0.0);
  CHECK(concurrence(bell2_target().matrix) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(bell1_target(0.7).matrix) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(werner_target(1.0).matrix) == 0.0);
  CHECK(x_state_concurrence(werner_target(1.0).matrix) == 0.0);
  // Werner family: C = max(0, (3k - 1)/2) with k = 1 - 4 eta / 3.
  for (double eta : {0.0, 0.1, 0.3, 0.5, 0.7}) {
    const double k = 1 - 4 * eta / 3;
    CHECK(concurrence(werner_target(eta).matrix) ==
          doctest::Approx(std::max(0.0, (3 * k - 1) / 2)).epsilon(1e-10));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  TwoQubitDensity rho = diag_gg();
  rho(0, 1) = 0.1;
  CHECK_THROWS_AS(concurrence(rho), std::invalid_argument);
}

TEST_CASE("entanglement of formation") {
  CHECK(eof(0.0) == 0.0);
  CHECK(eof(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eof(0.5) == doctest::Approx(0.354578902665270).epsilon(1e-13));
  CHECK_THROWS_AS(eof(1.1), std::invalid_argument);
  CHECK_THROWS_AS(eof(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(eof(std::nan("")), std::invalid_argument);
  double previous = 0;
  for (int k = 1; k < 100; ++k) {
    const double e = eof(k / 100.0);
    CHECK(e > previous);
    previous = e;
  }
}

TEST_CASE("targets") {
  const TargetState b = bell1_target(0.0);
  for (int r : {0, 3})
    for (int c : {0, 3}) CHECK(b.matrix(r, c).real() == doctest::Approx(0.5));
  CHECK(b.matrix(0, 3).imag() == 0.0);
  CHECK(b.pure_state.has_value());

  const TargetState phased = bell1_target(kPi / 2);
  CHECK(std::arg(phased.matrix(3, 0)) == doctest::Approx(kPi / 2));

  const TargetState w = target(TargetKind::werner, 1.0);
  CHECK(w.matrix(0, 0).real() == doctest::Approx(1.0 / 3.0));
  CHECK(w.matrix(3, 3).real() == doctest::Approx(1.0 / 3.0));
  CHECK(w.matrix(1, 1).real() == doctest::Approx(1.0 / 6.0));
  CHECK(w.matrix(1, 2).real() == doctest::Approx(1.0 / 6.0));
  CHECK(w.matrix(0, 3) == std::complex<double>(0));

  const TargetState singlet = werner_target(werner_eta_from_k(1.0));
  CHECK(singlet.pure_state.has_value());
  const Eigen::Vector4cd psi = *singlet.pure_state;
  CHECK(max_abs_diff(singlet.matrix, TwoQubitDensity(psi * psi.adjoint())) < 1e-15);
  CHECK(singlet.matrix(1, 2).real() == doctest::Approx(-0.5));

  CHECK(werner_eta_from_k(-1.0 / 3.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(werner_target(1.5), std::invalid_argument);
  CHECK_THROWS_AS(werner_eta_from_k(1.2), std::invalid_argument);
  CHECK_THROWS_AS(bell1_target(std::nan("")), std::invalid_argument);
  CHECK(max_abs_diff(target(TargetKind::bell2).matrix, bell2_target().matrix) == 0);
}

TEST_CASE("fidelity") {
  const TwoQubitDensity mixed = werner_target(0.4).matrix;
  CHECK(fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fidelity(diag_gg(), bell1_target(0.0)) == doctest::Approx(0.5));
  CHECK(fidelity(diag_gg(), bell1_target(0.0).matrix) == doctest::Approx(0.5).epsilon(1e-10));
  const FieldState pair = superpose({{30, 1.0}, {32, 1.0}}, 64);
  CHECK(fidelity(analytic_density(pair, 8.673), bell1_target(kPi)) >= 0.999);
}

TEST_CASE("local phases do not change concurrence" * doctest::description("50 seeded instances")) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldState field = random_field_state(rng, 16, 12);
    const TwoQubitDensity rho = analytic_density(field, random_time(rng));
    const double c = concurrence(rho);
    CHECK(concurrence(local_phase(rho, angle(rng), angle(rng))) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("X-state closed form agrees with the eigen-solve" * doctest::description("50 seeded instances")) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const FieldState field = random_parity_field_state(rng, 30, 25, trial % 2 == 0);
    const TwoQubitDensity rho = analytic_density(field, random_time(rng));
    REQUIRE(is_x_type(rho, 1e-12));
    CHECK(std::abs(concurrence(rho) - x_state_concurrence(rho)) <= 1e-10);
  }
}

}  // TEST_SUITE
