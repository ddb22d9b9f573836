#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcqed/entanglement.hpp"
#include "tcqed/oracle.hpp"
#include "tcqed/reduced.hpp"

using namespace tcqed;
using namespace tcqed::testing;

TEST_SUITE("reduced") {

TEST_CASE("zero time leaves the qubits in gg") {
  std::mt19937_64 rng(1);
  const FieldState field = random_field_state(rng, 20, 15);
  const XStateElements e = analytic_elements(field, 0.0);
  CHECK(e.v_minus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.v_plus == 0.0);
  CHECK(e.w == 0.0);
  CHECK(std::abs(e.mu) == 0.0);
  CHECK(std::abs(e.h_plus) == 0.0);
  CHECK(std::abs(e.h_minus) == 0.0);
}

TEST_CASE("single photon") {
  const FieldState one = number_state(1, 8);
  for (double gt : {0.2, 1.1, 2.9, 7.5}) {
    const XStateElements e = analytic_elements(one, gt);
    const double s = std::sin(std::sqrt(2.0) * gt);
    CHECK(e.w == doctest::Approx(0.5 * s * s).epsilon(1e-14));
    CHECK(e.p == e.w);
    CHECK(e.v_plus == 0.0);
    CHECK(std::abs(e.mu) == 0.0);
    CHECK(std::abs(e.h_plus) == 0.0);
    CHECK(std::abs(e.h_minus) == 0.0);
  }
}

TEST_CASE("vacuum plus ten photons has one frequency") {
  const double c10 = 0.726;
  const FieldState field = superpose({{0, std::sqrt(1 - c10)}, {10, std::sqrt(c10)}}, 16);
  for (double gt : {0.314, 0.9, 2.0}) {
    const XStateElements e = analytic_elements(field, gt);
    const double cs = std::cos(std::sqrt(38.0) * gt), sn = std::sin(std::sqrt(38.0) * gt);
    CHECK(e.v_plus == doctest::Approx(90.0 / 361.0 * c10 * (cs - 1) * (cs - 1)).epsilon(1e-13));
    CHECK(e.w == doctest::Approx(5.0 / 19.0 * c10 * sn * sn).epsilon(1e-13));
    CHECK(e.v_plus + 2 * e.w + e.v_minus == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("assembly follows the X layout") {
  XStateElements bell;
  bell.v_plus = bell.v_minus = 0.5;
  bell.mu = -0.5;
  const TwoQubitDensity b = assemble_density(bell);
  CHECK(b(0, 0) == std::complex<double>(0.5));
  CHECK(b(3, 3) == std::complex<double>(0.5));
  CHECK(b(0, 3) == std::complex<double>(-0.5));
  CHECK(b(3, 0) == std::complex<double>(-0.5));
  CHECK(b.block(1, 1, 2, 2).isZero(0));

  XStateElements pure;
  pure.w = pure.p = 0.5;
  const TwoQubitDensity p = assemble_density(pure);
  CHECK(p(1, 1) == std::complex<double>(0.5));
  CHECK(p(1, 2) == std::complex<double>(0.5));
  CHECK(p(2, 1) == std::complex<double>(0.5));
  CHECK(p(2, 2) == std::complex<double>(0.5));

  XStateElements mixed;
  mixed.v_plus = mixed.v_minus = 1.0 / 3.0;
  mixed.w = mixed.p = 1.0 / 6.0;
  const TwoQubitDensity w = assemble_density(mixed);
  CHECK(w(0, 0).real() == doctest::Approx(1.0 / 3.0));
  CHECK(w(1, 2).real() == doctest::Approx(1.0 / 6.0));
  CHECK(w(0, 3) == std::complex<double>(0));

  SUBCASE("complex entries sit on the documented triangle") {
    XStateElements e;
    e.v_plus = 0.2;
    e.v_minus = 0.4;
    e.w = e.p = 0.2;
    e.h_plus = {0.01, 0.02};
    e.h_minus = {0.03, -0.04};
    e.mu = {0.05, 0.06};
    const TwoQubitDensity r = assemble_density(e);
    CHECK(r(1, 0) == e.h_plus);
    CHECK(r(0, 2) == std::conj(e.h_plus));
    CHECK(r(3, 1) == e.h_minus);
    CHECK(r(2, 3) == std::conj(e.h_minus));
    CHECK(r(3, 0) == e.mu);
    CHECK(r(0, 3) == std::conj(e.mu));
    const XStateElements back = elements_of(r);
    CHECK(back.h_plus == e.h_plus);
    CHECK(back.h_minus == e.h_minus);
    CHECK(back.mu == e.mu);
    CHECK(back.w == e.w);
  }
  SUBCASE("invalid element sets") {
    XStateElements bad = mixed;
    bad.p = 0.1;
    CHECK_THROWS_AS(assemble_density(bad), std::invalid_argument);
    bad = mixed;
    bad.v_plus = 0.5;
    CHECK_THROWS_AS(assemble_density(bad), std::invalid_argument);
    bad = XStateElements{};
    bad.v_plus = 1.5;
    bad.v_minus = -0.5;
    CHECK_THROWS_AS(assemble_density(bad), std::invalid_argument);
  }
}

TEST_CASE("partial trace") {
  std::mt19937_64 rng(4);
  const FieldState field = random_field_state(rng, 10, 7);
  const TwoQubitDensity start = partial_trace(JointState::ground_qubits(field));
  TwoQubitDensity gg = TwoQubitDensity::Zero();
  gg(3, 3) = 1;
  CHECK(max_abs_diff(start, gg) < 1e-15);

  const TwoQubitDensity bell2 = propagated_density(number_state(1, 8), kPi / (2 * std::sqrt(2.0)));
  XStateElements pure;
  pure.w = pure.p = 0.5;
  CHECK(max_abs_diff(bell2, assemble_density(pure)) < 1e-15);

  SUBCASE("other initial qubit states give valid densities") {
    const JointState eg = JointState::product(QubitPair::eg, number_state(1, 8));
    const TwoQubitDensity rho = partial_trace(apply_propagator(eg, 0.8));
    CHECK(is_valid_density(rho));
    CHECK(std::abs(rho(1, 1) - rho(2, 2)) > 1e-3);  // no eg/ge symmetry from |eg>
  }
}

TEST_CASE("closed-form elements agree with propagation and with the oracle") {
  std::mt19937_64 rng(9);
  const Index dim = 40;
  const OracleEvolver oracle(dim);
  for (int trial = 0; trial < 10; ++trial) {
    const FieldState field = random_field_state(rng, dim, 30);
    const double gt = random_time(rng);
    const TwoQubitDensity analytic = analytic_density(field, gt);
    CHECK(max_abs_diff(analytic, propagated_density(field, gt)) < 1e-10);
    const TwoQubitDensity brute = partial_trace(oracle.evolve(JointState::ground_qubits(field), gt));
    // Both triangles separately, so a conjugation slip cannot cancel out.
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(std::abs(analytic(r, c) - brute(r, c)) < 1e-10);
  }
}

TEST_CASE("X-type classification") {
  XStateElements mixed;
  mixed.v_plus = mixed.v_minus = 1.0 / 3.0;
  mixed.w = mixed.p = 1.0 / 6.0;
  CHECK(is_x_type(assemble_density(mixed), 0.0));

  const FieldState even = coherent_state<double>(2.0, 40, Parity::even);
  for (double gt : {0.3, 1.7, 4.4, 9.0}) CHECK(is_x_type(analytic_density(even, gt), 1e-12));

  const FieldState neighbors = superpose({{3, 1.0}, {4, 1.0}}, 8);
  const TwoQubitDensity rho = analytic_density(neighbors, 1.3);
  CHECK_FALSE(is_x_type(rho, 1e-3));
  CHECK(std::abs(elements_of(rho).h_minus) > 1e-2);
}

TEST_CASE("density checks") {
  TwoQubitDensity rho = TwoQubitDensity::Identity() / 4.0;
  CHECK(is_valid_density(rho));
  rho(0, 1) = 0.3;
  CHECK_FALSE(is_valid_density(rho));
  rho = TwoQubitDensity::Zero();
  rho(0, 0) = 1.2;
  rho(1, 1) = -0.2;
  const auto check = check_density(rho);
  CHECK(check.min_eigenvalue == doctest::Approx(-0.2));
  CHECK(check.trace_error < 1e-15);
  CHECK_FALSE(is_valid_density(rho));
}

TEST_CASE("long double instantiation matches double") {
  using LFieldState = BasicFieldState<long double>;
  const FieldState field = superpose({{3, 1.0}, {4, 0.5}, {6, -0.8}}, 10);
  const LFieldState lfield = LFieldState::from_amplitudes(field.amplitudes().cast<std::complex<long double>>());
  const long double gt = 1.3L;
  const auto wide = assemble_density(analytic_elements(lfield, gt));
  const auto traced = partial_trace(apply_propagator(BasicJointState<long double>::ground_qubits(lfield), gt));
  CHECK(static_cast<double>((wide - traced).cwiseAbs().maxCoeff()) < 1e-15);
  const TwoQubitDensity narrow = assemble_density(analytic_elements(field, 1.3));
  CHECK(max_abs_diff(TwoQubitDensity(wide.cast<std::complex<double>>()), narrow) < 1e-14);
  CHECK(std::abs(static_cast<double>(concurrence(wide)) - concurrence(narrow)) < 1e-12);
}

}  // TEST_SUITE
