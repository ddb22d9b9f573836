#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcqed/entanglement.hpp"
#include "tcqed/oracle.hpp"

using namespace tcqed;
using namespace tcqed::testing;

namespace {

constexpr int kInstances = 60;

TwoQubitDensity random_density(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix4cd a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a(r, c) = {normal(rng), normal(rng)};
  TwoQubitDensity rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("norm is preserved") {
  std::mt19937_64 rng(101);
  for (int k = 0; k < kInstances; ++k) {
    const Index dim = std::uniform_int_distribution<Index>(4, 60)(rng);
    const JointState psi = random_joint_state(rng, dim, dim - 2);
    const JointState out = apply_propagator(psi, random_time(rng));
    CHECK(std::abs(out.norm() - psi.norm()) <= 1e-12);
  }
}

TEST_CASE("excitation number is conserved") {
  std::mt19937_64 rng(102);
  for (int k = 0; k < kInstances; ++k) {
    const Index dim = std::uniform_int_distribution<Index>(4, 60)(rng);
    const JointState psi = random_joint_state(rng, dim, dim - 2);
    const double before = psi.mean_excitation();
    CHECK(std::abs(apply_propagator(psi, random_time(rng)).mean_excitation() - before) <= 1e-10);
  }
}

TEST_CASE("reduced states are physical with w = p") {
  std::mt19937_64 rng(103);
  for (int k = 0; k < kInstances; ++k) {
    const Index dim = std::uniform_int_distribution<Index>(4, 64)(rng);
    const FieldState field = random_field_state(rng, dim, dim - 3);
    const double gt = random_time(rng);
    const XStateElements e = analytic_elements(field, gt);
    CHECK(e.w == e.p);
    CHECK(std::abs(e.v_plus + 2 * e.w + e.v_minus - 1) <= 1e-10);
    const TwoQubitDensity rho = assemble_density(e);
    const auto check = check_density(rho);
    CHECK(check.hermiticity_error <= 1e-10);
    CHECK(check.trace_error <= 1e-10);
    CHECK(check.min_eigenvalue >= -1e-9);

    const TwoQubitDensity traced = propagated_density(field, gt);
    CHECK(std::abs(traced(1, 1) - traced(2, 2)) <= 1e-12);
    CHECK(std::abs(traced(0, 1) - traced(0, 2)) <= 1e-12);
    CHECK(is_valid_density(traced));
  }
}

TEST_CASE("fields without neighbouring occupation give X states") {
  std::mt19937_64 rng(104);
  for (int k = 0; k < kInstances; ++k) {
    const Index dim = std::uniform_int_distribution<Index>(6, 64)(rng);
    const FieldState field = random_parity_field_state(rng, dim, dim - 3, k % 2 == 0);
    REQUIRE(neighbor_product_zero(field, 0.0));
    CHECK(is_x_type(analytic_density(field, random_time(rng)), 1e-12));
  }
}

TEST_CASE("concurrence stays in [0, 1]") {
  std::mt19937_64 rng(105);
  for (int k = 0; k < kInstances; ++k) {
    const FieldState field = random_field_state(rng, 30, 27);
    const double c = concurrence(analytic_density(field, random_time(rng)));
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    const double generic = concurrence(random_density(rng));
    CHECK(generic >= 0.0);
    CHECK(generic <= 1.0);
  }
}

}  // TEST_SUITE
