#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "tcqed/errors.hpp"
#include "tcqed/oracle.hpp"

using namespace tcqed;
using namespace tcqed::testing;

namespace {
Index at(QubitPair q, Index n, Index dim) { return index_of(q) * dim + n; }
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("Hamiltonian entries") {
  const Index dim = 6;
  const auto h = build_hamiltonian(dim).matrix;
  using enum QubitPair;
  // Sector {ee 0, eg 1, ge 1, gg 2}.
  CHECK(h(at(ee, 0, dim), at(eg, 1, dim)) == 1.0);
  CHECK(h(at(ee, 0, dim), at(ge, 1, dim)) == 1.0);
  CHECK(h(at(eg, 1, dim), at(gg, 2, dim)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h(at(ge, 1, dim), at(gg, 2, dim)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(h(at(eg, 1, dim), at(ge, 1, dim)) == 0.0);
  CHECK(h.row(at(gg, 0, dim)).isZero(0));
  CHECK(h == h.transpose());
  CHECK_THROWS_AS(build_hamiltonian(2), std::invalid_argument);
}

TEST_CASE("Hamiltonian conserves excitations") {
  const Index dim = 20;
  const Eigen::MatrixXd h = build_hamiltonian(dim).matrix;
  const Eigen::VectorXd n = excitation_diagonal(dim);
  const Eigen::MatrixXd commutator = h * n.asDiagonal() - n.asDiagonal() * h;
  CHECK(commutator.cwiseAbs().maxCoeff() <= 1e-12);
  for (Index r = 0; r < h.rows(); ++r)
    for (Index c = 0; c < h.cols(); ++c)
      if (h(r, c) != 0) CHECK(n(r) == n(c));
}

TEST_CASE("spectral exponential is unitary") {
  const OracleEvolver oracle(32);
  for (double gt : {0.0, 0.1, 3.0, 12.0}) {
    const auto u = oracle.unitary(gt);
    CHECK(max_abs_diff(u.adjoint() * u, Eigen::MatrixXcd::Identity(u.rows(), u.cols())) <= 1e-11);
  }
  std::mt19937_64 rng(2);
  const JointState psi = random_joint_state(rng, 32, 25);
  CHECK(max_abs_diff(oracle.evolve(psi, 0.0).branches(), psi.branches()) < 1e-13);
  CHECK(oracle.evolve(psi, 7.0).norm() == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("agrees with the closed-form propagator") {
  const JointState single = JointState::ground_qubits(number_state(1, 8));
  const double gt = kPi / (2 * std::sqrt(2.0));
  CHECK(max_abs_diff(evolve_oracle(single, gt).branches(), apply_propagator(single, gt).branches()) <=
        1e-10);

  std::mt19937_64 rng(6);
  const Index dim = 48;
  const OracleEvolver oracle(dim);
  for (int trial = 0; trial < 5; ++trial) {
    const FieldState field = random_field_state(rng, dim, dim - 8);
    const JointState psi = JointState::ground_qubits(field);
    for (double t : {0.1, 1.0, 5.0, 12.0})
      CHECK(max_abs_diff(oracle.evolve(psi, t).branches(), apply_propagator(psi, t).branches()) <=
            1e-10);
  }
}

TEST_CASE("path comparison reports") {
  const PathComparison one = compare_paths(number_state(1, 8), 2.2);
  CHECK(one.max_deviation() <= 1e-10);
  const PathComparison pair = compare_paths(superpose({{30, 1.0}, {32, 1.0}}, 64), 8.673);
  CHECK(pair.max_deviation() <= 1e-10);
  const FieldState even = coherent_state<double>(2.0, 62, Parity::even).padded(64);
  CHECK(compare_paths(even, 3.0).max_deviation() <= 1e-9);
  CHECK(pair.density_row >= 0);
  CHECK(pair.density_row < 4);
}

TEST_CASE("headroom and dimension checks") {
  const OracleEvolver oracle(6);
  CHECK_THROWS_AS(oracle.evolve(JointState::product(QubitPair::ee, number_state(4, 6)), 0.3),
                  HeadroomError);
  CHECK_THROWS_AS(oracle.evolve(JointState::ground_qubits(number_state(1, 7)), 0.3),
                  std::invalid_argument);
}

}  // TEST_SUITE
