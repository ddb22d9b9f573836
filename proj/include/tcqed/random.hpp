#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include "tcqed/fock.hpp"

namespace tcqed {

/// Gaussian complex amplitudes on n = 0..max_support, zero above, then
/// normalized. Deterministic for a given engine state.
template <typename Engine>
FieldState random_field_state(Engine& rng, Index dim, Index max_support) {
  if (max_support < 0 || max_support >= dim)
    throw std::invalid_argument("random_field_state: support outside the truncation");
  std::normal_distribution<double> normal(0.0, 1.0);
  FieldState::Vector amplitudes = FieldState::Vector::Zero(dim);
  for (Index n = 0; n <= max_support; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    amplitudes(n) = {re, im};
  }
  return FieldState::from_amplitudes(std::move(amplitudes), true);
}

/// Same, but with c_n c_{n+1} = 0: only one parity class is populated.
template <typename Engine>
FieldState random_parity_field_state(Engine& rng, Index dim, Index max_support, bool even) {
  FieldState::Vector amplitudes = random_field_state(rng, dim, max_support).amplitudes();
  for (Index n = even ? 1 : 0; n < dim; n += 2) amplitudes(n) = 0;
  if (amplitudes.norm() == 0) amplitudes(even ? 0 : 1) = 1;
  return FieldState::from_amplitudes(std::move(amplitudes), true);
}

}  // namespace tcqed
