#pragma once

#include <complex>
#include <numbers>
#include <random>

#include "qw/state.hpp"

namespace qw::testing {

inline constexpr double kExactTol = 1e-12;
inline constexpr double kOracleTol = 1e-13;
inline constexpr double kEigenTol = 1e-9;

/// Random normalized amplitude field supported on the parity sublattice of
/// step count t, so all WalkerState invariants hold by construction.
inline WalkerState random_walker_state(std::mt19937& rng, int half_width, int t,
                                       int coin_dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  WalkerState state;
  state.t = t;
  state.half_width = half_width;
  const int n = 2 * half_width + 1;
  state.layers.assign(static_cast<size_t>(coin_dim), Eigen::MatrixXcd::Zero(n, n));
  for (int x = -t; x <= t; x += 2) {
    for (int y = -t; y <= t; y += 2) {
      for (int c = 0; c < coin_dim; ++c) {
        state.layers[static_cast<size_t>(c)](x + half_width, y + half_width) =
            Complex{gauss(rng), gauss(rng)};
      }
    }
  }
  const double norm = std::sqrt(state.norm_sq());
  for (auto& layer : state.layers) layer /= norm;
  return state;
}

inline double max_amp_diff(const WalkerState& a, const WalkerState& b) {
  double worst = 0.0;
  for (size_t c = 0; c < a.layers.size(); ++c) {
    worst = std::max(worst, (a.layers[c] - b.layers[c]).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// Valid coin angle away from the excluded set, for randomized sweeps.
inline double random_valid_gamma(std::mt19937& rng) {
  std::uniform_real_distribution<double> uniform(0.05, 2.0 * std::numbers::pi - 0.05);
  while (true) {
    const double gamma = uniform(rng);
    bool ok = true;
    for (double bad : {std::numbers::pi / 2.0, std::numbers::pi,
                       3.0 * std::numbers::pi / 2.0}) {
      if (std::abs(gamma - bad) < 0.05) ok = false;
    }
    if (ok) return gamma;
  }
}

}  // namespace qw::testing
