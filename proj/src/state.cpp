#include "qw/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qw {

namespace {

constexpr double kNormTol = 1e-12;

WalkerState make_origin_state(int half_width, int coin_dim) {
  if (half_width < 0) {
    throw std::invalid_argument("new_state: half_width must be >= 0");
  }
  WalkerState state;
  state.t = 0;
  state.half_width = half_width;
  const int n = 2 * half_width + 1;
  state.layers.assign(static_cast<size_t>(coin_dim), Eigen::MatrixXcd::Zero(n, n));
  return state;
}

}  // namespace

CoinState2 coin_state_from_bloch(double theta, double phi) {
  const Complex phase = std::exp(Complex{0.0, phi});
  return {std::cos(theta / 2.0), phase * std::sin(theta / 2.0)};
}

CoinState2 coin_state_symmetric(int kappa) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double sign = (kappa % 2 == 0) ? 1.0 : -1.0;
  return {Complex{inv_sqrt2, 0.0}, Complex{0.0, sign * inv_sqrt2}};
}

CoinState4 grover_equivalent_init(const CoinParams& params, int xi) {
  const double sign = (xi % 2 == 0) ? 1.0 : -1.0;
  const double sqrt2 = std::sqrt(2.0);
  const double outer = sign * std::abs(params.c() * params.s()) / (sqrt2 * params.s());
  const double inner = -sign * params.s() / sqrt2;
  return {outer, inner, inner, outer};
}

double WalkerState::norm_sq() const {
  double total = 0.0;
  for (const auto& layer : layers) {
    total += layer.squaredNorm();
  }
  return total;
}

WalkerState new_state(const CoinState2& coin, int half_width) {
  const double norm = std::norm(coin.nu0) + std::norm(coin.nu1);
  if (std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument("new_state: coin state is not normalized");
  }
  WalkerState state = make_origin_state(half_width, 2);
  state.layers[0](half_width, half_width) = coin.nu0;
  state.layers[1](half_width, half_width) = coin.nu1;
  return state;
}

WalkerState new_state(const CoinState4& coin, int half_width) {
  const double norm =
      std::norm(coin.q0) + std::norm(coin.q1) + std::norm(coin.q2) + std::norm(coin.q3);
  if (std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument("new_state: coin state is not normalized");
  }
  WalkerState state = make_origin_state(half_width, 4);
  state.layers[0](half_width, half_width) = coin.q0;
  state.layers[1](half_width, half_width) = coin.q1;
  state.layers[2](half_width, half_width) = coin.q2;
  state.layers[3](half_width, half_width) = coin.q3;
  return state;
}

}  // namespace qw
