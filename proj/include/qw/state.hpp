#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qw/coin.hpp"

namespace qw {

using Complex = std::complex<double>;

/// Two-level coin state (nu0, nu1), unit norm.
struct CoinState2 {
  Complex nu0;
  Complex nu1;

  Eigen::Vector2cd vec() const { return {nu0, nu1}; }
};

/// Bloch construction: nu0 = cos(theta/2), nu1 = e^{i phi} sin(theta/2).
CoinState2 coin_state_from_bloch(double theta, double phi);

/// (|0> + i|1>)/sqrt(2): symmetric about both lattice axes. kappa = 1 gives
/// the orthogonal state (|0> - i|1>)/sqrt(2).
CoinState2 coin_state_symmetric(int kappa = 0);

/// Four-level coin state (q0, q1, q2, q3), unit norm.
struct CoinState4 {
  Complex q0;
  Complex q1;
  Complex q2;
  Complex q3;

  Eigen::Vector4cd vec() const { return {q0, q1, q2, q3}; }
};

/// The four-level coin state paired with the alternate walk:
/// q0 = q3 = (-1)^xi |cs|/(sqrt(2) s), q1 = q2 = -(-1)^xi s/sqrt(2).
/// At gamma = pi/4 this is (1/2, -1/2, -1/2, 1/2), the unique initial coin
/// for which the four-level walk does not localize at the origin.
CoinState4 grover_equivalent_init(const CoinParams& params, int xi);

/// Amplitude field over the window [-L, L]^2 x coin. Layer c holds
/// amp(x, y, c) at (row x+L, col y+L). Invariants: unit norm; exact zeros
/// off the parity sublattice x == y == t (mod 2) and outside |x|,|y| <= t.
///
/// Treat instances as immutable values: the stepping operations take a
/// state and return a new one.
struct WalkerState {
  int t = 0;
  int half_width = 0;
  std::vector<Eigen::MatrixXcd> layers;  // one (2L+1)x(2L+1) matrix per coin index

  int coin_dim() const { return static_cast<int>(layers.size()); }
  int window_size() const { return 2 * half_width + 1; }

  bool in_window(int x, int y) const {
    return x >= -half_width && x <= half_width && y >= -half_width && y <= half_width;
  }

  Complex amp(int x, int y, int c) const {
    return layers[static_cast<size_t>(c)](x + half_width, y + half_width);
  }

  Complex amp_or_zero(int x, int y, int c) const {
    return in_window(x, y) ? amp(x, y, c) : Complex{0.0, 0.0};
  }

  double norm_sq() const;
};

/// Walker at the origin with the given coin state. Throws if the coin state
/// is not normalized to 1e-12 or the window is degenerate.
WalkerState new_state(const CoinState2& coin, int half_width);
WalkerState new_state(const CoinState4& coin, int half_width);

}  // namespace qw
