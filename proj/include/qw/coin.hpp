#pragma once

#include <Eigen/Dense>

namespace qw {

/// Coin-family parameter gamma in (0, 2pi), excluding pi/2, pi, 3pi/2
/// (there the four-level coin degenerates: c or s vanishes). Values within
/// 1e-12 of an excluded point are rejected as well.
class CoinParams {
public:
  explicit CoinParams(double gamma);

  double gamma() const { return gamma_; }
  double c() const { return c_; }  // cos(gamma)
  double s() const { return s_; }  // sin(gamma)

private:
  double gamma_;
  double c_;
  double s_;
};

/// Two-level coin [[c, s], [s, -c]]. Real symmetric unitary; at
/// gamma = pi/4 this is the Hadamard gate.
Eigen::Matrix2cd make_coin_2d(const CoinParams& params);

/// Four-level coin with diagonal (-c^2, -s^2, -s^2, -c^2), anti-diagonal
/// (s^2, c^2, c^2, s^2) and |cs| elsewhere. At gamma = pi/4 this is the
/// Grover diffusion coin.
Eigen::Matrix4cd make_coin_grover(const CoinParams& params);

/// Max-abs entry of M^dagger * M - I.
double check_unitary(const Eigen::Ref<const Eigen::MatrixXcd>& m);

}  // namespace qw
