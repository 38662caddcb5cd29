#include "qw/coin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qw {

namespace {

constexpr double kForbiddenTol = 1e-12;

}  // namespace

CoinParams::CoinParams(double gamma) : gamma_(gamma) {
  constexpr double pi = std::numbers::pi;
  if (!(gamma > 0.0 && gamma < 2.0 * pi)) {
    throw std::invalid_argument("CoinParams: gamma must lie in (0, 2pi), got " +
                                std::to_string(gamma));
  }
  for (double bad : {pi / 2.0, pi, 3.0 * pi / 2.0}) {
    if (std::abs(gamma - bad) <= kForbiddenTol) {
      throw std::invalid_argument("CoinParams: gamma = " + std::to_string(gamma) +
                                  " is excluded (cos or sin vanishes)");
    }
  }
  c_ = std::cos(gamma);
  s_ = std::sin(gamma);
}

Eigen::Matrix2cd make_coin_2d(const CoinParams& params) {
  const double c = params.c();
  const double s = params.s();
  Eigen::Matrix2cd u;
  u << c, s,
       s, -c;
  return u;
}

Eigen::Matrix4cd make_coin_grover(const CoinParams& params) {
  const double c2 = params.c() * params.c();
  const double s2 = params.s() * params.s();
  const double cs = std::abs(params.c() * params.s());
  Eigen::Matrix4cd a;
  a << -c2,  cs,  cs,  s2,
        cs, -s2,  c2,  cs,
        cs,  c2, -s2,  cs,
        s2,  cs,  cs, -c2;
  return a;
}

double check_unitary(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("check_unitary: matrix must be square");
  }
  const Eigen::MatrixXcd residual =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace qw
