#pragma once

#include <Eigen/Dense>

#include "qw/coin.hpp"
#include "qw/state.hpp"

namespace qw {

/// Which walk family to evolve, with its coin parameter.
struct WalkKind {
  enum class Family { alternate, grover };
  Family family;
  CoinParams params;

  static WalkKind alternate(const CoinParams& p) { return {Family::alternate, p}; }
  static WalkKind grover(const CoinParams& p) { return {Family::grover, p}; }
};

/// One step of the two-level walk: coin, shift in x (coin 0 left / 1 right),
/// coin, shift in y (coin 0 down / 1 up). Requires t + 1 <= half_width.
WalkerState step_alternate(const WalkerState& state, const Eigen::Matrix2cd& coin);

/// One step of the four-level walk: coin, then the diagonal shift
/// c' = 0,1,2,3 -> (x-1,y-1), (x-1,y+1), (x+1,y-1), (x+1,y+1).
WalkerState step_grover(const WalkerState& state, const Eigen::Matrix4cd& coin);

/// `steps` applications of the single-step map for `kind`.
WalkerState evolve(const WalkerState& state, const WalkKind& kind, int steps);

/// Reference single step via the site-wise amplitude recurrences (direct
/// index arithmetic; no operator passes). Kept as an independent check of
/// step_alternate / step_grover.
WalkerState recurrence_oracle_alternate(const WalkerState& state,
                                        const Eigen::Matrix2cd& coin);
WalkerState recurrence_oracle_grover(const WalkerState& state,
                                     const Eigen::Matrix4cd& coin);

/// P(x,y) over the state's window; sums to 1, exact zeros off the
/// parity sublattice.
struct ProbabilityGrid {
  int half_width = 0;
  Eigen::MatrixXd values;  // (2L+1)x(2L+1), row x+L, col y+L

  int window_size() const { return 2 * half_width + 1; }
  double at(int x, int y) const { return values(x + half_width, y + half_width); }
};

ProbabilityGrid probability_grid(const WalkerState& state);

/// Sum_{x,y} x^r1 y^r2 P(x,y).
double moments(const ProbabilityGrid& grid, int r1, int r2);

}  // namespace qw
