#include "qw/walk.hpp"

#include <stdexcept>

namespace qw {

namespace {

void require_headroom(const WalkerState& state) {
  if (state.t + 1 > state.half_width) {
    throw std::runtime_error("walk step: window overflow (t + 1 exceeds half_width)");
  }
}

// In-place row shift by dx in {-1, +1} over the column span [col_lo, col_lo+ncols).
// [row_lo, row_hi] is the occupied row range before the shift; the vacated
// boundary row is zeroed so no stale amplitude survives.
void shift_rows(Eigen::MatrixXcd& m, int dx, int row_lo, int row_hi, int col_lo, int ncols) {
  if (dx == -1) {
    for (int r = row_lo - 1; r <= row_hi - 1; ++r) {
      m.row(r).segment(col_lo, ncols) = m.row(r + 1).segment(col_lo, ncols);
    }
    m.row(row_hi).segment(col_lo, ncols).setZero();
  } else {
    for (int r = row_hi + 1; r >= row_lo + 1; --r) {
      m.row(r).segment(col_lo, ncols) = m.row(r - 1).segment(col_lo, ncols);
    }
    m.row(row_lo).segment(col_lo, ncols).setZero();
  }
}

void shift_cols(Eigen::MatrixXcd& m, int dy, int col_lo, int col_hi, int row_lo, int nrows) {
  if (dy == -1) {
    for (int c = col_lo - 1; c <= col_hi - 1; ++c) {
      m.col(c).segment(row_lo, nrows) = m.col(c + 1).segment(row_lo, nrows);
    }
    m.col(col_hi).segment(row_lo, nrows).setZero();
  } else {
    for (int c = col_hi + 1; c >= col_lo + 1; --c) {
      m.col(c).segment(row_lo, nrows) = m.col(c - 1).segment(row_lo, nrows);
    }
    m.col(col_lo).segment(row_lo, nrows).setZero();
  }
}

void coin_pass_2(Eigen::MatrixXcd& m0, Eigen::MatrixXcd& m1, const Eigen::Matrix2cd& u,
                 int r0, int c0, int nr, int nc) {
  const Eigen::MatrixXcd top =
      u(0, 0) * m0.block(r0, c0, nr, nc) + u(0, 1) * m1.block(r0, c0, nr, nc);
  m1.block(r0, c0, nr, nc) =
      u(1, 0) * m0.block(r0, c0, nr, nc) + u(1, 1) * m1.block(r0, c0, nr, nc);
  m0.block(r0, c0, nr, nc) = top;
}

void coin_pass_4(std::vector<Eigen::MatrixXcd>& layers, const Eigen::Matrix4cd& u,
                 int r0, int c0, int nr, int nc) {
  auto blk = [&](int c) { return layers[static_cast<size_t>(c)].block(r0, c0, nr, nc); };
  Eigen::MatrixXcd rows[3];
  for (int i = 0; i < 3; ++i) {
    rows[i] = u(i, 0) * blk(0) + u(i, 1) * blk(1) + u(i, 2) * blk(2) + u(i, 3) * blk(3);
  }
  blk(3) = u(3, 0) * blk(0) + u(3, 1) * blk(1) + u(3, 2) * blk(2) + u(3, 3) * blk(3);
  for (int i = 0; i < 3; ++i) {
    blk(i) = rows[i];
  }
}

// One alternate step applied in place; support radius grows from p to p + 1.
void alternate_step_inplace(std::vector<Eigen::MatrixXcd>& layers,
                            const Eigen::Matrix2cd& coin, int p, int half_width) {
  const int lo = half_width - p;
  const int hi = half_width + p;
  const int n = 2 * p + 1;
  coin_pass_2(layers[0], layers[1], coin, lo, lo, n, n);
  shift_rows(layers[0], -1, lo, hi, lo, n);
  shift_rows(layers[1], +1, lo, hi, lo, n);
  coin_pass_2(layers[0], layers[1], coin, lo - 1, lo, n + 2, n);
  shift_cols(layers[0], -1, lo, hi, lo - 1, n + 2);
  shift_cols(layers[1], +1, lo, hi, lo - 1, n + 2);
}

void grover_step_inplace(std::vector<Eigen::MatrixXcd>& layers,
                         const Eigen::Matrix4cd& coin, int p, int half_width) {
  static constexpr int kDx[4] = {-1, -1, +1, +1};
  static constexpr int kDy[4] = {-1, +1, -1, +1};
  const int lo = half_width - p;
  const int hi = half_width + p;
  const int n = 2 * p + 1;
  coin_pass_4(layers, coin, lo, lo, n, n);
  for (int c = 0; c < 4; ++c) {
    auto& m = layers[static_cast<size_t>(c)];
    shift_rows(m, kDx[c], lo, hi, lo, n);
    shift_cols(m, kDy[c], lo, hi, lo + kDx[c], n);
  }
}

double pow_i(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

WalkerState step_alternate(const WalkerState& state, const Eigen::Matrix2cd& coin) {
  if (state.coin_dim() != 2) {
    throw std::invalid_argument("step_alternate: state must carry a two-level coin");
  }
  require_headroom(state);
  WalkerState out = state;
  alternate_step_inplace(out.layers, coin, state.t, state.half_width);
  out.t = state.t + 1;
  return out;
}

WalkerState step_grover(const WalkerState& state, const Eigen::Matrix4cd& coin) {
  if (state.coin_dim() != 4) {
    throw std::invalid_argument("step_grover: state must carry a four-level coin");
  }
  require_headroom(state);
  WalkerState out = state;
  grover_step_inplace(out.layers, coin, state.t, state.half_width);
  out.t = state.t + 1;
  return out;
}

WalkerState evolve(const WalkerState& state, const WalkKind& kind, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("evolve: steps must be >= 0");
  }
  if (state.t + steps > state.half_width) {
    throw std::runtime_error("evolve: window overflow (t + steps exceeds half_width)");
  }
  WalkerState out = state;
  if (kind.family == WalkKind::Family::alternate) {
    if (out.coin_dim() != 2) {
      throw std::invalid_argument("evolve: alternate walk needs a two-level coin state");
    }
    const Eigen::Matrix2cd coin = make_coin_2d(kind.params);
    for (int i = 0; i < steps; ++i) {
      alternate_step_inplace(out.layers, coin, out.t, out.half_width);
      ++out.t;
    }
  } else {
    if (out.coin_dim() != 4) {
      throw std::invalid_argument("evolve: grover walk needs a four-level coin state");
    }
    const Eigen::Matrix4cd coin = make_coin_grover(kind.params);
    for (int i = 0; i < steps; ++i) {
      grover_step_inplace(out.layers, coin, out.t, out.half_width);
      ++out.t;
    }
  }
  return out;
}

WalkerState recurrence_oracle_alternate(const WalkerState& state,
                                        const Eigen::Matrix2cd& u) {
  if (state.coin_dim() != 2) {
    throw std::invalid_argument("recurrence_oracle_alternate: two-level coin required");
  }
  require_headroom(state);
  const int L = state.half_width;
  const int p = state.t + 1;
  WalkerState out = state;
  out.t = state.t + 1;
  for (auto& layer : out.layers) layer.setZero();
  for (int x = -p; x <= p; ++x) {
    for (int y = -p; y <= p; ++y) {
      // coin twice, shift between and after, written as one fused recurrence
      const Complex b0 = u(0, 0) * (u(0, 0) * state.amp_or_zero(x + 1, y + 1, 0) +
                                    u(0, 1) * state.amp_or_zero(x + 1, y + 1, 1)) +
                         u(0, 1) * (u(1, 0) * state.amp_or_zero(x - 1, y + 1, 0) +
                                    u(1, 1) * state.amp_or_zero(x - 1, y + 1, 1));
      const Complex b1 = u(1, 0) * (u(0, 0) * state.amp_or_zero(x + 1, y - 1, 0) +
                                    u(0, 1) * state.amp_or_zero(x + 1, y - 1, 1)) +
                         u(1, 1) * (u(1, 0) * state.amp_or_zero(x - 1, y - 1, 0) +
                                    u(1, 1) * state.amp_or_zero(x - 1, y - 1, 1));
      if (b0 != Complex{0.0, 0.0}) out.layers[0](x + L, y + L) = b0;
      if (b1 != Complex{0.0, 0.0}) out.layers[1](x + L, y + L) = b1;
    }
  }
  return out;
}

WalkerState recurrence_oracle_grover(const WalkerState& state,
                                     const Eigen::Matrix4cd& g) {
  if (state.coin_dim() != 4) {
    throw std::invalid_argument("recurrence_oracle_grover: four-level coin required");
  }
  require_headroom(state);
  static constexpr int kDx[4] = {-1, -1, +1, +1};
  static constexpr int kDy[4] = {-1, +1, -1, +1};
  const int L = state.half_width;
  const int p = state.t + 1;
  WalkerState out = state;
  out.t = state.t + 1;
  for (auto& layer : out.layers) layer.setZero();
  for (int x = -p; x <= p; ++x) {
    for (int y = -p; y <= p; ++y) {
      for (int c = 0; c < 4; ++c) {
        const int sx = x - kDx[c];
        const int sy = y - kDy[c];
        Complex acc{0.0, 0.0};
        for (int j = 0; j < 4; ++j) {
          acc += g(c, j) * state.amp_or_zero(sx, sy, j);
        }
        if (acc != Complex{0.0, 0.0}) out.layers[static_cast<size_t>(c)](x + L, y + L) = acc;
      }
    }
  }
  return out;
}

ProbabilityGrid probability_grid(const WalkerState& state) {
  ProbabilityGrid grid;
  grid.half_width = state.half_width;
  grid.values = state.layers[0].cwiseAbs2();
  for (size_t c = 1; c < state.layers.size(); ++c) {
    grid.values += state.layers[c].cwiseAbs2();
  }
  return grid;
}

double moments(const ProbabilityGrid& grid, int r1, int r2) {
  if (r1 < 0 || r2 < 0) {
    throw std::invalid_argument("moments: orders must be >= 0");
  }
  const int L = grid.half_width;
  double total = 0.0;
  for (int x = -L; x <= L; ++x) {
    const double xw = pow_i(static_cast<double>(x), r1);
    for (int y = -L; y <= L; ++y) {
      total += xw * pow_i(static_cast<double>(y), r2) * grid.values(x + L, y + L);
    }
  }
  return total;
}

}  // namespace qw
