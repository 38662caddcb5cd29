#include "qw/entanglement.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qw/walk.hpp"

namespace qw {

namespace {

// Eigenvalues of rho^Tx in (-1e-10, 0) are eigensolver noise, not witnesses.
constexpr double kNegativeEigTol = 1e-10;

}  // namespace

ReducedDensity reduced_density(const WalkerState& state) {
  ReducedDensity rho;
  const int t = state.t;
  for (int x = -t; x <= t; x += 2) {
    rho.axis_sites.push_back(x);
  }
  const int n = rho.axis_dim();
  const int dim = n * n;
  Eigen::VectorXcd component(dim);
  rho.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  for (int c = 0; c < state.coin_dim(); ++c) {
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        component(ix * n + iy) = state.amp(rho.axis_sites[ix], rho.axis_sites[iy], c);
      }
    }
    rho.matrix.noalias() += component * component.adjoint();
  }
  return rho;
}

Eigen::MatrixXcd partial_transpose_x(const ReducedDensity& rho) {
  const int n = rho.axis_dim();
  Eigen::MatrixXcd out(rho.matrix.rows(), rho.matrix.cols());
  for (int ix = 0; ix < n; ++ix) {
    for (int jx = 0; jx < n; ++jx) {
      out.block(ix * n, jx * n, n, n) = rho.matrix.block(jx * n, ix * n, n, n);
    }
  }
  return out;
}

std::string to_string(NegativityConvention convention) {
  return convention == NegativityConvention::support_dim ? "support_dim" : "window_dim";
}

NegativityResult negativity(const WalkerState& state) {
  const ReducedDensity rho = reduced_density(state);
  const Eigen::MatrixXcd transposed = partial_transpose_x(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(transposed,
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("negativity: eigensolver failed to converge");
  }
  double negative_sum = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -kNegativeEigTol) {
      negative_sum -= lambda;
    }
  }
  NegativityResult result;
  result.t = state.t;
  result.trace_norm_minus_one = std::max(0.0, 2.0 * negative_sum);
  if (state.t > 0) {
    result.normalized_support = result.trace_norm_minus_one / state.t;
    result.normalized_window = result.trace_norm_minus_one / (2.0 * state.t);
  }
  return result;
}

NegativityResult grover_negativity(const WalkerState& state) {
  if (state.coin_dim() != 4) {
    throw std::invalid_argument("grover_negativity: four-level state required");
  }
  return negativity(state);
}

std::vector<double> theta_grid(int points) {
  if (points < 1) {
    throw std::invalid_argument("theta_grid: need at least one point");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] = std::numbers::pi * i / points;
  }
  return grid;
}

std::vector<double> phi_grid(int points) {
  if (points < 1) {
    throw std::invalid_argument("phi_grid: need at least one point");
  }
  std::vector<double> grid(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<size_t>(i)] = 2.0 * std::numbers::pi * i / points;
  }
  return grid;
}

std::vector<SweepPoint> entanglement_sweep(const std::vector<double>& thetas,
                                           const std::vector<double>& phis, int t,
                                           int threads) {
  if (t < 1) {
    throw std::invalid_argument("entanglement_sweep: t must be >= 1");
  }
  if (thetas.empty() || phis.empty()) {
    throw std::invalid_argument("entanglement_sweep: grids must be non-empty");
  }
  const size_t total = thetas.size() * phis.size();
  std::vector<SweepPoint> results(total);
  const WalkKind kind = WalkKind::alternate(CoinParams(std::numbers::pi / 4.0));

  auto evaluate = [&](size_t index) {
    const double theta = thetas[index / phis.size()];
    const double phi = phis[index % phis.size()];
    const WalkerState walked =
        evolve(new_state(coin_state_from_bloch(theta, phi), t), kind, t);
    results[index] = {theta, phi, negativity(walked), std::abs(walked.norm_sq() - 1.0)};
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (workers == 1) {
    for (size_t i = 0; i < total; ++i) evaluate(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
          evaluate(i);
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }
  return results;
}

}  // namespace qw
