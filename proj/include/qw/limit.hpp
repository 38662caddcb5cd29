#pragma once

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qw/coin.hpp"
#include "qw/state.hpp"

namespace qw {

/// Parameters of the long-time limit density: coin angle plus the initial
/// coin amplitudes (nu0, nu1).
struct LimitDensityParams {
  CoinParams params;
  CoinState2 init;
};

/// Momentum-space single-step operator R(ky) U R(kx) U with
/// R(k) = diag(e^{ik}, e^{-ik}). Unitary with unit determinant.
Eigen::Matrix2cd step_matrix(double kx, double ky, const CoinParams& params);

/// Closed-form eigensystem of step_matrix at (kx, ky), with the group
/// velocities D_x lambda_j / lambda_j and D_y lambda_j / lambda_j.
/// Indices follow j in {1, 2}: lambda_j = g2 + i (-1)^j sqrt(1 - g2^2).
struct Eigensystem {
  Complex lambda1;
  Complex lambda2;
  Eigen::Vector2cd v1;
  Eigen::Vector2cd v2;
  double drift_x1;
  double drift_x2;
  double drift_y1;
  double drift_y2;
};

/// Throws std::domain_error at degenerate momenta (1 - g2^2 < 1e-14),
/// where the eigenvector expression collapses.
Eigensystem eigensystem_closed_form(double kx, double ky, const CoinParams& params);

/// Limit density f(x, y) of the rescaled walker position, supported on the
/// open ellipse (x+y)^2/(4c^2) + (x-y)^2/(4s^2) < 1; zero outside.
double limit_density(double x, double y, const LimitDensityParams& ldp);

/// Midpoint quadrature of f over its support; expected 1. At least 256
/// points per axis.
double density_normalization(const LimitDensityParams& ldp, int quadrature_points);

/// Midpoint quadrature of x^r1 y^r2 f(x, y) over [-1, 1]^2.
double density_moment(int r1, int r2, const LimitDensityParams& ldp,
                      int quadrature_points);

/// Fourier-side limit moment lim E[(X_t/t)^r1 (Y_t/t)^r2]: midpoint sum over
/// [-pi, pi)^2 of sum_j driftX_j^r1 driftY_j^r2 |<v_j|Psi_0>|^2. Requires an
/// even point count so the grid stays clear of the degenerate momenta.
double limit_moment(int r1, int r2, const LimitDensityParams& ldp,
                    int quadrature_points);

/// Simulated rescaled moments against their limit values at each requested
/// step count.
struct ConvergenceRow {
  int t;
  int r1;
  int r2;
  double simulated;
  double limit;
  double gap;
};

std::vector<ConvergenceRow> convergence_report(
    const LimitDensityParams& ldp, const std::vector<int>& t_list,
    const std::vector<std::pair<int, int>>& moment_orders, int quadrature_points);

/// Fixed-topology pairwise reduction; summation order does not depend on
/// the caller's chunking, so quadratures stay bit-reproducible.
double pairwise_sum(std::span<const double> values);

}  // namespace qw
