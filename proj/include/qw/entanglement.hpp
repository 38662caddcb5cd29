#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qw/state.hpp"

namespace qw {

/// Position density matrix after tracing out the coin, restricted to the
/// sites reachable at the state's step count (coordinates of the same
/// parity as t, at most t in magnitude). The joint basis is x-major:
/// flat index = ix * axis_sites.size() + iy.
struct ReducedDensity {
  std::vector<int> axis_sites;  // reachable coordinates along each axis
  Eigen::MatrixXcd matrix;

  int axis_dim() const { return static_cast<int>(axis_sites.size()); }
};

ReducedDensity reduced_density(const WalkerState& state);

/// Transpose of the x-subsystem indices:
/// out[(ix,iy),(jx,jy)] = rho[(jx,iy),(ix,jy)]. Hermitian.
Eigen::MatrixXcd partial_transpose_x(const ReducedDensity& rho);

/// Which subsystem dimension enters the d-1 normalization of the qudit
/// negativity. The cited generalization leaves d implicit; `support_dim`
/// (d = t+1, the reachable coordinates per axis) reproduces the published
/// t=10 values and is the calibrated choice; `window_dim` (d = 2t+1) is
/// kept for reporting.
enum class NegativityConvention { support_dim, window_dim };

inline constexpr NegativityConvention kCalibratedConvention =
    NegativityConvention::support_dim;

std::string to_string(NegativityConvention convention);

struct NegativityResult {
  int t = 0;
  double trace_norm_minus_one = 0.0;  // ||rho^Tx||_1 - 1
  double normalized_support = 0.0;    // divisor d-1 = t
  double normalized_window = 0.0;     // divisor d-1 = 2t
  NegativityConvention chosen_convention = kCalibratedConvention;

  double calibrated() const {
    return chosen_convention == NegativityConvention::support_dim ? normalized_support
                                                                  : normalized_window;
  }
};

/// Negativity of the partial transpose of the coin-traced position density
/// matrix. Works for either coin dimension.
NegativityResult negativity(const WalkerState& state);

/// Same pipeline with the four-level coin traced out.
NegativityResult grover_negativity(const WalkerState& state);

/// Negativity of the Hadamard alternate walk after `t` steps for each Bloch
/// initial state in thetas x phis. Rows come back in theta-major grid order;
/// points are independent and may be evaluated on `threads` workers without
/// affecting the result.
struct SweepPoint {
  double theta;
  double phi;
  NegativityResult neg;
  double norm_residual;  // |norm^2 - 1| of the evolved state
};

std::vector<SweepPoint> entanglement_sweep(const std::vector<double>& thetas,
                                           const std::vector<double>& phis, int t,
                                           int threads = 1);

/// Endpoint-exclusive uniform grids: theta_j = pi j / n, phi_i = 2 pi i / n.
/// Both contain pi/2 when n is even, and the phi grid maps onto itself under
/// phi -> phi + pi, which the sweep symmetry checks rely on.
std::vector<double> theta_grid(int points);
std::vector<double> phi_grid(int points);

}  // namespace qw
