#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qw/entanglement.hpp"
#include "qw/walk.hpp"
#include "support.hpp"

using namespace qw;
using qw::testing::kExactTol;
constexpr double pi = std::numbers::pi;

namespace {

const CoinParams kQuarter(pi / 4.0);

WalkerState walked_alternate(const CoinState2& init, int t) {
  return evolve(new_state(init, t), WalkKind::alternate(kQuarter), t);
}

// independent route: trace-norm excess from an eigensolve done here
double excess_from_scratch(const WalkerState& state) {
  const Eigen::MatrixXcd pt = partial_transpose_x(reduced_density(state));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum() - 1.0;
}

}  // namespace

TEST_CASE("reduced density at t=0 is the trivial pure state") {
  const ReducedDensity rho = reduced_density(new_state(coin_state_symmetric(0), 2));
  REQUIRE(rho.matrix.rows() == 1);
  CHECK(std::abs(rho.matrix(0, 0) - 1.0) <= kExactTol);
  CHECK(rho.axis_sites == std::vector<int>{0});
}

TEST_CASE("reduced density after one step: hermitian, trace one, rank two") {
  const ReducedDensity rho = reduced_density(walked_alternate(coin_state_symmetric(0), 1));
  REQUIRE(rho.matrix.rows() == 4);
  CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() <= kExactTol);
  CHECK(std::abs(rho.matrix.trace() - 1.0) <= kExactTol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix,
                                                         Eigen::EigenvaluesOnly);
  const auto& eig = solver.eigenvalues();
  CHECK(eig(0) >= -1e-10);  // positive semidefinite
  CHECK(eig(1) <= 1e-12);   // at most two nonzero eigenvalues (two coin components)
}

TEST_CASE("reduced density invariants along an evolution") {
  for (int t : {2, 5, 9}) {
    const ReducedDensity rho = reduced_density(walked_alternate(coin_state_symmetric(0), t));
    REQUIRE(rho.axis_dim() == t + 1);
    CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() <= kExactTol);
    CHECK(std::abs(rho.matrix.trace() - 1.0) <= kExactTol);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.matrix,
                                                           Eigen::EigenvaluesOnly);
    CHECK(solver.eigenvalues()(0) >= -1e-10);
  }
}

TEST_CASE("partial transpose leaves t=0 unchanged and is hermitian") {
  const ReducedDensity rho0 = reduced_density(new_state(coin_state_symmetric(0), 1));
  CHECK((partial_transpose_x(rho0) - rho0.matrix).cwiseAbs().maxCoeff() == 0.0);

  const ReducedDensity rho = reduced_density(walked_alternate(coin_state_symmetric(0), 4));
  const Eigen::MatrixXcd pt = partial_transpose_x(rho);
  CHECK((pt - pt.adjoint()).cwiseAbs().maxCoeff() <= kExactTol);
  // involution: transposing twice restores the matrix
  ReducedDensity wrapped{rho.axis_sites, pt};
  CHECK((partial_transpose_x(wrapped) - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("after one step the position state is still separable") {
  // the last shift correlates the coin with y exactly, so at t=1 the
  // partial transpose has no negative eigenvalue yet; entanglement first
  // appears at t=2
  const WalkerState one = walked_alternate(coin_state_symmetric(0), 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s1(
      partial_transpose_x(reduced_density(one)), Eigen::EigenvaluesOnly);
  CHECK(s1.eigenvalues()(0) >= -1e-10);
  CHECK(negativity(one).calibrated() == 0.0);

  const WalkerState two = walked_alternate(coin_state_symmetric(0), 2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s2(
      partial_transpose_x(reduced_density(two)), Eigen::EigenvaluesOnly);
  CHECK(s2.eigenvalues()(0) < -0.01);
  CHECK(negativity(two).calibrated() > 0.1);
}

TEST_CASE("negativity of a factorized field is zero") {
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int t = 4;
  WalkerState state;
  state.t = t;
  state.half_width = t;
  state.layers.assign(2, Eigen::MatrixXcd::Zero(2 * t + 1, 2 * t + 1));
  Eigen::VectorXcd ax(t + 1), by(t + 1);
  Eigen::Vector2cd coin;
  for (int i = 0; i <= t; ++i) {
    ax(i) = Complex{gauss(rng), gauss(rng)};
    by(i) = Complex{gauss(rng), gauss(rng)};
  }
  coin << Complex{gauss(rng), gauss(rng)}, Complex{gauss(rng), gauss(rng)};
  ax.normalize();
  by.normalize();
  coin.normalize();
  for (int i = 0; i <= t; ++i) {
    for (int j = 0; j <= t; ++j) {
      for (int c = 0; c < 2; ++c) {
        state.layers[c](2 * i, 2 * j) = ax(i) * by(j) * coin(c);
      }
    }
  }
  CHECK(std::abs(state.norm_sq() - 1.0) <= kExactTol);
  const NegativityResult neg = negativity(state);
  CHECK(neg.trace_norm_minus_one <= 1e-10);
}

TEST_CASE("negativity at t=0 vanishes under every convention") {
  const NegativityResult neg = negativity(new_state(coin_state_symmetric(0), 1));
  CHECK(neg.trace_norm_minus_one <= 1e-12);
  CHECK(neg.normalized_support == 0.0);
  CHECK(neg.normalized_window == 0.0);
}

TEST_CASE("t=10 negativities reproduce the published values") {
  const NegativityResult sym = negativity(walked_alternate(coin_state_symmetric(0), 10));
  const NegativityResult ket1 = negativity(walked_alternate(CoinState2{0.0, 1.0}, 10));
  CHECK(std::abs(sym.normalized_support - 0.54428) <= 5e-4);
  CHECK(std::abs(ket1.normalized_support - 0.42164) <= 5e-4);
  // the window normalization does not reproduce them
  CHECK(std::abs(sym.normalized_window - 0.54428) > 0.1);
  CHECK(sym.chosen_convention == kCalibratedConvention);
}

TEST_CASE("trace-norm excess equals twice the negative-eigenvalue mass") {
  for (int t : {3, 7, 10}) {
    const WalkerState state = walked_alternate(coin_state_symmetric(0), t);
    const NegativityResult neg = negativity(state);
    CHECK(std::abs(neg.trace_norm_minus_one - excess_from_scratch(state)) <= 1e-10);
  }
}

TEST_CASE("four-level walk generates less spatial entanglement") {
  const WalkerState grv = evolve(new_state(grover_equivalent_init(kQuarter, 0), 10),
                                 WalkKind::grover(kQuarter), 10);
  const NegativityResult g = grover_negativity(grv);
  CHECK(g.normalized_support < 0.42164);

  // strict ordering for t >= 2; at t=1 both sides are exactly zero
  WalkerState alt = new_state(CoinState2{0.0, 1.0}, 20);
  WalkerState four = new_state(grover_equivalent_init(kQuarter, 0), 20);
  const Eigen::Matrix2cd coin2 = make_coin_2d(kQuarter);
  const Eigen::Matrix4cd coin4 = make_coin_grover(kQuarter);
  for (int t = 1; t <= 20; ++t) {
    alt = step_alternate(alt, coin2);
    four = step_grover(four, coin4);
    const double na = negativity(alt).normalized_support;
    const double ng = grover_negativity(four).normalized_support;
    if (t == 1) {
      REQUIRE(na == 0.0);
      REQUIRE(ng == 0.0);
    } else {
      REQUIRE(na > ng);
    }
  }
  CHECK_THROWS_AS(grover_negativity(alt), std::invalid_argument);
}

TEST_CASE("sweep grids are endpoint-exclusive and hit pi/2 for even sizes") {
  const std::vector<double> thetas = theta_grid(20);
  REQUIRE(thetas.size() == 20);
  CHECK(thetas.front() == 0.0);
  CHECK(thetas[10] == doctest::Approx(pi / 2.0).epsilon(1e-15));
  CHECK(thetas.back() < pi);
  const std::vector<double> phis = phi_grid(20);
  CHECK(phis[5] == doctest::Approx(pi / 2.0).epsilon(1e-15));
  CHECK(phis[15] == doctest::Approx(3.0 * pi / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(theta_grid(0), std::invalid_argument);
}

TEST_CASE("sweep is deterministic across worker counts") {
  const auto serial = entanglement_sweep(theta_grid(6), phi_grid(6), 4, 1);
  const auto parallel = entanglement_sweep(theta_grid(6), phi_grid(6), 4, 3);
  REQUIRE(serial.size() == parallel.size());
  for (size_t i = 0; i < serial.size(); ++i) {
    REQUIRE(serial[i].neg.normalized_support == parallel[i].neg.normalized_support);
    REQUIRE(serial[i].norm_residual <= kExactTol);
  }
  CHECK_THROWS_AS(entanglement_sweep({}, phi_grid(4), 4), std::invalid_argument);
  CHECK_THROWS_AS(entanglement_sweep(theta_grid(4), phi_grid(4), 0),
                  std::invalid_argument);
}

TEST_CASE("sweep symmetry: negativity is pi-periodic in phi") {
  const int n = 8;
  const auto points = entanglement_sweep(theta_grid(4), phi_grid(n), 6, 4);
  for (size_t i = 0; i < 4; ++i) {
    for (size_t j = 0; j < n; ++j) {
      const double a = points[i * n + j].neg.normalized_support;
      const double b = points[i * n + (j + n / 2) % n].neg.normalized_support;
      REQUIRE(std::abs(a - b) <= qw::testing::kEigenTol);
    }
  }
}

TEST_CASE("slice extrema at t=10 match the published structure") {
  // phi = pi/2 slice: maximum at theta = pi/2 (the symmetric init)
  const auto slice = entanglement_sweep(theta_grid(12), {pi / 2.0}, 10, 4);
  size_t best = 0;
  for (size_t i = 0; i < slice.size(); ++i) {
    if (slice[i].neg.normalized_support > slice[best].neg.normalized_support) best = i;
  }
  CHECK(slice[best].theta == doctest::Approx(pi / 2.0).epsilon(1e-12));

  // phi = 0 slice: |0> (theta = 0) and (|0>+|1>)/sqrt2 (theta = pi/2) are minimizers
  const auto zero = entanglement_sweep(theta_grid(12), {0.0}, 10, 4);
  size_t worst = 0;
  for (size_t i = 0; i < zero.size(); ++i) {
    if (zero[i].neg.normalized_support < zero[worst].neg.normalized_support) worst = i;
  }
  const double min_val = zero[worst].neg.normalized_support;
  CHECK(std::abs(zero[0].neg.normalized_support - min_val) <= 1e-9);
  CHECK(std::abs(zero[6].neg.normalized_support - min_val) <= 1e-9);
  CHECK(std::abs(min_val - 0.42164) <= 5e-4);
}
