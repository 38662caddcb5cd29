#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qw/coin.hpp"
#include "qw/state.hpp"
#include "support.hpp"

using namespace qw;
using qw::testing::kExactTol;
constexpr double pi = std::numbers::pi;

TEST_CASE("coin params reject the excluded angles") {
  auto make = [](double gamma) { return CoinParams(gamma); };
  CHECK_THROWS_AS(make(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make(2.0 * pi), std::invalid_argument);
  CHECK_THROWS_AS(make(-0.3), std::invalid_argument);
  CHECK_THROWS_AS(make(pi / 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make(pi), std::invalid_argument);
  CHECK_THROWS_AS(make(3.0 * pi / 2.0), std::invalid_argument);
  // near-misses within 1e-12 are rejected too
  CHECK_THROWS_AS(make(pi / 2.0 + 1e-13), std::invalid_argument);
  CHECK_THROWS_AS(make(pi - 1e-13), std::invalid_argument);
  CHECK_NOTHROW(make(pi / 2.0 + 1e-6));
  CHECK_NOTHROW(make(pi / 4.0));
}

TEST_CASE("two-level coin at pi/4 is the Hadamard gate") {
  const Eigen::Matrix2cd u = make_coin_2d(CoinParams(pi / 4.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u(0, 0) - inv_sqrt2) <= 1e-15);
  CHECK(std::abs(u(0, 1) - inv_sqrt2) <= 1e-15);
  CHECK(std::abs(u(1, 0) - inv_sqrt2) <= 1e-15);
  CHECK(std::abs(u(1, 1) + inv_sqrt2) <= 1e-15);
  CHECK(check_unitary(u) <= 1e-15);
}

TEST_CASE("two-level coin at pi/3") {
  const Eigen::Matrix2cd u = make_coin_2d(CoinParams(pi / 3.0));
  CHECK(u(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(u(0, 1).real() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(u(1, 1).real() == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("four-level coin at pi/4 is the Grover coin") {
  const Eigen::Matrix4cd g = make_coin_grover(CoinParams(pi / 4.0));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected = (i == j) ? -0.5 : 0.5;
      CHECK(std::abs(g(i, j) - expected) <= 1e-15);
    }
  }
  CHECK(check_unitary(g) <= 1e-15);
}

TEST_CASE("four-level coin at pi/3: first row") {
  const Eigen::Matrix4cd a = make_coin_grover(CoinParams(pi / 3.0));
  const double root3_4 = std::sqrt(3.0) / 4.0;
  CHECK(a(0, 0).real() == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(a(0, 1).real() == doctest::Approx(root3_4).epsilon(1e-14));
  CHECK(a(0, 2).real() == doctest::Approx(root3_4).epsilon(1e-14));
  CHECK(a(0, 3).real() == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("check_unitary flags a non-unitary matrix") {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 1, 0, 1;
  CHECK(check_unitary(m) == doctest::Approx(1.0));
  Eigen::MatrixXcd rect(2, 3);
  CHECK_THROWS_AS(check_unitary(rect), std::invalid_argument);
}

TEST_CASE("every generated coin is unitary: 100 random gammas") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const CoinParams params(qw::testing::random_valid_gamma(rng));
    CHECK(check_unitary(make_coin_2d(params)) <= kExactTol);
    CHECK(check_unitary(make_coin_grover(params)) <= kExactTol);
    const CoinState4 q = grover_equivalent_init(params, trial % 2);
    const double norm =
        std::norm(q.q0) + std::norm(q.q1) + std::norm(q.q2) + std::norm(q.q3);
    CHECK(std::abs(norm - 1.0) <= kExactTol);
  }
}

TEST_CASE("paired four-level init at pi/4") {
  const CoinState4 q = grover_equivalent_init(CoinParams(pi / 4.0), 0);
  CHECK(std::abs(q.q0 - 0.5) <= kExactTol);
  CHECK(std::abs(q.q1 + 0.5) <= kExactTol);
  CHECK(std::abs(q.q2 + 0.5) <= kExactTol);
  CHECK(std::abs(q.q3 - 0.5) <= kExactTol);
  // xi = 1 flips the global sign
  const CoinState4 flipped = grover_equivalent_init(CoinParams(pi / 4.0), 1);
  CHECK(std::abs(flipped.q0 + q.q0) <= kExactTol);
  CHECK(std::abs(flipped.q1 + q.q1) <= kExactTol);
}

TEST_CASE("paired four-level init at pi/3") {
  const CoinState4 q = grover_equivalent_init(CoinParams(pi / 3.0), 0);
  const double sqrt2 = std::sqrt(2.0);
  CHECK(q.q0.real() == doctest::Approx(1.0 / (2.0 * sqrt2)).epsilon(1e-14));
  CHECK(q.q3.real() == doctest::Approx(1.0 / (2.0 * sqrt2)).epsilon(1e-14));
  CHECK(q.q1.real() == doctest::Approx(-std::sqrt(3.0) / (2.0 * sqrt2)).epsilon(1e-14));
  const double norm =
      std::norm(q.q0) + std::norm(q.q1) + std::norm(q.q2) + std::norm(q.q3);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Bloch construction is normalized on a (theta, phi) grid") {
  for (int i = 0; i <= 24; ++i) {
    for (int j = 0; j <= 24; ++j) {
      const CoinState2 st = coin_state_from_bloch(pi * i / 24.0, 2.0 * pi * j / 24.0);
      CHECK(std::abs(std::norm(st.nu0) + std::norm(st.nu1) - 1.0) <= kExactTol);
    }
  }
}

TEST_CASE("bloch(pi/2, pi/2) reproduces the symmetric init") {
  const CoinState2 bloch = coin_state_from_bloch(pi / 2.0, pi / 2.0);
  const CoinState2 sym = coin_state_symmetric(0);
  CHECK(std::abs(bloch.nu0 - sym.nu0) <= kExactTol);
  CHECK(std::abs(bloch.nu1 - sym.nu1) <= kExactTol);
  // kappa = 1 gives the orthogonal state
  const CoinState2 orth = coin_state_symmetric(1);
  CHECK(std::abs(sym.nu0 * std::conj(orth.nu0) + sym.nu1 * std::conj(orth.nu1)) <=
        kExactTol);
}
