#include "qw/equivalence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qw {

namespace {

struct SiteValue {
  double value = 0.0;
  int x = 0;
  int y = 0;

  void consider(double v, int px, int py) {
    if (v > value) {
      value = v;
      x = px;
      y = py;
    }
  }
};

SiteValue lemma1_detail(const WalkerState& g, const CoinParams& params) {
  if (g.coin_dim() != 4) {
    throw std::invalid_argument("lemma1_residual: four-level state required");
  }
  const double ac = std::abs(params.c());
  const double as = std::abs(params.s());
  const double scale = std::max(ac, as);
  const double ws = as / scale;
  const double wc = ac / scale;
  // one site beyond the support: the identities there still reference
  // amplitudes on the support edge (out-of-window reads are zero)
  const int p = g.t + 1;
  SiteValue worst;
  for (int x = -p; x <= p; ++x) {
    for (int y = -p; y <= p; ++y) {
      const Complex row_x = ws * g.amp_or_zero(x - 1, y, 0) + wc * g.amp_or_zero(x - 1, y, 1) +
                            wc * g.amp_or_zero(x + 1, y, 2) + ws * g.amp_or_zero(x + 1, y, 3);
      const Complex row_y = ws * g.amp_or_zero(x, y - 1, 0) + wc * g.amp_or_zero(x, y - 1, 2) +
                            wc * g.amp_or_zero(x, y + 1, 1) + ws * g.amp_or_zero(x, y + 1, 3);
      worst.consider(std::abs(row_x), x, y);
      worst.consider(std::abs(row_y), x, y);
    }
  }
  return worst;
}

void require_paired(const WalkerState& alt, const WalkerState& grover) {
  if (alt.coin_dim() != 2 || grover.coin_dim() != 4) {
    throw std::invalid_argument("mapping residual: need a two-level and a four-level state");
  }
  if (alt.t != grover.t) {
    throw std::invalid_argument("mapping residual: states must be at the same step count");
  }
}

// Shared evaluation of |b - factor * (m0 a0 + m1 a1 + m2 a2 + m3 a3)| style
// relations; the two theorems differ only in the prefactor and coefficients.
SiteValue mapping_detail(const WalkerState& alt, const WalkerState& grover,
                         Complex factor, Complex kappa_i, Complex sign_cs) {
  const int p = std::min(alt.t, alt.half_width);
  SiteValue worst;
  for (int x = -p; x <= p; ++x) {
    for (int y = -p; y <= p; ++y) {
      const Complex pred0 =
          factor * (sign_cs * grover.amp_or_zero(x, y, 0) +
                    kappa_i * grover.amp_or_zero(x, y, 2));
      const Complex pred1 =
          factor * (-grover.amp_or_zero(x, y, 1) +
                    sign_cs * kappa_i * grover.amp_or_zero(x, y, 3));
      worst.consider(std::abs(alt.amp_or_zero(x, y, 0) - pred0), x, y);
      worst.consider(std::abs(alt.amp_or_zero(x, y, 1) - pred1), x, y);
    }
  }
  return worst;
}

Complex theorem2_factor(const WalkerState& alt, const CoinParams& params, int xi,
                        int kappa, bool flip_sign) {
  const double nu0 = 1.0 / std::sqrt(2.0);
  const double kappa_sign = (kappa % 2 == 0) ? 1.0 : -1.0;
  double parity = ((alt.t + xi) % 2 == 0) ? 1.0 : -1.0;
  if (flip_sign) parity = -parity;
  return parity * std::sqrt(2.0) * nu0 *
         Complex{params.c(), kappa_sign * params.s()};
}

SiteValue theorem2_detail(const WalkerState& alt, const WalkerState& grover,
                          const CoinParams& params, int xi, int kappa,
                          bool flip_sign) {
  require_paired(alt, grover);
  const double kappa_sign = (kappa % 2 == 0) ? 1.0 : -1.0;
  const double sign_cs = (params.c() * params.s() > 0.0) ? 1.0 : -1.0;
  const Complex factor = theorem2_factor(alt, params, xi, kappa, flip_sign);
  return mapping_detail(alt, grover, factor, Complex{0.0, kappa_sign}, sign_cs);
}

}  // namespace

double lemma1_residual(const WalkerState& grover_state, const CoinParams& params) {
  return lemma1_detail(grover_state, params).value;
}

double theorem1_residual(const WalkerState& alt_state, const WalkerState& grover_state) {
  require_paired(alt_state, grover_state);
  const double parity = (alt_state.t % 2 == 0) ? 1.0 : -1.0;
  const Complex factor =
      parity * std::exp(Complex{0.0, std::numbers::pi / 4.0});
  return mapping_detail(alt_state, grover_state, factor, Complex{0.0, 1.0}, 1.0).value;
}

double theorem2_residual(const WalkerState& alt_state, const WalkerState& grover_state,
                         const CoinParams& params, int xi, int kappa) {
  return theorem2_detail(alt_state, grover_state, params, xi, kappa, false).value;
}

double distribution_distance(const ProbabilityGrid& a, const ProbabilityGrid& b) {
  if (a.half_width != b.half_width) {
    throw std::invalid_argument("distribution_distance: window mismatch");
  }
  return (a.values - b.values).cwiseAbs().maxCoeff();
}

EquivalenceReport certify_equivalence(const CoinParams& params, int xi, int kappa,
                                      int t_max,
                                      std::optional<CoinState2> alt_init_override) {
  if (t_max < 0) {
    throw std::invalid_argument("certify_equivalence: t_max must be >= 0");
  }
  const CoinState2 alt_init =
      alt_init_override ? *alt_init_override : coin_state_symmetric(kappa);
  WalkerState alt = new_state(alt_init, t_max);
  WalkerState grv = new_state(grover_equivalent_init(params, xi), t_max);
  const Eigen::Matrix2cd coin2 = make_coin_2d(params);
  const Eigen::Matrix4cd coin4 = make_coin_grover(params);

  EquivalenceReport report;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) {
      alt = step_alternate(alt, coin2);
      grv = step_grover(grv, coin4);
    }
    const SiteValue lem = lemma1_detail(grv, params);
    report.lemma1.record(t, lem.value, lem.x, lem.y);
    const SiteValue map = theorem2_detail(alt, grv, params, xi, kappa, false);
    report.mapping.record(t, map.value, map.x, map.y);
    const SiteValue flipped = theorem2_detail(alt, grv, params, xi, kappa, true);
    report.mapping_flipped.record(t, flipped.value, flipped.x, flipped.y);
    const double dist =
        distribution_distance(probability_grid(alt), probability_grid(grv));
    report.distance.record(t, dist, 0, 0);
  }
  return report;
}

}  // namespace qw
