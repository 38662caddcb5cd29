#include "qw/limit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qw/walk.hpp"

namespace qw {

namespace {

constexpr double kDegenerateTol = 1e-14;

struct Dispersion {
  double g1;
  double g2;
  double root;  // sqrt(1 - g2^2)
};

Dispersion dispersion(double kx, double ky, const CoinParams& params) {
  const double c2 = params.c() * params.c();
  const double s2 = params.s() * params.s();
  Dispersion d;
  d.g1 = -c2 * std::sin(kx + ky) + s2 * std::sin(kx - ky);
  d.g2 = c2 * std::cos(kx + ky) + s2 * std::cos(kx - ky);
  d.root = std::sqrt(std::max(0.0, 1.0 - d.g2 * d.g2));
  return d;
}

double pow_i(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double total = 0.0;
    for (double v : values) total += v;
    return total;
  }
  const size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Eigen::Matrix2cd step_matrix(double kx, double ky, const CoinParams& params) {
  const Eigen::Matrix2cd u = make_coin_2d(params);
  Eigen::Matrix2cd rx = Eigen::Matrix2cd::Zero();
  rx(0, 0) = std::exp(Complex{0.0, kx});
  rx(1, 1) = std::exp(Complex{0.0, -kx});
  Eigen::Matrix2cd ry = Eigen::Matrix2cd::Zero();
  ry(0, 0) = std::exp(Complex{0.0, ky});
  ry(1, 1) = std::exp(Complex{0.0, -ky});
  return ry * u * rx * u;
}

Eigensystem eigensystem_closed_form(double kx, double ky, const CoinParams& params) {
  const Dispersion d = dispersion(kx, ky, params);
  if (1.0 - d.g2 * d.g2 < kDegenerateTol) {
    throw std::domain_error("eigensystem_closed_form: degenerate momentum point");
  }
  const double c = params.c();
  const double s = params.s();
  const double c2 = c * c;
  const double s2 = s * s;

  Eigensystem sys;
  sys.lambda1 = Complex{d.g2, -d.root};
  sys.lambda2 = Complex{d.g2, d.root};

  const Complex top =
      c * s * (std::exp(Complex{0.0, kx + ky}) - std::exp(Complex{0.0, -(kx - ky)}));
  sys.v1 = Eigen::Vector2cd(top, Complex{0.0, 1.0} * (d.g1 - d.root)).normalized();
  sys.v2 = Eigen::Vector2cd(top, Complex{0.0, 1.0} * (d.g1 + d.root)).normalized();

  const double sum_term = c2 * std::sin(kx + ky) + s2 * std::sin(kx - ky);
  const double diff_term = c2 * std::sin(kx + ky) - s2 * std::sin(kx - ky);
  sys.drift_x1 = sum_term / d.root;   // -(-1)^1 = +1
  sys.drift_x2 = -sum_term / d.root;  // -(-1)^2 = -1
  sys.drift_y1 = diff_term / d.root;
  sys.drift_y2 = -diff_term / d.root;
  return sys;
}

double limit_density(double x, double y, const LimitDensityParams& ldp) {
  const double c = ldp.params.c();
  const double s = ldp.params.s();
  const double plus = x + y;
  const double minus = x - y;
  const double ellipse = plus * plus / (4.0 * c * c) + minus * minus / (4.0 * s * s);
  if (!(ellipse < 1.0)) {
    return 0.0;
  }
  const Complex nu0 = ldp.init.nu0;
  const Complex nu1 = ldp.init.nu1;
  const double pop_gap = std::norm(nu0) - std::norm(nu1);
  const double cross = 2.0 * (nu0 * std::conj(nu1)).real();
  const double bracket =
      1.0 - pop_gap * y - cross / (2.0 * c * s) * (c * c * minus + s * s * plus);
  const double pi = std::numbers::pi;
  return bracket / (pi * pi * (1.0 - x * x) * (1.0 - y * y));
}

namespace {

// Antiderivative of y^k / (1 - y^2):
// F_0 = atanh(y), F_1 = -log(1 - y^2)/2, F_k = -y^{k-1}/(k-1) + F_{k-2}.
double rational_moment_antiderivative(int k, double y) {
  if (k == 0) return std::atanh(y);
  if (k == 1) return -0.5 * std::log1p(-y * y);
  return -pow_i(y, k - 1) / (k - 1) + rational_moment_antiderivative(k - 2, y);
}

}  // namespace

double density_moment(int r1, int r2, const LimitDensityParams& ldp,
                      int quadrature_points) {
  if (r1 < 0 || r2 < 0) {
    throw std::invalid_argument("density_moment: orders must be >= 0");
  }
  if (quadrature_points < 256) {
    throw std::invalid_argument("density_moment: need at least 256 points");
  }
  // f is unbounded where the support boundary touches |x| = 1 or |y| = 1, so
  // a plain 2-d midpoint grid stalls at O(1/n). Instead the y-section of the
  // support at fixed x is the closed interval
  //   y+-(x) = (c^2 - s^2) x +- 2|cs| sqrt(1 - x^2),
  // and the numerator of f is linear in y, so the inner integral of
  // (P + Q y) y^r2 / (1 - y^2) is exact. The remaining 1-d integral is
  // evaluated by the midpoint rule in x = sin(a), which removes the
  // endpoint singularity of the section length.
  const double c = ldp.params.c();
  const double s = ldp.params.s();
  const double pop_gap = std::norm(ldp.init.nu0) - std::norm(ldp.init.nu1);
  const double cross = 2.0 * (ldp.init.nu0 * std::conj(ldp.init.nu1)).real();
  const double b_coef = cross / (2.0 * c * s);
  const double q_coef = -pop_gap - b_coef * (s * s - c * c);
  const double abs_cs2 = 2.0 * std::abs(c * s);
  const double cos2g = c * c - s * s;
  const double pi = std::numbers::pi;

  const int n = quadrature_points;
  const double h = pi / n;
  std::vector<double> cells(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double a = -pi / 2.0 + (i + 0.5) * h;
    const double x = std::sin(a);
    const double half_span = std::cos(a);  // sqrt(1 - x^2)
    double y_hi = cos2g * x + abs_cs2 * half_span;
    double y_lo = cos2g * x - abs_cs2 * half_span;
    // keep the antiderivatives finite if a section endpoint rounds onto +-1
    y_hi = std::min(y_hi, 1.0 - 1e-15);
    y_lo = std::max(y_lo, -1.0 + 1e-15);
    const double p_coef = 1.0 - b_coef * x;
    const double inner =
        p_coef * (rational_moment_antiderivative(r2, y_hi) -
                  rational_moment_antiderivative(r2, y_lo)) +
        q_coef * (rational_moment_antiderivative(r2 + 1, y_hi) -
                  rational_moment_antiderivative(r2 + 1, y_lo));
    cells[static_cast<size_t>(i)] = pow_i(x, r1) * inner / half_span;
  }
  return pairwise_sum(cells) * h / (pi * pi);
}

double density_normalization(const LimitDensityParams& ldp, int quadrature_points) {
  return density_moment(0, 0, ldp, quadrature_points);
}

double limit_moment(int r1, int r2, const LimitDensityParams& ldp,
                    int quadrature_points) {
  if (r1 < 0 || r2 < 0) {
    throw std::invalid_argument("limit_moment: orders must be >= 0");
  }
  if (quadrature_points < 2 || quadrature_points % 2 != 0) {
    throw std::invalid_argument(
        "limit_moment: point count must be even (keeps the grid off the "
        "degenerate momenta)");
  }
  const int n = quadrature_points;
  const double pi = std::numbers::pi;
  const double h = 2.0 * pi / n;
  const Eigen::Vector2cd psi0 = ldp.init.vec();
  std::vector<double> cells(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double kx = -pi + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double ky = -pi + (j + 0.5) * h;
      const Eigensystem sys = eigensystem_closed_form(kx, ky, ldp.params);
      const double w1 = std::norm(sys.v1.dot(psi0));
      const double w2 = std::norm(sys.v2.dot(psi0));
      cells[static_cast<size_t>(i) * n + j] =
          pow_i(sys.drift_x1, r1) * pow_i(sys.drift_y1, r2) * w1 +
          pow_i(sys.drift_x2, r1) * pow_i(sys.drift_y2, r2) * w2;
    }
  }
  // cell weight h^2 over total measure (2 pi)^2
  return pairwise_sum(cells) / (static_cast<double>(n) * n);
}

std::vector<ConvergenceRow> convergence_report(
    const LimitDensityParams& ldp, const std::vector<int>& t_list,
    const std::vector<std::pair<int, int>>& moment_orders, int quadrature_points) {
  if (t_list.empty()) {
    throw std::invalid_argument("convergence_report: t_list must be non-empty");
  }
  for (size_t i = 0; i + 1 < t_list.size(); ++i) {
    if (t_list[i] >= t_list[i + 1]) {
      throw std::invalid_argument("convergence_report: t_list must be ascending");
    }
  }
  if (t_list.front() < 1) {
    throw std::invalid_argument("convergence_report: step counts must be >= 1");
  }

  std::vector<double> limits;
  limits.reserve(moment_orders.size());
  for (const auto& [r1, r2] : moment_orders) {
    limits.push_back(limit_moment(r1, r2, ldp, quadrature_points));
  }

  const WalkKind kind = WalkKind::alternate(ldp.params);
  WalkerState state = new_state(ldp.init, t_list.back());
  std::vector<ConvergenceRow> rows;
  rows.reserve(t_list.size() * moment_orders.size());
  for (int target : t_list) {
    state = evolve(state, kind, target - state.t);
    const ProbabilityGrid grid = probability_grid(state);
    for (size_t m = 0; m < moment_orders.size(); ++m) {
      const auto& [r1, r2] = moment_orders[m];
      const double scale = pow_i(static_cast<double>(target), r1 + r2);
      const double simulated = moments(grid, r1, r2) / scale;
      rows.push_back(
          {target, r1, r2, simulated, limits[m], std::abs(simulated - limits[m])});
    }
  }
  return rows;
}

}  // namespace qw
