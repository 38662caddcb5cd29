// Command-line front end: simulate / verify / entangle / limit / compare.
// CSV payloads are deterministic (17 significant digits, fixed row order);
// each file-emitting run also writes a JSON manifest next to its outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qw/coin.hpp"
#include "qw/entanglement.hpp"
#include "qw/equivalence.hpp"
#include "qw/limit.hpp"
#include "qw/state.hpp"
#include "qw/version.hpp"
#include "qw/walk.hpp"

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kPi = std::numbers::pi;
constexpr double kVerifyTol = 1e-12;

constexpr int kExitValidation = 1;
constexpr int kExitTolerance = 2;

struct ToleranceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int worker_threads() {
  if (const char* env = std::getenv("QW_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

qw::CoinState2 parse_init2(const std::string& name) {
  if (name == "symmetric") return qw::coin_state_symmetric(0);
  if (name == "ket0") return {1.0, 0.0};
  if (name == "ket1") return {0.0, 1.0};
  if (name == "psi2") return {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
  if (name.rfind("bloch:", 0) == 0) {
    const std::string rest = name.substr(6);
    const size_t colon = rest.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("init: expected bloch:<theta>:<phi>");
    }
    return qw::coin_state_from_bloch(std::stod(rest.substr(0, colon)),
                                     std::stod(rest.substr(colon + 1)));
  }
  throw std::invalid_argument("unknown two-level init preset: " + name);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot open output file: " + path);
  }
  return out;
}

void write_manifest(const std::string& command, const json& params,
                    double norm_residual, double wall_ms,
                    const std::vector<std::string>& outputs) {
  if (outputs.empty()) return;
  json manifest = {{"command", command},
                   {"params", params},
                   {"norm_residual", norm_residual},
                   {"wall_time_ms", wall_ms},
                   {"library_version", qw::kVersion},
                   {"outputs", outputs}};
  const std::string path = outputs.front() + ".manifest.json";
  open_out(path) << manifest.dump(2) << "\n";
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// rows sorted by (y, x) ascending, one row per window site
void write_grid_csv(std::ofstream& out, const qw::ProbabilityGrid& grid) {
  out << "x,y,p\n";
  const int L = grid.half_width;
  for (int y = -L; y <= L; ++y) {
    for (int x = -L; x <= L; ++x) {
      out << x << ',' << y << ',' << fmt(grid.at(x, y)) << '\n';
    }
  }
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  std::string walk = "alternate";
  double gamma = kPi / 4.0;
  std::string init;
  int xi = 0;
  int t = 50;
  std::string out = "grid.csv";
};

void run_simulate(const SimulateOpts& opt) {
  const auto start = Clock::now();
  const qw::CoinParams params(opt.gamma);
  if (opt.t < 0) throw std::invalid_argument("simulate: t must be >= 0");

  qw::WalkerState state = [&] {
    if (opt.walk == "alternate") {
      const std::string init = opt.init.empty() ? "symmetric" : opt.init;
      return qw::new_state(parse_init2(init), opt.t);
    }
    if (opt.walk == "grover") {
      const std::string init = opt.init.empty() ? "grover-nonlocalized" : opt.init;
      if (init != "grover-nonlocalized") {
        throw std::invalid_argument("simulate: grover walk supports init grover-nonlocalized");
      }
      return qw::new_state(qw::grover_equivalent_init(params, opt.xi), opt.t);
    }
    throw std::invalid_argument("simulate: walk must be alternate or grover");
  }();

  state = qw::evolve(state,
                     opt.walk == "alternate" ? qw::WalkKind::alternate(params)
                                             : qw::WalkKind::grover(params),
                     opt.t);
  const qw::ProbabilityGrid grid = qw::probability_grid(state);
  auto out = open_out(opt.out);
  write_grid_csv(out, grid);

  write_manifest("simulate",
                 {{"walk", opt.walk},
                  {"gamma", opt.gamma},
                  {"init", opt.init.empty() ? (opt.walk == "alternate" ? "symmetric"
                                                                       : "grover-nonlocalized")
                                            : opt.init},
                  {"xi", opt.xi},
                  {"t", opt.t}},
                 std::abs(state.norm_sq() - 1.0), elapsed_ms(start), {opt.out});
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  double gamma = kPi / 4.0;
  int xi = 0;
  int kappa = 0;
  int t_max = 25;
  std::string init;  // optional override of the paired alternate init
  std::string out;
};

void run_verify(const VerifyOpts& opt) {
  const auto start = Clock::now();
  const qw::CoinParams params(opt.gamma);
  std::optional<qw::CoinState2> override_init;
  if (!opt.init.empty()) override_init = parse_init2(opt.init);

  const qw::EquivalenceReport report =
      qw::certify_equivalence(params, opt.xi, opt.kappa, opt.t_max, override_init);

  std::printf("   t      lemma1     mapping    distance\n");
  for (size_t i = 0; i < report.lemma1.per_step.size(); ++i) {
    std::printf("%4d  %10.3e  %10.3e  %10.3e\n", report.lemma1.per_step[i].t,
                report.lemma1.per_step[i].value, report.mapping.per_step[i].value,
                report.distance.per_step[i].value);
  }
  std::printf("max lemma1   = %.3e (site %d,%d at t=%d)\n",
              report.lemma1.max_abs_residual, report.lemma1.worst_x,
              report.lemma1.worst_y, report.lemma1.worst_t);
  std::printf("max mapping  = %.3e (site %d,%d at t=%d; flipped-sign %.3e)\n",
              report.mapping.max_abs_residual, report.mapping.worst_x,
              report.mapping.worst_y, report.mapping.worst_t,
              report.mapping_flipped.max_abs_residual);
  std::printf("max distance = %.3e (t=%d)\n", report.distance.max_abs_residual,
              report.distance.worst_t);

  if (!opt.out.empty()) {
    auto out = open_out(opt.out);
    out << "t,lemma1,mapping,distance\n";
    for (size_t i = 0; i < report.lemma1.per_step.size(); ++i) {
      out << report.lemma1.per_step[i].t << ',' << fmt(report.lemma1.per_step[i].value)
          << ',' << fmt(report.mapping.per_step[i].value) << ','
          << fmt(report.distance.per_step[i].value) << '\n';
    }
    out.close();
    write_manifest("verify",
                   {{"gamma", opt.gamma},
                    {"xi", opt.xi},
                    {"kappa", opt.kappa},
                    {"t_max", opt.t_max},
                    {"init", opt.init.empty() ? "paired" : opt.init}},
                   0.0, elapsed_ms(start), {opt.out});
  }

  if (!report.all_within(kVerifyTol)) {
    throw ToleranceFailure("verification residual exceeds 1e-12");
  }
  std::printf("OK: all residuals within %.0e for t <= %d\n", kVerifyTol, opt.t_max);
}

// ---------------------------------------------------------------- entangle

struct EntangleOpts {
  std::string walk = "alternate";
  std::string init;
  int t = 10;
  int theta_points = 0;
  int phi_points = 0;
  double phi = std::numeric_limits<double>::quiet_NaN();
  std::string out;
};

void run_entangle(const EntangleOpts& opt) {
  const auto start = Clock::now();
  if (opt.t < 1) throw std::invalid_argument("entangle: t must be >= 1");
  const qw::CoinParams quarter(kPi / 4.0);

  const bool sweep_mode = opt.theta_points > 0;
  if (!sweep_mode) {
    // single-state mode
    qw::WalkerState state = [&] {
      if (opt.walk == "grover") {
        return qw::evolve(qw::new_state(qw::grover_equivalent_init(quarter, 0), opt.t),
                          qw::WalkKind::grover(quarter), opt.t);
      }
      const std::string init = opt.init.empty() ? "symmetric" : opt.init;
      return qw::evolve(qw::new_state(parse_init2(init), opt.t),
                        qw::WalkKind::alternate(quarter), opt.t);
    }();
    const qw::NegativityResult neg =
        opt.walk == "grover" ? qw::grover_negativity(state) : qw::negativity(state);
    std::printf("t=%d  N=%.6f  [convention %s; /t = %.6f, /2t = %.6f, excess = %.6f]\n",
                neg.t, neg.calibrated(), qw::to_string(neg.chosen_convention).c_str(),
                neg.normalized_support, neg.normalized_window, neg.trace_norm_minus_one);
    if (!opt.out.empty()) {
      auto out = open_out(opt.out);
      out << "t,n\n" << neg.t << ',' << fmt(neg.calibrated()) << '\n';
      out.close();
      write_manifest("entangle",
                     {{"walk", opt.walk},
                      {"init", opt.init.empty() ? "symmetric" : opt.init},
                      {"t", opt.t},
                      {"normalized_support", neg.normalized_support},
                      {"normalized_window", neg.normalized_window},
                      {"convention", qw::to_string(neg.chosen_convention)}},
                     std::abs(state.norm_sq() - 1.0), elapsed_ms(start), {opt.out});
    }
    return;
  }

  if (opt.walk != "alternate") {
    throw std::invalid_argument("entangle: sweeps apply to the alternate walk only");
  }
  const std::vector<double> thetas = qw::theta_grid(opt.theta_points);
  std::vector<double> phis;
  if (opt.phi_points > 0) {
    phis = qw::phi_grid(opt.phi_points);
  } else if (!std::isnan(opt.phi)) {
    phis = {opt.phi};
  } else {
    throw std::invalid_argument("entangle: sweep needs --phi-points or --phi");
  }
  const auto points = qw::entanglement_sweep(thetas, phis, opt.t, worker_threads());

  double worst_norm = 0.0;
  for (const auto& p : points) worst_norm = std::max(worst_norm, p.norm_residual);

  if (opt.out.empty()) {
    throw std::invalid_argument("entangle: sweep mode requires --out");
  }
  auto out = open_out(opt.out);
  out << "theta,phi,n\n";
  // (phi, theta) ascending; grid order is theta-major
  for (size_t j = 0; j < phis.size(); ++j) {
    for (size_t i = 0; i < thetas.size(); ++i) {
      const auto& p = points[i * phis.size() + j];
      out << fmt(p.theta) << ',' << fmt(p.phi) << ',' << fmt(p.neg.calibrated()) << '\n';
    }
  }
  out.close();
  write_manifest("entangle",
                 {{"walk", opt.walk},
                  {"t", opt.t},
                  {"theta_points", opt.theta_points},
                  {"phi_points", opt.phi_points},
                  {"phi", std::isnan(opt.phi) ? json() : json(opt.phi)},
                  {"threads", worker_threads()},
                  {"convention", qw::to_string(qw::kCalibratedConvention)}},
                 worst_norm, elapsed_ms(start), {opt.out});
}

// ------------------------------------------------------------------- limit

struct LimitOpts {
  double gamma = kPi / 4.0;
  std::string init = "symmetric";
  int grid_points = 201;
  int quad_points = 1024;
  std::string t_list = "100,200,400";
  std::string density_out = "limit_density.csv";
  std::string convergence_out = "limit_convergence.csv";
};

void run_limit(const LimitOpts& opt) {
  const auto start = Clock::now();
  const qw::LimitDensityParams ldp{qw::CoinParams(opt.gamma), parse_init2(opt.init)};
  if (opt.grid_points < 2) throw std::invalid_argument("limit: grid-points must be >= 2");

  std::vector<int> t_list;
  std::stringstream ss(opt.t_list);
  for (std::string item; std::getline(ss, item, ',');) {
    t_list.push_back(std::stoi(item));
  }

  {
    auto out = open_out(opt.density_out);
    out << "x,y,f\n";
    const int g = opt.grid_points;
    for (int j = 0; j < g; ++j) {
      const double y = -1.0 + 2.0 * j / (g - 1);
      for (int i = 0; i < g; ++i) {
        const double x = -1.0 + 2.0 * i / (g - 1);
        out << fmt(x) << ',' << fmt(y) << ',' << fmt(qw::limit_density(x, y, ldp))
            << '\n';
      }
    }
  }

  static const std::vector<std::pair<int, int>> kOrders = {
      {1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}};
  const auto rows = qw::convergence_report(ldp, t_list, kOrders, opt.quad_points);
  {
    auto out = open_out(opt.convergence_out);
    out << "t,r1,r2,simulated,limit,gap\n";
    for (const auto& r : rows) {
      out << r.t << ',' << r.r1 << ',' << r.r2 << ',' << fmt(r.simulated) << ','
          << fmt(r.limit) << ',' << fmt(r.gap) << '\n';
    }
  }

  const double normalization = qw::density_normalization(ldp, opt.quad_points);
  std::printf("normalization integral = %.6f (quad points %d)\n", normalization,
              opt.quad_points);
  write_manifest("limit",
                 {{"gamma", opt.gamma},
                  {"init", opt.init},
                  {"grid_points", opt.grid_points},
                  {"quad_points", opt.quad_points},
                  {"t_list", opt.t_list},
                  {"normalization", normalization}},
                 0.0, elapsed_ms(start), {opt.density_out, opt.convergence_out});
}

// ----------------------------------------------------------------- compare

struct CompareOpts {
  std::string a;
  std::string b;
  double tol = std::numeric_limits<double>::quiet_NaN();
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file: " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void run_compare(const CompareOpts& opt) {
  const auto a = read_lines(opt.a);
  const auto b = read_lines(opt.b);
  if (a.size() != b.size()) {
    throw std::invalid_argument("compare: grids have different row counts (window mismatch)");
  }
  double worst = 0.0;
  std::string worst_site;
  for (size_t i = 1; i < a.size(); ++i) {  // skip header
    const size_t ca = a[i].rfind(',');
    const size_t cb = b[i].rfind(',');
    if (a[i].substr(0, ca) != b[i].substr(0, cb)) {
      throw std::invalid_argument("compare: site mismatch at row " + std::to_string(i));
    }
    const double diff =
        std::abs(std::stod(a[i].substr(ca + 1)) - std::stod(b[i].substr(cb + 1)));
    if (diff > worst) {
      worst = diff;
      worst_site = a[i].substr(0, ca);
    }
  }
  std::printf("max |delta| = %s%s%s\n", fmt(worst).c_str(),
              worst_site.empty() ? "" : " at ", worst_site.c_str());
  if (!std::isnan(opt.tol) && worst > opt.tol) {
    throw ToleranceFailure("distributions differ beyond tolerance");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-dimensional coined quantum walk simulator and verifier"};
  app.require_subcommand(1);
  app.set_config("--config");

  SimulateOpts sim;
  auto* c_sim = app.add_subcommand("simulate", "evolve a walk and write P(x,y) as CSV");
  c_sim->add_option("--walk", sim.walk, "alternate|grover");
  c_sim->add_option("--gamma", sim.gamma, "coin angle in radians");
  c_sim->add_option("--init", sim.init,
                    "symmetric|ket0|ket1|psi2|bloch:<theta>:<phi>|grover-nonlocalized");
  c_sim->add_option("--xi", sim.xi, "sign index of the four-level paired init");
  c_sim->add_option("--t", sim.t, "number of steps");
  c_sim->add_option("--out", sim.out, "output CSV path");

  VerifyOpts ver;
  auto* c_ver = app.add_subcommand("verify", "certify the walk equivalence numerically");
  c_ver->add_option("--gamma", ver.gamma, "coin angle in radians");
  c_ver->add_option("--xi", ver.xi, "four-level init sign index (0|1)");
  c_ver->add_option("--kappa", ver.kappa, "two-level init sign index (0|1)");
  c_ver->add_option("--t-max", ver.t_max, "verify every step up to this t");
  c_ver->add_option("--init", ver.init, "override the paired alternate init");
  c_ver->add_option("--out", ver.out, "optional per-step residual CSV");

  EntangleOpts ent;
  auto* c_ent = app.add_subcommand("entangle", "x-y spatial entanglement (negativity)");
  c_ent->add_option("--walk", ent.walk, "alternate|grover");
  c_ent->add_option("--init", ent.init, "two-level init preset (single-value mode)");
  c_ent->add_option("--t", ent.t, "number of steps");
  c_ent->add_option("--theta-points", ent.theta_points, "sweep grid size in theta");
  c_ent->add_option("--phi-points", ent.phi_points, "sweep grid size in phi");
  c_ent->add_option("--phi", ent.phi, "fixed phi for a theta slice");
  c_ent->add_option("--out", ent.out, "output CSV path");

  LimitOpts lim;
  auto* c_lim = app.add_subcommand("limit", "limit density and convergence report");
  c_lim->add_option("--gamma", lim.gamma, "coin angle in radians");
  c_lim->add_option("--init", lim.init, "two-level init preset");
  c_lim->add_option("--grid-points", lim.grid_points, "density lattice points per axis");
  c_lim->add_option("--quad-points", lim.quad_points, "quadrature points");
  c_lim->add_option("--t-list", lim.t_list, "comma-separated step counts");
  c_lim->add_option("--density-out", lim.density_out, "density CSV path");
  c_lim->add_option("--convergence-out", lim.convergence_out, "convergence CSV path");

  CompareOpts cmp;
  auto* c_cmp = app.add_subcommand("compare", "max |delta P| between two grid CSVs");
  c_cmp->add_option("--a", cmp.a, "first grid CSV")->required();
  c_cmp->add_option("--b", cmp.b, "second grid CSV")->required();
  c_cmp->add_option("--tol", cmp.tol, "fail (exit 2) if the distance exceeds this");

  try {
    app.parse(argc, argv);
    if (c_sim->parsed()) run_simulate(sim);
    if (c_ver->parsed()) run_verify(ver);
    if (c_ent->parsed()) run_entangle(ent);
    if (c_lim->parsed()) run_limit(lim);
    if (c_cmp->parsed()) run_compare(cmp);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitValidation;
  } catch (const ToleranceFailure& e) {
    std::cerr << "FAIL: " << e.what() << "\n";
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
