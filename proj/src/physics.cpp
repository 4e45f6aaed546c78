#include "qes/physics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "qes/format.hpp"

namespace qes {

namespace {

double spin_value(Spin sigma) { return static_cast<double>(static_cast<int>(sigma)); }

double angular_exponent(int l, Spin sigma) { return l + 0.5 * (1.0 - spin_value(sigma)); }

void check_oscillator(double m, double omega) {
  if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorKind::InvalidArgument, "mass must be positive and finite");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::InvalidArgument, "frequency must be positive and finite");
  }
}

// W_level(a, b) at fixed gamma^2 from the configured solver.
class LevelProvider {
 public:
  LevelProvider(double gamma_sq, int level, const SolveOptions& options)
      : gamma_sq_(gamma_sq), level_(level), options_(options) {
    if (level < 0) throw Error(ErrorKind::InvalidArgument, "level must be >= 0");
    if (options.provider == SpectrumProvider::Variational) {
      solver_ = std::make_shared<const RitzSolver>(gamma_sq, options.ritz);
      if (level >= solver_->reduced().size()) throw Error(ErrorKind::InvalidArgument, "level exceeds the basis size");
    }
  }

  double operator()(double a, double b) const {
    if (solver_) return solver_->eigenvalue(a, b, level_);
    const RadialParameters p = make_parameters(gamma_sq_, a, b);
    const GridSpec grid = options_.grid.value_or(GridSpec::for_parameters(p));
    return fd_spectrum(p, grid, level_ + 1).back();
  }

 private:
  double gamma_sq_;
  int level_;
  SolveOptions options_;
  std::shared_ptr<const RitzSolver> solver_;
};

double scenario1_gamma_sq(const Scenario1Params& p) {
  const double nu = angular_exponent(p.l, p.sigma);
  return nu * nu - p.ag_lambda * p.ag_lambda;
}

double beta_of(const Scenario1Params& p, double E) { return 2.0 * p.ag_lambda * E / std::sqrt(p.m * p.omega); }

double alpha_sq_over_m_omega(const Scenario1Params& p, double E) {
  const double mw = p.m * p.omega;
  return (E * E - p.m * p.m + 2.0 * mw * (p.l + 0.5) * spin_value(p.sigma) + mw) / mw;
}

double scenario1_window(const Scenario1Params& p, int level) {
  return p.m + 10.0 * std::sqrt(p.m * p.omega * (level + std::abs(p.l) + 2));
}

std::vector<EnergyLevel> scenario1_roots(const Scenario1Params& p, int level, Branch branch,
                                         const LevelProvider& provider, int intervals) {
  const double sign = branch == Branch::Particle ? 1.0 : -1.0;
  auto defect = [&](double E) { return provider(beta_of(p, E), 0.0) - alpha_sq_over_m_omega(p, E); };

  const double span = scenario1_window(p, level);
  std::vector<double> grid(static_cast<std::size_t>(intervals) + 1);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid[k] = sign * span * static_cast<double>(k) / intervals;
    values[k] = defect(grid[k]);
  }

  std::vector<EnergyLevel> roots;
  auto record = [&](double E) {
    EnergyLevel lv;
    lv.E = E;
    lv.level = level;
    lv.W = provider(beta_of(p, E), 0.0);
    lv.branch = branch;
    lv.defect = std::abs(lv.W - alpha_sq_over_m_omega(p, E));
    roots.push_back(lv);
  };
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (values[k] == 0.0) {
      record(grid[k]);
      continue;
    }
    if (values[k] * values[k + 1] >= 0.0) continue;
    double lo = grid[k], hi = grid[k + 1];
    double f_lo = values[k];
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const double f_mid = defect(mid);
      if (f_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((f_mid < 0.0) == (f_lo < 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    record(0.5 * (lo + hi));
  }
  if (values.back() == 0.0) record(grid.back());
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no sign change of the scenario-1 defect for |E| <= " << span << " (level " << level << ", "
        << to_string(branch) << ")";
    throw Error(ErrorKind::NoRoot, msg.str());
  }
  return roots;
}

EnergyLevel nearest_to_decoupled(const Scenario1Params& p, int level, Branch branch,
                                 const std::vector<EnergyLevel>& roots) {
  const double center = std::sqrt(std::max(0.0, decoupled_energy_squared(p.m, p.omega, p.l, p.sigma, level))) *
                        (branch == Branch::Particle ? 1.0 : -1.0);
  return *std::min_element(roots.begin(), roots.end(), [&](const EnergyLevel& x, const EnergyLevel& y) {
    return std::abs(x.E - center) < std::abs(y.E - center);
  });
}

EnergyLevel scenario2_level(const Scenario2Map& map, int level, Branch branch, const LevelProvider& provider) {
  EnergyLevel lv;
  lv.level = level;
  lv.branch = branch;
  lv.W = provider(map.params.a, map.params.b);
  const double E_sq = map.energy_squared(lv.W);
  if (E_sq < 0.0) {
    std::ostringstream msg;
    msg << "E^2 = " << E_sq << " < 0 at level " << level;
    throw Error(ErrorKind::TachyonicLevel, msg.str());
  }
  lv.E = std::sqrt(E_sq) * (branch == Branch::Particle ? 1.0 : -1.0);
  lv.defect = std::abs(map.eigenvalue_for(lv.E) - lv.W);
  return lv;
}

}  // namespace

std::string to_string(Branch branch) { return branch == Branch::Particle ? "particle" : "antiparticle"; }

Scenario1Map map_scenario1(const Scenario1Params& p, double E) {
  check_oscillator(p.m, p.omega);
  Scenario1Map map;
  map.params = make_parameters(scenario1_gamma_sq(p), beta_of(p, E), 0.0);
  map.target_W = alpha_sq_over_m_omega(p, E);
  return map;
}

double Scenario2Map::energy_squared(double W) const {
  const double mw = m * omega;
  return mw * W + m * m - 2.0 * mw * (l + 0.5) * sigma - mw + aB0g * aB0g;
}

double Scenario2Map::eigenvalue_for(double E) const {
  const double mw = m * omega;
  return (E * E - m * m + 2.0 * mw * (l + 0.5) * sigma + mw - aB0g * aB0g) / mw;
}

Scenario2Map map_scenario2(const Scenario2Params& p) {
  check_oscillator(p.m, p.omega);
  const double nu = angular_exponent(p.l, p.sigma);
  const double root_mw = std::sqrt(p.m * p.omega);
  const double tau = 2.0 * p.aB0g * (p.l + 0.5) / root_mw;
  const double eta = 2.0 * p.aB0g * spin_value(p.sigma) / root_mw;
  Scenario2Map map;
  // The scenario carries +tau/x where the generic problem carries -a/x.
  map.params = make_parameters(nu * nu, -tau, eta);
  map.m = p.m;
  map.omega = p.omega;
  map.l = p.l;
  map.sigma = static_cast<int>(p.sigma);
  map.aB0g = p.aB0g;
  return map;
}

double decoupled_energy_squared(double m, double omega, int l, Spin sigma, int level) {
  const double gamma = std::abs(angular_exponent(l, sigma));
  return m * m + m * omega * (2.0 * (2.0 * level + gamma + 1.0) - 2.0 * (l + 0.5) * spin_value(sigma) - 1.0);
}

std::vector<EnergyLevel> scenario1_energies(const Scenario1Params& p, int level, Branch branch,
                                            const SolveOptions& options) {
  const Scenario1Map probe = map_scenario1(p, 0.0);
  if (options.scan_intervals < 2) throw Error(ErrorKind::InvalidArgument, "scan_intervals must be >= 2");
  const LevelProvider provider(probe.params.gamma_sq, level, options);
  return scenario1_roots(p, level, branch, provider, options.scan_intervals);
}

EnergyLevel solve_scenario1_energy(const Scenario1Params& p, int level, Branch branch, const SolveOptions& options) {
  return nearest_to_decoupled(p, level, branch, scenario1_energies(p, level, branch, options));
}

EnergyLevel solve_scenario2_energy(const Scenario2Params& p, int level, Branch branch, const SolveOptions& options) {
  const Scenario2Map map = map_scenario2(p);
  const LevelProvider provider(map.params.gamma_sq, level, options);
  return scenario2_level(map, level, branch, provider);
}

std::vector<ScanRow> frequency_scan(const Scenario1Params& base, int level, std::span<const double> omegas,
                                    const SolveOptions& options) {
  const Scenario1Map probe = map_scenario1(base, 0.0);  // gamma^2 does not depend on omega
  const LevelProvider provider(probe.params.gamma_sq, level, options);
  std::vector<ScanRow> rows;
  rows.reserve(omegas.size());
  for (double omega : omegas) {
    ScanRow row;
    row.omega = omega;
    try {
      Scenario1Params p = base;
      p.omega = omega;
      check_oscillator(p.m, p.omega);
      const auto particle = nearest_to_decoupled(
          p, level, Branch::Particle, scenario1_roots(p, level, Branch::Particle, provider, options.scan_intervals));
      const auto antiparticle = nearest_to_decoupled(
          p, level, Branch::Antiparticle,
          scenario1_roots(p, level, Branch::Antiparticle, provider, options.scan_intervals));
      row.E_particle = particle.E;
      row.E_antiparticle = antiparticle.E;
      row.W = particle.W;
      row.defect = std::max(particle.defect, antiparticle.defect);
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScanRow> frequency_scan(const Scenario2Params& base, int level, std::span<const double> omegas,
                                    const SolveOptions& options) {
  const Scenario2Map probe = map_scenario2(base);  // gamma^2 does not depend on omega
  const LevelProvider provider(probe.params.gamma_sq, level, options);
  std::vector<ScanRow> rows;
  rows.reserve(omegas.size());
  for (double omega : omegas) {
    ScanRow row;
    row.omega = omega;
    try {
      Scenario2Params p = base;
      p.omega = omega;
      const Scenario2Map map = map_scenario2(p);
      const auto particle = scenario2_level(map, level, Branch::Particle, provider);
      row.E_particle = particle.E;
      row.E_antiparticle = -particle.E;
      row.W = particle.W;
      row.defect = particle.defect;
      row.ok = true;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& out, std::span<const ScanRow> rows) {
  out << "omega,E_particle,E_antiparticle,W,defect\n";
  for (const auto& row : rows) {
    if (!row.ok) {
      out << format_number(row.omega) << ",nan,nan,nan,nan\n";
      continue;
    }
    out << format_number(row.omega) << "," << format_number(row.E_particle) << ","
        << format_number(row.E_antiparticle) << "," << format_number(row.W) << "," << format_number(row.defect)
        << "\n";
  }
}

}  // namespace qes
