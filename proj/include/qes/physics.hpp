#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qes/model.hpp"
#include "qes/oracle.hpp"
#include "qes/variational.hpp"

/// Dirac oscillator in the two Lorentz-violating backgrounds, reduced to the
/// generic radial problem. Units hbar = c = 1. The spin label is called
/// sigma here so that s stays the Frobenius exponent.
namespace qes {

enum class Spin : int { Up = 1, Down = -1 };
enum class Branch { Particle, Antiparticle };
enum class SpectrumProvider { Variational, FiniteDifference };

std::string to_string(Branch branch);

/// Scenario 1: Coulomb-like term induced by a radial electric field.
struct Scenario1Params {
  double m = 1.0;
  double omega = 1.0;
  int l = 0;
  Spin sigma = Spin::Up;
  double ag_lambda = 0.0;  ///< product a g lambda
};

/// Scenario 2: uniform magnetic background, linear and Coulomb-like terms.
struct Scenario2Params {
  double m = 1.0;
  double omega = 1.0;
  int l = 0;
  Spin sigma = Spin::Up;
  double aB0g = 0.0;  ///< product a B0 g
};

struct EnergyLevel {
  double E = 0.0;
  int level = 0;
  double W = 0.0;
  Branch branch = Branch::Particle;
  double defect = 0.0;  ///< |W_level(map(E)) - W_target(E)| on back-substitution
};

struct SolveOptions {
  SpectrumProvider provider = SpectrumProvider::Variational;
  RitzOptions ritz;
  std::optional<GridSpec> grid;  ///< finite-difference grid; default per parameters
  int scan_intervals = 400;      ///< sign-change scan resolution for scenario 1
};

struct Scenario1Map {
  RadialParameters params;  ///< gamma^2 = [l + (1-sigma)/2]^2 - (ag lambda)^2, a = beta(E), b = 0
  double target_W = 0.0;    ///< alpha^2 / (m omega)
};

/// Throws NegativeGammaSquared when (ag lambda)^2 exceeds [l + (1-sigma)/2]^2.
Scenario1Map map_scenario1(const Scenario1Params& p, double E);

/// Affine relation E^2 = m omega W + m^2 - 2 m omega (l + 1/2) sigma - m omega + (aB0g)^2
/// together with the generic parameters (a = -tau, b = eta).
struct Scenario2Map {
  RadialParameters params;
  double m = 1.0;
  double omega = 1.0;
  int l = 0;
  int sigma = 1;
  double aB0g = 0.0;

  double energy_squared(double W) const;
  double eigenvalue_for(double E) const;
};

Scenario2Map map_scenario2(const Scenario2Params& p);

/// E^2 when all couplings vanish: m^2 + m omega [2(2j + gamma + 1) - 2(l + 1/2) sigma - 1].
double decoupled_energy_squared(double m, double omega, int l, Spin sigma, int level);

/// Every root of W_level(beta(E)) = alpha^2(E)/(m omega) on one branch,
/// scanning E in [0, m + 10 sqrt(m omega (level + |l| + 2))] (mirrored for
/// the antiparticle). Throws NoRoot when none is bracketed.
std::vector<EnergyLevel> scenario1_energies(const Scenario1Params& p, int level, Branch branch,
                                            const SolveOptions& options = {});
/// The root nearest the decoupled estimate.
EnergyLevel solve_scenario1_energy(const Scenario1Params& p, int level, Branch branch,
                                   const SolveOptions& options = {});

/// Throws TachyonicLevel when the affine relation gives E^2 < 0.
EnergyLevel solve_scenario2_energy(const Scenario2Params& p, int level, Branch branch,
                                   const SolveOptions& options = {});

struct ScanRow {
  double omega = 0.0;
  double E_particle = 0.0;
  double E_antiparticle = 0.0;
  double W = 0.0;       ///< generic eigenvalue on the particle branch
  double defect = 0.0;  ///< worst back-substitution defect of the two branches
  bool ok = false;
  std::string error;
};

/// Energies at every omega. Failures are recorded per row, never thrown.
std::vector<ScanRow> frequency_scan(const Scenario1Params& base, int level, std::span<const double> omegas,
                                    const SolveOptions& options = {});
std::vector<ScanRow> frequency_scan(const Scenario2Params& base, int level, std::span<const double> omegas,
                                    const SolveOptions& options = {});

/// CSV with header `omega,E_particle,E_antiparticle,W,defect`.
void write_csv(std::ostream& out, std::span<const ScanRow> rows);

}  // namespace qes
