#pragma once

#include <stdexcept>
#include <string>

namespace ladder {

namespace constants {
// CODATA 2018
inline constexpr double hbar = 1.054571817e-34;    // J s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double c_light = 2.99792458e8;    // m/s
}  // namespace constants

// Thrown when a configuration is outside the regime for which the exact
// diagonal steady state exists (interfering dipoles with nbar1 != nbar2).
// The numerical oracle still accepts such configurations.
class ClosedFormUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when photon statistics are requested at zero emitted intensity.
class UndefinedStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One atomic transition: frequency, dipole moment and half-width gamma
// (2*gamma is the natural line width).
struct TransitionSpec {
  double omega = 0.0;   // rad/s
  double dipole = 0.0;  // C m
  double gamma = 0.0;   // 1/s

  // gamma from (omega, dipole): 2*gamma = 4 d^2 w^3 / (3 hbar c^3).
  static TransitionSpec from_dipole(double omega, double dipole);
};

// Mean reservoir occupation at a transition frequency.
double nbar_thermal(double omega, double temperature);
// Incoherent pump conversion: nbar = R d^2 / (gamma hbar^2).
double nbar_pump(double pump_strength, double dipole, double gamma);

enum class DipoleMode { orthogonal, interfering };

struct EnsembleConfig {
  int n_atoms = 1;
  // Mean reservoir occupations at the two transitions. +infinity marks the
  // strong-field (eta = 1) limit.
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double theta = 1.5707963267948966;  // angle between d12 and d23, radians
  DipoleMode mode = DipoleMode::orthogonal;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double dipole_ratio = 1.0;  // |d12| / |d23|
  double omega12 = 0.0;
  double omega23 = 0.0;
};

void validate(const EnsembleConfig& config);  // throws std::domain_error

struct DerivedParams {
  double eta1 = 0.0;  // nbar1 / (1 + nbar1)
  double eta2 = 0.0;
  double xi1 = 0.0;   // -log(eta1); +inf at eta1 = 0
  double xi3 = 0.0;   // orthogonal: log(eta2); interfering: -xi1
  double gamma12 = 0.0;
  double gamma21 = 0.0;
  bool strong_field = false;  // eta1 = eta2 = 1 limit flag
};

// Dimensionless parameterization of the steady state. Throws
// ClosedFormUnavailable for interfering dipoles with nbar1 != nbar2.
DerivedParams derive(const EnsembleConfig& config);

// Cross-damping rates alone; valid for every configuration (oracle path).
// gamma12 = gamma2 * r * cos(theta), gamma21 = gamma1 * cos(theta) / r.
struct CrossDamping {
  double gamma12 = 0.0;
  double gamma21 = 0.0;
};
CrossDamping cross_damping(const EnsembleConfig& config);

struct ApplicabilityReport {
  double delta = 0.0;      // |omega12 - omega23|
  double gamma_eff = 0.0;  // N * gamma * (1 + nbar)
  bool applicable = false;
  std::string note;
};

// Advisory check of the cross-damping treatment: interference terms matter
// when delta <= gamma_eff. Never blocks a computation.
ApplicabilityReport interference_applicability(const EnsembleConfig& config,
                                               double omega12, double omega23);

}  // namespace ladder
