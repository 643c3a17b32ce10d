#include "ladder/reservoir.hpp"

#include <cmath>
#include <limits>

namespace ladder {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double eta_of(double nbar) {
  if (std::isinf(nbar)) return 1.0;
  return nbar / (1.0 + nbar);
}
}  // namespace

TransitionSpec TransitionSpec::from_dipole(double omega, double dipole) {
  if (omega <= 0.0 || dipole <= 0.0) {
    throw std::domain_error("TransitionSpec: omega and dipole must be positive");
  }
  const double c3 = constants::c_light * constants::c_light * constants::c_light;
  const double gamma =
      2.0 * dipole * dipole * omega * omega * omega / (3.0 * constants::hbar * c3);
  return TransitionSpec{omega, dipole, gamma};
}

double nbar_thermal(double omega, double temperature) {
  if (omega <= 0.0) throw std::domain_error("nbar_thermal: omega must be positive");
  if (temperature <= 0.0) {
    throw std::domain_error("nbar_thermal: temperature must be positive");
  }
  const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
  // expm1 keeps the T -> 0 tail finite (returns 0 instead of overflowing).
  const double denom = std::expm1(x);
  if (std::isinf(denom)) return 0.0;
  return 1.0 / denom;
}

double nbar_pump(double pump_strength, double dipole, double gamma) {
  if (pump_strength < 0.0) throw std::domain_error("nbar_pump: R must be >= 0");
  if (dipole <= 0.0) throw std::domain_error("nbar_pump: dipole must be positive");
  if (gamma <= 0.0) throw std::domain_error("nbar_pump: gamma must be positive");
  return pump_strength * dipole * dipole / (gamma * constants::hbar * constants::hbar);
}

void validate(const EnsembleConfig& config) {
  if (config.n_atoms < 1) {
    throw std::domain_error("EnsembleConfig: n_atoms must be >= 1");
  }
  if (config.nbar1 < 0.0 || config.nbar2 < 0.0 || std::isnan(config.nbar1) ||
      std::isnan(config.nbar2)) {
    throw std::domain_error("EnsembleConfig: reservoir occupations must be >= 0");
  }
  if (config.theta < 0.0 || config.theta > 3.14159265358979324) {
    throw std::domain_error("EnsembleConfig: theta must lie in [0, pi]");
  }
  if (config.gamma1 <= 0.0 || config.gamma2 <= 0.0) {
    throw std::domain_error("EnsembleConfig: decay rates must be positive");
  }
  if (config.dipole_ratio <= 0.0) {
    throw std::domain_error("EnsembleConfig: dipole ratio must be positive");
  }
}

CrossDamping cross_damping(const EnsembleConfig& config) {
  validate(config);
  if (config.mode == DipoleMode::orthogonal) {
    return CrossDamping{0.0, 0.0};
  }
  const double ct = std::cos(config.theta);
  return CrossDamping{config.gamma2 * config.dipole_ratio * ct,
                      config.gamma1 * ct / config.dipole_ratio};
}

DerivedParams derive(const EnsembleConfig& config) {
  validate(config);
  DerivedParams p;
  p.eta1 = eta_of(config.nbar1);
  p.eta2 = eta_of(config.nbar2);
  p.strong_field = (p.eta1 == 1.0 && p.eta2 == 1.0);

  if (config.mode == DipoleMode::interfering && config.nbar1 != config.nbar2) {
    throw ClosedFormUnavailable(
        "interfering dipoles with nbar1 != nbar2 have no exact diagonal "
        "steady state; use the numerical oracle");
  }

  // xi1 = log[(1+nbar1)/nbar1] = -log(eta1); xi3 = log[nbar2/(1+nbar2)] in
  // orthogonal mode, -xi1 in interfering mode.
  p.xi1 = (p.eta1 == 0.0) ? kInf : -std::log(p.eta1);
  if (config.mode == DipoleMode::interfering) {
    p.xi3 = -p.xi1;
  } else {
    p.xi3 = (p.eta2 == 0.0) ? -kInf : std::log(p.eta2);
  }

  const CrossDamping cd = cross_damping(config);
  p.gamma12 = cd.gamma12;
  p.gamma21 = cd.gamma21;
  return p;
}

ApplicabilityReport interference_applicability(const EnsembleConfig& config,
                                               double omega12, double omega23) {
  validate(config);
  if (omega12 <= 0.0 || omega23 <= 0.0) {
    throw std::domain_error("interference_applicability: frequencies must be positive");
  }
  ApplicabilityReport rep;
  rep.delta = std::abs(omega12 - omega23);
  const double nbar = std::max(config.nbar1, config.nbar2);
  const double gamma = std::max(config.gamma1, config.gamma2);
  rep.gamma_eff = std::isinf(nbar) ? kInf : config.n_atoms * gamma * (1.0 + nbar);
  rep.applicable = rep.delta <= rep.gamma_eff;
  rep.note = rep.applicable
                 ? "transition splitting within the collective line width"
                 : "transitions too far detuned for cross-damping to matter";
  return rep;
}

}  // namespace ladder
