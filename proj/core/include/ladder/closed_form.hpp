#pragma once

#include <functional>
#include <vector>

#include "ladder/basis.hpp"
#include "ladder/observables.hpp"
#include "ladder/reservoir.hpp"

namespace ladder {

// Normalized diagonal steady state over the symmetric basis,
// w(n,m) proportional to eta1^n * eta2^m.
struct SteadyWeights {
  BasisMap basis;
  std::vector<double> w;  // sums to 1
  double log_z = 0.0;     // log of the normalization actually used
};

SteadyWeights steady_weights(const EnsembleConfig& config);

// Closed-form partition function Z(xi1, xi3) for finite xi. Removable
// singularities (xi1 = 0, xi3 = 0, xi1 = xi3) are evaluated by explicit
// limit branches.
double partition_function(double xi1, double xi3, int n_atoms);

// Independent brute-force double sum; verification counterpart of
// partition_function.
double partition_function_direct(double xi1, double xi3, int n_atoms);

struct Populations {
  double s11 = 0.0;
  double s22 = 0.0;
  double s33 = 0.0;
};

// Primary route: basis sums over the steady weights.
Populations populations(const EnsembleConfig& config);

// Printed closed forms; verification only, restricted to
// eta in (0,1) with |1 - eta_i| and |1 - eta1*eta2| above 1e-6.
Populations populations_closed_form(double eta1, double eta2, int n_atoms);

// Weak-bath large-N approximation; caller asserts eta^N is negligible.
Populations populations_weak_large(double eta1, double eta2, int n_atoms);

struct SzMoments {
  double sz = 0.0;
  double sz2 = 0.0;
};

// Basis sums of (n + m - N)^k; valid for any configuration with steady weights.
SzMoments sz_moments(const EnsembleConfig& config);

// Closed forms in the single-eta parameterization (verification).
double sz_closed_form(double eta, int n_atoms);
double sz2_closed_form(double eta, int n_atoms);

// Moments by numerical differentiation of log Z(xi) (verification).
SzMoments sz_moments_by_differentiation(double eta, int n_atoms);

struct Intensities {
  double g1_1 = 0.0;
  double g1_2 = 0.0;
};

// Primary route: <S12 S21> and <S23 S32> by basis sums. Finite for every
// configuration including the strong-field limit.
Intensities intensities_distinguishable(const EnsembleConfig& config);

// Printed forms with the eta/(1-eta) prefactor (verification); the
// strong-field limit returns N(3+N)/12 for both channels.
Intensities intensities_closed_form(const EnsembleConfig& config);

// g2_ij with J1 = S21, J2 = S32; fourth-order correlators evaluated as
// normally ordered basis sums. Throws UndefinedStatistics at zero intensity.
double g2_distinguishable(const EnsembleConfig& config, int i, int j);

struct TotalFieldObservables {
  double g1_total = 0.0;
  double g2_total = 0.0;
};

// Indistinguishable-photon intensity and g2(0) from the inversion moments,
// with explicit branches for the eta = 1 limit.
TotalFieldObservables observables_indistinguishable(const EnsembleConfig& config);

// Everything at once, basis-sum route. Undefined entries are NaN.
ObservableReport compute_report(const EnsembleConfig& config);

// Locate an interior extremum of f on (lo, hi) by golden-section search to
// absolute tolerance tol in the argument. minimize=false searches for a maximum.
double golden_section_extremum(const std::function<double(double)>& f, double lo,
                               double hi, bool minimize, double tol = 1e-4);

}  // namespace ladder
