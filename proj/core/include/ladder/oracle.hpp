#pragma once

#include <iosfwd>
#include <utility>

#include <Eigen/Core>

#include "ladder/basis.hpp"
#include "ladder/observables.hpp"
#include "ladder/reservoir.hpp"

namespace ladder {

// Collective density matrix over the symmetric basis.
struct DensityOperator {
  BasisMap basis;
  Eigen::MatrixXcd rho;
};

DensityOperator ground_state(int n_atoms);

enum class GeneratorStructure { dissipative_only, with_hamiltonian };

// Master-equation generator as a dense matrix acting on the row-major
// vectorization of rho: vec(rho)[i*d + j] = rho(i,j).
struct GeneratorMatrix {
  BasisMap basis;
  Eigen::MatrixXcd liouvillian;  // (d^2) x (d^2)
  GeneratorStructure structure = GeneratorStructure::dissipative_only;
};

// Assembles the full generator including cross-damping terms. Dense storage;
// refuses ensembles above max_atoms (default keeps d^2 <= 2025).
GeneratorMatrix build_generator(const EnsembleConfig& config,
                                GeneratorStructure structure =
                                    GeneratorStructure::dissipative_only,
                                int max_atoms = 8);

Eigen::MatrixXcd apply_generator(const GeneratorMatrix& gen,
                                 const Eigen::MatrixXcd& rho);

struct SolveReport {
  enum class Method { null_space, time_evolution };
  Method method = Method::null_space;
  double residual = 0.0;  // max-norm of L(rho)
  int iterations = 0;     // accepted steps for time evolution
  int nullity = 1;
};

// Steady state from the kernel of the vectorized generator plus the unit
// trace constraint. Throws if the numerical nullity differs from 1 or the
// result fails the Hermiticity/positivity checks.
std::pair<DensityOperator, SolveReport> steady_state_null(const GeneratorMatrix& gen);

// Adaptive explicit integration of drho/dt = L(rho) until the residual drops
// below tol or the horizon is reached.
std::pair<DensityOperator, SolveReport> steady_state_evolve(
    const GeneratorMatrix& gen, const DensityOperator& rho0, double horizon,
    double tol);

// Populations, inversion moments, intensities and every g2 channel as matrix
// traces; valid for non-diagonal rho.
ObservableReport oracle_observables(const DensityOperator& rho);

// Text dumps for external inspection: one CSV row per matrix row, complex
// entries as re,im pairs.
void write_generator_csv(const GeneratorMatrix& gen, std::ostream& out);
void write_state_csv(const DensityOperator& rho, std::ostream& out);

}  // namespace ladder
