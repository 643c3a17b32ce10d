#include "ladder/oracle.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace ladder {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using std::complex;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MatrixXcd unvec(const VectorXcd& v, int d) {
  MatrixXcd rho(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  }
  return rho;
}

VectorXcd vec(const MatrixXcd& rho) {
  const int d = static_cast<int>(rho.rows());
  VectorXcd v(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  }
  return v;
}

void check_density(const MatrixXcd& rho) {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-8) {
    throw std::runtime_error("density operator lost Hermiticity");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(
      MatrixXcd(0.5 * (rho + rho.adjoint())), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    std::ostringstream msg;
    msg << "density operator not positive: min eigenvalue "
        << es.eigenvalues().minCoeff();
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

DensityOperator ground_state(int n_atoms) {
  BasisMap basis(n_atoms);
  MatrixXcd rho = MatrixXcd::Zero(basis.size(), basis.size());
  const int k = basis.index_of(BasisIndex{0, 0, n_atoms});
  rho(k, k) = 1.0;
  return DensityOperator{basis, std::move(rho)};
}

GeneratorMatrix build_generator(const EnsembleConfig& config,
                                GeneratorStructure structure, int max_atoms) {
  validate(config);
  if (std::isinf(config.nbar1) || std::isinf(config.nbar2)) {
    throw std::domain_error(
        "build_generator: reservoir occupations must be finite");
  }
  if (config.n_atoms > max_atoms) {
    throw std::domain_error("build_generator: ensemble exceeds the memory budget");
  }
  BasisMap basis(config.n_atoms);
  const int d = basis.size();

  const MatrixXd s12 = operator_matrix(kS12, basis);
  const MatrixXd s21 = operator_matrix(kS21, basis);
  const MatrixXd s23 = operator_matrix(kS23, basis);
  const MatrixXd s32 = operator_matrix(kS32, basis);
  const MatrixXd id = MatrixXd::Identity(d, d);

  const CrossDamping cd = cross_damping(config);
  const double g1 = config.gamma1, g2 = config.gamma2;

  // Terms of the master equation: -factor * [A, B rho] + H.c.
  struct Term {
    double factor;
    const MatrixXd* a;
    MatrixXd b;
  };
  const Term terms[4] = {
      {1.0 + config.nbar1, &s12, g1 * s21 + cd.gamma21 * s32},
      {1.0 + config.nbar2, &s23, g2 * s32 + cd.gamma12 * s21},
      {config.nbar1, &s21, g1 * s12 + cd.gamma21 * s23},
      {config.nbar2, &s32, g2 * s23 + cd.gamma12 * s12},
  };

  // Row-major vectorization: X rho Y  ->  X kron Y^T.
  MatrixXd dissipator = MatrixXd::Zero(d * d, d * d);
  for (const Term& t : terms) {
    const MatrixXd& a = *t.a;
    const MatrixXd ab = a * t.b;
    dissipator -=
        t.factor * (Eigen::kroneckerProduct(ab, id) -
                    Eigen::kroneckerProduct(t.b, a.transpose()) +
                    Eigen::kroneckerProduct(id, ab) -
                    Eigen::kroneckerProduct(MatrixXd(a.transpose()), t.b));
  }

  MatrixXcd liouvillian = dissipator.cast<complex<double>>();
  if (structure == GeneratorStructure::with_hamiltonian) {
    const MatrixXd h = config.omega12 * operator_matrix(kS11, basis) -
                       config.omega23 * operator_matrix(kS33, basis);
    const MatrixXd comm =
        Eigen::kroneckerProduct(h, id) - Eigen::kroneckerProduct(id, h);
    liouvillian -= complex<double>(0.0, 1.0) * comm.cast<complex<double>>();
  }
  return GeneratorMatrix{basis, std::move(liouvillian), structure};
}

Eigen::MatrixXcd apply_generator(const GeneratorMatrix& gen,
                                 const Eigen::MatrixXcd& rho) {
  const int d = gen.basis.size();
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("apply_generator: dimension mismatch");
  }
  return unvec(gen.liouvillian * vec(rho), d);
}

std::pair<DensityOperator, SolveReport> steady_state_null(
    const GeneratorMatrix& gen) {
  const int d = gen.basis.size();
  const double scale = gen.liouvillian.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw std::runtime_error("steady_state_null: zero generator");
  }
  const MatrixXcd scaled = gen.liouvillian / scale;

  Eigen::FullPivLU<MatrixXcd> lu(scaled);
  lu.setThreshold(1e-10);
  const int nullity = d * d - static_cast<int>(lu.rank());
  if (nullity != 1) {
    std::ostringstream msg;
    msg << "degenerate steady state: generator nullity " << nullity;
    throw std::runtime_error(msg.str());
  }

  // Trace-one affine constraint: trace preservation makes the diagonal rows
  // sum to zero, so the first diagonal row is redundant and can be replaced
  // by the trace functional, leaving a nonsingular system.
  MatrixXcd a = scaled;
  constexpr Eigen::Index drop = 0;  // vectorized slot (0,0)
  a.row(drop).setZero();
  for (int i = 0; i < d; ++i) a(drop, i * d + i) = 1.0;
  VectorXcd rhs = VectorXcd::Zero(d * d);
  rhs(drop) = 1.0;
  const VectorXcd v = a.partialPivLu().solve(rhs);
  MatrixXcd rho = unvec(v, d);
  const complex<double> tr = rho.trace();
  if (std::abs(tr) < 1e-12) {
    throw std::runtime_error("steady_state_null: traceless kernel vector");
  }
  rho /= tr;
  check_density(rho);
  rho = 0.5 * (rho + rho.adjoint().eval());

  SolveReport report;
  report.method = SolveReport::Method::null_space;
  report.nullity = nullity;
  report.residual = (gen.liouvillian * vec(rho)).cwiseAbs().maxCoeff();
  return {DensityOperator{gen.basis, std::move(rho)}, report};
}

std::pair<DensityOperator, SolveReport> steady_state_evolve(
    const GeneratorMatrix& gen, const DensityOperator& rho0, double horizon,
    double tol) {
  const int d = gen.basis.size();
  if (rho0.basis.n_atoms() != gen.basis.n_atoms()) {
    throw std::invalid_argument("steady_state_evolve: basis mismatch");
  }
  if (horizon <= 0.0 || tol <= 0.0) {
    throw std::domain_error("steady_state_evolve: horizon and tol must be positive");
  }
  const MatrixXcd& L = gen.liouvillian;
  VectorXcd y = vec(rho0.rho);

  // Dormand-Prince 5(4) coefficients.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double lnorm = L.cwiseAbs().rowwise().sum().maxCoeff();
  double h = std::min(0.1 / lnorm, horizon);
  double t = 0.0;
  int accepted = 0;
  double residual = (L * y).cwiseAbs().maxCoeff();

  VectorXcd k1 = L * y;
  while (residual > tol && t < horizon) {
    if (t + h > horizon) h = horizon - t;
    const VectorXcd k2 = L * (y + h * a21 * k1);
    const VectorXcd k3 = L * (y + h * (a31 * k1 + a32 * k2));
    const VectorXcd k4 = L * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const VectorXcd k5 = L * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const VectorXcd k6 =
        L * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const VectorXcd ynew =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const VectorXcd k7 = L * ynew;
    const VectorXcd err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double err =
        err_vec.cwiseAbs().maxCoeff() / (1e-12 + 1e-10 * y.cwiseAbs().maxCoeff());

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      ++accepted;
      residual = k7.cwiseAbs().maxCoeff();
      if (accepted % 50 == 0) {
        MatrixXcd rho = unvec(y, d);
        const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        const double tr_err = std::abs(rho.trace() - complex<double>(1.0, 0.0));
        if (herm > 1e-8 || tr_err > 1e-8) {
          throw std::runtime_error(
              "steady_state_evolve: evolution left the physical manifold");
        }
      }
    }
    const double factor =
        (err > 0.0) ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
    h = std::min(factor * h, horizon);
    if (h < 1e-14 / lnorm) {
      throw std::runtime_error("steady_state_evolve: step size underflow");
    }
  }

  MatrixXcd rho = unvec(y, d);
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace();

  SolveReport report;
  report.method = SolveReport::Method::time_evolution;
  report.iterations = accepted;
  report.residual = (L * vec(rho)).cwiseAbs().maxCoeff();
  return {DensityOperator{gen.basis, std::move(rho)}, report};
}

ObservableReport oracle_observables(const DensityOperator& state) {
  const BasisMap& basis = state.basis;
  const int d = basis.size();
  if (state.rho.rows() != d || state.rho.cols() != d) {
    throw std::invalid_argument("oracle_observables: shape mismatch");
  }
  const MatrixXcd rho = state.rho;
  const auto trace_of = [&](const MatrixXd& op) {
    return (rho * op.cast<complex<double>>()).trace().real();
  };

  const MatrixXd s11 = operator_matrix(kS11, basis);
  const MatrixXd s33 = operator_matrix(kS33, basis);
  const MatrixXd s12 = operator_matrix(kS12, basis);
  const MatrixXd s21 = operator_matrix(kS21, basis);
  const MatrixXd s23 = operator_matrix(kS23, basis);
  const MatrixXd s32 = operator_matrix(kS32, basis);
  const MatrixXd sz = s11 - s33;

  ObservableReport rep;
  rep.source = Source::oracle;
  rep.s11 = trace_of(s11);
  rep.s33 = trace_of(s33);
  rep.s22 = basis.n_atoms() - rep.s11 - rep.s33;
  rep.sz = trace_of(sz);
  rep.sz2 = trace_of(sz * sz);
  rep.g1_1 = trace_of(s12 * s21);
  rep.g1_2 = trace_of(s23 * s32);

  const MatrixXd raise[3] = {MatrixXd(), s12, s23};
  const MatrixXd lower[3] = {MatrixXd(), s21, s32};
  const auto channel = [&](int i, int j) {
    const double num = trace_of(raise[i] * raise[j] * lower[j] * lower[i]);
    const double den = trace_of(raise[i] * lower[i]) * trace_of(raise[j] * lower[j]);
    return (den > 0.0) ? num / den : kNaN;
  };
  rep.g2_11 = channel(1, 1);
  rep.g2_22 = channel(2, 2);
  rep.g2_12 = channel(1, 2);
  rep.g2_21 = channel(2, 1);

  const MatrixXd jp = s12 + s23;
  const MatrixXd jm = s21 + s32;
  rep.g1_total = trace_of(jp * jm);
  const double g2_num = trace_of(jp * jp * jm * jm);
  rep.g2_total =
      (rep.g1_total > 0.0) ? g2_num / (rep.g1_total * rep.g1_total) : kNaN;
  return rep;
}

void write_generator_csv(const GeneratorMatrix& gen, std::ostream& out) {
  const auto& L = gen.liouvillian;
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
      if (j) out << ',';
      out << L(i, j).real() << ',' << L(i, j).imag();
    }
    out << '\n';
  }
}

void write_state_csv(const DensityOperator& state, std::ostream& out) {
  for (Eigen::Index i = 0; i < state.rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < state.rho.cols(); ++j) {
      if (j) out << ',';
      out << state.rho(i, j).real() << ',' << state.rho(i, j).imag();
    }
    out << '\n';
  }
}

}  // namespace ladder
