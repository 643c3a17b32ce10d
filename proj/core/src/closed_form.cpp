#include "ladder/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ladder {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// f(xi) = sum_{k=0}^{N} e^{-xi k} = (1 - e^{-xi(1+N)})/(1 - e^{-xi}).
double geometric_f(double xi, int n_atoms) {
  if (xi == 0.0) return n_atoms + 1.0;
  return std::expm1(-xi * (n_atoms + 1.0)) / std::expm1(-xi);
}

void check_closed_form_domain(double eta1, double eta2) {
  if (!(eta1 > 0.0 && eta1 < 1.0 && eta2 > 0.0 && eta2 < 1.0)) {
    throw std::domain_error("closed form restricted to eta in (0,1)");
  }
  if (1.0 - eta1 < 1e-6 || 1.0 - eta2 < 1e-6 || 1.0 - eta1 * eta2 < 1e-6) {
    throw std::domain_error(
        "closed form restricted to |1-eta| > 1e-6; use the limit branches");
  }
}

struct EtaPair {
  double eta1;
  double eta2;
  bool strong_field;
};

EtaPair eta_pair(const EnsembleConfig& config) {
  const DerivedParams p = derive(config);
  return EtaPair{p.eta1, p.eta2, p.strong_field};
}

double sum_population(const SteadyWeights& sw, TransitionLabel op) {
  double total = 0.0;
  for (int k = 0; k < sw.basis.size(); ++k) {
    total += sw.w[k] * apply_operator(op, sw.basis.state_of(k)).coefficient;
  }
  return total;
}

double expect(const SteadyWeights& sw, std::initializer_list<TransitionLabel> ops) {
  const std::vector<TransitionLabel> v(ops);
  return expectation_normal_product(sw.basis, v, sw.w);
}

// log of the single-eta partition sum, Z(xi) = sum_{n<=m} e^{-xi(n+m-N)}.
double log_partition_single(double xi, int n_atoms) {
  const double N = n_atoms;
  double max_exp = -std::numeric_limits<double>::infinity();
  for (int m = 0; m <= n_atoms; ++m) {
    for (int n = 0; n <= m; ++n) {
      max_exp = std::max(max_exp, -xi * (n + m - N));
    }
  }
  double acc = 0.0;
  for (int m = 0; m <= n_atoms; ++m) {
    for (int n = 0; n <= m; ++n) {
      acc += std::exp(-xi * (n + m - N) - max_exp);
    }
  }
  return max_exp + std::log(acc);
}

}  // namespace

double partition_function_direct(double xi1, double xi3, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("partition_function: n_atoms must be >= 1");
  double total = 0.0;
  for (int m = 0; m <= n_atoms; ++m) {
    for (int n = 0; n <= m; ++n) {
      total += std::exp(-xi1 * n - xi3 * (n_atoms - m));
    }
  }
  return total;
}

double partition_function(double xi1, double xi3, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("partition_function: n_atoms must be >= 1");
  if (!std::isfinite(xi1) || !std::isfinite(xi3)) {
    throw std::domain_error("partition_function: xi must be finite");
  }
  // xi3 -> 0 is a removable 0/0 in the closed form; the factored single sum
  // Z = sum_n (N+1-n) e^{-xi1 n} + O(xi3) is evaluated exactly instead.
  if (std::abs(xi3) < 1e-7) {
    double total = 0.0;
    double partial = 0.0;  // f_m(xi1), accumulated incrementally
    for (int m = 0; m <= n_atoms; ++m) {
      partial += std::exp(-xi1 * m);
      total += std::exp(-xi3 * (n_atoms - m)) * partial;
    }
    return total;
  }
  const double bracket = geometric_f(xi1 - xi3, n_atoms) -
                         std::exp(xi3 * (1.0 + n_atoms)) * geometric_f(xi1, n_atoms);
  return std::exp(-xi3 * n_atoms) / (-std::expm1(xi3)) * bracket;
}

SteadyWeights steady_weights(const EnsembleConfig& config) {
  const EtaPair e = eta_pair(config);
  BasisMap basis(config.n_atoms);
  std::vector<double> w(basis.size());
  double sum = 0.0;
  for (int k = 0; k < basis.size(); ++k) {
    const BasisIndex s = basis.state_of(k);
    // Max weight is 1 at (n,m) = (0,0) for eta <= 1, so this is already
    // normalized by the maximum.
    w[k] = std::pow(e.eta1, s.n) * std::pow(e.eta2, s.m);
    sum += w[k];
  }
  for (double& x : w) x /= sum;
  return SteadyWeights{basis, std::move(w), std::log(sum)};
}

Populations populations(const EnsembleConfig& config) {
  const SteadyWeights sw = steady_weights(config);
  return Populations{sum_population(sw, kS11), sum_population(sw, kS22),
                     sum_population(sw, kS33)};
}

Populations populations_closed_form(double eta1, double eta2, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("populations: n_atoms must be >= 1");
  check_closed_form_domain(eta1, eta2);
  const double N = n_atoms;
  const double z = partition_function(-std::log(eta1), std::log(eta2), n_atoms);
  const double ee = eta1 * eta2;
  const double pref = std::pow(eta2, -N);

  const double a11 = ((N + 1.0) * std::pow(ee, N + 1) - N * std::pow(ee, N + 2) - ee) /
                     ((1.0 - ee) * (1.0 - ee));
  const double b11 = std::pow(eta2, N + 1) *
                     ((N + 1.0) * std::pow(eta1, N + 1) - N * std::pow(eta1, N + 2) - eta1) /
                     ((1.0 - eta1) * (1.0 - eta1));
  const double s11 = pref / (z * (eta2 - 1.0)) * (a11 - b11);

  const double top33 = N + std::pow(ee, N + 1) - eta2 * std::pow(ee, N + 2) -
                       ee * (1.0 - (N + 2.0) * eta2 + N) - (N + 1.0) * eta2;
  const double a33 = top33 / ((1.0 - ee) * (1.0 - ee));
  const double b33 = std::pow(eta2, N + 1) * (1.0 - std::pow(eta1, N + 1)) / (1.0 - eta1);
  const double s33 = pref / (z * (eta2 - 1.0) * (eta2 - 1.0)) * (a33 + b33);

  return Populations{s11, N - s11 - s33, s33};
}

Populations populations_weak_large(double eta1, double eta2, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("populations: n_atoms must be >= 1");
  if (!(eta1 >= 0.0 && eta1 < 1.0 && eta2 >= 0.0 && eta2 < 1.0)) {
    throw std::domain_error("weak-bath approximation needs eta in [0,1)");
  }
  const double s11 = eta1 * eta2 / (1.0 - eta1 * eta2);
  const double s22 = eta2 / (1.0 - eta2);
  return Populations{s11, s22, n_atoms - s22 - s11};
}

SzMoments sz_moments(const EnsembleConfig& config) {
  const SteadyWeights sw = steady_weights(config);
  const double N = config.n_atoms;
  double sz = 0.0, sz2 = 0.0;
  for (int k = 0; k < sw.basis.size(); ++k) {
    const BasisIndex s = sw.basis.state_of(k);
    const double inv = s.n + s.m - N;
    sz += sw.w[k] * inv;
    sz2 += sw.w[k] * inv * inv;
  }
  return SzMoments{sz, sz2};
}

double sz_closed_form(double eta, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("sz_closed_form: n_atoms must be >= 1");
  if (!(eta >= 0.0) || 1.0 - eta < 1e-6) {
    throw std::domain_error("sz_closed_form restricted to eta in [0, 1 - 1e-6]");
  }
  const double N = n_atoms;
  const double first = -(N + std::pow(eta, N + 1) + 2.0 * std::pow(eta, N + 2) -
                         (3.0 + N) * std::pow(eta, 3.0 + 2.0 * N)) /
                       ((1.0 - std::pow(eta, N + 1)) * (1.0 - std::pow(eta, N + 2)));
  return first + eta * (1.0 + 3.0 * eta) / (1.0 - eta * eta);
}

double sz2_closed_form(double eta, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("sz2_closed_form: n_atoms must be >= 1");
  if (!(eta >= 0.0) || 1.0 - eta < 1e-6) {
    throw std::domain_error("sz2_closed_form restricted to eta in [0, 1 - 1e-6]");
  }
  const double N = n_atoms;
  const double a = (3.0 + N) * (3.0 + N) - (2.0 + N) * (4.0 + N) * eta +
                   N * (6.0 + N) * eta * eta * eta -
                   (1.0 + N) * (5.0 + N) * eta * eta;
  const double b = 1.0 + 4.0 * eta - 8.0 * eta * eta * eta -
                   5.0 * eta * eta * eta * eta;
  const double c = N * N - (N * N - 1.0) * eta - (N * N - 4.0) * eta * eta +
                   (N * N - 9.0) * eta * eta * eta;
  const double denom = (1.0 - eta) * (1.0 - eta * eta) *
                       (1.0 - std::pow(eta, N + 1)) * (1.0 - std::pow(eta, N + 2));
  const double first = (a * std::pow(eta, 3.0 + 2.0 * N) - b * std::pow(eta, N + 1) + c) / denom;
  return first + 2.0 * eta * (1.0 + 3.0 * eta) / (1.0 - eta * eta) *
                     sz_closed_form(eta, n_atoms);
}

SzMoments sz_moments_by_differentiation(double eta, int n_atoms) {
  if (n_atoms < 1) throw std::domain_error("sz moments: n_atoms must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::domain_error("differentiation route needs eta in (0,1)");
  }
  const double xi = -std::log(eta);
  const auto lz = [n_atoms](double x) { return log_partition_single(x, n_atoms); };

  // <Sz>   = -d logZ / dxi
  // <Sz^2> = d^2 logZ / dxi^2 + (d logZ / dxi)^2
  const auto d1 = [&](double h) { return (lz(xi + h) - lz(xi - h)) / (2.0 * h); };
  const auto d2 = [&](double h) {
    return (lz(xi + h) - 2.0 * lz(xi) + lz(xi - h)) / (h * h);
  };
  const double h = 6e-4;
  const double g1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;  // Richardson
  const double g2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
  return SzMoments{-g1, g2 + g1 * g1};
}

Intensities intensities_distinguishable(const EnsembleConfig& config) {
  const SteadyWeights sw = steady_weights(config);
  return Intensities{expect(sw, {kS12, kS21}), expect(sw, {kS23, kS32})};
}

Intensities intensities_closed_form(const EnsembleConfig& config) {
  const EtaPair e = eta_pair(config);
  const double N = config.n_atoms;
  if (e.strong_field) {
    const double v = N * (3.0 + N) / 12.0;
    return Intensities{v, v};
  }
  if (e.eta1 == 1.0 || e.eta2 == 1.0) {
    throw std::domain_error("intensity closed form needs eta < 1 or the joint limit");
  }
  const Populations p = populations(config);
  return Intensities{
      e.eta1 / (1.0 - e.eta1) * (N - p.s33 - 2.0 * p.s11),
      e.eta2 / (1.0 - e.eta2) * (p.s11 + 2.0 * p.s33 - N)};
}

double g2_distinguishable(const EnsembleConfig& config, int i, int j) {
  if ((i != 1 && i != 2) || (j != 1 && j != 2)) {
    throw std::invalid_argument("g2 channels must be 1 or 2");
  }
  const EtaPair e = eta_pair(config);
  const double N = config.n_atoms;
  if (e.strong_field && i == 2 && j == 2) {
    return 8.0 * (N - 1.0) * (N + 4.0) / (5.0 * N * (3.0 + N));
  }
  const SteadyWeights sw = steady_weights(config);
  const TransitionLabel lower[3] = {{0, 0}, kS21, kS32};
  const TransitionLabel raise[3] = {{0, 0}, kS12, kS23};
  const double num = expect(sw, {raise[i], raise[j], lower[j], lower[i]});
  const double den_i = expect(sw, {raise[i], lower[i]});
  const double den_j = expect(sw, {raise[j], lower[j]});
  if (den_i <= 0.0 || den_j <= 0.0) {
    throw UndefinedStatistics("g2 undefined at zero emitted intensity");
  }
  return num / (den_i * den_j);
}

TotalFieldObservables observables_indistinguishable(const EnsembleConfig& config) {
  const EtaPair e = eta_pair(config);
  if (e.eta1 != e.eta2) {
    throw ClosedFormUnavailable(
        "indistinguishable-photon observables need a single eta (nbar1 = nbar2)");
  }
  const double N = config.n_atoms;
  if (e.strong_field) {
    return TotalFieldObservables{
        N * (3.0 + N) / 6.0,
        (8.0 * N * N + 24.0 * N - 17.0) / (5.0 * N * (3.0 + N))};
  }
  const double eta = e.eta1;
  if (eta == 0.0) {
    throw UndefinedStatistics("g2 undefined at zero emitted intensity");
  }
  const SzMoments m = sz_moments(config);
  const double g1 = -eta / (1.0 - eta) * m.sz;
  const double g2 =
      ((1.0 + eta) / (1.0 - eta) * m.sz + 2.0 * m.sz2) / (m.sz * m.sz);
  return TotalFieldObservables{g1, g2};
}

ObservableReport compute_report(const EnsembleConfig& config) {
  const EtaPair e = eta_pair(config);
  const SteadyWeights sw = steady_weights(config);
  const double N = config.n_atoms;

  ObservableReport rep;
  rep.source = Source::basis_sum;
  rep.s11 = sum_population(sw, kS11);
  rep.s22 = sum_population(sw, kS22);
  rep.s33 = sum_population(sw, kS33);
  double sz = 0.0, sz2 = 0.0;
  for (int k = 0; k < sw.basis.size(); ++k) {
    const BasisIndex s = sw.basis.state_of(k);
    const double inv = s.n + s.m - N;
    sz += sw.w[k] * inv;
    sz2 += sw.w[k] * inv * inv;
  }
  rep.sz = sz;
  rep.sz2 = sz2;
  rep.g1_1 = expect(sw, {kS12, kS21});
  rep.g1_2 = expect(sw, {kS23, kS32});
  // Cross terms of the total-field intensity vanish for diagonal weights.
  rep.g1_total = rep.g1_1 + rep.g1_2;

  const auto channel = [&](int i, int j) {
    try {
      return g2_distinguishable(config, i, j);
    } catch (const UndefinedStatistics&) {
      return kNaN;
    }
  };
  rep.g2_11 = channel(1, 1);
  rep.g2_22 = channel(2, 2);
  rep.g2_12 = channel(1, 2);
  rep.g2_21 = channel(2, 1);

  if (e.eta1 == e.eta2) {
    try {
      const TotalFieldObservables t = observables_indistinguishable(config);
      rep.g1_total = t.g1_total;
      rep.g2_total = t.g2_total;
    } catch (const UndefinedStatistics&) {
      rep.g2_total = kNaN;
    }
  } else {
    rep.g2_total = kNaN;
  }
  return rep;
}

double golden_section_extremum(const std::function<double(double)>& f, double lo,
                               double hi, bool minimize, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section: need lo < hi");
  const double sign = minimize ? 1.0 : -1.0;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = sign * f(x1);
  double f2 = sign * f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = sign * f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = sign * f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace ladder
