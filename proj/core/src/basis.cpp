#include "ladder/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace ladder {

BasisMap::BasisMap(int n_atoms) : N_(n_atoms) {
  if (n_atoms < 1) {
    throw std::domain_error("BasisMap: number of atoms must be >= 1");
  }
}

int BasisMap::index_of(const BasisIndex& s) const {
  if (!s.valid() || s.N != N_) {
    throw std::domain_error("BasisMap::index_of: state not in this basis");
  }
  return s.m * (s.m + 1) / 2 + s.n;
}

BasisIndex BasisMap::state_of(int k) const {
  if (k < 0 || k >= size()) {
    throw std::domain_error("BasisMap::state_of: flat index out of range");
  }
  int m = static_cast<int>((std::sqrt(8.0 * k + 1.0) - 1.0) / 2.0);
  while (m * (m + 1) / 2 > k) --m;
  while ((m + 1) * (m + 2) / 2 <= k) ++m;
  return BasisIndex{k - m * (m + 1) / 2, m, N_};
}

OperatorAction apply_operator(TransitionLabel op, const BasisIndex& s) {
  if (!op.valid()) {
    throw std::invalid_argument("apply_operator: level labels must be in {1,2,3}");
  }
  if (!s.valid()) {
    throw std::domain_error("apply_operator: invalid basis state");
  }
  const double n = s.n;
  const double k2 = s.m - s.n;  // atoms in |2>
  const double k3 = s.N - s.m;  // atoms in |3>

  double coeff = 0.0;
  BasisIndex target = s;
  if (op == kS11) {
    coeff = n;
  } else if (op == kS22) {
    coeff = k2;
  } else if (op == kS33) {
    coeff = k3;
  } else if (op == kS21) {
    coeff = std::sqrt(n * (k2 + 1));
    target = {s.n - 1, s.m, s.N};
  } else if (op == kS12) {
    coeff = std::sqrt((n + 1) * k2);
    target = {s.n + 1, s.m, s.N};
  } else if (op == kS32) {
    coeff = std::sqrt(k2 * (k3 + 1));
    target = {s.n, s.m - 1, s.N};
  } else if (op == kS23) {
    coeff = std::sqrt((k2 + 1) * k3);
    target = {s.n, s.m + 1, s.N};
  } else if (op == kS31) {
    coeff = std::sqrt(n * (k3 + 1));
    target = {s.n - 1, s.m - 1, s.N};
  } else {  // kS13
    coeff = std::sqrt((n + 1) * k3);
    target = {s.n + 1, s.m + 1, s.N};
  }

  if (coeff == 0.0) {
    return OperatorAction{};  // annihilated
  }
  return OperatorAction{coeff, target, false};
}

double expectation_normal_product(const BasisMap& basis,
                                  std::span<const TransitionLabel> ops,
                                  std::span<const double> w) {
  if (static_cast<int>(w.size()) != basis.size()) {
    throw std::invalid_argument(
        "expectation_normal_product: weight vector does not match basis size");
  }
  double total = 0.0;
  for (int k = 0; k < basis.size(); ++k) {
    if (w[k] == 0.0) continue;
    const BasisIndex start = basis.state_of(k);
    BasisIndex cur = start;
    double amp = 1.0;
    bool alive = true;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      const OperatorAction act = apply_operator(*it, cur);
      if (act.annihilated) {
        alive = false;
        break;
      }
      amp *= act.coefficient;
      cur = act.target;
    }
    if (alive && cur == start) {
      total += w[k] * amp;
    }
  }
  return total;
}

Eigen::MatrixXd operator_matrix(TransitionLabel op, const BasisMap& basis) {
  const int d = basis.size();
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const OperatorAction act = apply_operator(op, basis.state_of(k));
    if (!act.annihilated) {
      mat(basis.index_of(act.target), k) = act.coefficient;
    }
  }
  return mat;
}

}  // namespace ladder
