#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace ladder {

// Symmetric collective state |N,n,m>: n atoms in the upper bare state |1>,
// m-n in the intermediate state |2>, N-m in the ground state |3>.
struct BasisIndex {
  int n = 0;
  int m = 0;
  int N = 1;

  bool valid() const { return N >= 1 && 0 <= n && n <= m && m <= N; }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Flat enumeration of all |N,n,m> for a fixed N, lexicographic in (m, n).
// Immutable after construction.
class BasisMap {
 public:
  explicit BasisMap(int n_atoms);

  int n_atoms() const { return N_; }
  int size() const { return (N_ + 1) * (N_ + 2) / 2; }

  int index_of(const BasisIndex& s) const;
  BasisIndex state_of(int k) const;

 private:
  int N_;
};

// Collective operator S_{alpha,beta} = sum_j |alpha><beta|_j with levels in
// {1,2,3}. alpha == beta is a population operator.
struct TransitionLabel {
  int alpha = 1;
  int beta = 1;

  bool valid() const {
    return alpha >= 1 && alpha <= 3 && beta >= 1 && beta <= 3;
  }
  friend bool operator==(const TransitionLabel&, const TransitionLabel&) = default;
};

inline constexpr TransitionLabel kS11{1, 1}, kS22{2, 2}, kS33{3, 3};
inline constexpr TransitionLabel kS12{1, 2}, kS21{2, 1};
inline constexpr TransitionLabel kS23{2, 3}, kS32{3, 2};
inline constexpr TransitionLabel kS13{1, 3}, kS31{3, 1};

// Result of applying a collective operator to a basis state. The basis states
// are eigenvectors of the populations and map to a single partner state under
// the ladder operators, so one (coefficient, target) pair is always enough.
struct OperatorAction {
  double coefficient = 0.0;
  BasisIndex target{};
  bool annihilated = true;
};

OperatorAction apply_operator(TransitionLabel op, const BasisIndex& s);

// Sum over basis states of w(n,m) * <n,m| ops[0] ... ops[k-1] |n,m>, with the
// operators applied right to left. w must be indexed by the flat basis order.
double expectation_normal_product(const BasisMap& basis,
                                  std::span<const TransitionLabel> ops,
                                  std::span<const double> w);

// Dense matrix representation of S_{alpha,beta} in the flat basis ordering.
// All entries are real.
Eigen::MatrixXd operator_matrix(TransitionLabel op, const BasisMap& basis);

}  // namespace ladder
