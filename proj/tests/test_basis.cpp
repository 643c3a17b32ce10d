#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "ladder/basis.hpp"

using namespace ladder;

TEST_CASE("basis enumeration counts") {
  CHECK(BasisMap(1).size() == 3);
  CHECK(BasisMap(2).size() == 6);

  // Independent count of the lattice 0 <= n <= m <= 20.
  int count = 0;
  for (int m = 0; m <= 20; ++m) {
    for (int n = 0; n <= m; ++n) ++count;
  }
  CHECK(BasisMap(20).size() == count);
  CHECK(count == 231);

  CHECK_THROWS_AS(BasisMap(0), std::domain_error);
  CHECK_THROWS_AS(BasisMap(-3), std::domain_error);
}

TEST_CASE("single atom states") {
  const BasisMap basis(1);
  std::vector<BasisIndex> states;
  for (int k = 0; k < basis.size(); ++k) states.push_back(basis.state_of(k));
  REQUIRE(states.size() == 3);
  CHECK(states[0] == BasisIndex{0, 0, 1});
  CHECK(states[1] == BasisIndex{0, 1, 1});
  CHECK(states[2] == BasisIndex{1, 1, 1});
}

TEST_CASE("flat index bijection") {
  for (int n_atoms : {1, 2, 7, 40, 500}) {
    const BasisMap basis(n_atoms);
    for (int k = 0; k < basis.size(); ++k) {
      const BasisIndex s = basis.state_of(k);
      CHECK(s.valid());
      CHECK(basis.index_of(s) == k);
    }
  }
}

TEST_CASE("population operators are diagonal") {
  const auto act = apply_operator(kS33, BasisIndex{0, 0, 5});
  CHECK(act.coefficient == 5.0);
  CHECK(act.target == BasisIndex{0, 0, 5});

  const auto s11 = apply_operator(kS11, BasisIndex{2, 3, 5});
  CHECK(s11.coefficient == 2.0);
  const auto s22 = apply_operator(kS22, BasisIndex{2, 3, 5});
  CHECK(s22.coefficient == 1.0);
}

TEST_CASE("ladder operator actions") {
  const auto down = apply_operator(kS21, BasisIndex{1, 1, 2});
  CHECK(down.coefficient == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(down.target == BasisIndex{0, 1, 2});

  const auto dead = apply_operator(kS32, BasisIndex{0, 0, 3});
  CHECK(dead.annihilated);
  CHECK(dead.coefficient == 0.0);

  CHECK_THROWS_AS(apply_operator(TransitionLabel{0, 2}, BasisIndex{0, 0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_operator(TransitionLabel{1, 4}, BasisIndex{0, 0, 1}),
                  std::invalid_argument);
}

namespace {

Eigen::MatrixXd commutator_rhs(const BasisMap& basis, int a, int b, int c, int d) {
  const int n = basis.size();
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
  if (b == c) rhs += operator_matrix(TransitionLabel{a, d}, basis);
  if (d == a) rhs -= operator_matrix(TransitionLabel{c, b}, basis);
  return rhs;
}

}  // namespace

TEST_CASE("su(3) commutation relations up to N = 8") {
  for (int n_atoms = 1; n_atoms <= 8; ++n_atoms) {
    const BasisMap basis(n_atoms);
    Eigen::MatrixXd ops[4][4];
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        ops[a][b] = operator_matrix(TransitionLabel{a, b}, basis);
      }
    }
    double worst = 0.0;
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        for (int c = 1; c <= 3; ++c) {
          for (int d = 1; d <= 3; ++d) {
            const Eigen::MatrixXd lhs =
                ops[a][b] * ops[c][d] - ops[c][d] * ops[a][b];
            worst = std::max(
                worst,
                (lhs - commutator_rhs(basis, a, b, c, d)).cwiseAbs().maxCoeff());
          }
        }
      }
    }
    INFO("N = ", n_atoms);
    CHECK(worst <= 1e-12);

    const Eigen::MatrixXd total = ops[1][1] + ops[2][2] + ops[3][3];
    CHECK((total - n_atoms * Eigen::MatrixXd::Identity(basis.size(), basis.size()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((ops[1][2] - ops[2][1].transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops[2][3] - ops[3][2].transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops[1][3] - ops[3][1].transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("normally ordered expectations against diagonal weights") {
  const BasisMap basis(1);

  SUBCASE("empty excited level") {
    const std::vector<double> ground = {1.0, 0.0, 0.0};
    const std::vector<TransitionLabel> ops = {kS11};
    CHECK(expectation_normal_product(basis, ops, ground) == 0.0);

    const std::vector<TransitionLabel> four = {kS12, kS23, kS32, kS21};
    CHECK(expectation_normal_product(basis, four, ground) == 0.0);
  }

  SUBCASE("N=1 thermal weights") {
    // nbar1 = nbar2 = 1 steady state: (4/7, 2/7, 1/7) on |3>,|2>,|1>.
    const std::vector<double> w = {4.0 / 7, 2.0 / 7, 1.0 / 7};
    const std::vector<TransitionLabel> ops = {kS23, kS32};
    CHECK(expectation_normal_product(basis, ops, w) ==
          doctest::Approx(2.0 / 7).epsilon(1e-14));
  }

  SUBCASE("population sum equals N for any normalized weights") {
    std::mt19937 rng(7);
    for (int n_atoms : {1, 3, 9}) {
      const BasisMap b(n_atoms);
      std::vector<double> w(b.size());
      double sum = 0.0;
      for (double& x : w) sum += (x = std::uniform_real_distribution<>(0, 1)(rng));
      for (double& x : w) x /= sum;
      double total = 0.0;
      for (TransitionLabel op : {kS11, kS22, kS33}) {
        const std::vector<TransitionLabel> ops = {op};
        total += expectation_normal_product(b, ops, w);
      }
      CHECK(total == doctest::Approx(n_atoms).epsilon(1e-13));
    }
  }

  SUBCASE("weight size mismatch") {
    const std::vector<double> wrong = {0.5, 0.5};
    const std::vector<TransitionLabel> ops = {kS11};
    CHECK_THROWS_AS(expectation_normal_product(basis, ops, wrong),
                    std::invalid_argument);
  }
}
