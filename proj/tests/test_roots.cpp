#include "flagorbit/roots.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace flagorbit;

namespace {

struct Case {
  Family family;
  int rank;
};

std::vector<Case> all_cases() {
  std::vector<Case> c;
  for (int l = 1; l <= 4; ++l) c.push_back({Family::A, l});
  for (int l = 1; l <= 3; ++l) c.push_back({Family::C, l});
  for (int l = 2; l <= 4; ++l) c.push_back({Family::D, l});
  return c;
}

int expected_positive(Family f, int l) {
  switch (f) {
    case Family::A: return l * (l + 1) / 2;
    case Family::C: return l * l;
    case Family::D: return l * (l - 1);
  }
  return -1;
}

/// Residual of the defining identity of the family realization.
double defining_residual(Family f, const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  if (f == Family::A) return std::abs(x.trace());
  const int l = n / 2;
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < l; ++i) {
    j(i, l + i) = 1.0;
    j(l + i, i) = f == Family::C ? -1.0 : 1.0;
  }
  if (f == Family::C) return (x.transpose() * j + j * x).norm();
  return (x * j + j * x.transpose()).norm();
}

RootFunctional rf(Family f, std::vector<int> c) { return RootFunctional{f, std::move(c)}; }

}  // namespace

TEST(RootSystemTest, A1HasOnePositiveRoot) {
  auto rs = build_root_system(Family::A, 1);
  ASSERT_EQ(rs.positive_roots.size(), 1u);
  EXPECT_EQ(rs.positive_roots[0], rf(Family::A, {1, -1}));
}

TEST(RootSystemTest, C2PositiveRoots) {
  auto rs = build_root_system(Family::C, 2);
  std::set<std::vector<int>> got;
  for (const auto& a : rs.positive_roots) got.insert(a.coefficients);
  std::set<std::vector<int>> want{{1, -1}, {1, 1}, {2, 0}, {0, 2}};
  EXPECT_EQ(got, want);
}

TEST(RootSystemTest, D3Count) { EXPECT_EQ(build_root_system(Family::D, 3).positive_roots.size(), 6u); }

TEST(RootSystemTest, CountsAndNonnegativeCoordinates) {
  for (auto c : all_cases()) {
    auto rs = build_root_system(c.family, c.rank);
    EXPECT_EQ(static_cast<int>(rs.simple_roots.size()), c.rank);
    EXPECT_EQ(static_cast<int>(rs.positive_roots.size()), expected_positive(c.family, c.rank));
    for (size_t k = 0; k < rs.positive_roots.size(); ++k) {
      std::vector<int> sum(rs.positive_roots[k].coefficients.size(), 0);
      for (size_t j = 0; j < rs.simple_roots.size(); ++j) {
        int cj = rs.positive_coordinates[k][j];
        EXPECT_GE(cj, 0);
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += cj * rs.simple_roots[j].coefficients[i];
      }
      EXPECT_EQ(sum, rs.positive_roots[k].coefficients);
    }
    EXPECT_TRUE(std::is_sorted(rs.positive_coordinates.begin(), rs.positive_coordinates.end()));
  }
}

TEST(RootSystemTest, InvalidRanks) {
  EXPECT_THROW(build_root_system(Family::A, 0), std::invalid_argument);
  EXPECT_THROW(build_root_system(Family::D, 1), std::invalid_argument);
  EXPECT_THROW(build_root_system(FlagParams::a(3, 2)), std::invalid_argument);
}

TEST(RootSystemTest, EvaluationReadsDiagonal) {
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = 3.0;
  h(1, 1) = -1.5;
  EXPECT_EQ(rf(Family::C, {1, 1})(h), cplx(1.5));
  EXPECT_EQ(rf(Family::C, {0, 2})(h), cplx(-3.0));
}

TEST(WeylBasisTest, Sl2Normalization) {
  auto wb = weyl_basis(build_root_system(Family::A, 1));
  EXPECT_LT((wb.root_vectors[0] - 0.5 * elementary(2, 0, 1)).norm(), 1e-15);
  EXPECT_LT((wb.root_vectors[1] - 0.5 * elementary(2, 1, 0)).norm(), 1e-15);
  EXPECT_NEAR(std::abs(wb.killing()(wb.root_vectors[0], wb.root_vectors[1]) - 1.0), 0.0, 1e-15);
}

TEST(WeylBasisTest, InvariantsAgainstAdTrace) {
  for (auto c : all_cases()) {
    if (c.rank > 3) continue;
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    AdjointRepresentation ad(wb.complex_basis());
    const size_t nr = wb.root_list.size();
    for (size_t i = 0; i < nr; ++i) {
      EXPECT_LT(defining_residual(c.family, wb.root_vectors[i]), 1e-14);
      EXPECT_LT((wb.root_vectors[wb.negative_index(i)] - wb.root_vectors[i].transpose()).norm(), 1e-15);
      for (size_t j = 0; j < nr; ++j) {
        cplx k = ad.killing(wb.root_vectors[i], wb.root_vectors[j]);
        double want = j == wb.negative_index(i) ? 1.0 : 0.0;
        EXPECT_LT(std::abs(k - want), 1e-10);
      }
      // [X_a, X_-a] = H_a and K(H_a, H) = a(H).
      Matrix h_a = bracket(wb.root_vectors[i], wb.root_vectors[wb.negative_index(i)]);
      for (const auto& h : wb.roots.cartan_basis)
        EXPECT_LT(std::abs(ad.killing(h_a, h) - wb.root_list[i](h)), 1e-10);
    }
  }
}

TEST(WeylBasisTest, CartanDiagonalAction) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> d;
  for (auto c : all_cases()) {
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    Matrix h = Matrix::Zero(wb.matrix_dim(), wb.matrix_dim());
    for (const auto& b : wb.roots.cartan_basis) h += cplx(d(rng), d(rng)) * b;
    for (size_t k = 0; k < wb.root_list.size(); ++k)
      EXPECT_LT((bracket(h, wb.root_vectors[k]) - wb.root_list[k](h) * wb.root_vectors[k]).norm(), 1e-12);
  }
}

TEST(WeylBasisTest, StructureConstantsRealAndSupported) {
  for (auto c : all_cases()) {
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    const size_t nr = wb.root_list.size();
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nr; ++j) {
        if (j == wb.negative_index(i)) continue;
        RootFunctional s = wb.root_list[i] + wb.root_list[j];
        Matrix br = bracket(wb.root_vectors[i], wb.root_vectors[j]);
        if (!wb.roots.is_root(s)) {
          EXPECT_LT(br.norm(), 1e-15);
          EXPECT_EQ(wb.structure_constants.count({i, j}), 0u);
        } else {
          double m = wb.structure_constants.at({i, j});
          EXPECT_LT((br - m * wb.vector(s)).norm(), 1e-13);
        }
      }
  }
}

TEST(WeylBasisTest, JacobiAndKillingInvariance) {
  std::mt19937_64 rng(12);
  for (auto c : all_cases()) {
    if (c.rank > 3) continue;
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    auto basis = wb.complex_basis();
    double jac = 0;
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = a + 1; b < basis.size(); ++b)
        for (size_t e = b + 1; e < basis.size(); ++e) {
          const auto &x = basis[a], &y = basis[b], &z = basis[e];
          jac = std::max(jac, (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).norm());
        }
    EXPECT_LT(jac, 1e-12);
    auto k = wb.killing();
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    for (int s = 0; s < 50; ++s) {
      const auto &x = basis[pick(rng)], &y = basis[pick(rng)], &z = basis[pick(rng)];
      EXPECT_LT(std::abs(k(bracket(z, x), y) + k(x, bracket(z, y))), 1e-12);
    }
  }
}

TEST(WeylBasisTest, KillingScalarCertified) {
  std::mt19937_64 rng(13);
  for (auto c : all_cases()) {
    if (c.rank > 3) continue;
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    auto basis = wb.complex_basis();
    AdjointRepresentation ad(basis);
    for (int s = 0; s < 5; ++s) {
      Matrix x = testutil::random_combination(rng, basis) + kI * testutil::random_combination(rng, basis);
      Matrix y = testutil::random_combination(rng, basis);
      cplx brute = ad.killing(x, y);
      EXPECT_LT(std::abs(brute - killing_fast(c.family, x, y)), 1e-9 * std::max(1.0, std::abs(brute)));
    }
  }
}

TEST(CartanDualTest, Sl2) {
  auto rs = build_root_system(Family::A, 1);
  Matrix h = cartan_dual(rs, rs.positive_roots[0]);
  Matrix b = elementary(2, 0, 0) - elementary(2, 1, 1);
  EXPECT_LT((h - b / 4.0).norm(), 1e-15);
  EXPECT_NEAR(killing_fast(Family::A, h, b).real(), 2.0, 1e-15);
}

TEST(CartanDualTest, NegationAndPositivity) {
  for (auto c : all_cases()) {
    auto rs = build_root_system(c.family, c.rank);
    KillingForm k{rs.family, rs.matrix_dim};
    for (const auto& a : rs.positive_roots) {
      Matrix h = cartan_dual(rs, a);
      EXPECT_LT((cartan_dual(rs, -a) + h).norm(), 1e-14);
      EXPECT_GT(k(h, h).real(), 0.0);
      EXPECT_LT(std::abs(k(h, h).imag()), 1e-15);
    }
  }
}

TEST(CartanDualTest, NonRootRejected) {
  auto rs = build_root_system(Family::A, 2);
  EXPECT_THROW(cartan_dual(rs, rf(Family::A, {2, -1, -1})), std::invalid_argument);
}

TEST(CompactRealFormTest, A1IsSu2) {
  auto wb = weyl_basis(build_root_system(Family::A, 1));
  auto u = compact_real_form(wb);
  EXPECT_EQ(u.dim(), 3);
  std::vector<Matrix> su2{kI * (elementary(2, 0, 0) - elementary(2, 1, 1)), elementary(2, 0, 1) - elementary(2, 1, 0),
                          kI * (elementary(2, 0, 1) + elementary(2, 1, 0))};
  auto ref = RealSubspace::span(2, su2);
  EXPECT_LT(u.max_residual(ref), 1e-14);
  EXPECT_LT(ref.max_residual(u), 1e-14);
}

TEST(CompactRealFormTest, DimensionsAndSigns) {
  for (auto c : all_cases()) {
    if (c.rank > 3) continue;
    auto wb = weyl_basis(build_root_system(c.family, c.rank));
    auto u = compact_real_form(wb);
    EXPECT_EQ(u.dim(), wb.complex_dim());
    AdjointRepresentation ad(wb.complex_basis());
    const auto& b = u.basis();
    RealMatrix gram(u.dim(), u.dim());
    for (int i = 0; i < u.dim(); ++i)
      for (int j = 0; j < u.dim(); ++j) gram(i, j) = ad.killing(b[size_t(i)], b[size_t(j)]).real();
    EXPECT_LT(Eigen::SelfAdjointEigenSolver<RealMatrix>(gram).eigenvalues().maxCoeff(), 0.0);
    // In all three realizations u is the anti-Hermitian part.
    for (const auto& x : b) EXPECT_LT((x + x.adjoint()).norm(), 1e-14);
  }
  EXPECT_EQ(compact_real_form(weyl_basis(build_root_system(Family::C, 2))).dim(), 10);
}
