#include "flagorbit/flag.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

using namespace flagorbit;

namespace {

std::vector<FlagParams> param_grid() {
  return {FlagParams::a(1, 1), FlagParams::a(1, 2), FlagParams::a(2, 2), FlagParams::a(2, 3), FlagParams::a(1, 4),
          FlagParams::c(1),    FlagParams::c(2),    FlagParams::c(3),    FlagParams::d(2),    FlagParams::d(3),
          FlagParams::d(4)};
}

Matrix diag(std::initializer_list<cplx> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (auto x : v) m(i, i) = x, ++i;
  return m;
}

}  // namespace

TEST(CharacteristicElement, A11) {
  Matrix h = characteristic_element(FlagParams::a(1, 1));
  EXPECT_LT((h - (kI * kPi / 2.0) * diag({1, -1})).norm(), 1e-15);
}

TEST(CharacteristicElement, C2) {
  Matrix h = characteristic_element(FlagParams::c(2));
  EXPECT_LT((h - (kI * kPi / 2.0) * diag({1, 1, -1, -1})).norm(), 1e-15);
}

TEST(CharacteristicElement, D2FromRealForm) {
  Matrix so = d_case_h_theta_real(2);
  EXPECT_LT((so + so.transpose()).norm(), 1e-15);
  Matrix h = d_case_conjugation(so, Direction::Forward);
  EXPECT_LT((h - characteristic_element(FlagParams::d(2))).norm(), 1e-14);
}

TEST(CharacteristicElement, InvalidParams) {
  EXPECT_THROW(characteristic_element(FlagParams::a(3, 2)), std::invalid_argument);
  EXPECT_THROW(make_flag_datum(FlagParams::d(1)), std::invalid_argument);
  EXPECT_THROW(make_flag_datum(FlagParams::c(5)), std::invalid_argument);
}

TEST(FlagDatumTest, Invariants) {
  for (const auto& fp : param_grid()) {
    auto fd = make_flag_datum(fp);
    const int n = fd.n();
    EXPECT_LT((fd.g_theta - matrix_exp(fd.h_theta)).norm(), 1e-15);
    for (size_t k : fd.decomposition.z_roots) EXPECT_LT(std::abs(fd.weyl.root_list[k](fd.h_theta)), 1e-15);
    for (const auto& a : fd.theta) EXPECT_EQ(a(fd.h_theta), cplx(0.0));
    // H_Theta lies in i h_R, hence in the compact form.
    EXPECT_LT((fd.h_theta + fd.h_theta.adjoint()).norm(), 1e-15);
    Matrix g2 = fd.g_theta * fd.g_theta;
    cplx c = fp.family == Family::A ? std::exp(2.0 * kPi * kI * double(fp.q) / double(n)) : cplx(-1);
    EXPECT_LT((g2 - c * Matrix::Identity(n, n)).norm(), 1e-13) << fp.label();
    // Direct sum reconstructs g.
    const auto& td = fd.decomposition;
    EXPECT_EQ(td.n_minus.dim() + td.z_theta.dim() + td.n_plus.dim(), fd.g_real.dim());
    auto total = RealSubspace::sum(RealSubspace::sum(td.n_minus, td.z_theta), td.n_plus);
    EXPECT_EQ(total.dim(), fd.g_real.dim());
  }
}

TEST(TripleDecompositionTest, Sl2) {
  auto fd = make_flag_datum(FlagParams::a(1, 1));
  const auto& td = fd.decomposition;
  EXPECT_EQ(td.z_theta.dim(), 2);
  EXPECT_TRUE(td.z_theta.contains(diag({1, -1})));
  EXPECT_TRUE(td.n_plus.contains(kI * elementary(2, 0, 1)));
  EXPECT_TRUE(td.n_minus.contains(elementary(2, 1, 0)));
  EXPECT_EQ(td.n_plus.dim(), 2);
}

TEST(TripleDecompositionTest, Dimensions) {
  auto a12 = make_flag_datum(FlagParams::a(1, 2));
  EXPECT_EQ(a12.decomposition.z_theta.dim(), 2 * 4);
  EXPECT_EQ(a12.decomposition.n_plus.dim(), 2 * 2);
  auto c2 = make_flag_datum(FlagParams::c(2));
  EXPECT_EQ(c2.decomposition.n_plus.dim(), 2 * 3);
  auto d3 = make_flag_datum(FlagParams::d(3));
  EXPECT_EQ(d3.decomposition.z_theta.dim(), 2 * 9);
  EXPECT_EQ(d3.decomposition.n_plus.dim(), 2 * 3);
}

TEST(TripleDecompositionTest, BracketAndKillingTables) {
  for (const auto& fp : param_grid()) {
    auto fd = make_flag_datum(fp);
    const auto& td = fd.decomposition;
    auto k = fd.killing();
    double incl = 0, pair = 0;
    for (const auto& z : td.z_theta.basis()) {
      for (const auto& x : td.n_plus.basis()) {
        incl = std::max(incl, td.n_plus.residual(bracket(z, x)));
        pair = std::max(pair, std::abs(k(z, x)));
      }
      for (const auto& x : td.n_minus.basis()) {
        incl = std::max(incl, td.n_minus.residual(bracket(z, x)));
        pair = std::max(pair, std::abs(k(z, x)));
      }
    }
    for (const auto& x : td.n_plus.basis())
      for (const auto& y : td.n_plus.basis()) {
        incl = std::max(incl, bracket(x, y).norm());
        pair = std::max(pair, std::abs(k(x, y)));
      }
    for (const auto& x : td.n_minus.basis())
      for (const auto& y : td.n_minus.basis()) incl = std::max(incl, bracket(x, y).norm());
    for (const auto& x : td.n_minus.basis())
      for (const auto& y : td.n_plus.basis()) incl = std::max(incl, td.z_theta.residual(bracket(x, y)));
    EXPECT_LT(incl, 1e-12) << fp.label();
    EXPECT_LT(pair, 1e-12) << fp.label();
    // n^- and n^+ are dual: the complex pairing matrix is invertible.
    const auto& wb = fd.weyl;
    Eigen::MatrixXcd m(td.n_minus_roots.size(), td.n_plus_roots.size());
    for (size_t i = 0; i < td.n_minus_roots.size(); ++i)
      for (size_t j = 0; j < td.n_plus_roots.size(); ++j)
        m(i, j) = k(wb.root_vectors[td.n_minus_roots[i]], wb.root_vectors[td.n_plus_roots[j]]);
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXcd>(m).rank(), static_cast<Eigen::Index>(td.n_plus_roots.size()));
  }
}

TEST(InvolutionTest, FixesHThetaAndNegatesRootSpaces) {
  for (const auto& fp : param_grid()) {
    auto fd = make_flag_datum(fp);
    auto sigma = involution_sigma(fd);
    EXPECT_LT((sigma(fd.h_theta) - fd.h_theta).norm(), 1e-14);
    for (size_t k : fd.decomposition.n_plus_roots)
      EXPECT_LT((sigma(fd.weyl.root_vectors[k]) + fd.weyl.root_vectors[k]).norm(), 1e-14);
    for (size_t k : fd.decomposition.n_minus_roots)
      EXPECT_LT((sigma(fd.weyl.root_vectors[k]) + fd.weyl.root_vectors[k]).norm(), 1e-14);
    std::mt19937_64 rng(21);
    auto basis = fd.weyl.complex_basis();
    for (int s = 0; s < 10; ++s) {
      Matrix x = testutil::random_combination(rng, basis), y = testutil::random_combination(rng, basis);
      EXPECT_LT((sigma(sigma(x)) - x).norm(), 1e-12 * std::max(1.0, x.norm()));
      EXPECT_LT((sigma(bracket(x, y)) - bracket(sigma(x), sigma(y))).norm(), 1e-11 * std::max(1.0, x.norm() * y.norm()));
    }
  }
}

TEST(InvolutionTest, ABlockSignFlip) {
  auto fd = make_flag_datum(FlagParams::a(2, 3));
  auto sigma = involution_sigma(fd);
  std::mt19937_64 rng(22);
  Matrix x = testutil::random_traceless(rng, 5);
  Matrix want = x;
  want.topRightCorner(2, 3) *= -1.0;
  want.bottomLeftCorner(3, 2) *= -1.0;
  EXPECT_LT((sigma(x) - want).norm(), 1e-13);
}

TEST(CentralizerTest, Agreement) {
  for (const auto& fp : {FlagParams::a(1, 1), FlagParams::a(1, 2), FlagParams::c(2), FlagParams::d(3)}) {
    auto fd = make_flag_datum(fp);
    auto r = centralizer_agreement(fd);
    EXPECT_TRUE(r.equal) << fp.label();
    EXPECT_LT(r.max_residual, 1e-9);
    EXPECT_EQ(r.kernel_dim, r.expected_dim);
  }
  auto r = centralizer_agreement(make_flag_datum(FlagParams::a(1, 1)));
  EXPECT_EQ(r.kernel_dim, 2);
}

TEST(DCaseConjugation, RoundTripAndMembership) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> d;
  const int l = 3, n = 6;
  Matrix big_f = d_case_form(l);
  for (int s = 0; s < 20; ++s) {
    Matrix x = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        x(i, j) = d(rng);
        x(j, i) = -x(i, j);
      }
    Matrix y = d_case_conjugation(x, Direction::Forward);
    EXPECT_LT((y * big_f + big_f * y.transpose()).norm(), 1e-12);
    EXPECT_LT((d_case_conjugation(y, Direction::Back) - x).norm(), 1e-12);
  }
  Matrix f = d_case_f(l);
  EXPECT_LT((f * f - kI * big_f).norm(), 1e-15);
  EXPECT_LT((f * f.adjoint() - Matrix::Identity(n, n)).norm(), 1e-15);
  EXPECT_THROW(d_case_conjugation(Matrix::Identity(n, n), Direction::Forward), std::invalid_argument);
  EXPECT_THROW(d_case_conjugation(Matrix::Identity(n, n), Direction::Back), std::invalid_argument);
}

TEST(CorootExpansionTest, AMatchesClosedForms) {
  for (const auto& fp : {FlagParams::a(1, 1), FlagParams::a(1, 3), FlagParams::a(2, 3)}) {
    auto ex = h_theta_coroot_expansion(make_flag_datum(fp));
    EXPECT_LT(ex.reconstruction_residual, 1e-9);
    EXPECT_NEAR(ex.computed_pairing.real(), -kPi, 1e-12);
    EXPECT_NEAR(ex.computed_pairing.imag(), 0.0, 1e-12);
    EXPECT_TRUE(ex.pairing_matches);
    EXPECT_LT(ex.coefficient_gap, 1e-9);
  }
}

TEST(CorootExpansionTest, CAndDPairingUnderKillingDuals) {
  // Under Killing duals K(i H_a, H_Theta) = i a(H_Theta) = -pi for the excluded root.
  for (const auto& fp : {FlagParams::c(2), FlagParams::c(3), FlagParams::d(3), FlagParams::d(4)}) {
    auto ex = h_theta_coroot_expansion(make_flag_datum(fp));
    EXPECT_LT(ex.reconstruction_residual, 1e-9);
    EXPECT_NEAR(ex.computed_pairing.real(), -kPi, 1e-12) << fp.label();
    EXPECT_FALSE(ex.pairing_matches);
    EXPECT_LT(ex.coefficient_gap, 1e-9) << fp.label();
  }
  auto c2 = h_theta_coroot_expansion(make_flag_datum(FlagParams::c(2)));
  EXPECT_DOUBLE_EQ(c2.reference_pairing, -12.0 * kPi);
}
