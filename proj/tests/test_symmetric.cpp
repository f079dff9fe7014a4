#include "flagorbit/symmetric.hpp"
#include "test_helpers.hpp"

#include <gtest/gtest.h>

using namespace flagorbit;

namespace {

struct Fixture {
  FlagDatum fd;
  CanonicalDecomposition cd;
  explicit Fixture(const FlagParams& fp) : fd(make_flag_datum(fp)), cd(canonical_decomposition(fd)) {}
};

std::vector<FlagParams> grid() {
  return {FlagParams::a(1, 1), FlagParams::a(1, 2), FlagParams::a(2, 2), FlagParams::a(2, 3),
          FlagParams::c(1),    FlagParams::c(2),    FlagParams::c(3),    FlagParams::d(2),
          FlagParams::d(3),    FlagParams::d(4)};
}

int expected_m_dim(const FlagParams& fp) {
  if (fp.family == Family::A) return 2 * fp.p * fp.q;
  if (fp.family == Family::C) return fp.l * (fp.l + 1);
  return fp.l * (fp.l - 1);
}

Matrix m2(cplx a, cplx b, cplx c, cplx d) { return (Matrix(2, 2) << a, b, c, d).finished(); }

Matrix su2(cplx alpha, cplx beta) { return m2(alpha, -std::conj(beta), beta, std::conj(alpha)); }

}  // namespace

TEST(CanonicalDecompositionTest, Sl2M) {
  Fixture f(FlagParams::a(1, 1));
  EXPECT_EQ(f.cd.m.dim(), 2);
  cplx b(0.3, -1.1);
  EXPECT_TRUE(f.cd.m.contains(m2(0, b, -std::conj(b), 0)));
  EXPECT_FALSE(f.cd.m.contains(m2(0, b, std::conj(b), 0)));
}

TEST(CanonicalDecompositionTest, DimensionsAndAxioms) {
  for (const auto& fp : grid()) {
    Fixture f(fp);
    EXPECT_EQ(f.cd.m.dim(), expected_m_dim(fp)) << fp.label();
    EXPECT_EQ(f.cd.u_theta.dim() + f.cd.m.dim(), f.cd.u.dim());
    EXPECT_EQ(f.cd.u_theta.dim(), f.fd.decomposition.z_theta.dim() / 2);
    auto ax = symmetric_axioms(f.cd, f.fd);
    EXPECT_TRUE(ax.ok(1e-9)) << fp.label() << " tt=" << ax.theta_theta << " tm=" << ax.theta_m << " mm=" << ax.m_m
                             << " cl=" << ax.u_star_closure << " min=" << ax.sqrt_m_min_killing;
    EXPECT_EQ(ax.u_star_cap_u_dim, f.cd.u_theta.dim());
  }
}

TEST(CanonicalDecompositionTest, RejectsNonInvariantSpace) {
  auto fd = make_flag_datum(FlagParams::a(1, 1));
  // sigma flips the off-diagonal part only, so this line is not stable.
  auto bad = RealSubspace::span(2, {m2(kI, 1.0, 1.0, -kI)});
  EXPECT_THROW(canonical_decomposition(fd, bad), std::invalid_argument);
}

TEST(MembershipTest, RootVectorsOutsideUTheta) {
  Fixture f(FlagParams::a(1, 2));
  for (size_t k : f.fd.decomposition.n_plus_roots) {
    auto m = solve_membership(f.fd.weyl.root_vectors[k], f.cd.u_theta);
    EXPECT_FALSE(m.member);
    EXPECT_GT(m.residual, 0.1);
  }
}

TEST(MembershipTest, BracketsOfMLandInUTheta) {
  Fixture f(FlagParams::c(2));
  for (const auto& x : f.cd.m.basis())
    for (const auto& y : f.cd.m.basis()) EXPECT_TRUE(solve_membership(bracket(x, y), f.cd.u_theta).member);
}

TEST(DualSpaceTest, Su11Shape) {
  for (const auto& fp : {FlagParams::a(1, 1), FlagParams::c(1)}) {
    Fixture f(fp);
    auto us = dual_space(f.cd, f.fd);
    EXPECT_EQ(us.dim(), 3);
    // [[i a, b], [conj b, -i a]]
    auto ref = RealSubspace::span(2, {m2(kI, 0, 0, -kI), m2(0, 1, 1, 0), m2(0, kI, -kI, 0)});
    EXPECT_LT(us.max_residual(ref), 1e-14);
    EXPECT_LT(ref.max_residual(us), 1e-14);
  }
}

TEST(DualSpaceTest, SplStarBlockForm) {
  // u* for C: [[A, B], [conj B, conj A]] with A in u(l), B symmetric.
  Fixture f(FlagParams::c(2));
  auto us = dual_space(f.cd, f.fd);
  EXPECT_EQ(us.dim(), 10);
  for (const auto& x : us.basis()) {
    Matrix a = x.topLeftCorner(2, 2), b = x.topRightCorner(2, 2);
    EXPECT_LT((a + a.adjoint()).norm(), 1e-14);
    EXPECT_LT((b - b.transpose()).norm(), 1e-14);
    EXPECT_LT((x.bottomLeftCorner(2, 2) - b.conjugate()).norm(), 1e-14);
    EXPECT_LT((x.bottomRightCorner(2, 2) - a.conjugate()).norm(), 1e-14);
  }
}

TEST(DualSpaceTest, SuPqIdentityForA) {
  Fixture f(FlagParams::a(2, 3));
  EXPECT_NO_THROW(dual_space(f.cd, f.fd));
  EXPECT_EQ(f.cd.u_star.dim(), 24);
}

TEST(ParabolicFactorizationTest, RandomGroupElements) {
  std::mt19937_64 rng(31);
  for (const auto& fp : grid()) {
    Fixture f(fp);
    auto basis = f.fd.weyl.complex_basis();
    for (int s = 0; s < 5; ++s) {
      Matrix x = testutil::random_combination(rng, basis) + kI * testutil::random_combination(rng, basis);
      x *= 0.8 / x.norm() * (1 + s);
      Matrix g = matrix_exp(x);
      auto pf = parabolic_factorization(f.fd, g);
      const int n = f.fd.n(), k = parabolic_block(f.fd);
      EXPECT_LT((pf.u * pf.p - g).norm(), 1e-10 * g.norm());
      EXPECT_LT((pf.u.adjoint() * pf.u - Matrix::Identity(n, n)).norm(), 1e-12);
      EXPECT_LT(std::abs(pf.u.determinant() - 1.0), 1e-12) << fp.label();
      EXPECT_EQ(pf.p.bottomLeftCorner(n - k, k).norm(), 0.0);
      // Ad(p) H_Theta - H_Theta lies in n^+.
      Matrix off = adjoint_action(pf.p, f.fd.h_theta) - f.fd.h_theta;
      EXPECT_LT(f.fd.decomposition.n_plus.residual(off), 1e-9 * std::max(1.0, off.norm()));
    }
  }
}

TEST(SampleSTest, ZeroGeneratorIsHTheta) {
  Fixture f(FlagParams::a(1, 2));
  auto pt = s_point(f.fd, Matrix::Zero(3, 3));
  EXPECT_LT((pt.value - f.fd.h_theta).norm(), 1e-15);
}

TEST(SampleSTest, PointsInDualAndOnOrbit) {
  for (const auto& fp : grid()) {
    Fixture f(fp);
    auto pts = sample_S(f.cd, f.fd, 25, 99);
    for (const auto& pt : pts) {
      ASSERT_TRUE(pt.generator && pt.witness);
      EXPECT_LE(pt.generator->norm(), 2.0 + 1e-12);
      EXPECT_TRUE(f.cd.u_star.solve(pt.value, 1e-9).member) << fp.label();
      EXPECT_LT(orbit_invariant_residual(f.fd, pt.value), 1e-9) << fp.label();
      EXPECT_LT(witness_residual(f.fd, pt), 1e-9 * std::max(1.0, pt.value.norm())) << fp.label();
    }
  }
}

TEST(SampleSTest, Su2ClosedForm) {
  Fixture f(FlagParams::a(1, 1));
  for (cplx b : {cplx(0.3, 0.4), cplx(-1.0, 0.2), cplx(0.0, -0.7)}) {
    Matrix a = m2(0, b, std::conj(b), 0);
    ASSERT_TRUE(f.cd.sqrt_m.contains(a));
    double r = std::abs(b);
    Matrix want = (kI * kPi / 2.0) * m2(std::cosh(2 * r), -(b / r) * std::sinh(2 * r), (std::conj(b) / r) * std::sinh(2 * r),
                                        -std::cosh(2 * r));
    EXPECT_LT((s_point(f.fd, a).value - want).norm(), 1e-12);
  }
}

TEST(SampleSTest, DeterministicForSeed) {
  Fixture f(FlagParams::c(2));
  auto a = sample_S(f.cd, f.fd, 5, 7), b = sample_S(f.cd, f.fd, 5, 7);
  for (size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].value, b[k].value);
}

TEST(LocateInSTest, RecoversGenerator) {
  Fixture f(FlagParams::a(1, 2));
  for (const auto& pt : sample_S(f.cd, f.fd, 10, 5)) {
    auto loc = locate_in_S(f.cd, f.fd, pt.value);
    ASSERT_TRUE(loc.in_s);
    EXPECT_LT((loc.generator - *pt.generator).norm(), 1e-8);
  }
  // -H_Theta is not in S.
  EXPECT_FALSE(locate_in_S(f.cd, f.fd, Matrix(-f.fd.h_theta)).in_s);
}

TEST(FiberOriginTest, OnlyHTheta) {
  for (const auto& fp : {FlagParams::a(1, 2), FlagParams::c(2), FlagParams::d(3), FlagParams::a(2, 3)}) {
    Fixture f(fp);
    auto r = fiber_intersection_origin(f.cd, f.fd);
    EXPECT_EQ(r.solution_dim, 0);
    EXPECT_LT((r.point - f.fd.h_theta).norm(), 1e-10);
  }
}

TEST(FiberOriginTest, AffineMeetDetectsFreedom) {
  // Directions inside the target leave a free parameter.
  auto target = RealSubspace::span(2, {m2(1, 0, 0, 0), m2(0, 1, 0, 0)});
  auto r = affine_meet(m2(2, 0, 0, 0), {m2(0, 1, 0, 0), m2(0, 0, 1, 0)}, target);
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.solution_dim, 1);
  auto miss = affine_meet(m2(0, 0, 0, 1), {m2(0, 1, 0, 0)}, target);
  EXPECT_FALSE(miss.consistent);
}

TEST(TransversalityTest, OriginSl2) {
  Fixture f(FlagParams::a(1, 1));
  OrbitPoint h = s_point(f.fd, Matrix::Zero(2, 2));
  auto r = transversality_check(f.cd, f.fd, h);
  EXPECT_EQ(r.expected, 4);
  EXPECT_EQ(r.bracket_rank, 4);
  EXPECT_TRUE(r.full());
}

TEST(TransversalityTest, RandomPointsC2) {
  Fixture f(FlagParams::c(2));
  for (const auto& pt : sample_S(f.cd, f.fd, 20, 3)) {
    auto r = transversality_check(f.cd, f.fd, pt);
    EXPECT_EQ(r.expected, 12);
    EXPECT_TRUE(r.full()) << r.bracket_rank << " " << r.tangent_rank << " " << r.orbit_rank;
  }
}

TEST(TransversalityTest, MInsteadOfSqrtMAtOrigin) {
  Fixture f(FlagParams::a(1, 2));
  OrbitPoint h = s_point(f.fd, Matrix::Zero(3, 3));
  auto r = transversality_check(f.cd, f.fd, h, &f.cd.m);
  EXPECT_EQ(r.bracket_rank, r.expected);
}

TEST(SigmaTildeTest, IdentityAndRandom) {
  Fixture f(FlagParams::a(1, 2));
  auto r0 = sigma_tilde_fiber_pairing(f.cd, f.fd, s_point(f.fd, Matrix::Zero(3, 3)));
  EXPECT_LT((r0.point.value - f.fd.h_theta).norm(), 1e-14);
  for (const auto& pt : sample_S(f.cd, f.fd, 20, 17)) {
    auto r = sigma_tilde_fiber_pairing(f.cd, f.fd, pt);
    EXPECT_LT(r.fiber_residual, 1e-8 * std::max(1.0, pt.value.norm()));
    EXPECT_LT(witness_residual(f.fd, r.point), 1e-8 * std::max(1.0, pt.value.norm()));
  }
}

TEST(SigmaTildeTest, RequiresWitness) {
  Fixture f(FlagParams::a(1, 1));
  OrbitPoint bare{f.fd.h_theta, std::nullopt, std::nullopt};
  EXPECT_THROW(sigma_tilde_fiber_pairing(f.cd, f.fd, bare), std::invalid_argument);
}

TEST(FiberConditionTest, IdentityIsSingleton) {
  for (const auto& fp : grid()) {
    Fixture f(fp);
    auto v = nonintersecting_fiber_condition(f.cd, f.fd, Matrix::Identity(f.fd.n(), f.fd.n()));
    EXPECT_EQ(v.kind, FiberVerdictKind::Singleton) << fp.label() << ": " << v.reason;
    ASSERT_TRUE(v.point);
    EXPECT_LT((*v.point - f.fd.h_theta).norm(), 1e-10);
  }
}

TEST(FiberConditionTest, Su2Examples) {
  Fixture f(FlagParams::a(1, 1));
  auto v0 = nonintersecting_fiber_condition(f.cd, f.fd, su2(0.0, 1.0));
  EXPECT_EQ(v0.kind, FiberVerdictKind::Empty) << v0.reason;
  double s = std::sqrt(0.5);
  auto vh = nonintersecting_fiber_condition(f.cd, f.fd, su2(s, cplx(0, s)));
  EXPECT_EQ(vh.kind, FiberVerdictKind::Empty) << vh.reason;
  EXPECT_FALSE(vh.meet.consistent);
}

TEST(FiberConditionTest, RejectsNonUnitary) {
  Fixture f(FlagParams::a(1, 1));
  EXPECT_THROW(nonintersecting_fiber_condition(f.cd, f.fd, 2.0 * Matrix::Identity(2, 2)), std::invalid_argument);
}

TEST(FiberConditionTest, SingletonsLieOnFiberAndS) {
  std::mt19937_64 rng(41);
  for (const auto& fp : {FlagParams::a(1, 2), FlagParams::c(2), FlagParams::d(3)}) {
    Fixture f(fp);
    int decided = 0;
    for (int s = 0; s < 20; ++s) {
      Matrix u = random_compact_element(f.cd, rng, 0.6);
      auto v = nonintersecting_fiber_condition(f.cd, f.fd, u);
      if (v.kind == FiberVerdictKind::Unclassified) continue;
      ++decided;
      if (v.kind == FiberVerdictKind::Singleton) {
        Matrix back = unitary_action(u.adjoint(), *v.point) - f.fd.h_theta;
        EXPECT_LT(f.fd.decomposition.n_plus.residual(back), 1e-8 * std::max(1.0, back.norm()));
        EXPECT_TRUE(v.location->in_s);
      }
    }
    EXPECT_GT(decided, 0) << fp.label();
  }
}

TEST(KillingSignatureTest, IndefiniteOnDualAndTangent) {
  for (const auto& fp : grid()) {
    Fixture f(fp);
    auto g = killing_gram(f.fd, f.cd.u_star.orthonormal_basis());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
    EXPECT_LT(es.eigenvalues().minCoeff(), -1e-6);
    EXPECT_GT(es.eigenvalues().maxCoeff(), 1e-6);
    auto mg = RealSubspace::sum(f.fd.decomposition.n_plus, f.fd.decomposition.n_minus);
    Eigen::SelfAdjointEigenSolver<RealMatrix> et(killing_gram(f.fd, mg.orthonormal_basis()));
    EXPECT_LT(et.eigenvalues().minCoeff(), -1e-6);
    EXPECT_GT(et.eigenvalues().maxCoeff(), 1e-6);
  }
}
