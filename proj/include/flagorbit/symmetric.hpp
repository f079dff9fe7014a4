#pragma once

#include "flagorbit/flag.hpp"

#include <optional>
#include <random>

namespace flagorbit {

/// A structural claim failed numerically.
class ClaimViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * @brief u = u_Theta + m under sigma, and the dual u* = u_Theta + i m.
 */
struct CanonicalDecomposition {
  RealSubspace u;
  RealSubspace u_theta;
  RealSubspace m;
  RealSubspace sqrt_m;
  RealSubspace u_star;
};

inline CanonicalDecomposition canonical_decomposition(const FlagDatum& fd, const RealSubspace& u) {
  Involution sigma(fd);
  for (const auto& b : u.basis())
    if (u.residual(sigma(b)) > fd.tol.abs * std::max(1.0, b.norm()))
      throw std::invalid_argument("canonical_decomposition: sigma does not preserve u");
  CanonicalDecomposition cd;
  cd.u = u;
  cd.u_theta = u.kernel([&](const Matrix& x) { return Matrix(sigma(x) - x); }, fd.tol.rank_rel);
  cd.m = u.kernel([&](const Matrix& x) { return Matrix(sigma(x) + x); }, fd.tol.rank_rel);
  std::vector<Matrix> im;
  for (const auto& b : cd.m.basis()) im.push_back(kI * b);
  cd.sqrt_m = RealSubspace::span(fd.n(), im, fd.tol.rank_rel);
  cd.u_star = RealSubspace::sum(cd.u_theta, cd.sqrt_m, fd.tol.rank_rel);
  if (cd.u_theta.dim() + cd.m.dim() != u.dim()) throw ConstructionError("canonical_decomposition: eigenspaces do not fill u");
  return cd;
}

inline CanonicalDecomposition canonical_decomposition(const FlagDatum& fd) {
  return canonical_decomposition(fd, compact_real_form(fd.weyl, fd.tol.abs));
}

struct SymmetricAxioms {
  double theta_theta = 0;  // [u_Theta, u_Theta] outside u_Theta
  double theta_m = 0;      // [u_Theta, m] outside m
  double m_m = 0;          // [m, m] outside u_Theta
  double u_star_closure = 0;
  double sigma_sign = 0;   // |sigma - 1| on u_Theta and |sigma + 1| on m
  int u_star_cap_u_dim = 0;
  double u_star_cap_u_residual = 0;
  double sqrt_m_min_killing = 0;  // smallest Gram eigenvalue on i m
  bool ok(double tol) const {
    return theta_theta < tol && theta_m < tol && m_m < tol && u_star_closure < tol && sigma_sign < tol &&
           u_star_cap_u_residual < tol && sqrt_m_min_killing > 0;
  }
};

inline double inclusion_residual(const RealSubspace& a, const RealSubspace& b, const RealSubspace& target) {
  double r = 0;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) r = std::max(r, target.residual(bracket(x, y)));
  return r;
}

inline RealMatrix killing_gram(const FlagDatum& fd, const std::vector<Matrix>& b) {
  const Eigen::Index d = static_cast<Eigen::Index>(b.size());
  RealMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = fd.killing(b[size_t(i)], b[size_t(j)]).real();
  return g;
}

inline SymmetricAxioms symmetric_axioms(const CanonicalDecomposition& cd, const FlagDatum& fd) {
  SymmetricAxioms ax;
  ax.theta_theta = inclusion_residual(cd.u_theta, cd.u_theta, cd.u_theta);
  ax.theta_m = inclusion_residual(cd.u_theta, cd.m, cd.m);
  ax.m_m = inclusion_residual(cd.m, cd.m, cd.u_theta);
  ax.u_star_closure = cd.u_star.closure_residual();
  Involution sigma(fd);
  for (const auto& x : cd.u_theta.basis()) ax.sigma_sign = std::max(ax.sigma_sign, (sigma(x) - x).norm());
  for (const auto& x : cd.m.basis()) ax.sigma_sign = std::max(ax.sigma_sign, (sigma(x) + x).norm());
  auto cap = RealSubspace::intersection(cd.u_star, cd.u, fd.tol.rank_rel);
  ax.u_star_cap_u_dim = cap.dim();
  ax.u_star_cap_u_residual = std::max(cap.max_residual(cd.u_theta), cd.u_theta.max_residual(cap));
  if (cap.dim() != cd.u_theta.dim()) ax.u_star_cap_u_residual = std::max(ax.u_star_cap_u_residual, 1.0);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(killing_gram(fd, cd.sqrt_m.orthonormal_basis()));
  ax.sqrt_m_min_killing = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
  return ax;
}

/// u*, after checking closure; for A also the su(p,q) identity I_pq X + X^* I_pq = 0.
inline RealSubspace dual_space(const CanonicalDecomposition& cd, const FlagDatum& fd) {
  if (cd.u_star.closure_residual() > fd.tol.abs) throw ConstructionError("dual_space: u* not closed under bracket");
  if (fd.family() == Family::A) {
    const int n = fd.n();
    Matrix ipq = Matrix::Identity(n, n);
    for (int i = fd.params.p; i < n; ++i) ipq(i, i) = -1.0;
    for (const auto& x : cd.u_star.basis())
      if ((ipq * x + x.adjoint() * ipq).norm() > fd.tol.abs * std::max(1.0, x.norm()))
        throw ConstructionError("dual_space: element outside su(p,q)");
  }
  return cd.u_star;
}

// ---------------------------------------------------------------------------
// Orbit points and the U . P_Theta factorization.

struct FiberWitness {
  Matrix u_factor;      // in U
  Matrix fiber_offset;  // in n^+
};

/// A point Ad(g) H_Theta, optionally with its S-generator and fiber witness.
struct OrbitPoint {
  Matrix value;
  std::optional<Matrix> generator;  // A in i m with value = Ad(exp A) H_Theta
  std::optional<FiberWitness> witness;
};

struct ParabolicFactorization {
  Matrix u;  // in U
  Matrix p;  // in P_Theta, block upper triangular
};

/// Block size of the subspace stabilized by P_Theta.
inline int parabolic_block(const FlagDatum& fd) { return fd.family() == Family::A ? fd.params.p : fd.params.l; }

/// Residual of the group identities of U: unitarity plus det 1 (A), u^T Omega u = Omega (C), u^T F u = F (D).
inline double compact_group_residual(const FlagDatum& fd, const Matrix& u) {
  const int n = fd.n();
  double r = (u.adjoint() * u - Matrix::Identity(n, n)).norm();
  if (fd.family() == Family::A) return std::max(r, std::abs(u.determinant() - 1.0));
  const int l = n / 2;
  Matrix j = Matrix::Zero(n, n);
  for (int i = 0; i < l; ++i) {
    j(i, l + i) = 1.0;
    j(l + i, i) = fd.family() == Family::C ? -1.0 : 1.0;
  }
  r = std::max(r, (u.transpose() * j * u - j).norm());
  if (fd.family() == Family::D) r = std::max(r, std::abs(u.determinant() - 1.0));
  return r;
}

/// g = u p with u in U and p in P_Theta, for g in the complex group.
inline ParabolicFactorization parabolic_factorization(const FlagDatum& fd, const Matrix& g) {
  const int n = fd.n();
  if (g.rows() != n || g.cols() != n) throw DimensionError("parabolic_factorization: dimension mismatch");
  ParabolicFactorization f;
  if (fd.family() == Family::A) {
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    cplx d = q.determinant();
    q.col(n - 1) *= std::conj(d);
    f.u = q;
  } else {
    const int l = n / 2;
    Eigen::HouseholderQR<Matrix> qr(g.leftCols(l));
    Matrix q1 = qr.householderQ() * Matrix::Identity(n, l);
    Matrix x = q1.topRows(l), y = q1.bottomRows(l);
    f.u.resize(n, n);
    if (fd.family() == Family::C)
      f.u << x, -y.conjugate(), y, x.conjugate();
    else
      f.u << x, y.conjugate(), y, x.conjugate();
  }
  f.p = f.u.adjoint() * g;
  const int k = parabolic_block(fd);
  const double scale = std::max(1.0, g.norm());
  if (f.p.bottomLeftCorner(n - k, k).norm() > 1e-9 * scale || compact_group_residual(fd, f.u) > 1e-9)
    throw ConstructionError("parabolic_factorization: input is not in the group");
  f.p.bottomLeftCorner(n - k, k).setZero();
  return f;
}

/// Ad(g) H_Theta with a fiber witness recovered from g = u p.
inline OrbitPoint orbit_point(const FlagDatum& fd, const Matrix& g) {
  OrbitPoint pt;
  pt.value = adjoint_action(g, fd.h_theta);
  auto f = parabolic_factorization(fd, g);
  Matrix offset = adjoint_action(f.p, fd.h_theta) - fd.h_theta;
  pt.witness = FiberWitness{f.u, fd.decomposition.n_plus.project(offset)};
  return pt;
}

/// exp(A) . H_Theta for A in i m.
inline OrbitPoint s_point(const FlagDatum& fd, const Matrix& a) {
  Matrix e = matrix_exp(a);
  OrbitPoint pt = orbit_point(fd, e);
  pt.value = e * fd.h_theta * matrix_exp(-a);
  pt.generator = a;
  return pt;
}

/// Residual of value = Ad(u)(H_Theta + offset) and of offset in n^+.
inline double witness_residual(const FlagDatum& fd, const OrbitPoint& pt) {
  if (!pt.witness) return 0.0;
  const auto& w = *pt.witness;
  double r = (pt.value - unitary_action(w.u_factor, Matrix(fd.h_theta + w.fiber_offset))).norm();
  return std::max(r, fd.decomposition.n_plus.residual(w.fiber_offset));
}

/// Uniform direction in a real subspace with Frobenius norm `radius`.
inline Matrix random_direction(const RealSubspace& s, std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> d(0.0, 1.0);
  RealVector c(s.dim());
  for (int k = 0; k < s.dim(); ++k) c(k) = d(rng);
  if (c.norm() == 0.0) c(0) = 1.0;
  c *= radius / c.norm();
  return complexify(s.frame() * c, s.matrix_dim());
}

/// Points of S = Ad(exp(i m)) H_Theta with generators of Frobenius norm at most `radius`.
inline std::vector<OrbitPoint> sample_S(const CanonicalDecomposition& cd, const FlagDatum& fd, int count,
                                        uint64_t seed, double radius = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.0, radius);
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    double rad = r(rng);
    out.push_back(s_point(fd, random_direction(cd.sqrt_m, rng, rad)));
  }
  return out;
}

/// Coefficient gap between the characteristic polynomials of x and H_Theta,
/// with the k-th coefficient scaled by max(1, |x|)^k.
inline double orbit_invariant_residual(const FlagDatum& fd, const Matrix& x) {
  CVector a = characteristic_polynomial(x), b = characteristic_polynomial(fd.h_theta);
  const double s = std::max(1.0, x.norm());
  double r = 0, sk = 1;
  for (Eigen::Index k = 0; k < a.size(); ++k, sk *= s) r = std::max(r, std::abs(a(k) - b(k)) / sk);
  return r;
}

struct SLocation {
  bool in_s = false;
  Matrix generator;            // A in i m
  double hermitian_residual = 0;
  double min_eigenvalue = 0;   // of exp(P) g_Theta^{-1}, Hermitian part
  double generator_residual = 0;  // distance of A from i m
  double reconstruction = 0;  // |Ad(exp A) H_Theta - P|
};

/// Decides P in S via exp(P) g_Theta^{-1} = exp(2A), A in i m.
inline SLocation locate_in_S(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& p, double tol = 1e-8) {
  SLocation loc;
  Matrix q = matrix_exp(p) * matrix_exp(-fd.h_theta);
  const double qs = std::max(1.0, q.norm());
  loc.hermitian_residual = (q - q.adjoint()).norm() / qs;
  Matrix qh = 0.5 * (q + q.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(qh);
  loc.min_eigenvalue = es.eigenvalues().minCoeff();
  if (loc.hermitian_residual > tol || loc.min_eigenvalue <= 0) return loc;
  RealVector logs = es.eigenvalues().array().log() * 0.5;
  Matrix a = es.eigenvectors() * logs.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  loc.generator = a;
  loc.generator_residual = cd.sqrt_m.residual(a);
  loc.reconstruction = (matrix_exp(a) * fd.h_theta * matrix_exp(-a) - p).norm();
  loc.in_s = loc.generator_residual <= tol * std::max(1.0, a.norm()) && loc.reconstruction <= tol * std::max(1.0, p.norm());
  return loc;
}

// ---------------------------------------------------------------------------
// Affine fibers against linear subspaces.

struct AffineMeet {
  bool consistent = false;
  int solution_dim = 0;
  RealVector coefficients;  // minimum-norm solution over `directions`
  Matrix point;             // base + sum c_k directions_k
  double residual = 0;
};

/// Solves base + sum c_k d_k in target over real c.
inline AffineMeet affine_meet(const Matrix& base, const std::vector<Matrix>& directions, const RealSubspace& target,
                              double rank_rel = 1e-8, double tol = 1e-8) {
  const int n = static_cast<int>(base.rows());
  const RealMatrix& q = target.frame();
  auto off = [&](const RealVector& v) -> RealVector { return target.empty() ? v : RealVector(v - q * (q.transpose() * v)); };
  const Eigen::Index k = static_cast<Eigen::Index>(directions.size());
  RealMatrix m(2 * n * n, k);
  for (Eigen::Index j = 0; j < k; ++j) m.col(j) = off(realify(directions[size_t(j)]));
  RealVector rhs = -off(realify(base));
  AffineMeet out;
  RealVector c = RealVector::Zero(k);
  int rank = 0;
  if (k > 0) {
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    // Directions inside the target give singular values at round-off level.
    const double dscale = std::max(1.0, realify_all(directions, n).norm());
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > rank_rel * dscale) {
        c += svd.matrixV().col(i) * (svd.matrixU().col(i).dot(rhs) / s(i));
        ++rank;
      }
  }
  out.solution_dim = static_cast<int>(k) - rank;
  out.coefficients = c;
  out.point = base;
  for (Eigen::Index j = 0; j < k; ++j) out.point += c(j) * directions[size_t(j)];
  out.residual = (k > 0 ? RealVector(m * c - rhs) : RealVector(-rhs)).norm();
  out.consistent = out.residual <= tol * std::max(1.0, base.norm());
  return out;
}

/// (H_Theta + n^+) meets u* only at H_Theta; throws ClaimViolation otherwise.
inline AffineMeet fiber_intersection_origin(const CanonicalDecomposition& cd, const FlagDatum& fd) {
  AffineMeet r = affine_meet(fd.h_theta, fd.decomposition.n_plus.basis(), cd.u_star, fd.tol.rank_rel, fd.tol.certified);
  if (!r.consistent) throw ClaimViolation("fiber_intersection_origin: H_Theta + n+ misses u*");
  if (r.solution_dim != 0)
    throw ClaimViolation("fiber_intersection_origin: solution space of dimension " + std::to_string(r.solution_dim));
  return r;
}

struct RankReport {
  int bracket_rank = 0;   // rank {[p, s] : s in i m} + {[p, x] : x in n^+}
  int tangent_rank = -1;  // rank T_p S + Ad(u) n^+ (needs a witness)
  int orbit_rank = 0;     // rank [p, g]
  int expected = 0;       // dim_R m_G
  bool full() const {
    return bracket_rank == expected && orbit_rank == expected && (tangent_rank < 0 || tangent_rank == expected);
  }
};

inline RankReport transversality_check(const CanonicalDecomposition& cd, const FlagDatum& fd, const OrbitPoint& pt,
                                       const RealSubspace* first_space = nullptr) {
  if (!pt.generator && !first_space) throw std::invalid_argument("transversality_check: point needs its S-generator");
  const int n = fd.n();
  const Matrix& p = pt.value;
  RankReport r;
  r.expected = fd.decomposition.n_plus.dim() + fd.decomposition.n_minus.dim();
  const RealSubspace& s1 = first_space ? *first_space : cd.sqrt_m;
  std::vector<Matrix> t;
  for (const auto& s : s1.basis()) t.push_back(bracket(p, s));
  for (const auto& x : fd.decomposition.n_plus.basis()) t.push_back(bracket(p, x));
  r.bracket_rank = real_rank(t, n, fd.tol.rank_rel);
  std::vector<Matrix> o;
  for (const auto& b : fd.g_real.basis()) o.push_back(bracket(p, b));
  r.orbit_rank = real_rank(o, n, fd.tol.rank_rel);
  if (pt.witness) {
    std::vector<Matrix> tt;
    for (const auto& s : cd.u_star.basis()) tt.push_back(bracket(s, p));
    for (const auto& x : fd.decomposition.n_plus.basis()) tt.push_back(unitary_action(pt.witness->u_factor, x));
    r.tangent_rank = real_rank(tt, n, fd.tol.rank_rel);
  }
  return r;
}

struct SigmaTildeResult {
  OrbitPoint point;         // exp(-A) . H_Theta in the fiber of sigma(u)
  double fiber_residual = 0;  // distance of Ad(sigma(u)^{-1}) point - H_Theta from n^+
};

inline SigmaTildeResult sigma_tilde_fiber_pairing(const CanonicalDecomposition& cd, const FlagDatum& fd, const OrbitPoint& pt) {
  (void)cd;
  if (!pt.witness || !pt.generator) throw std::invalid_argument("sigma_tilde_fiber_pairing: witness and generator required");
  if (witness_residual(fd, pt) > fd.tol.certified * std::max(1.0, pt.value.norm()))
    throw std::invalid_argument("sigma_tilde_fiber_pairing: witness inconsistent with value");
  Involution sigma(fd);
  const Matrix& a = *pt.generator;
  SigmaTildeResult r;
  r.point.value = matrix_exp(-a) * fd.h_theta * matrix_exp(a);
  r.point.generator = Matrix(-a);
  Matrix su = sigma.on_group(pt.witness->u_factor);
  Matrix back = unitary_action(su.adjoint(), r.point.value) - fd.h_theta;
  r.fiber_residual = fd.decomposition.n_plus.residual(back);
  r.point.witness = FiberWitness{su, fd.decomposition.n_plus.project(back)};
  return r;
}

enum class FiberVerdictKind { Empty, Singleton, Unclassified };

inline std::string to_string(FiberVerdictKind k) {
  switch (k) {
    case FiberVerdictKind::Empty: return "certified-empty";
    case FiberVerdictKind::Singleton: return "certified-singleton";
    case FiberVerdictKind::Unclassified: return "unclassified";
  }
  return "?";
}

struct FiberVerdict {
  FiberVerdictKind kind = FiberVerdictKind::Unclassified;
  std::string reason;
  bool inclusion_hypotheses = false;  // Ad(u) n^+ in u* and Ad(u) H_Theta not in u_Theta
  bool trivial_meet = false;          // Ad(u) n^+ meets u* only in 0
  AffineMeet meet;
  std::optional<Matrix> point;
  std::optional<SLocation> location;
};

/**
 * @brief Sufficient conditions for the fiber Ad(u)(H_Theta + n^+) to miss S or
 * to meet it in exactly one point.
 *
 * Empty when the inclusion hypotheses hold, when the affine fiber misses u*,
 * or when its only point in u* lies outside S. Singleton when Ad(u) n^+ meets
 * u* trivially and that point lies in S.
 */
inline FiberVerdict nonintersecting_fiber_condition(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& u) {
  if (u.rows() != fd.n() || u.cols() != fd.n()) throw DimensionError("nonintersecting_fiber_condition: dimension mismatch");
  if (compact_group_residual(fd, u) > fd.tol.certified) throw std::invalid_argument("nonintersecting_fiber_condition: u not in U");
  const double cert = fd.tol.certified;
  FiberVerdict v;
  Matrix base = unitary_action(u, fd.h_theta);
  std::vector<Matrix> dirs;
  for (const auto& x : fd.decomposition.n_plus.basis()) dirs.push_back(unitary_action(u, x));
  bool dirs_inside = std::all_of(dirs.begin(), dirs.end(), [&](const Matrix& d) { return cd.u_star.residual(d) <= cert * std::max(1.0, d.norm()); });
  bool base_outside_theta = cd.u_theta.residual(base) > cert * std::max(1.0, base.norm());
  v.inclusion_hypotheses = dirs_inside && base_outside_theta;
  v.meet = affine_meet(base, dirs, cd.u_star, fd.tol.rank_rel, cert);
  v.trivial_meet = v.meet.solution_dim == 0;
  if (v.inclusion_hypotheses) {
    v.kind = FiberVerdictKind::Empty;
    v.reason = "Ad(u)n+ in u* and Ad(u)H_Theta not in u_Theta";
    return v;
  }
  if (!v.meet.consistent) {
    v.kind = FiberVerdictKind::Empty;
    v.reason = "affine fiber misses u*";
    return v;
  }
  if (!v.trivial_meet) {
    v.reason = "fiber meets u* in a positive-dimensional set";
    return v;
  }
  v.point = v.meet.point;
  v.location = locate_in_S(cd, fd, v.meet.point, cert);
  if (v.location->in_s) {
    v.kind = FiberVerdictKind::Singleton;
    v.reason = "Ad(u)n+ meets u* only in 0; unique point lies in S";
  } else {
    v.kind = FiberVerdictKind::Empty;
    v.reason = "unique point of the fiber in u* lies outside S";
  }
  return v;
}

/// exp of a random element of u with Frobenius norm `radius`.
inline Matrix random_compact_element(const CanonicalDecomposition& cd, std::mt19937_64& rng, double radius) {
  return matrix_exp(random_direction(cd.u, rng, radius));
}

}  // namespace flagorbit
