#pragma once

#include "flagorbit/symmetric.hpp"

namespace flagorbit {

/**
 * @brief The conjugation tau of g fixing the compact real form u.
 *
 * Defined on the Weyl basis by tau(X_a) = -X_{-a} and tau(h) = -h for real
 * diagonal h, then extended antilinearly.
 */
class CompactConjugation {
 public:
  explicit CompactConjugation(const WeylBasis& wb) : n_(wb.matrix_dim()) {
    basis_ = wb.complex_basis();
    const Eigen::Index d = static_cast<Eigen::Index>(basis_.size());
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(n_) * n_, d);
    for (Eigen::Index k = 0; k < d; ++k) b.col(k) = Eigen::Map<const CVector>(basis_[size_t(k)].data(), basis_[size_t(k)].size());
    qr_ = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(b);
    bmat_ = b;
    for (const auto& h : wb.roots.cartan_basis) images_.push_back(-h);
    for (size_t k = 0; k < wb.root_vectors.size(); ++k) images_.push_back(-wb.root_vectors[wb.negative_index(k)]);
  }

  Matrix operator()(const Matrix& x) const {
    CVector c = coordinates(x);
    Matrix out = Matrix::Zero(n_, n_);
    for (Eigen::Index k = 0; k < c.size(); ++k) out += std::conj(c(k)) * images_[size_t(k)];
    return out;
  }

  /// Distance of x from g.
  double algebra_residual(const Matrix& x) const {
    CVector v = Eigen::Map<const CVector>(x.data(), x.size());
    return (bmat_ * qr_.solve(v) - v).norm();
  }

 private:
  CVector coordinates(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw DimensionError("CompactConjugation: dimension mismatch");
    CVector v = Eigen::Map<const CVector>(x.data(), x.size());
    return qr_.solve(v);
  }

  int n_;
  std::vector<Matrix> basis_;
  std::vector<Matrix> images_;
  Eigen::MatrixXcd bmat_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_;
};

/// H(X, Y) = -K(X, tau Y).
inline cplx hermitian_form(const KillingForm& k, const CompactConjugation& tau, const Matrix& x, const Matrix& y) {
  return -k(x, tau(y));
}

/// omega(X, Y) = Im K(X, tau Y) = -Im H(X, Y).
inline double omega(const KillingForm& k, const CompactConjugation& tau, const Matrix& x, const Matrix& y) {
  return k(x, tau(y)).imag();
}

/// K(xi, [X, Y]), the KKS form on the tangent vectors [X, xi], [Y, xi].
inline cplx kks_complex(const KillingForm& k, const Matrix& xi, const Matrix& x, const Matrix& y) {
  return k(xi, bracket(x, y));
}

inline double kks(const KillingForm& k, const Matrix& xi, const Matrix& x, const Matrix& y) {
  return kks_complex(k, xi, x, y).real();
}

struct LagrangianReport {
  double max_omega = 0;   // over orthonormal tangent bases at every base point
  int tangent_dim = 0;    // smallest tangent rank seen
  int orbit_dim = 0;      // rank of [g, p]
  bool half_dimension = false;
  int points = 0;
};

/// Tangent spaces {[X, p] : X in subspace} at each base point.
inline LagrangianReport lagrangian_report(const FlagDatum& fd, const CompactConjugation& tau, const RealSubspace& subspace,
                                          const std::vector<OrbitPoint>& base_points) {
  LagrangianReport r;
  const int n = fd.n();
  const auto k = fd.killing();
  r.tangent_dim = std::numeric_limits<int>::max();
  bool half = !base_points.empty();
  for (const auto& pt : base_points) {
    std::vector<Matrix> t;
    for (const auto& x : subspace.basis()) t.push_back(bracket(x, pt.value));
    auto ts = RealSubspace::span(n, t, fd.tol.rank_rel);
    std::vector<Matrix> o;
    for (const auto& b : fd.g_real.basis()) o.push_back(bracket(b, pt.value));
    int od = real_rank(o, n, fd.tol.rank_rel);
    r.orbit_dim = std::max(r.orbit_dim, od);
    r.tangent_dim = std::min(r.tangent_dim, ts.dim());
    half = half && 2 * ts.dim() == od;
    auto ob = ts.orthonormal_basis();
    for (size_t i = 0; i < ob.size(); ++i)
      for (size_t j = i + 1; j < ob.size(); ++j) r.max_omega = std::max(r.max_omega, std::abs(omega(k, tau, ob[i], ob[j])));
    ++r.points;
  }
  if (base_points.empty()) r.tangent_dim = 0;
  r.half_dimension = half;
  return r;
}

/// Real dimension of the center of z_Theta.
inline int z_theta_center_dim(const FlagDatum& fd) {
  const auto& z = fd.decomposition.z_theta;
  const auto ob = z.orthonormal_basis();
  const Eigen::Index block = 2 * fd.n() * fd.n();
  RealMatrix m(block * z.dim(), z.dim());
  for (int j = 0; j < z.dim(); ++j)
    for (int i = 0; i < z.dim(); ++i) m.block(i * block, j, block, 1) = realify(bracket(ob[size_t(j)], z.basis()[size_t(i)]));
  return z.dim() - numerical_rank(m, fd.tol.rank_rel);
}

struct KksWitness {
  RootFunctional root;
  Matrix x;  // i A_a in i m
  Matrix y;  // i Z_a in i m
  double value = 0;        // K(H_Theta, [x, y])
  double omega_value = 0;  // omega on the same tangent pair
};

/**
 * @brief First root outside <Theta> (lexicographic order) whose S-tangent pair
 * at H_Theta has a nonzero KKS value.
 *
 * With A_a = X_a - X_{-a} and Z_a = i(X_a + X_{-a}) one has
 * K(H_Theta, [iA_a, iZ_a]) = -2i a(H_Theta).
 */
inline KksWitness kks_nonlagrangian_witness(const FlagDatum& fd, const CompactConjugation& tau) {
  const auto& wb = fd.weyl;
  const auto k = fd.killing();
  for (size_t idx = 0; idx < wb.positive_count(); ++idx) {
    if (std::find(fd.decomposition.n_plus_roots.begin(), fd.decomposition.n_plus_roots.end(), idx) ==
        fd.decomposition.n_plus_roots.end())
      continue;
    const Matrix& xa = wb.root_vectors[idx];
    const Matrix& xm = wb.root_vectors[wb.negative_index(idx)];
    KksWitness w;
    w.root = wb.root_list[idx];
    w.x = kI * (xa - xm);
    w.y = kI * (kI * (xa + xm));
    w.value = kks(k, fd.h_theta, w.x, w.y);
    w.omega_value = omega(k, tau, bracket(w.x, fd.h_theta), bracket(w.y, fd.h_theta));
    if (std::abs(w.value) > fd.tol.nonzero) return w;
  }
  throw ClaimViolation("kks_nonlagrangian_witness: KKS vanishes on every candidate pair");
}

}  // namespace flagorbit
