#pragma once

#include "flagorbit/roots.hpp"

namespace flagorbit {

struct TripleDecomposition {
  RealSubspace n_minus;
  RealSubspace z_theta;
  RealSubspace n_plus;
  std::vector<size_t> n_plus_roots;   // indices into WeylBasis::root_list
  std::vector<size_t> n_minus_roots;
  std::vector<size_t> z_roots;        // roots in <Theta>
};

/**
 * @brief A symmetric flag: family data, H_Theta, g_Theta = exp(H_Theta) and
 * the splitting g = n^- + z_Theta + n^+.
 *
 * D-family data live in the realization {A : AF + FA^T = 0}; see
 * d_case_conjugation for the passage to so(2l).
 */
struct FlagDatum {
  FlagParams params;
  WeylBasis weyl;
  std::vector<RootFunctional> theta;
  RootFunctional excluded_root;  // the simple root outside Theta
  Matrix h_theta;
  Matrix g_theta;
  TripleDecomposition decomposition;
  RealSubspace g_real;  // g as a real space
  Tolerance tol;

  const RootSystem& roots() const { return weyl.roots; }
  Family family() const { return params.family; }
  int n() const { return weyl.matrix_dim(); }
  KillingForm killing() const { return weyl.killing(); }
  cplx killing(const Matrix& x, const Matrix& y) const { return weyl.killing()(x, y); }
};

inline Matrix characteristic_element(const FlagParams& fp) {
  validate(fp, RankLimits{64, 64});
  const int n = fp.matrix_dim();
  Matrix h = Matrix::Zero(n, n);
  if (fp.family == Family::A) {
    for (int i = 0; i < fp.p; ++i) h(i, i) = kI * kPi * static_cast<double>(fp.q) / static_cast<double>(n);
    for (int i = fp.p; i < n; ++i) h(i, i) = -kI * kPi * static_cast<double>(fp.p) / static_cast<double>(n);
  } else {
    for (int i = 0; i < fp.l; ++i) {
      h(i, i) = kI * kPi / 2.0;
      h(fp.l + i, fp.l + i) = -kI * kPi / 2.0;
    }
  }
  return h;
}

/// The simple root removed from Sigma to form Theta.
inline RootFunctional excluded_simple_root(const FlagParams& fp, const RootSystem& rs) {
  if (fp.family == Family::A) return rs.simple_roots[static_cast<size_t>(fp.p - 1)];
  return rs.simple_roots.back();
}

inline TripleDecomposition triple_decomposition(const Matrix& h_theta, const WeylBasis& wb,
                                                const RootFunctional& excluded, const Tolerance& tol = {}) {
  TripleDecomposition td;
  const int n = wb.matrix_dim();
  const auto& rs = wb.roots;
  auto ex_coords = rs.simple_coordinates(excluded);
  size_t ex_pos = static_cast<size_t>(std::find(ex_coords.begin(), ex_coords.end(), 1) - ex_coords.begin());
  std::vector<Matrix> z = rs.cartan_basis, np, nm;
  for (size_t k = 0; k < wb.root_list.size(); ++k) {
    const auto& a = wb.root_list[k];
    const Matrix& x = wb.root_vectors[k];
    cplx ev = a(h_theta);
    if ((bracket(h_theta, x) - ev * x).norm() > tol.abs * std::max(1.0, h_theta.norm()))
      throw ConstructionError("triple_decomposition: X_a is not an ad(H) eigenvector");
    bool in_theta_span = rs.simple_coordinates(a)[ex_pos] == 0;
    if (std::abs(ev) < tol.eigen_zero) {
      if (!in_theta_span) throw ConstructionError("triple_decomposition: ambiguous eigenvalue for " + a.label());
      z.push_back(x);
      td.z_roots.push_back(k);
    } else {
      if (in_theta_span) throw ConstructionError("triple_decomposition: Theta root with nonzero eigenvalue");
      if (ev.imag() > 0) {
        np.push_back(x);
        td.n_plus_roots.push_back(k);
      } else {
        nm.push_back(x);
        td.n_minus_roots.push_back(k);
      }
    }
  }
  td.z_theta = complex_span(n, z);
  td.n_plus = complex_span(n, np);
  td.n_minus = complex_span(n, nm);
  return td;
}

inline FlagDatum make_flag_datum(const FlagParams& fp, const Tolerance& tol = {}, const RankLimits& lim = {}) {
  validate(fp, lim);
  FlagDatum fd;
  fd.params = fp;
  fd.tol = tol;
  fd.weyl = weyl_basis(build_root_system(fp), tol.abs);
  fd.h_theta = characteristic_element(fp);
  fd.g_theta = matrix_exp(fd.h_theta);
  const auto& rs = fd.roots();
  fd.excluded_root = excluded_simple_root(fp, rs);
  for (const auto& a : rs.simple_roots) {
    cplx v = a(fd.h_theta);
    if (std::abs(v) < tol.eigen_zero) fd.theta.push_back(a);
    else if (!(a == fd.excluded_root)) throw ConstructionError("make_flag_datum: H_Theta not characteristic");
  }
  fd.decomposition = triple_decomposition(fd.h_theta, fd.weyl, fd.excluded_root, tol);
  fd.g_real = complex_span(fd.n(), fd.weyl.complex_basis());

  const int n = fd.n();
  Matrix g2 = fd.g_theta * fd.g_theta;
  cplx expected = fp.family == Family::A ? std::exp(2.0 * kPi * kI * static_cast<double>(fp.q) / static_cast<double>(n)) : cplx(-1.0);
  if ((g2 - expected * Matrix::Identity(n, n)).norm() > tol.abs * n)
    throw ConstructionError("make_flag_datum: g_Theta^2 not the expected central element");

  int z_dim, n_dim;
  if (fp.family == Family::A) {
    z_dim = fp.p * fp.p + fp.q * fp.q - 1;
    n_dim = fp.p * fp.q;
  } else {
    z_dim = fp.l * fp.l;
    n_dim = fp.family == Family::C ? fp.l * (fp.l + 1) / 2 : fp.l * (fp.l - 1) / 2;
  }
  if (fd.decomposition.z_theta.dim() != 2 * z_dim || fd.decomposition.n_plus.dim() != 2 * n_dim ||
      fd.decomposition.n_minus.dim() != 2 * n_dim)
    throw ConstructionError("make_flag_datum: decomposition dimensions differ from the expected counts");
  return fd;
}

/// sigma = Ad(g_Theta).
class Involution {
 public:
  explicit Involution(const FlagDatum& fd) : g_(fd.g_theta), g_inv_(matrix_exp(-fd.h_theta)) {}
  Matrix operator()(const Matrix& x) const { return g_ * x * g_inv_; }
  /// Group-level conjugation u -> g_Theta u g_Theta^{-1}.
  Matrix on_group(const Matrix& u) const { return g_ * u * g_inv_; }

 private:
  Matrix g_;
  Matrix g_inv_;
};

inline Involution involution_sigma(const FlagDatum& fd) { return Involution(fd); }

struct CentralizerReport {
  int kernel_dim = 0;       // real dimension of ker ad(H_Theta)
  int fixed_dim = 0;        // real dimension of Fix Ad(g_Theta)
  int expected_dim = 0;     // 2 * dim_C z_Theta
  double max_residual = 0;  // mutual membership, and against z_Theta
  bool equal = false;
};

inline CentralizerReport centralizer_agreement(const FlagDatum& fd) {
  CentralizerReport r;
  Involution sigma(fd);
  RealSubspace ker = fd.g_real.kernel([&](const Matrix& x) { return bracket(fd.h_theta, x); }, fd.tol.rank_rel);
  RealSubspace fix = fd.g_real.kernel([&](const Matrix& x) { return Matrix(sigma(x) - x); }, fd.tol.rank_rel);
  r.kernel_dim = ker.dim();
  r.fixed_dim = fix.dim();
  r.expected_dim = fd.decomposition.z_theta.dim();
  r.max_residual = std::max({ker.max_residual(fix), fix.max_residual(ker), fd.decomposition.z_theta.max_residual(ker),
                             ker.max_residual(fd.decomposition.z_theta)});
  r.equal = r.kernel_dim == r.fixed_dim && r.kernel_dim == r.expected_dim && r.max_residual < fd.tol.abs;
  return r;
}

// ---------------------------------------------------------------------------
// D family: so(2l, C) <-> {A : AF + FA^T = 0}, F = [[0, I], [I, 0]].

enum class Direction { Forward, Back };

inline Matrix d_case_f(int l) {
  const int n = 2 * l;
  Matrix f = Matrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < l; ++i) {
    f(i, i) = kI * s;
    f(i, l + i) = s;
    f(l + i, i) = s;
    f(l + i, l + i) = kI * s;
  }
  return f;
}

inline Matrix d_case_form(int l) {
  Matrix f = Matrix::Zero(2 * l, 2 * l);
  for (int i = 0; i < l; ++i) {
    f(i, l + i) = 1.0;
    f(l + i, i) = 1.0;
  }
  return f;
}

/// Forward: f X f^{-1} for X in so(2l); Back: f^{-1} X f for X in the F-realization.
inline Matrix d_case_conjugation(const Matrix& x, Direction dir, double tol = 1e-9) {
  require_square(x, "d_case_conjugation");
  if (x.rows() % 2) throw DimensionError("d_case_conjugation: odd dimension");
  const int l = static_cast<int>(x.rows() / 2);
  const Matrix f = d_case_f(l);
  const Matrix fi = f.adjoint();
  const Matrix big_f = d_case_form(l);
  const double scale = std::max(1.0, x.norm());
  if (dir == Direction::Forward) {
    if ((x + x.transpose()).norm() > tol * scale) throw std::invalid_argument("d_case_conjugation: input not in so(2l)");
    Matrix y = f * x * fi;
    if ((y * big_f + big_f * y.transpose()).norm() > tol * scale) throw ConstructionError("d_case_conjugation: image check failed");
    return y;
  }
  if ((x * big_f + big_f * x.transpose()).norm() > tol * scale)
    throw std::invalid_argument("d_case_conjugation: input not in the F-realization");
  Matrix y = fi * x * f;
  if ((y + y.transpose()).norm() > tol * scale) throw ConstructionError("d_case_conjugation: image check failed");
  return y;
}

/// (pi/2) [[0, I], [-I, 0]] in so(2l, R).
inline Matrix d_case_h_theta_real(int l) {
  Matrix h = Matrix::Zero(2 * l, 2 * l);
  for (int i = 0; i < l; ++i) {
    h(i, l + i) = kPi / 2.0;
    h(l + i, i) = -kPi / 2.0;
  }
  return h;
}

// ---------------------------------------------------------------------------

struct CorootExpansion {
  std::vector<cplx> coefficients;        // H_Theta = sum c_i H_{alpha_i} over simple roots
  std::vector<cplx> closed_form_coefficients;  // closed-form values from the explicit constructions
  double reconstruction_residual = 0;
  double coefficient_gap = 0;            // max |c_i - closed_i|
  RootFunctional pairing_root;
  cplx computed_pairing;                 // K(i H_alpha, H_Theta)
  double reference_pairing = 0;
  bool pairing_matches = false;
};

inline CorootExpansion h_theta_coroot_expansion(const FlagDatum& fd) {
  CorootExpansion ex;
  const auto& rs = fd.roots();
  const size_t r = rs.simple_roots.size();
  const int n = fd.n();
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(r));
  for (size_t k = 0; k < r; ++k) {
    Matrix h = fd.weyl.dual(rs.simple_roots[k]);
    a.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const CVector>(h.data(), h.size());
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
  if (qr.rank() != static_cast<Eigen::Index>(r)) throw ConstructionError("h_theta_coroot_expansion: singular system");
  CVector rhs = Eigen::Map<const CVector>(fd.h_theta.data(), fd.h_theta.size());
  CVector c = qr.solve(rhs);
  ex.reconstruction_residual = (a * c - rhs).norm();
  for (Eigen::Index k = 0; k < c.size(); ++k) ex.coefficients.push_back(c(k));

  const auto& fp = fd.params;
  const double l = fp.l;
  ex.closed_form_coefficients.assign(r, 0.0);
  if (fp.family == Family::A) {
    for (int k = 1; k <= fp.p; ++k) ex.closed_form_coefficients[static_cast<size_t>(k - 1)] = 2.0 * kI * kPi * double(fp.q) * double(k);
    for (int j = 1; j <= fp.q - 1; ++j)
      ex.closed_form_coefficients[static_cast<size_t>(fp.p + j - 1)] = 2.0 * kI * kPi * double(fp.p) * double(fp.q - j);
    ex.reference_pairing = -kPi;
  } else if (fp.family == Family::C) {
    for (int k = 1; k <= fp.l - 1; ++k) ex.closed_form_coefficients[static_cast<size_t>(k - 1)] = 2.0 * kPi * (l + 1) * kI * double(k);
    ex.closed_form_coefficients[r - 1] = l * (l + 1) * kPi * kI;
    ex.reference_pairing = -4.0 * kPi * (l + 1);
  } else {
    for (int k = 1; k <= fp.l - 2; ++k) ex.closed_form_coefficients[static_cast<size_t>(k - 1)] = 2.0 * kPi * (l - 1) * kI * double(k);
    ex.closed_form_coefficients[r - 2] = (l - 1) * kPi * kI * (l - 2);
    ex.closed_form_coefficients[r - 1] = (l - 1) * kPi * kI * l;
    ex.reference_pairing = -4.0 * kPi * (l - 1);
  }
  for (size_t k = 0; k < r; ++k)
    ex.coefficient_gap = std::max(ex.coefficient_gap, std::abs(ex.coefficients[k] - ex.closed_form_coefficients[k]));
  ex.pairing_root = fd.excluded_root;
  ex.computed_pairing = fd.killing(kI * fd.weyl.dual(fd.excluded_root), fd.h_theta);
  ex.pairing_matches = std::abs(ex.computed_pairing - cplx(ex.reference_pairing)) < 1e-6;
  return ex;
}

}  // namespace flagorbit
