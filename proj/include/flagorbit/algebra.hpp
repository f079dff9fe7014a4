#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagorbit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical thresholds shared by every module.
struct Tolerance {
  double abs = 1e-9;         // identity residuals
  double rank_rel = 1e-8;    // singular value cutoff relative to the largest
  double eigen_zero = 1e-6;  // ad(H) eigenvalue counted as zero
  double nonzero = 1e-6;     // "nonzero" verdicts
  double certified = 1e-8;   // absolute residual for certified verdicts

  /// Defaults, with `abs` taken from FLAG_ORBIT_TOL when set.
  static Tolerance from_env() {
    Tolerance t;
    if (const char* s = std::getenv("FLAG_ORBIT_TOL")) {
      char* end = nullptr;
      double v = std::strtod(s, &end);
      if (end != s && std::isfinite(v) && v > 0) t.abs = v;
    }
    return t;
  }
};

enum class Family { A, C, D };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::C: return "C";
    case Family::D: return "D";
  }
  return "?";
}

inline Family parse_family(const std::string& s) {
  if (s == "A" || s == "a") return Family::A;
  if (s == "C" || s == "c") return Family::C;
  if (s == "D" || s == "d") return Family::D;
  throw std::invalid_argument("unknown family '" + s + "'");
}

inline Matrix elementary(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline bool is_finite(const Matrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k)
    if (!std::isfinite(m.data()[k].real()) || !std::isfinite(m.data()[k].imag())) return false;
  return true;
}

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
}

inline Matrix bracket(const Matrix& a, const Matrix& b) {
  require_square(a, "bracket");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("bracket: dimension mismatch");
  return a * b - b * a;
}

inline double norm(const Matrix& m) { return m.norm(); }

inline cplx trace_form(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw DimensionError("trace_form: dimension mismatch");
  // tr(XY) without forming the product.
  return (x.array() * y.transpose().array()).sum();
}

inline Matrix matrix_exp(const Matrix& a) {
  require_square(a, "matrix_exp");
  if (!is_finite(a)) throw std::domain_error("matrix_exp: non-finite input");
  Matrix r = a.exp();
  if (!is_finite(r)) throw std::domain_error("matrix_exp: overflow");
  return r;
}

/// g X g^{-1}.
inline Matrix adjoint_action(const Matrix& g, const Matrix& x) {
  return g * x * g.partialPivLu().inverse();
}

/// g X g^* for unitary g.
inline Matrix unitary_action(const Matrix& u, const Matrix& x) { return u * x * u.adjoint(); }

/// Coefficients c_0..c_n of det(xI - M) = sum c_k x^{n-k} (Faddeev-LeVerrier).
inline CVector characteristic_polynomial(const Matrix& m) {
  require_square(m, "characteristic_polynomial");
  const Eigen::Index n = m.rows();
  CVector c = CVector::Zero(n + 1);
  c(0) = 1.0;
  Matrix mk = Matrix::Zero(n, n);
  Matrix id = Matrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * (mk + c(k - 1) * id);
    c(k) = -mk.trace() / static_cast<double>(k);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Real-linear algebra on complex matrices.

inline RealVector realify(const Matrix& m) {
  const Eigen::Index s = m.size();
  RealVector v(2 * s);
  for (Eigen::Index k = 0; k < s; ++k) {
    v(k) = m.data()[k].real();
    v(s + k) = m.data()[k].imag();
  }
  return v;
}

inline Matrix complexify(const RealVector& v, int n) {
  const Eigen::Index s = static_cast<Eigen::Index>(n) * n;
  if (v.size() != 2 * s) throw DimensionError("complexify: length mismatch");
  Matrix m(n, n);
  for (Eigen::Index k = 0; k < s; ++k) m.data()[k] = cplx(v(k), v(s + k));
  return m;
}

inline RealMatrix realify_all(const std::vector<Matrix>& ms, int n) {
  RealMatrix out(2 * static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(ms.size()));
  for (size_t k = 0; k < ms.size(); ++k) {
    if (ms[k].rows() != n || ms[k].cols() != n) throw DimensionError("realify_all: dimension mismatch");
    out.col(static_cast<Eigen::Index>(k)) = realify(ms[k]);
  }
  return out;
}

/// Numerical rank with cutoff rel * largest singular value.
inline int numerical_rank(const RealMatrix& m, double rel) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > rel * s(0)) ++r;
  return r;
}

inline int real_rank(const std::vector<Matrix>& ms, int n, double rel = 1e-8) {
  if (ms.empty()) return 0;
  return numerical_rank(realify_all(ms, n), rel);
}

struct Membership {
  RealVector coefficients;
  double residual = 0.0;
  bool member = false;
};

/**
 * @brief Real-linear span of complex n x n matrices.
 *
 * The basis is a linearly independent subset of the generators it was built
 * from (column-pivoted QR), so coefficients refer to recognizable elements.
 */
class RealSubspace {
 public:
  RealSubspace() = default;
  explicit RealSubspace(int n) : n_(n), q_(2 * n * n, 0), r_(0, 0) {}

  static RealSubspace span(int n, const std::vector<Matrix>& generators, double rank_rel = 1e-8) {
    RealSubspace s(n);
    if (generators.empty()) return s;
    RealMatrix g = realify_all(generators, n);
    int r = numerical_rank(g, rank_rel);
    if (r == 0) return s;
    Eigen::ColPivHouseholderQR<RealMatrix> qr(g);
    const auto& perm = qr.colsPermutation().indices();
    std::vector<int> chosen(perm.data(), perm.data() + r);
    std::sort(chosen.begin(), chosen.end());
    for (int k : chosen) s.basis_.push_back(generators[static_cast<size_t>(k)]);
    s.refresh();
    return s;
  }

  int matrix_dim() const { return n_; }
  int ambient_real_dim() const { return 2 * n_ * n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool empty() const { return basis_.empty(); }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Orthonormal real frame (columns), ambient_real_dim x dim.
  const RealMatrix& frame() const { return q_; }

  std::vector<Matrix> orthonormal_basis() const {
    std::vector<Matrix> out;
    for (Eigen::Index k = 0; k < q_.cols(); ++k) out.push_back(complexify(q_.col(k), n_));
    return out;
  }

  Matrix project(const Matrix& x) const {
    check(x);
    if (empty()) return Matrix::Zero(n_, n_);
    RealVector v = realify(x);
    return complexify(q_ * (q_.transpose() * v), n_);
  }

  double residual(const Matrix& x) const { return (x - project(x)).norm(); }

  /// Least-squares coefficients over basis(); member iff residual <= tol * max(1, |x|).
  Membership solve(const Matrix& x, double tol = 1e-9) const {
    check(x);
    Membership m;
    RealVector v = realify(x);
    if (empty()) {
      m.coefficients = RealVector(0);
      m.residual = v.norm();
    } else {
      RealVector qt = q_.transpose() * v;
      m.coefficients = r_.triangularView<Eigen::Upper>().solve(qt);
      m.residual = (v - q_ * qt).norm();
    }
    m.member = m.residual <= tol * std::max(1.0, v.norm());
    return m;
  }

  bool contains(const Matrix& x, double tol = 1e-9) const { return solve(x, tol).member; }

  /// Largest residual of `other`'s basis against this space.
  double max_residual(const RealSubspace& other) const {
    double r = 0.0;
    for (const auto& b : other.basis()) r = std::max(r, residual(b));
    return r;
  }

  Matrix combine(const RealVector& c) const {
    if (c.size() != dim()) throw DimensionError("combine: coefficient count");
    Matrix out = Matrix::Zero(n_, n_);
    for (int k = 0; k < dim(); ++k) out += c(k) * basis_[static_cast<size_t>(k)];
    return out;
  }

  static RealSubspace sum(const RealSubspace& a, const RealSubspace& b, double rank_rel = 1e-8) {
    same_ambient(a, b);
    std::vector<Matrix> g = a.basis_;
    g.insert(g.end(), b.basis_.begin(), b.basis_.end());
    return span(a.n_, g, rank_rel);
  }

  static RealSubspace intersection(const RealSubspace& a, const RealSubspace& b, double rank_rel = 1e-8) {
    same_ambient(a, b);
    RealSubspace out(a.n_);
    if (a.empty() || b.empty()) return out;
    RealMatrix m(a.q_.rows(), a.q_.cols() + b.q_.cols());
    m << a.q_, -b.q_;
    Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = rank_rel * std::max(1.0, s.size() ? s(0) : 0.0);
    std::vector<Matrix> gens;
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      double sv = k < s.size() ? s(k) : 0.0;
      if (sv <= cut) {
        RealVector c = svd.matrixV().col(k).head(a.q_.cols());
        gens.push_back(complexify(a.q_ * c, a.n_));
      }
    }
    return span(a.n_, gens, rank_rel);
  }

  /// Kernel of a real-linear map restricted to this space.
  RealSubspace kernel(const std::function<Matrix(const Matrix&)>& map, double rank_rel = 1e-8) const {
    RealSubspace out(n_);
    if (empty()) return out;
    auto ob = orthonormal_basis();
    std::vector<Matrix> images;
    images.reserve(ob.size());
    for (const auto& b : ob) images.push_back(map(b));
    const int m = static_cast<int>(images.front().rows());
    RealMatrix img = realify_all(images, m);
    Eigen::JacobiSVD<RealMatrix> svd(img, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() ? s(0) : 0.0;
    std::vector<Matrix> gens;
    for (Eigen::Index k = 0; k < img.cols(); ++k) {
      double sv = k < s.size() ? s(k) : 0.0;
      if (smax == 0.0 || sv <= rank_rel * smax) gens.push_back(complexify(q_ * svd.matrixV().col(k), n_));
    }
    return span(n_, gens, rank_rel);
  }

  /// Largest residual of [b_i, b_j] outside the space.
  double closure_residual() const {
    double r = 0.0;
    for (size_t i = 0; i < basis_.size(); ++i)
      for (size_t j = i + 1; j < basis_.size(); ++j) r = std::max(r, residual(bracket(basis_[i], basis_[j])));
    return r;
  }

 private:
  static void same_ambient(const RealSubspace& a, const RealSubspace& b) {
    if (a.n_ != b.n_) throw DimensionError("RealSubspace: ambient mismatch");
  }
  void check(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw DimensionError("RealSubspace: dimension mismatch");
  }
  void refresh() {
    RealMatrix g = realify_all(basis_, n_);
    Eigen::HouseholderQR<RealMatrix> qr(g);
    const Eigen::Index k = g.cols();
    q_ = qr.householderQ() * RealMatrix::Identity(g.rows(), k);
    r_ = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  }

  int n_ = 0;
  std::vector<Matrix> basis_;
  RealMatrix q_;
  RealMatrix r_;
};

inline Membership solve_membership(const Matrix& target, const RealSubspace& space, double tol = 1e-9) {
  if (space.empty()) throw std::invalid_argument("solve_membership: empty space");
  return space.solve(target, tol);
}

/// Real span of {X, iX} for each X.
inline RealSubspace complex_span(int n, const std::vector<Matrix>& xs, double rank_rel = 1e-8) {
  std::vector<Matrix> g;
  for (const auto& x : xs) {
    g.push_back(x);
    g.push_back(kI * x);
  }
  return RealSubspace::span(n, g, rank_rel);
}

// ---------------------------------------------------------------------------
// Adjoint representation and Killing forms.

/**
 * @brief Adjoint representation of a matrix Lie algebra given by a complex basis.
 */
class AdjointRepresentation {
 public:
  explicit AdjointRepresentation(std::vector<Matrix> basis, double tol = 1e-9) : basis_(std::move(basis)) {
    if (basis_.empty()) throw std::invalid_argument("AdjointRepresentation: empty basis");
    n_ = static_cast<int>(basis_.front().rows());
    const Eigen::Index d = static_cast<Eigen::Index>(basis_.size());
    Eigen::MatrixXcd b(static_cast<Eigen::Index>(n_) * n_, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& m = basis_[static_cast<size_t>(k)];
      if (m.rows() != n_ || m.cols() != n_) throw DimensionError("AdjointRepresentation: dimension mismatch");
      b.col(k) = Eigen::Map<const CVector>(m.data(), m.size());
    }
    qr_ = Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>(b);
    qr_.setThreshold(1e-10);
    if (qr_.rank() != d) throw ConstructionError("AdjointRepresentation: basis not linearly independent");
    bmat_ = b;
    double scale = 1.0;
    for (const auto& m : basis_) scale = std::max(scale, m.norm());
    closure_ = 0.0;
    for (size_t i = 0; i < basis_.size(); ++i)
      for (size_t j = i + 1; j < basis_.size(); ++j) {
        Matrix c = bracket(basis_[i], basis_[j]);
        closure_ = std::max(closure_, coordinate_residual(c));
      }
    if (closure_ > tol * scale * scale)
      throw ConstructionError("AdjointRepresentation: basis not closed under bracket (residual " +
                              std::to_string(closure_) + ")");
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Matrix>& basis() const { return basis_; }
  double closure_residual() const { return closure_; }

  CVector coordinates(const Matrix& x) const {
    CVector v = Eigen::Map<const CVector>(x.data(), x.size());
    return qr_.solve(v);
  }

  /// Matrix of ad(X) in the basis: column k holds the coordinates of [X, b_k].
  Eigen::MatrixXcd ad(const Matrix& x) const {
    Eigen::MatrixXcd out(dim(), dim());
    for (int k = 0; k < dim(); ++k) out.col(k) = coordinates(bracket(x, basis_[static_cast<size_t>(k)]));
    return out;
  }

  cplx killing(const Matrix& x, const Matrix& y) const {
    Eigen::MatrixXcd ax = ad(x), ay = ad(y);
    return (ax.array() * ay.transpose().array()).sum();
  }

 private:
  double coordinate_residual(const Matrix& x) const {
    CVector v = Eigen::Map<const CVector>(x.data(), x.size());
    CVector c = qr_.solve(v);
    return (bmat_ * c - v).norm();
  }

  std::vector<Matrix> basis_;
  int n_ = 0;
  Eigen::MatrixXcd bmat_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_;
  double closure_ = 0.0;
};

inline cplx killing_via_ad(const std::vector<Matrix>& basis, const Matrix& x, const Matrix& y, double tol = 1e-9) {
  return AdjointRepresentation(basis, tol).killing(x, y);
}

/// Killing scalar c with K(X,Y) = c tr(XY) for the family realized on n x n matrices.
inline double killing_scalar(Family f, int matrix_dim) {
  switch (f) {
    case Family::A: return 2.0 * matrix_dim;
    case Family::C:
      if (matrix_dim % 2) throw DimensionError("killing_scalar: C needs even dimension");
      return 2.0 * (matrix_dim / 2) + 2.0;
    case Family::D:
      if (matrix_dim % 2) throw DimensionError("killing_scalar: D needs even dimension");
      return 2.0 * (matrix_dim / 2) - 2.0;
  }
  throw std::invalid_argument("killing_scalar: unknown family");
}

inline cplx killing_fast(Family f, const Matrix& x, const Matrix& y) {
  return killing_scalar(f, static_cast<int>(x.rows())) * trace_form(x, y);
}

/// Killing form of one family realization.
struct KillingForm {
  Family family = Family::A;
  int matrix_dim = 2;
  cplx operator()(const Matrix& x, const Matrix& y) const {
    return killing_scalar(family, matrix_dim) * trace_form(x, y);
  }
};

}  // namespace flagorbit
