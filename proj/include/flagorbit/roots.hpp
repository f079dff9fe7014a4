#pragma once

#include "flagorbit/algebra.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <utility>

namespace flagorbit {

/// Family plus parameters: (p, q) for A with p + q = n, l for C and D.
struct FlagParams {
  Family family = Family::A;
  int p = 1;
  int q = 1;
  int l = 1;

  static FlagParams a(int p, int q) { return {Family::A, p, q, p + q - 1}; }
  static FlagParams c(int l) { return {Family::C, 0, 0, l}; }
  static FlagParams d(int l) { return {Family::D, 0, 0, l}; }

  int rank() const { return family == Family::A ? p + q - 1 : l; }
  int matrix_dim() const { return family == Family::A ? p + q : 2 * l; }
  /// Number of diagonal functionals lambda_i.
  int lambda_count() const { return family == Family::A ? p + q : l; }

  std::string label() const {
    std::ostringstream os;
    os << to_string(family);
    if (family == Family::A)
      os << "(p=" << p << ",q=" << q << ")";
    else
      os << "(l=" << l << ")";
    return os.str();
  }
};

struct RankLimits {
  int max_a_dim = 8;
  int max_cd_rank = 4;
};

inline void validate(const FlagParams& fp, const RankLimits& lim = {}) {
  switch (fp.family) {
    case Family::A:
      if (fp.p < 1 || fp.q < 1) throw std::invalid_argument("A: p and q must be positive");
      if (fp.p > fp.q) throw std::invalid_argument("A: requires p <= q");
      if (fp.p + fp.q > lim.max_a_dim) throw std::invalid_argument("A: p + q exceeds supported dimension");
      return;
    case Family::C:
      if (fp.l < 1) throw std::invalid_argument("C: requires l >= 1");
      if (fp.l > lim.max_cd_rank) throw std::invalid_argument("C: l exceeds supported rank");
      return;
    case Family::D:
      if (fp.l < 2) throw std::invalid_argument("D: requires l >= 2");
      if (fp.l > lim.max_cd_rank) throw std::invalid_argument("D: l exceeds supported rank");
      return;
  }
  throw std::invalid_argument("unknown family");
}

/// Integer combination of the diagonal functionals lambda_i.
struct RootFunctional {
  Family family = Family::A;
  std::vector<int> coefficients;

  /// Evaluation on a diagonal Cartan element (lambda_i reads entry (i,i)).
  cplx operator()(const Matrix& h) const {
    cplx s = 0.0;
    for (size_t i = 0; i < coefficients.size(); ++i)
      if (coefficients[i]) s += static_cast<double>(coefficients[i]) * h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    return s;
  }

  RootFunctional operator-() const {
    RootFunctional r = *this;
    for (auto& c : r.coefficients) c = -c;
    return r;
  }
  RootFunctional operator+(const RootFunctional& o) const {
    RootFunctional r = *this;
    for (size_t i = 0; i < r.coefficients.size(); ++i) r.coefficients[i] += o.coefficients[i];
    return r;
  }
  bool operator==(const RootFunctional& o) const { return coefficients == o.coefficients; }
  bool operator<(const RootFunctional& o) const { return coefficients < o.coefficients; }
  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](int c) { return c == 0; });
  }

  /// Text such as "L1-L2", "2L3", "L1+L2".
  std::string label() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coefficients.size(); ++i) {
      int c = coefficients[i];
      if (!c) continue;
      if (c < 0) os << '-';
      else if (!first) os << '+';
      if (std::abs(c) != 1) os << std::abs(c);
      os << 'L' << (i + 1);
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }
};

struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  int matrix_dim = 0;
  std::vector<RootFunctional> simple_roots;
  /// Lexicographic in simple-root coordinates.
  std::vector<RootFunctional> positive_roots;
  std::vector<std::vector<int>> positive_coordinates;
  std::vector<Matrix> cartan_basis;

  int lambda_count() const { return family == Family::A ? matrix_dim : matrix_dim / 2; }

  /// Positive roots followed by their negatives.
  std::vector<RootFunctional> all_roots() const {
    std::vector<RootFunctional> r = positive_roots;
    for (const auto& a : positive_roots) r.push_back(-a);
    return r;
  }

  std::optional<size_t> index_of(const RootFunctional& a) const {
    for (size_t k = 0; k < positive_roots.size(); ++k) {
      if (positive_roots[k] == a) return k;
      if (positive_roots[k] == -a) return positive_roots.size() + k;
    }
    return std::nullopt;
  }
  bool is_root(const RootFunctional& a) const { return index_of(a).has_value(); }

  /// Integer coordinates over simple roots; throws if `a` is not in their integer span.
  std::vector<int> simple_coordinates(const RootFunctional& a) const {
    const int m = lambda_count();
    RealMatrix s(m, rank);
    RealVector v(m);
    for (int j = 0; j < rank; ++j)
      for (int i = 0; i < m; ++i) s(i, j) = simple_roots[static_cast<size_t>(j)].coefficients[static_cast<size_t>(i)];
    for (int i = 0; i < m; ++i) v(i) = a.coefficients[static_cast<size_t>(i)];
    RealVector c = s.colPivHouseholderQr().solve(v);
    std::vector<int> out(static_cast<size_t>(rank));
    RealVector back = RealVector::Zero(m);
    for (int j = 0; j < rank; ++j) {
      out[static_cast<size_t>(j)] = static_cast<int>(std::lround(c(j)));
      back += out[static_cast<size_t>(j)] * s.col(j);
    }
    if ((back - v).norm() > 1e-9) throw std::invalid_argument("simple_coordinates: not in the root lattice");
    return out;
  }
};

namespace detail {

inline RootFunctional lambda_combo(Family f, int m, std::initializer_list<std::pair<int, int>> terms) {
  RootFunctional r{f, std::vector<int>(static_cast<size_t>(m), 0)};
  for (auto [i, c] : terms) r.coefficients[static_cast<size_t>(i)] += c;
  return r;
}

/// Every root of the family, as lambda combinations.
inline std::vector<RootFunctional> enumerate_roots(Family f, int m) {
  std::vector<RootFunctional> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      out.push_back(lambda_combo(f, m, {{i, 1}, {j, -1}}));
      if (f != Family::A && i < j) {
        out.push_back(lambda_combo(f, m, {{i, 1}, {j, 1}}));
        out.push_back(lambda_combo(f, m, {{i, -1}, {j, -1}}));
      }
    }
  if (f == Family::C)
    for (int i = 0; i < m; ++i) {
      out.push_back(lambda_combo(f, m, {{i, 2}}));
      out.push_back(lambda_combo(f, m, {{i, -2}}));
    }
  return out;
}

}  // namespace detail

inline RootSystem build_root_system(Family f, int rank) {
  if (rank < 1) throw std::invalid_argument("build_root_system: rank must be >= 1");
  if (f == Family::D && rank < 2) throw std::invalid_argument("build_root_system: D requires rank >= 2");
  RootSystem rs;
  rs.family = f;
  rs.rank = rank;
  const int m = f == Family::A ? rank + 1 : rank;
  rs.matrix_dim = f == Family::A ? rank + 1 : 2 * rank;
  const int n = rs.matrix_dim;

  for (int i = 0; i + 1 < m; ++i) rs.simple_roots.push_back(detail::lambda_combo(f, m, {{i, 1}, {i + 1, -1}}));
  if (f == Family::C) rs.simple_roots.push_back(detail::lambda_combo(f, m, {{m - 1, 2}}));
  if (f == Family::D) rs.simple_roots.push_back(detail::lambda_combo(f, m, {{m - 2, 1}, {m - 1, 1}}));

  std::vector<std::pair<std::vector<int>, RootFunctional>> pos;
  for (const auto& a : detail::enumerate_roots(f, m)) {
    auto c = rs.simple_coordinates(a);
    bool nonneg = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    bool nonpos = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
    if (!nonneg && !nonpos) throw ConstructionError("build_root_system: root with mixed-sign coordinates");
    if (nonneg) pos.emplace_back(c, a);
  }
  std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [c, a] : pos) {
    rs.positive_coordinates.push_back(c);
    rs.positive_roots.push_back(a);
  }

  if (f == Family::A) {
    for (int i = 0; i + 1 < n; ++i) rs.cartan_basis.push_back(elementary(n, i, i) - elementary(n, i + 1, i + 1));
  } else {
    for (int i = 0; i < m; ++i) rs.cartan_basis.push_back(elementary(n, i, i) - elementary(n, m + i, m + i));
  }
  return rs;
}

inline RootSystem build_root_system(const FlagParams& fp) {
  validate(fp, RankLimits{64, 64});
  return build_root_system(fp.family, fp.rank());
}

namespace detail {

/// Unnormalized real root vector for a positive root in the family realization.
inline Matrix raw_root_vector(const RootFunctional& a, int n) {
  std::vector<std::pair<int, int>> nz;
  for (size_t i = 0; i < a.coefficients.size(); ++i)
    if (a.coefficients[i]) nz.emplace_back(static_cast<int>(i), a.coefficients[i]);
  if (a.family == Family::A) return elementary(n, nz[0].second > 0 ? nz[0].first : nz[1].first, nz[0].second > 0 ? nz[1].first : nz[0].first);
  const int l = n / 2;
  if (nz.size() == 1) {
    int i = nz[0].first;
    return nz[0].second > 0 ? elementary(n, i, l + i) : elementary(n, l + i, i);
  }
  int i = nz[0].first, j = nz[1].first;
  int ci = nz[0].second, cj = nz[1].second;
  const double sgn = a.family == Family::C ? 1.0 : -1.0;
  if (ci > 0 && cj < 0) return elementary(n, i, j) - elementary(n, l + j, l + i);
  if (ci < 0 && cj > 0) return elementary(n, j, i) - elementary(n, l + i, l + j);
  if (ci > 0) return elementary(n, i, l + j) + sgn * elementary(n, j, l + i);
  return elementary(n, l + i, j) + sgn * elementary(n, l + j, i);
}

}  // namespace detail

/**
 * @brief Killing-normalized Weyl basis in the concrete matrix realization.
 *
 * For positive alpha the vector X_alpha is a scaled real elementary
 * combination and X_{-alpha} is its transpose, with the scale split evenly so
 * K(X_alpha, X_{-alpha}) = 1.
 */
struct WeylBasis {
  RootSystem roots;
  std::vector<RootFunctional> root_list;  // positives then negatives
  std::vector<Matrix> root_vectors;       // aligned with root_list
  std::vector<Matrix> cartan_duals;       // aligned with root_list
  std::map<std::pair<size_t, size_t>, double> structure_constants;
  double normalization_residual = 0.0;

  KillingForm killing() const { return {roots.family, roots.matrix_dim}; }
  int matrix_dim() const { return roots.matrix_dim; }
  size_t positive_count() const { return roots.positive_roots.size(); }

  size_t index(const RootFunctional& a) const {
    auto k = roots.index_of(a);
    if (!k) throw std::invalid_argument("not a root: " + a.label());
    return *k;
  }
  const Matrix& vector(const RootFunctional& a) const { return root_vectors[index(a)]; }
  const Matrix& dual(const RootFunctional& a) const { return cartan_duals[index(a)]; }
  size_t negative_index(size_t k) const {
    const size_t np = positive_count();
    return k < np ? k + np : k - np;
  }

  /// Cartan basis followed by all root vectors.
  std::vector<Matrix> complex_basis() const {
    std::vector<Matrix> b = roots.cartan_basis;
    b.insert(b.end(), root_vectors.begin(), root_vectors.end());
    return b;
  }
  int complex_dim() const { return static_cast<int>(roots.cartan_basis.size() + root_vectors.size()); }
};

/// H_alpha with K(H_alpha, H) = alpha(H) for every Cartan H.
inline Matrix cartan_dual(const RootSystem& rs, const RootFunctional& a) {
  if (!rs.is_root(a)) throw std::invalid_argument("cartan_dual: not a root: " + a.label());
  KillingForm k{rs.family, rs.matrix_dim};
  const auto& h = rs.cartan_basis;
  const Eigen::Index r = static_cast<Eigen::Index>(h.size());
  Eigen::MatrixXcd gram(r, r);
  CVector rhs(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    rhs(i) = a(h[static_cast<size_t>(i)]);
    for (Eigen::Index j = 0; j < r; ++j) gram(i, j) = k(h[static_cast<size_t>(i)], h[static_cast<size_t>(j)]);
  }
  CVector c = gram.fullPivLu().solve(rhs);
  Matrix out = Matrix::Zero(rs.matrix_dim, rs.matrix_dim);
  for (Eigen::Index j = 0; j < r; ++j) out += c(j) * h[static_cast<size_t>(j)];
  return out;
}

inline WeylBasis weyl_basis(const RootSystem& rs, double tol = 1e-9) {
  WeylBasis wb;
  wb.roots = rs;
  const int n = rs.matrix_dim;
  const double c = killing_scalar(rs.family, n);
  const size_t np = rs.positive_roots.size();
  wb.root_list = rs.all_roots();
  wb.root_vectors.resize(2 * np);
  for (size_t k = 0; k < np; ++k) {
    Matrix raw = detail::raw_root_vector(rs.positive_roots[k], n);
    double s = 1.0 / std::sqrt(c * trace_form(raw, raw.transpose()).real());
    wb.root_vectors[k] = s * raw;
    wb.root_vectors[k + np] = s * raw.transpose();
  }
  for (const auto& a : wb.root_list) wb.cartan_duals.push_back(cartan_dual(rs, a));

  KillingForm kf = wb.killing();
  auto fail = [](const std::string& what) { throw ConstructionError("weyl_basis: " + what); };
  for (size_t k = 0; k < 2 * np; ++k) {
    const Matrix& x = wb.root_vectors[k];
    const auto& a = wb.root_list[k];
    for (const auto& h : rs.cartan_basis)
      if ((bracket(h, x) - a(h) * x).norm() > tol) fail("root vector eigen-relation for " + a.label());
    const Matrix& y = wb.root_vectors[wb.negative_index(k)];
    double r = std::abs(kf(x, y) - 1.0);
    wb.normalization_residual = std::max(wb.normalization_residual, r);
    if (r > tol) fail("normalization for " + a.label());
    if ((bracket(x, y) - wb.cartan_duals[k]).norm() > tol) fail("[X_a, X_-a] != H_a for " + a.label());
  }
  for (size_t i = 0; i < 2 * np; ++i)
    for (size_t j = 0; j < 2 * np; ++j) {
      if (j == wb.negative_index(i)) continue;
      RootFunctional s = wb.root_list[i] + wb.root_list[j];
      Matrix br = bracket(wb.root_vectors[i], wb.root_vectors[j]);
      auto idx = rs.index_of(s);
      if (!idx) {
        if (br.norm() > tol) fail("bracket outside root spaces");
        continue;
      }
      const Matrix& z = wb.root_vectors[*idx];
      cplx m = trace_form(br, z.adjoint()) / trace_form(z, z.adjoint());
      if (std::abs(m.imag()) > tol || (br - m * z).norm() > tol) fail("structure constant not real");
      wb.structure_constants[{i, j}] = m.real();
    }
  return wb;
}

/// u = i h_R + span_R{X_a - X_-a, i(X_a + X_-a)}.
inline std::vector<Matrix> compact_generators(const WeylBasis& wb) {
  std::vector<Matrix> g;
  for (const auto& h : wb.roots.cartan_basis) g.push_back(kI * h);
  for (size_t k = 0; k < wb.positive_count(); ++k) {
    const Matrix& x = wb.root_vectors[k];
    const Matrix& y = wb.root_vectors[wb.negative_index(k)];
    g.push_back(x - y);
    g.push_back(kI * (x + y));
  }
  return g;
}

inline RealSubspace compact_real_form(const WeylBasis& wb, double tol = 1e-9) {
  const int n = wb.matrix_dim();
  RealSubspace u = RealSubspace::span(n, compact_generators(wb));
  if (u.dim() != wb.complex_dim()) throw ConstructionError("compact_real_form: dimension mismatch");
  if (u.closure_residual() > tol) throw ConstructionError("compact_real_form: not closed under bracket");
  KillingForm k = wb.killing();
  const auto& b = u.basis();
  RealMatrix gram(u.dim(), u.dim());
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j) gram(i, j) = k(b[static_cast<size_t>(i)], b[static_cast<size_t>(j)]).real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
  if (es.eigenvalues().maxCoeff() >= 0.0) throw ConstructionError("compact_real_form: Killing form not negative definite");
  return u;
}

}  // namespace flagorbit
