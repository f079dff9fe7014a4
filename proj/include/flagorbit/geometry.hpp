#pragma once

#include "flagorbit/symmetric.hpp"

namespace flagorbit {

/// X = X_m + X_f with X_m in m and X_f in n^+.
struct TangentSplit {
  Matrix x_m;
  Matrix x_f;
  double residual = 0;  // distance of X from m + n^+
};

inline TangentSplit split_tangent(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& x) {
  std::vector<Matrix> gens = cd.m.basis();
  const auto& nb = fd.decomposition.n_plus.basis();
  gens.insert(gens.end(), nb.begin(), nb.end());
  auto s = RealSubspace::span(fd.n(), gens, fd.tol.rank_rel);
  if (s.dim() != static_cast<int>(gens.size())) throw ConstructionError("split_tangent: m and n+ are not complementary");
  auto sol = s.solve(x, fd.tol.abs);
  TangentSplit t;
  t.residual = sol.residual;
  t.x_m = Matrix::Zero(fd.n(), fd.n());
  t.x_f = Matrix::Zero(fd.n(), fd.n());
  for (int k = 0; k < cd.m.dim(); ++k) t.x_m += sol.coefficients(k) * gens[size_t(k)];
  for (size_t k = 0; k < nb.size(); ++k) t.x_f += sol.coefficients(cd.m.dim() + static_cast<Eigen::Index>(k)) * nb[k];
  return t;
}

/**
 * @brief Ad(g0 exp(tX)) H_Theta for g0 in U and X in m_G.
 *
 * When [X_m, X_f] = 0 the witness is (g0 exp(tX_m), Ad(exp(tX_f))H_Theta - H_Theta);
 * otherwise it is recovered by factorization.
 */
inline OrbitPoint geodesic_point(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& g0, const Matrix& x, double t) {
  auto sp = split_tangent(cd, fd, x);
  if (sp.residual > fd.tol.abs * std::max(1.0, x.norm())) throw std::invalid_argument("geodesic_point: X not in m_G");
  Matrix g = g0 * matrix_exp(t * x);
  OrbitPoint pt;
  pt.value = g * fd.h_theta * g.partialPivLu().inverse();
  if (bracket(sp.x_m, sp.x_f).norm() <= fd.tol.abs * std::max(1.0, x.norm() * x.norm())) {
    Matrix off = matrix_exp(t * sp.x_f) * fd.h_theta * matrix_exp(-t * sp.x_f) - fd.h_theta;
    pt.witness = FiberWitness{g0 * matrix_exp(t * sp.x_m), off};
  } else {
    auto f = parabolic_factorization(fd, g);
    pt.witness = FiberWitness{f.u, Matrix(adjoint_action(f.p, fd.h_theta) - fd.h_theta)};
  }
  return pt;
}

enum class GeodesicKind { Horizontal, Vertical, Mixed, Unsupported };

inline std::string to_string(GeodesicKind k) {
  switch (k) {
    case GeodesicKind::Horizontal: return "horizontal";
    case GeodesicKind::Vertical: return "vertical";
    case GeodesicKind::Mixed: return "mixed";
    case GeodesicKind::Unsupported: return "unsupported";
  }
  return "?";
}

struct GeodesicProjection {
  GeodesicKind kind = GeodesicKind::Unsupported;
  double commutator = 0;        // |[X_m, X_f]|
  double max_projection_residual = 0;  // |Ad(u_t) H_Theta - Ad(g0 exp(tX_m)) H_Theta|
  double max_fiber_residual = 0;       // vertical: distance of Ad(g0)^{-1} point - H_Theta from n^+
  double max_witness_residual = 0;     // point vs Ad(u_t)(H_Theta + offset_t)
  std::vector<double> times;
  std::vector<Matrix> flag_curve;      // Ad(u_t) H_Theta
};

/// Projection of t -> Ad(g0 exp(tX)) H_Theta to the flag, checked at `times`.
inline GeodesicProjection project_geodesic(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& g0,
                                           const Matrix& x, const std::vector<double>& times) {
  GeodesicProjection r;
  r.times = times;
  auto sp = split_tangent(cd, fd, x);
  if (sp.residual > fd.tol.abs * std::max(1.0, x.norm())) throw std::invalid_argument("project_geodesic: X not in m_G");
  r.commutator = bracket(sp.x_m, sp.x_f).norm();
  const double zero = fd.tol.abs * std::max(1.0, x.norm());
  const bool no_f = sp.x_f.norm() <= zero, no_m = sp.x_m.norm() <= zero;
  if (no_f) r.kind = GeodesicKind::Horizontal;
  else if (no_m) r.kind = GeodesicKind::Vertical;
  else if (r.commutator <= zero * std::max(1.0, x.norm())) r.kind = GeodesicKind::Mixed;
  else return r;
  for (double t : times) {
    OrbitPoint pt = geodesic_point(cd, fd, g0, x, t);
    // Independent witness: factor g0 exp(tX) directly.
    auto f = parabolic_factorization(fd, Matrix(g0 * matrix_exp(t * x)));
    Matrix flag = unitary_action(f.u, fd.h_theta);
    Matrix expected = unitary_action(Matrix(g0 * matrix_exp(t * sp.x_m)), fd.h_theta);
    r.flag_curve.push_back(flag);
    r.max_projection_residual = std::max(r.max_projection_residual, (flag - expected).norm());
    r.max_witness_residual = std::max(r.max_witness_residual, witness_residual(fd, pt));
    if (r.kind == GeodesicKind::Vertical) {
      Matrix back = unitary_action(g0.adjoint(), pt.value) - fd.h_theta;
      r.max_fiber_residual = std::max(r.max_fiber_residual, fd.decomposition.n_plus.residual(back));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Curvature of the symmetric pair at the origin.

enum class SpaceKind { M, SqrtM };

inline const RealSubspace& space_of(const CanonicalDecomposition& cd, SpaceKind s) {
  return s == SpaceKind::M ? cd.m : cd.sqrt_m;
}

/// R(X,Y)Z = -[[X,Y],Z] for X, Y, Z in the same space.
inline Matrix curvature_tensor(const CanonicalDecomposition& cd, SpaceKind s, const Matrix& x, const Matrix& y,
                               const Matrix& z, double tol = 1e-9) {
  const RealSubspace& sp = space_of(cd, s);
  for (const Matrix* v : {&x, &y, &z})
    if (sp.residual(*v) > tol * std::max(1.0, v->norm())) throw std::invalid_argument("curvature_tensor: argument outside the space");
  Matrix r = -bracket(bracket(x, y), z);
  if (sp.residual(r) > tol * std::max(1.0, r.norm())) throw ConstructionError("curvature_tensor: result left the space");
  return r;
}

/// <X,Y> = -K on m and +K on i m.
inline double space_metric(const FlagDatum& fd, SpaceKind s, const Matrix& x, const Matrix& y) {
  double k = fd.killing(x, y).real();
  return s == SpaceKind::M ? -k : k;
}

inline double sectional_curvature(const CanonicalDecomposition& cd, const FlagDatum& fd, SpaceKind s, const Matrix& x,
                                  const Matrix& y) {
  double den = space_metric(fd, s, x, x) * space_metric(fd, s, y, y) - std::pow(space_metric(fd, s, x, y), 2);
  if (den < fd.tol.abs) throw std::invalid_argument("sectional_curvature: degenerate plane");
  Matrix r = curvature_tensor(cd, s, x, y, y, fd.tol.abs);
  return space_metric(fd, s, r, x) / den;
}

/// g(X + iZ, Y + iW) = -K(X, Y) + K(iZ, iW) on m + i m.
inline double bundle_metric(const CanonicalDecomposition& cd, const FlagDatum& fd, const Matrix& v1, const Matrix& v2) {
  auto parts = [&](const Matrix& v) {
    Matrix a = cd.m.project(v), b = cd.sqrt_m.project(v);
    if ((v - a - b).norm() > fd.tol.abs * std::max(1.0, v.norm())) throw std::invalid_argument("bundle_metric: vector outside m + i m");
    return std::make_pair(a, b);
  };
  auto [x, iz] = parts(v1);
  auto [y, iw] = parts(v2);
  return -fd.killing(x, y).real() + fd.killing(iz, iw).real();
}

struct TswWitness {
  Matrix x, y, z, w;  // in m; the noncompact pair is (iZ, iW)
  double lhs = 0;     // R_g(X, Y, iZ, iW)
  double sec_m = 0;
  double sec_sqrt_m = 0;
  double rhs = 0;     // 4 sec_m sec_{i m}
  double margin = 0;  // lhs^2 - rhs
  long sample_index = -1;
  bool from_sweep = false;
  long samples_tried = 0;
};

/// R_g(X, Y, iZ, iW) = g(-[[X,Y], iZ], iW).
inline double tsw_mixed_term(const FlagDatum& fd, const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& w) {
  Matrix r = -bracket(bracket(x, y), Matrix(kI * z));
  return fd.killing(r, Matrix(kI * w)).real();
}

/**
 * @brief Looks for (X, Y, Z, W) in m with R_g(X,Y,iZ,iW)^2 > 0 >= 4 sec(X,Y) sec(iZ,iW).
 *
 * Seeded random quadruples first, then (X, Y, X, Y) over pairs of basis
 * vectors of m. Returns the lowest-index witness.
 */
inline std::optional<TswWitness> tsw_violation_scan(const CanonicalDecomposition& cd, const FlagDatum& fd, long samples,
                                                    uint64_t seed, double lhs_sq_min = 1e-9, double rhs_max = -1e-9) {
  auto evaluate = [&](const Matrix& x, const Matrix& y, const Matrix& z, const Matrix& w, TswWitness& out) {
    try {
      out.sec_m = sectional_curvature(cd, fd, SpaceKind::M, x, y);
      out.sec_sqrt_m = sectional_curvature(cd, fd, SpaceKind::SqrtM, Matrix(kI * z), Matrix(kI * w));
    } catch (const std::invalid_argument&) {
      return false;
    }
    out.lhs = tsw_mixed_term(fd, x, y, z, w);
    out.rhs = 4.0 * out.sec_m * out.sec_sqrt_m;
    out.margin = out.lhs * out.lhs - out.rhs;
    out.x = x, out.y = y, out.z = z, out.w = w;
    return out.lhs * out.lhs > lhs_sq_min && out.rhs <= rhs_max;
  };
  std::mt19937_64 rng(seed);
  TswWitness wt;
  for (long s = 0; s < samples; ++s) {
    Matrix x = random_direction(cd.m, rng, 1.0), y = random_direction(cd.m, rng, 1.0);
    Matrix z = random_direction(cd.m, rng, 1.0), w = random_direction(cd.m, rng, 1.0);
    wt.samples_tried = s + 1;
    if (evaluate(x, y, z, w, wt)) {
      wt.sample_index = s;
      return wt;
    }
  }
  auto ob = cd.m.orthonormal_basis();
  for (size_t i = 0; i < ob.size(); ++i)
    for (size_t j = i + 1; j < ob.size(); ++j)
      if (evaluate(ob[i], ob[j], ob[i], ob[j], wt)) {
        wt.from_sweep = true;
        wt.sample_index = static_cast<long>(i * ob.size() + j);
        return wt;
      }
  return std::nullopt;
}

}  // namespace flagorbit
