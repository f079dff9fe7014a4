#pragma once

#include "flagorbit/symmetric.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

namespace flagorbit {

/// Coordinates (x, y, z) in a fixed real basis of a three-dimensional algebra.
struct ToyPoint3D {
  double x = 0, y = 0, z = 0;
  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline double distance(const ToyPoint3D& a, const ToyPoint3D& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

// ---------------------------------------------------------------------------
// sl(2,R) with basis A = [[0,1],[1,0]], B = diag(1,-1), C = [[0,1],[-1,0]].

namespace sl2 {

inline Matrix basis_a() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix basis_b() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }
inline Matrix basis_c() { return (Matrix(2, 2) << 0, 1, -1, 0).finished(); }
inline Matrix e12() { return (Matrix(2, 2) << 0, 1, 0, 0).finished(); }

/// xA + yB + zC = [[y, x+z], [x-z, -y]].
inline Matrix to_matrix(const ToyPoint3D& p) { return p.x * basis_a() + p.y * basis_b() + p.z * basis_c(); }

/// Inverse of to_matrix on real traceless matrices; throws if m is not one.
inline ToyPoint3D from_matrix(const Matrix& m, double tol = 1e-9) {
  require_square(m, "sl2::from_matrix");
  if (m.rows() != 2) throw DimensionError("sl2::from_matrix: expected 2x2");
  const double s = std::max(1.0, m.norm());
  if (m.imag().norm() > tol * s || std::abs(m.trace()) > tol * s) throw std::invalid_argument("sl2::from_matrix: not in sl(2,R)");
  const double m01 = m(0, 1).real(), m10 = m(1, 0).real();
  return {0.5 * (m01 + m10), m(0, 0).real(), 0.5 * (m01 - m10)};
}

/// x^2 + y^2 - z^2; equals 1 on the orbit of B.
inline double hyperboloid_form(const ToyPoint3D& p) { return p.x * p.x + p.y * p.y - p.z * p.z; }

}  // namespace sl2

/// Ad(exp(-sC)) B = sin(2s) A + cos(2s) B.
inline ToyPoint3D sl2_flag_point(double s) { return {std::sin(2 * s), std::cos(2 * s), 0.0}; }

/// Ad(exp(tC)) (B + r E12), the fiber over the flag point at parameter -t.
inline ToyPoint3D sl2_fiber_point(double t, double r) {
  const double c = std::cos(2 * t), s = std::sin(2 * t);
  return {-s + 0.5 * r * c, c + 0.5 * r * s, 0.5 * r};
}

struct HyperbolaMeet {
  double r = 0;
  ToyPoint3D point;
};

/// t reduced to (-pi/2, pi/2].
inline double sl2_reduce(double t) {
  double u = std::remainder(t, kPi);
  if (u <= -kPi / 2) u += kPi;
  return u;
}

/**
 * @brief Where the fiber at t meets the branch y^2 - z^2 = 1, y > 0.
 *
 * Closed form r = 2 tan(2t); exists iff cos(2t) > 0. The band |cos 2t| <= edge
 * is treated as the boundary (fibers through +-A).
 */
inline std::optional<HyperbolaMeet> sl2_fiber_meets_hyperbola(double t, double edge = 1e-12) {
  const double u = sl2_reduce(t);
  if (std::cos(2 * u) <= edge) return std::nullopt;
  HyperbolaMeet m;
  m.r = 2 * std::tan(2 * u);
  m.point = sl2_fiber_point(u, m.r);
  return m;
}

/// Same question answered by the affine solver against span{B, C} plus y > 0.
inline std::optional<HyperbolaMeet> sl2_fiber_meets_hyperbola_generic(double t, double rank_rel = 1e-8, double tol = 1e-8) {
  Matrix k = matrix_exp(t * sl2::basis_c());
  Matrix ki = matrix_exp(-t * sl2::basis_c());
  Matrix base = k * sl2::basis_b() * ki;
  Matrix dir = k * sl2::e12() * ki;
  auto plane = RealSubspace::span(2, {sl2::basis_b(), sl2::basis_c()});
  AffineMeet meet = affine_meet(base, {dir}, plane, rank_rel, tol);
  if (!meet.consistent || meet.solution_dim != 0) return std::nullopt;
  ToyPoint3D p = sl2::from_matrix(meet.point);
  if (p.y <= 0) return std::nullopt;
  return HyperbolaMeet{meet.coefficients(0), p};
}

// ---------------------------------------------------------------------------
// SU(2) acting on sl(2,C) with H = (i pi / 2) diag(1,-1).

namespace su2 {

/// u = [[a, b], [-conj b, conj a]].
inline Matrix element(cplx a, cplx b) { return (Matrix(2, 2) << a, b, -std::conj(b), std::conj(a)).finished(); }

inline Matrix basis_e1() { return (Matrix(2, 2) << 0, 1, -1, 0).finished(); }
inline Matrix basis_e2() { return (Matrix(2, 2) << kI, 0, 0, -kI).finished(); }
inline Matrix basis_e3() { return (Matrix(2, 2) << 0, kI, kI, 0).finished(); }

/// Coordinates of m in su(2) over (e1, e2, e3).
inline ToyPoint3D coordinates(const Matrix& m, double tol = 1e-9) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("su2::coordinates: expected 2x2");
  if ((m + m.adjoint()).norm() > tol * std::max(1.0, m.norm()) || std::abs(m.trace()) > tol * std::max(1.0, m.norm()))
    throw std::invalid_argument("su2::coordinates: not in su(2)");
  return {m(0, 1).real(), m(0, 0).imag(), m(0, 1).imag()};
}

inline void require_unit(cplx a, cplx b, double tol) {
  if (!std::isfinite(std::norm(a) + std::norm(b)) || std::abs(std::norm(a) + std::norm(b) - 1.0) > tol)
    throw std::invalid_argument("su2: |alpha|^2 + |beta|^2 must be 1");
}

}  // namespace su2

/**
 * @brief The single point of Ad(u)(H + n^+) in S, or none.
 *
 * Nonempty iff 1/2 < |a|^2 <= 1; the point is
 * (i pi / (2|a|^2 - 1)) [[1/2, a b], [-conj(a b), -1/2]].
 * Within `edge` of |a|^2 = 1/2 the answer is none.
 */
inline std::optional<Matrix> su2_fiber_meets_S(cplx a, cplx b, double unit_tol = 1e-12, double edge = 1e-8) {
  su2::require_unit(a, b, unit_tol);
  const double d = 2 * std::norm(a) - 1;
  if (d <= edge) return std::nullopt;
  const cplx ab = a * b;
  Matrix p(2, 2);
  p << 0.5, ab, -std::conj(ab), -0.5;
  return Matrix(kI * kPi / d * p);
}

/// Ad(u) H in (e1, e2, e3): (pi Im(ab), (pi/2)(2|a|^2 - 1), -pi Re(ab)).
inline ToyPoint3D su2_flag_point(cplx a, cplx b, double unit_tol = 1e-12) {
  su2::require_unit(a, b, unit_tol);
  const cplx ab = a * b;
  return {kPi * ab.imag(), 0.5 * kPi * (2 * std::norm(a) - 1), -kPi * ab.real()};
}

struct Su2Comparison {
  bool closed_nonempty = false;
  bool generic_nonempty = false;
  double point_difference = 0;  // when both are nonempty
  bool agree() const { return closed_nonempty == generic_nonempty; }
};

/// Closed form against the generic fiber classifier on the datum for A(1,1).
inline Su2Comparison su2_compare(const CanonicalDecomposition& cd, const FlagDatum& fd, cplx a, cplx b) {
  if (fd.family() != Family::A || fd.n() != 2) throw std::invalid_argument("su2_compare: needs the A(1,1) datum");
  Su2Comparison c;
  auto closed = su2_fiber_meets_S(a, b);
  FiberVerdict v = nonintersecting_fiber_condition(cd, fd, su2::element(a, b));
  c.closed_nonempty = closed.has_value();
  c.generic_nonempty = v.kind == FiberVerdictKind::Singleton;
  if (closed && v.point) c.point_difference = (*closed - *v.point).norm();
  return c;
}

// ---------------------------------------------------------------------------
// Figure data.

enum class ToyModel { Sl2, Su2 };

inline ToyModel parse_toy_model(const std::string& s) {
  if (s == "sl2") return ToyModel::Sl2;
  if (s == "su2") return ToyModel::Su2;
  throw std::invalid_argument("unknown toy model: " + s);
}

struct Polyline {
  std::string layer;
  double parameter = 0;
  bool intersects = true;  // false marks fibers missing S
  std::vector<ToyPoint3D> points;
};

struct FigureData {
  ToyModel model = ToyModel::Sl2;
  std::vector<Polyline> polylines;
  std::vector<std::string> layers() const {
    std::vector<std::string> out;
    for (const auto& p : polylines)
      if (std::find(out.begin(), out.end(), p.layer) == out.end()) out.push_back(p.layer);
    return out;
  }
};

inline constexpr int kMinFigureResolution = 16;

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[size_t(i)] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

namespace detail {

inline FigureData sl2_figures(int res) {
  FigureData f;
  f.model = ToyModel::Sl2;
  const double zmax = 2.0;
  for (double z : linspace(-zmax, zmax, 9)) {
    Polyline p{"hyperboloid", z, true, {}};
    const double rad = std::sqrt(1 + z * z);
    for (double th : linspace(0, 2 * kPi, 4 * res)) p.points.push_back({rad * std::cos(th), rad * std::sin(th), z});
    f.polylines.push_back(std::move(p));
  }
  Polyline circle{"circle", 0, true, {}};
  for (double s : linspace(0, kPi, 4 * res)) circle.points.push_back(sl2_flag_point(s));
  f.polylines.push_back(std::move(circle));
  Polyline hyp{"hyperbola", 0, true, {}};
  const double smax = std::asinh(zmax);
  for (double s : linspace(-smax, smax, 4 * res)) hyp.points.push_back({0.0, std::cosh(s), std::sinh(s)});
  f.polylines.push_back(std::move(hyp));

  std::vector<double> ts = linspace(-kPi / 2, kPi / 2, res);
  for (double edge : {-kPi / 4, kPi / 4})
    if (std::none_of(ts.begin(), ts.end(), [&](double t) { return std::abs(t - edge) < 1e-12; })) ts.push_back(edge);
  std::sort(ts.begin(), ts.end());
  Polyline locus{"intersection", 0, true, {}};
  for (double t : ts) {
    auto meet = sl2_fiber_meets_hyperbola(t);
    Polyline fib{"fiber", t, meet.has_value(), {}};
    for (double r : linspace(-2 * zmax, 2 * zmax, 2)) fib.points.push_back(sl2_fiber_point(t, r));
    f.polylines.push_back(std::move(fib));
    if (meet && std::abs(meet->point.z) <= zmax) locus.points.push_back(meet->point);
  }
  f.polylines.push_back(std::move(locus));
  return f;
}

inline FigureData su2_figures(int res) {
  FigureData f;
  f.model = ToyModel::Su2;
  const double rad = kPi / 2;
  for (double lat : linspace(-kPi / 2, kPi / 2, 9)) {
    if (std::abs(std::cos(lat)) < 1e-12) continue;
    Polyline p{"sphere", lat, true, {}};
    for (double th : linspace(0, 2 * kPi, 4 * res))
      p.points.push_back({rad * std::cos(lat) * std::cos(th), rad * std::sin(lat), rad * std::cos(lat) * std::sin(th)});
    f.polylines.push_back(std::move(p));
  }
  Polyline eq{"boundary", 0.5, false, {}};
  for (double th : linspace(0, 2 * kPi, 4 * res))
    eq.points.push_back(su2_flag_point(std::sqrt(0.5), std::polar(std::sqrt(0.5), th)));
  f.polylines.push_back(std::move(eq));
  // One polyline per |alpha|^2 in (1/2, 1], sweeping arg(alpha beta).
  for (double s : linspace(0.5, 1.0, res)) {
    if (s <= 0.5) continue;
    Polyline p{"locus", s, true, {}};
    for (double th : linspace(0, 2 * kPi, 4 * res)) p.points.push_back(su2_flag_point(std::sqrt(s), std::polar(std::sqrt(1 - s), th)));
    f.polylines.push_back(std::move(p));
  }
  return f;
}

inline std::string format_double(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace detail

inline FigureData emit_toy_figures(ToyModel model, int resolution) {
  if (resolution < kMinFigureResolution)
    throw std::invalid_argument("resolution must be at least " + std::to_string(kMinFigureResolution));
  return model == ToyModel::Sl2 ? detail::sl2_figures(resolution) : detail::su2_figures(resolution);
}

/// One block per polyline: a "# layer=..." header line, a column header, rows, a blank line.
inline void write_csv(std::ostream& os, const FigureData& f) {
  for (const auto& p : f.polylines) {
    os << "# layer=" << p.layer << " parameter=" << detail::format_double(p.parameter)
       << " intersects=" << (p.intersects ? "yes" : "no") << "\n";
    os << "x,y,z\n";
    for (const auto& q : p.points)
      os << detail::format_double(q.x) << ',' << detail::format_double(q.y) << ',' << detail::format_double(q.z) << "\n";
    os << "\n";
  }
}

/// 800x800 oblique projection; one <g> per layer, missing fibers dashed.
inline void write_svg(std::ostream& os, const FigureData& f) {
  const double c30 = std::cos(kPi / 6), s30 = std::sin(kPi / 6);
  auto project = [&](const ToyPoint3D& p) { return std::array<double, 2>{(p.x - p.y) * c30, p.z - (p.x + p.y) * s30}; };
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& pl : f.polylines)
    for (const auto& p : pl.points) {
      auto q = project(p);
      lo_x = std::min(lo_x, q[0]), hi_x = std::max(hi_x, q[0]);
      lo_y = std::min(lo_y, q[1]), hi_y = std::max(hi_y, q[1]);
    }
  const double size = 800, margin = 40;
  const double scale = (size - 2 * margin) / std::max({hi_x - lo_x, hi_y - lo_y, 1e-9});
  auto px = [&](double v) { return margin + (v - lo_x) * scale; };
  auto py = [&](double v) { return size - margin - (v - lo_y) * scale; };
  auto color = [](const std::string& layer) -> std::string {
    if (layer == "hyperboloid" || layer == "sphere") return "#bbbbbb";
    if (layer == "circle") return "#1f77b4";
    if (layer == "hyperbola" || layer == "locus") return "#2ca02c";
    if (layer == "fiber") return "#d62728";
    if (layer == "boundary") return "#87ceeb";
    return "#000000";
  };
  char buf[64];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const auto& layer : f.layers()) {
    os << "<g id=\"" << layer << "\" fill=\"none\" stroke=\"" << color(layer) << "\">\n";
    for (const auto& pl : f.polylines) {
      if (pl.layer != layer) continue;
      os << "<polyline data-parameter=\"" << detail::format_double(pl.parameter) << "\"";
      if (!pl.intersects) os << " class=\"no-intersection\" stroke=\"#87ceeb\" stroke-dasharray=\"6 4\"";
      os << " points=\"";
      for (size_t i = 0; i < pl.points.size(); ++i) {
        auto q = project(pl.points[i]);
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(q[0]), py(q[1]));
        os << buf;
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
}

}  // namespace flagorbit
