#pragma once

#include "flagorbit/geometry.hpp"
#include "flagorbit/symplectic.hpp"
#include "flagorbit/toy.hpp"

#include <map>
#include <variant>

namespace flagorbit {

enum class CheckStatus { Pass, Fail, ReportedMismatch };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::ReportedMismatch: return "reported-mismatch";
  }
  return "?";
}

using DetailValue = std::variant<bool, long long, double, std::string, cplx>;

struct CheckResult {
  std::string check_id;
  CheckStatus status = CheckStatus::Fail;
  double max_residual = 0;
  std::vector<std::pair<std::string, DetailValue>> details;
  std::vector<std::pair<std::string, Matrix>> witnesses;

  CheckResult& detail(std::string key, DetailValue v) {
    details.emplace_back(std::move(key), std::move(v));
    return *this;
  }
  CheckResult& witness(std::string key, Matrix m) {
    witnesses.emplace_back(std::move(key), std::move(m));
    return *this;
  }
  bool failed() const { return status == CheckStatus::Fail; }
};

inline CheckResult make_check(std::string id, bool ok, double residual) {
  CheckResult c;
  c.check_id = std::move(id);
  c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  c.max_residual = residual;
  return c;
}

struct VerifyConfig {
  Tolerance tol;
  int samples = 200;
  uint64_t seed = 1;
  long tsw_samples = 10000;
  int geodesic_times = 20;
  double relative_tol = 1e-8;  // Killing scalar, sampled identities
};

/// Everything a datum-level check needs, built once.
struct VerifyContext {
  FlagDatum fd;
  CanonicalDecomposition cd;
  CompactConjugation tau;
  explicit VerifyContext(const FlagParams& fp, const Tolerance& tol = {})
      : fd(make_flag_datum(fp, tol)), cd(canonical_decomposition(fd)), tau(fd.weyl) {}
  std::string label() const { return fd.params.label(); }
};

inline Matrix random_algebra_element(const FlagDatum& fd, std::mt19937_64& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  Matrix m = Matrix::Zero(fd.n(), fd.n());
  for (const auto& b : fd.weyl.complex_basis()) m += cplx(d(rng), d(rng)) * b;
  return m;
}

// ---------------------------------------------------------------------------
// algebra

inline CheckResult check_weyl_normalization(const VerifyContext& c) {
  const auto& wb = c.fd.weyl;
  double worst = 0, cross = 0;
  for (size_t i = 0; i < wb.positive_count(); ++i) {
    worst = std::max(worst, std::abs(c.fd.killing(wb.root_vectors[i], wb.root_vectors[wb.negative_index(i)]) - 1.0));
    for (size_t j = 0; j < wb.root_vectors.size(); ++j)
      if (j != wb.negative_index(i)) cross = std::max(cross, std::abs(c.fd.killing(wb.root_vectors[i], wb.root_vectors[j])));
  }
  return make_check("algebra.weyl_normalization", worst < c.fd.tol.abs && cross < c.fd.tol.abs, std::max(worst, cross))
      .detail("root_pairs", static_cast<long long>(wb.positive_count()))
      .detail("max_pair_error", worst)
      .detail("max_cross_pairing", cross);
}

inline CheckResult check_killing_scalar(const VerifyContext& c, int pairs, uint64_t seed, double rel) {
  AdjointRepresentation ad(c.fd.weyl.complex_basis(), c.fd.tol.abs);
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int k = 0; k < pairs; ++k) {
    Matrix x = random_algebra_element(c.fd, rng), y = random_algebra_element(c.fd, rng);
    cplx exact = ad.killing(x, y);
    cplx fast = killing_fast(c.fd.family(), x, y);
    worst = std::max(worst, std::abs(exact - fast) / std::max(1.0, std::abs(exact)));
  }
  return make_check("algebra.killing_scalar", worst < rel, worst)
      .detail("pairs", static_cast<long long>(pairs))
      .detail("scalar", killing_scalar(c.fd.family(), c.fd.n()));
}

inline CheckResult check_root_eigenvectors(const VerifyContext& c) {
  const auto& wb = c.fd.weyl;
  double worst = 0;
  for (const auto& h : wb.roots.cartan_basis)
    for (size_t i = 0; i < wb.root_vectors.size(); ++i) {
      const Matrix& x = wb.root_vectors[i];
      worst = std::max(worst, (bracket(h, x) - wb.root_list[i](h) * x).norm() / std::max(1.0, h.norm()));
    }
  return make_check("algebra.root_eigenvectors", worst < c.fd.tol.abs, worst);
}

inline CheckResult check_structure_constants(const VerifyContext& c) {
  const auto& wb = c.fd.weyl;
  double worst = 0, imag = 0;
  for (size_t i = 0; i < wb.root_vectors.size(); ++i)
    for (size_t j = 0; j < wb.root_vectors.size(); ++j) {
      RootFunctional s = wb.root_list[i] + wb.root_list[j];
      if (s.is_zero()) continue;
      Matrix b = bracket(wb.root_vectors[i], wb.root_vectors[j]);
      if (!wb.roots.is_root(s)) {
        worst = std::max(worst, b.norm());
        continue;
      }
      cplx m = c.fd.killing(b, wb.vector(-s));
      imag = std::max(imag, std::abs(m.imag()));
      worst = std::max(worst, (b - m * wb.vector(s)).norm());
    }
  return make_check("algebra.structure_constants", worst < c.fd.tol.abs && imag < c.fd.tol.abs, std::max(worst, imag))
      .detail("max_imaginary_part", imag);
}

inline CheckResult check_compact_form(const VerifyContext& c) {
  const auto& u = c.cd.u;
  RealMatrix g = killing_gram(c.fd, u.orthonormal_basis());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  const double top = es.eigenvalues().maxCoeff();
  const double closure = u.closure_residual();
  return make_check("algebra.compact_real_form", closure < c.fd.tol.abs && top < 0 && u.dim() == c.fd.weyl.complex_dim(), closure)
      .detail("real_dim", static_cast<long long>(u.dim()))
      .detail("max_killing_eigenvalue", top);
}

// ---------------------------------------------------------------------------
// symmetric

inline CheckResult check_symmetric_axioms(const VerifyContext& c) {
  SymmetricAxioms ax = symmetric_axioms(c.cd, c.fd);
  double r = std::max({ax.theta_theta, ax.theta_m, ax.m_m});
  return make_check("symmetric.axioms", ax.ok(c.fd.tol.abs), r)
      .detail("theta_theta", ax.theta_theta)
      .detail("theta_m", ax.theta_m)
      .detail("m_m", ax.m_m)
      .detail("sigma_sign", ax.sigma_sign)
      .detail("sqrt_m_min_killing", ax.sqrt_m_min_killing);
}

/// Complex dimension of z_Theta from the block sizes.
inline int expected_centralizer_dim(const FlagParams& fp) {
  return fp.family == Family::A ? fp.p * fp.p + fp.q * fp.q - 1 : fp.l * fp.l;
}

inline CheckResult check_centralizer(const VerifyContext& c) {
  CentralizerReport r = centralizer_agreement(c.fd);
  const int want = 2 * expected_centralizer_dim(c.fd.params);
  return make_check("symmetric.centralizer_identity", r.equal && r.kernel_dim == want, r.max_residual)
      .detail("kernel_real_dim", static_cast<long long>(r.kernel_dim))
      .detail("fixed_real_dim", static_cast<long long>(r.fixed_dim))
      .detail("expected_real_dim", static_cast<long long>(want));
}

inline CheckResult check_fiber_origin(const VerifyContext& c, double point_tol = 1e-10) {
  AffineMeet m = affine_meet(c.fd.h_theta, c.fd.decomposition.n_plus.basis(), c.cd.u_star, c.fd.tol.rank_rel, c.fd.tol.certified);
  double gap = (m.point - c.fd.h_theta).norm();
  return make_check("symmetric.fiber_intersection", m.consistent && m.solution_dim == 0 && gap < point_tol, gap)
      .detail("consistent", m.consistent)
      .detail("solution_dim", static_cast<long long>(m.solution_dim))
      .witness("point", m.point);
}

inline CheckResult check_transversality(const VerifyContext& c, int points, uint64_t seed) {
  auto pts = sample_S(c.cd, c.fd, points, seed);
  long long deficits = 0;
  int expected = 0, worst = std::numeric_limits<int>::max();
  for (const auto& p : pts) {
    RankReport r = transversality_check(c.cd, c.fd, p);
    expected = r.expected;
    worst = std::min({worst, r.bracket_rank, r.orbit_rank, r.tangent_rank < 0 ? r.expected : r.tangent_rank});
    if (!r.full()) ++deficits;
  }
  if (pts.empty()) worst = 0;
  return make_check("symmetric.transversality", deficits == 0 && !pts.empty(), static_cast<double>(deficits))
      .detail("points", static_cast<long long>(pts.size()))
      .detail("rank_deficits", deficits)
      .detail("expected_rank", static_cast<long long>(expected))
      .detail("min_rank", static_cast<long long>(worst));
}

inline CheckResult check_s_membership(const VerifyContext& c, int points, uint64_t seed) {
  auto pts = sample_S(c.cd, c.fd, points, seed);
  double worst = 0;
  long long misses = 0;
  for (const auto& p : pts) {
    SLocation loc = locate_in_S(c.cd, c.fd, p.value);
    if (!loc.in_s) ++misses;
    worst = std::max({worst, witness_residual(c.fd, p), orbit_invariant_residual(c.fd, p.value)});
  }
  return make_check("symmetric.s_membership", misses == 0 && worst < c.fd.tol.certified, worst).detail("misses", misses);
}

inline CheckResult check_pairing(const VerifyContext& c) {
  CorootExpansion ex = h_theta_coroot_expansion(c.fd);
  CheckResult r;
  r.check_id = "symmetric.pairing_value";
  r.max_residual = std::abs(ex.computed_pairing - ex.reference_pairing);
  if (ex.reconstruction_residual > c.fd.tol.abs) r.status = CheckStatus::Fail;
  else r.status = ex.pairing_matches ? CheckStatus::Pass : CheckStatus::ReportedMismatch;
  r.detail("root", ex.pairing_root.label())
      .detail("computed", ex.computed_pairing)
      .detail("reference", ex.reference_pairing)
      .detail("expansion_residual", ex.reconstruction_residual)
      .detail("coefficient_gap", ex.coefficient_gap);
  return r;
}

inline CheckResult check_fiber_verdicts(const VerifyContext& c, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  long long singles = 0, empties = 0, open = 0;
  double worst = 0;
  for (int k = 0; k < count; ++k) {
    Matrix u = random_compact_element(c.cd, rng, 1.5);
    FiberVerdict v = nonintersecting_fiber_condition(c.cd, c.fd, u);
    if (v.kind == FiberVerdictKind::Singleton) {
      ++singles;
      Matrix back = unitary_action(u.adjoint(), *v.point) - c.fd.h_theta;
      worst = std::max(worst, c.fd.decomposition.n_plus.residual(back) / std::max(1.0, v.point->norm()));
    } else if (v.kind == FiberVerdictKind::Empty) {
      ++empties;
    } else {
      ++open;
    }
  }
  FiberVerdict origin = nonintersecting_fiber_condition(c.cd, c.fd, Matrix::Identity(c.fd.n(), c.fd.n()));
  bool origin_ok = origin.kind == FiberVerdictKind::Singleton && (*origin.point - c.fd.h_theta).norm() < c.fd.tol.certified;
  return make_check("symmetric.fiber_verdicts", origin_ok && worst < c.fd.tol.certified, worst)
      .detail("singleton", singles)
      .detail("certified_empty", empties)
      .detail("unclassified", open);
}

// ---------------------------------------------------------------------------
// symplectic

inline std::vector<OrbitPoint> flag_sample(const VerifyContext& c, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<OrbitPoint> pts{OrbitPoint{c.fd.h_theta, std::nullopt, std::nullopt}};
  for (int k = 0; k < count; ++k)
    pts.push_back(OrbitPoint{unitary_action(random_compact_element(c.cd, rng, 1.5), c.fd.h_theta), std::nullopt, std::nullopt});
  return pts;
}

/// Real dimension of the flag: 2pq, l(l+1), l(l-1).
inline int expected_flag_dim(const FlagParams& fp) {
  switch (fp.family) {
    case Family::A: return 2 * fp.p * fp.q;
    case Family::C: return fp.l * (fp.l + 1);
    case Family::D: return fp.l * (fp.l - 1);
  }
  return 0;
}

inline CheckResult check_lagrangian_flag(const VerifyContext& c, int points, uint64_t seed) {
  auto r = lagrangian_report(c.fd, c.tau, c.cd.u, flag_sample(c, points, seed));
  const int want = expected_flag_dim(c.fd.params);
  return make_check("symplectic.lagrangian_flag",
                    r.max_omega < c.fd.tol.abs && r.half_dimension && r.tangent_dim == want && r.orbit_dim == 2 * want, r.max_omega)
      .detail("tangent_dim", static_cast<long long>(r.tangent_dim))
      .detail("orbit_dim", static_cast<long long>(r.orbit_dim))
      .detail("expected_tangent_dim", static_cast<long long>(want))
      .detail("points", static_cast<long long>(r.points));
}

inline CheckResult check_lagrangian_s(const VerifyContext& c, int points, uint64_t seed) {
  auto r = lagrangian_report(c.fd, c.tau, c.cd.u_star, sample_S(c.cd, c.fd, points, seed));
  const int want = expected_flag_dim(c.fd.params);
  return make_check("symplectic.lagrangian_s",
                    r.max_omega < c.fd.tol.abs && r.half_dimension && r.tangent_dim == want && r.orbit_dim == 2 * want, r.max_omega)
      .detail("tangent_dim", static_cast<long long>(r.tangent_dim))
      .detail("orbit_dim", static_cast<long long>(r.orbit_dim))
      .detail("points", static_cast<long long>(r.points));
}

inline CheckResult check_kks_witness(const VerifyContext& c) {
  try {
    KksWitness w = kks_nonlagrangian_witness(c.fd, c.tau);
    return make_check("symplectic.kks_witness", std::abs(w.value) > c.fd.tol.nonzero && std::abs(w.omega_value) < c.fd.tol.abs,
                      std::abs(w.omega_value))
        .detail("root", w.root.label())
        .detail("kks_value", w.value)
        .detail("omega_value", w.omega_value)
        .witness("x", w.x)
        .witness("y", w.y);
  } catch (const ClaimViolation& e) {
    return make_check("symplectic.kks_witness", false, 0).detail("error", std::string(e.what()));
  }
}

inline CheckResult check_center(const VerifyContext& c) {
  int d = z_theta_center_dim(c.fd);
  return make_check("symplectic.center_dimension", d == 2, 0).detail("center_real_dim", static_cast<long long>(d));
}

// ---------------------------------------------------------------------------
// curvature and geodesics

inline CheckResult check_sectional_signs(const VerifyContext& c, int planes, uint64_t seed) {
  std::mt19937_64 rng(seed);
  double min_m = std::numeric_limits<double>::infinity(), max_im = -min_m, duality = 0;
  int used = 0;
  for (int k = 0; k < planes; ++k) {
    Matrix x = random_direction(c.cd.m, rng, 1.0), y = random_direction(c.cd.m, rng, 1.0);
    try {
      double sm = sectional_curvature(c.cd, c.fd, SpaceKind::M, x, y);
      double si = sectional_curvature(c.cd, c.fd, SpaceKind::SqrtM, Matrix(kI * x), Matrix(kI * y));
      min_m = std::min(min_m, sm);
      max_im = std::max(max_im, si);
      duality = std::max(duality, std::abs(sm + si));
      ++used;
    } catch (const std::invalid_argument&) {
    }
  }
  const double margin = c.fd.tol.abs;
  bool ok = used == planes && min_m >= -margin && max_im <= margin && duality < c.fd.tol.rank_rel;
  return make_check("curvature.sectional_signs", ok, duality)
      .detail("planes", static_cast<long long>(used))
      .detail("min_sec_m", min_m)
      .detail("max_sec_sqrt_m", max_im)
      .detail("max_duality_gap", duality);
}

inline CheckResult check_tsw(const VerifyContext& c, long samples, uint64_t seed) {
  auto w = tsw_violation_scan(c.cd, c.fd, samples, seed);
  if (!w) return make_check("curvature.tsw_violation", false, 0).detail("samples", static_cast<long long>(samples));
  return make_check("curvature.tsw_violation", true, 0)
      .detail("lhs", w->lhs)
      .detail("lhs_squared", w->lhs * w->lhs)
      .detail("rhs", w->rhs)
      .detail("sec_m", w->sec_m)
      .detail("sec_sqrt_m", w->sec_sqrt_m)
      .detail("from_sweep", w->from_sweep)
      .detail("sample_index", static_cast<long long>(w->sample_index))
      .witness("x", w->x)
      .witness("y", w->y)
      .witness("z", w->z)
      .witness("w", w->w);
}

inline std::vector<double> geodesic_times(int count, double span = 1.5) { return linspace(-span, span, count); }

inline CheckResult check_geodesic(const VerifyContext& c, bool horizontal, int curves, int times, uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  bool kinds = true;
  for (int k = 0; k < curves; ++k) {
    Matrix g0 = random_compact_element(c.cd, rng, 0.8);
    const RealSubspace& dir = horizontal ? c.cd.m : c.fd.decomposition.n_plus;
    auto r = project_geodesic(c.cd, c.fd, g0, random_direction(dir, rng, 1.0), geodesic_times(times));
    kinds = kinds && r.kind == (horizontal ? GeodesicKind::Horizontal : GeodesicKind::Vertical);
    worst = std::max(worst, horizontal ? r.max_projection_residual : std::max(r.max_fiber_residual, r.max_projection_residual));
  }
  return make_check(horizontal ? "curvature.geodesic_horizontal" : "curvature.geodesic_vertical", kinds && worst < 1e-8, worst)
      .detail("curves", static_cast<long long>(curves))
      .detail("times", static_cast<long long>(times));
}

// ---------------------------------------------------------------------------
// toy models (datum independent)

inline CheckResult check_sl2_oracle(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> in(-kPi / 4 + 1e-3, kPi / 4 - 1e-3), out(kPi / 4 + 1e-3, 3 * kPi / 4 - 1e-3);
  double worst = 0;
  long long disagreements = 0;
  for (int k = 0; k < count; ++k) {
    double t = in(rng);
    auto closed = sl2_fiber_meets_hyperbola(t);
    auto generic = sl2_fiber_meets_hyperbola_generic(t);
    if (!closed || !generic) {
      ++disagreements;
      continue;
    }
    worst = std::max({worst, std::abs(closed->r - generic->r) / std::max(1.0, std::abs(closed->r)),
                      std::abs(closed->r - 2 * std::tan(2 * t)) / std::max(1.0, std::abs(closed->r))});
  }
  for (int k = 0; k < count; ++k) {
    double t = out(rng);
    if (sl2_fiber_meets_hyperbola(t).has_value() != sl2_fiber_meets_hyperbola_generic(t).has_value()) ++disagreements;
  }
  for (double t : {kPi / 4, -kPi / 4})
    if (sl2_fiber_meets_hyperbola(t) || sl2_fiber_meets_hyperbola_generic(t)) ++disagreements;
  return make_check("toy.sl2_hyperbola", disagreements == 0 && worst < 1e-8, worst)
      .detail("parameters", static_cast<long long>(2 * count + 2))
      .detail("disagreements", disagreements);
}

inline CheckResult check_su2_oracle(int count, uint64_t seed) {
  VerifyContext c(FlagParams::a(1, 1));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<std::pair<cplx, cplx>> cases{{1.0, 0.0}, {std::sqrt(0.5), std::sqrt(0.5)}, {std::polar(std::sqrt(0.5), 2.0), std::polar(std::sqrt(0.5), -1.0)}};
  while (static_cast<int>(cases.size()) < count) {
    RealVector v(4);
    for (int i = 0; i < 4; ++i) v(i) = d(rng);
    v.normalize();
    cases.emplace_back(cplx(v(0), v(1)), cplx(v(2), v(3)));
  }
  long long disagreements = 0, nonempty = 0;
  double worst = 0;
  for (auto [a, b] : cases) {
    Su2Comparison s = su2_compare(c.cd, c.fd, a, b);
    if (!s.agree()) ++disagreements;
    if (s.closed_nonempty) ++nonempty;
    worst = std::max(worst, s.point_difference);
  }
  auto identity = su2_fiber_meets_S(1.0, 0.0);
  bool anchors = identity && (*identity - c.fd.h_theta).norm() < 1e-12 && !su2_fiber_meets_S(std::sqrt(0.5), std::sqrt(0.5));
  return make_check("toy.su2_fiber", anchors && disagreements == 0 && worst < 1e-8, worst)
      .detail("parameters", static_cast<long long>(cases.size()))
      .detail("nonempty", nonempty)
      .detail("disagreements", disagreements);
}

inline CheckResult check_su2_hemisphere(int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> s(0.5, 1.0), th(0, 2 * kPi);
  double worst = 0;
  bool upper = true;
  for (int k = 0; k < count; ++k) {
    double a2 = 1.0 - s(rng) + 0.5;  // in (1/2, 1]
    cplx a = std::polar(std::sqrt(a2), th(rng)), b = std::polar(std::sqrt(1 - a2), th(rng));
    ToyPoint3D p = su2_flag_point(a, b);
    Matrix u = su2::element(a, b);
    ToyPoint3D q = su2::coordinates(unitary_action(u, Matrix(kI * kPi / 2.0 * sl2::basis_b())));
    worst = std::max({worst, std::abs(p.norm() - kPi / 2), distance(p, q)});
    upper = upper && p.y > 0;
  }
  return make_check("toy.su2_hemisphere", upper && worst < 1e-12, worst).detail("samples", static_cast<long long>(count));
}

// ---------------------------------------------------------------------------
// suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "symmetric", "symplectic", "curvature", "toy"};
  return names;
}

inline std::vector<std::string> expand_suite(const std::string& s) {
  if (s == "all") return suite_names();
  const auto& n = suite_names();
  if (std::find(n.begin(), n.end(), s) == n.end()) throw std::invalid_argument("unknown suite: " + s);
  return {s};
}

inline std::vector<CheckResult> run_datum_suite(const VerifyContext& c, const std::string& suite, const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const int n = cfg.samples;
  const uint64_t s = cfg.seed;
  if (suite == "algebra") {
    out = {check_weyl_normalization(c), check_killing_scalar(c, n, s, cfg.relative_tol), check_root_eigenvectors(c),
           check_structure_constants(c), check_compact_form(c)};
  } else if (suite == "symmetric") {
    out = {check_symmetric_axioms(c), check_centralizer(c), check_fiber_origin(c), check_transversality(c, n, s + 1),
           check_s_membership(c, n, s + 2), check_fiber_verdicts(c, n, s + 3), check_pairing(c)};
  } else if (suite == "symplectic") {
    const int pts = std::max(1, n / 20);
    out = {check_lagrangian_flag(c, pts, s + 4), check_lagrangian_s(c, pts, s + 5), check_kks_witness(c), check_center(c)};
  } else if (suite == "curvature") {
    const int curves = std::max(1, n / 40);
    out = {check_sectional_signs(c, n, s + 6), check_tsw(c, cfg.tsw_samples, s + 7),
           check_geodesic(c, true, curves, cfg.geodesic_times, s + 8), check_geodesic(c, false, curves, cfg.geodesic_times, s + 9)};
  } else if (suite != "toy") {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  for (auto& r : out) r.check_id = c.label() + "/" + r.check_id;
  return out;
}

inline std::vector<CheckResult> run_toy_suite(const VerifyConfig& cfg) {
  return {check_sl2_oracle(std::max(1, cfg.samples / 2), cfg.seed + 10), check_su2_oracle(std::max(4, cfg.samples / 2), cfg.seed + 11),
          check_su2_hemisphere(cfg.samples, cfg.seed + 12)};
}

}  // namespace flagorbit
