#pragma once

#include "flagorbit/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>

namespace flagorbit {

inline constexpr const char* kSchema = "flag-orbit/1";
inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

/// [[ [re, im], ... ], ...] row by row.
inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix: expected a nonempty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, static_cast<Eigen::Index>(j.front().size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j.at(size_t(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols()) throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      const json& e = row.at(size_t(k));
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("matrix: entries must be [re, im]");
      m(i, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

inline json detail_to_json(const DetailValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, cplx>) return json::array({x.real(), x.imag()});
        else return json(x);
      },
      v);
}

inline json params_to_json(const FlagParams& fp) {
  json j{{"family", to_string(fp.family)}, {"label", fp.label()}};
  if (fp.family == Family::A) {
    j["p"] = fp.p;
    j["q"] = fp.q;
  } else {
    j["l"] = fp.l;
  }
  return j;
}

inline FlagParams params_from_json(const json& j) {
  Family f = parse_family(j.at("family").get<std::string>());
  FlagParams fp = f == Family::A ? FlagParams::a(j.at("p").get<int>(), j.at("q").get<int>())
                  : f == Family::C ? FlagParams::c(j.at("l").get<int>())
                                   : FlagParams::d(j.at("l").get<int>());
  validate(fp);
  return fp;
}

inline json datum_to_json(const FlagDatum& fd) {
  json j{{"schema", kSchema}, {"kind", "flag-datum"}, {"params", params_to_json(fd.params)}, {"matrix_dim", fd.n()}};
  json theta = json::array();
  for (const auto& a : fd.theta) theta.push_back(a.label());
  json simple = json::array();
  for (const auto& a : fd.roots().simple_roots) simple.push_back(a.label());
  json positive = json::array();
  for (const auto& a : fd.roots().positive_roots) positive.push_back(a.label());
  j["simple_roots"] = simple;
  j["theta"] = theta;
  j["excluded_root"] = fd.excluded_root.label();
  j["positive_roots"] = positive;
  j["h_theta"] = matrix_to_json(fd.h_theta);
  j["g_theta"] = matrix_to_json(fd.g_theta);
  j["real_dimensions"] = {{"g", fd.g_real.dim()},
                          {"z_theta", fd.decomposition.z_theta.dim()},
                          {"n_plus", fd.decomposition.n_plus.dim()},
                          {"n_minus", fd.decomposition.n_minus.dim()}};
  json roots = json::array();
  for (size_t k = 0; k < fd.weyl.root_list.size(); ++k)
    roots.push_back({{"root", fd.weyl.root_list[k].label()}, {"vector", matrix_to_json(fd.weyl.root_vectors[k])}});
  j["root_vectors"] = roots;
  return j;
}

/// Rebuilds a datum from its JSON and checks the stored H_Theta against it.
inline FlagDatum datum_from_json(const json& j, const Tolerance& tol = {}) {
  if (j.value("schema", "") != kSchema || j.value("kind", "") != "flag-datum") throw std::invalid_argument("not a flag-datum document");
  FlagDatum fd = make_flag_datum(params_from_json(j.at("params")), tol);
  Matrix h = matrix_from_json(j.at("h_theta"));
  if (h.rows() != fd.n() || h.cols() != fd.n() || (h - fd.h_theta).norm() > 1e-12 * std::max(1.0, h.norm()))
    throw std::invalid_argument("stored h_theta does not match the parameters");
  return fd;
}

struct VerificationReport {
  std::vector<std::string> suites;
  std::vector<FlagParams> datums;
  VerifyConfig config;
  std::vector<CheckResult> checks;
  std::vector<double> seconds;  // per check, aligned with checks
  double total_seconds = 0;

  int count(CheckStatus s) const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.status == s; }));
  }
  bool any_failed() const { return count(CheckStatus::Fail) > 0; }
};

inline VerificationReport run_verification(const std::vector<FlagParams>& datums, const std::string& suite, const VerifyConfig& cfg) {
  using clock = std::chrono::steady_clock;
  VerificationReport rep;
  rep.suites = expand_suite(suite);
  rep.datums = datums;
  rep.config = cfg;
  const auto start = clock::now();
  auto record = [&](std::vector<CheckResult> batch, clock::time_point t0) {
    const double dt = std::chrono::duration<double>(clock::now() - t0).count() / std::max<size_t>(1, batch.size());
    for (auto& c : batch) {
      rep.checks.push_back(std::move(c));
      rep.seconds.push_back(dt);
    }
  };
  std::vector<VerifyContext> contexts;
  for (const auto& fp : datums) contexts.emplace_back(fp, cfg.tol);
  for (const auto& s : rep.suites) {
    if (s == "toy") {
      auto t0 = clock::now();
      record(run_toy_suite(cfg), t0);
      continue;
    }
    for (const auto& c : contexts) {
      auto t0 = clock::now();
      record(run_datum_suite(c, s, cfg), t0);
    }
  }
  rep.total_seconds = std::chrono::duration<double>(clock::now() - start).count();
  return rep;
}

inline json check_to_json(const CheckResult& c) {
  json d = json::object();
  for (const auto& [k, v] : c.details) d[k] = detail_to_json(v);
  json j{{"check_id", c.check_id}, {"status", to_string(c.status)}, {"max_residual", c.max_residual}, {"details", d}};
  if (!c.witnesses.empty()) {
    json w = json::object();
    for (const auto& [k, m] : c.witnesses) w[k] = matrix_to_json(m);
    j["witnesses"] = w;
  }
  return j;
}

/// `stable` drops timing so equal inputs give byte-identical output.
inline json report_to_json(const VerificationReport& r, bool stable) {
  json datums = json::array();
  for (const auto& fp : r.datums) datums.push_back(params_to_json(fp));
  const Tolerance& t = r.config.tol;
  json j{{"schema", kSchema},
         {"version", kVersion},
         {"suites", r.suites},
         {"datums", datums},
         {"config",
          {{"tolerance",
            {{"abs", t.abs}, {"rank_rel", t.rank_rel}, {"eigen_zero", t.eigen_zero}, {"nonzero", t.nonzero}, {"certified", t.certified}}},
           {"samples", r.config.samples},
           {"seed", r.config.seed},
           {"tsw_samples", r.config.tsw_samples}}}};
  json checks = json::array();
  for (size_t k = 0; k < r.checks.size(); ++k) {
    json c = check_to_json(r.checks[k]);
    if (!stable) c["seconds"] = r.seconds[k];
    checks.push_back(std::move(c));
  }
  j["checks"] = checks;
  j["summary"] = {{"pass", r.count(CheckStatus::Pass)},
                  {"fail", r.count(CheckStatus::Fail)},
                  {"reported-mismatch", r.count(CheckStatus::ReportedMismatch)}};
  if (!stable) j["timing"] = {{"total_seconds", r.total_seconds}};
  return j;
}

}  // namespace flagorbit
