#include "flagorbit/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace flagorbit;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatumArgs {
  std::string family;
  int p = 0, q = 0, l = 0;
};

void add_datum_options(CLI::App* cmd, DatumArgs& d) {
  cmd->add_option("--family", d.family, "A, C or D");
  cmd->add_option("--p", d.p, "A: first block size");
  cmd->add_option("--q", d.q, "A: second block size");
  cmd->add_option("--l", d.l, "C, D: rank");
}

FlagParams params_from_args(const DatumArgs& d) {
  try {
    Family f = parse_family(d.family);
    FlagParams fp;
    if (f == Family::A) {
      if (d.p <= 0 || d.q <= 0) throw std::invalid_argument("family A needs --p and --q");
      fp = FlagParams::a(d.p, d.q);
    } else {
      if (d.l <= 0) throw std::invalid_argument("families C and D need --l");
      fp = f == Family::C ? FlagParams::c(d.l) : FlagParams::d(d.l);
    }
    validate(fp);
    return fp;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << text;
  if (!os.flush()) throw IoError("write failed: " + path);
}

Tolerance base_tolerance(const CLI::Option* tol_opt, double tol) {
  Tolerance t = Tolerance::from_env();
  if (tol_opt && tol_opt->count() > 0) {
    if (!(tol > 0) || !std::isfinite(tol)) throw UsageError("--tol must be positive");
    t.abs = tol;
  }
  return t;
}

int run_construct(const DatumArgs& d, const std::string& out) {
  FlagParams fp = params_from_args(d);
  FlagDatum fd = make_flag_datum(fp, Tolerance::from_env());
  write_text(out, datum_to_json(fd).dump(2) + "\n");
  return kOk;
}

struct VerifyArgs {
  DatumArgs datum;
  std::string datum_path, suite = "all", out;
  double tol = 1e-9;
  int samples = 200;
  uint64_t seed = 1;
  bool stable = false;
};

int run_verify(const VerifyArgs& a, const CLI::Option* tol_opt) {
  VerifyConfig cfg;
  cfg.tol = base_tolerance(tol_opt, a.tol);
  if (a.samples < 1) throw UsageError("--samples must be positive");
  cfg.samples = a.samples;
  cfg.seed = a.seed;
  std::vector<FlagParams> datums;
  if (!a.datum_path.empty()) {
    std::ifstream is(a.datum_path);
    if (!is) throw UsageError("cannot read datum " + a.datum_path);
    try {
      datums.push_back(datum_from_json(json::parse(is), cfg.tol).params);
    } catch (const std::exception& e) {
      throw UsageError("unreadable datum " + a.datum_path + ": " + e.what());
    }
  } else if (!a.datum.family.empty()) {
    datums.push_back(params_from_args(a.datum));
  } else {
    datums = {FlagParams::a(1, 2), FlagParams::c(2), FlagParams::d(3)};
  }
  std::vector<std::string> suites;
  try {
    suites = expand_suite(a.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  VerificationReport rep = run_verification(datums, a.suite, cfg);
  std::string text = report_to_json(rep, a.stable).dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
    for (const auto& c : rep.checks) std::cout << to_string(c.status) << "  " << c.check_id << "\n";
  }
  return rep.any_failed() ? kFail : kOk;
}

int run_toy(const std::string& model, const std::string& svg, const std::string& csv, int resolution) {
  ToyModel m;
  FigureData f;
  try {
    m = parse_toy_model(model);
    f = emit_toy_figures(m, resolution);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!svg.empty()) {
    std::ostringstream os;
    write_svg(os, f);
    write_text(svg, os.str());
  }
  if (!csv.empty() || svg.empty()) {
    std::ostringstream os;
    write_csv(os, f);
    write_text(csv, os.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adjoint orbits, flag manifolds and their symmetric-space fibers."};
  app.require_subcommand(1);

  DatumArgs construct_args;
  std::string construct_out;
  auto* construct = app.add_subcommand("construct", "Build and serialize a flag datum");
  add_datum_options(construct, construct_args);
  construct->add_option("--out", construct_out, "Output path (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites and emit a JSON report");
  add_datum_options(verify, va.datum);
  verify->add_option("--datum", va.datum_path, "Datum JSON written by construct");
  verify->add_option("--suite", va.suite, "all|algebra|symmetric|symplectic|curvature|toy");
  auto* tol_opt = verify->add_option("--tol", va.tol, "Absolute tolerance (default 1e-9)");
  verify->add_option("--samples", va.samples, "Samples per sampled check");
  verify->add_option("--seed", va.seed, "Random seed");
  verify->add_option("--out", va.out, "Report path (default stdout)");
  verify->add_flag("--stable", va.stable, "Omit timing fields");

  std::string model, svg, csv;
  int resolution = 64;
  auto* toy = app.add_subcommand("toy", "Write figure data for the low-dimensional examples");
  toy->add_option("--model", model, "sl2|su2")->required();
  toy->add_option("--svg", svg, "SVG output path");
  toy->add_option("--csv", csv, "CSV output path (default stdout when no SVG)");
  toy->add_option("--resolution", resolution, "Samples per curve, at least 16");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*construct) return run_construct(construct_args, construct_out);
    if (*verify) return run_verify(va, tol_opt);
    if (*toy) return run_toy(model, svg, csv, resolution);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
