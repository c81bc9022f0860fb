#include "hsm/cli.hpp"

#include "hsm/bloore.hpp"
#include "hsm/moments.hpp"
#include "hsm/reconstruct.hpp"
#include "hsm/report.hpp"
#include "hsm/sampler.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hsm {

namespace {

struct RunConfig {
  std::string format = "json";
  std::string out_path;

  std::string exact_kind;
  int max_order = 3;
  int order = 1;
  bool derive = false;

  std::string family = "real";
  int dims = 4;
  std::string target = "detPT";
  int orders = 2;
  std::string samples = "1e6";
  std::uint64_t seed = 1;
  int threads = 1;
  bool separability = false;

  std::string source = "exact";
  std::string moment_file;
  std::string method = "poly";
  int degree = 9;
  int alpha = 24;
  int grid = 201;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t parse_count(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("--n: not a number: '" + text + "'");
  }
  if (used != text.size() || !(value >= 0) || value != std::floor(value) || value > 1e15) {
    throw UsageError("--n: expected a nonnegative integer, got '" + text + "'");
  }
  return static_cast<std::int64_t>(value);
}

nlohmann::json document(std::string_view kind) { return {{"schema", kSchemaVersion}, {"kind", kind}}; }

struct Emitted {
  nlohmann::json json;
  std::string csv;
};

Emitted exact_rows(std::string_view kind, const std::vector<std::pair<std::string, Rat>>& rows,
                   std::string_view key) {
  Emitted e{document(kind), {}};
  nlohmann::json arr = nlohmann::json::array();
  std::ostringstream csv;
  csv << key << ",exact,value\n";
  for (const auto& [label, value] : rows) {
    nlohmann::json row = rat_to_json(value);
    row[std::string(key)] = std::stoi(label);
    arr.push_back(std::move(row));
    csv << label << ',' << to_string(value) << ',' << format_double(to_double(value)) << '\n';
  }
  e.json["rows"] = std::move(arr);
  e.csv = csv.str();
  return e;
}

Emitted cmd_exact(const RunConfig& cfg) {
  if (cfg.exact_kind == "pt-moments") {
    if (cfg.max_order < 1 || cfg.max_order > kMaxTabulatedOrder) {
      throw UnsupportedOrder("pt-moments: supported orders are 1..9, got --max " + std::to_string(cfg.max_order));
    }
    std::vector<std::pair<std::string, Rat>> rows;
    for (int m = 1; m <= cfg.max_order; ++m) rows.emplace_back(std::to_string(m), assemble_moment(m));
    return exact_rows("pt-moments", rows, "order");
  }
  if (cfg.exact_kind == "det-moments") {
    if (cfg.max_order < 1 || cfg.max_order > 200) {
      throw UnsupportedOrder("det-moments: supported orders are 1..200, got --max " + std::to_string(cfg.max_order));
    }
    const Family family = parse_family(cfg.family);
    std::vector<std::pair<std::string, Rat>> rows;
    for (int m = 1; m <= cfg.max_order; ++m) rows.emplace_back(std::to_string(m), hs_det_moment(family, m));
    Emitted e = exact_rows("det-moments", rows, "order");
    e.json["family"] = cfg.family;
    return e;
  }
  if (cfg.exact_kind == "coefficients") {
    if (cfg.order < 1) throw UnsupportedOrder("coefficients: --m must be at least 1");
    std::vector<std::pair<std::string, Rat>> rows;
    for (int j = 0; j <= std::min(kMaxClosedFormCoefficient, 2 * cfg.order); ++j) {
      rows.emplace_back(std::to_string(j), coefficient_C(j, cfg.order));
    }
    Emitted e = exact_rows("coefficients", rows, "j");
    e.json["m"] = cfg.order;
    return e;
  }
  if (cfg.exact_kind == "intermediate") {
    if (cfg.derive && (cfg.order < 0 || cfg.order > 3)) {
      throw UnsupportedOrder("intermediate --derive: supported orders are 0..3, got --m " + std::to_string(cfg.order));
    }
    if (!cfg.derive && (cfg.order < 0 || cfg.order > kMaxTabulatedOrder)) {
      throw UnsupportedOrder("intermediate: supported orders are 0..9, got --m " + std::to_string(cfg.order));
    }
    const EvenPoly poly = cfg.derive ? derive_intermediate_exact(cfg.order) : intermediate_table(cfg.order);
    std::vector<std::pair<std::string, Rat>> rows;
    for (int j = 0; j <= 2 * cfg.order; ++j) rows.emplace_back(std::to_string(j), poly.coefficient(j));
    Emitted e = exact_rows("intermediate", rows, "j");
    e.json["m"] = cfg.order;
    e.json["derived"] = cfg.derive;
    return e;
  }
  if (cfg.exact_kind == "summary") {
    const MomentVector mv = pt_moment_vector(4);
    const DistributionSummary s = summarize(mv);
    const CantelliBound bound = cantelli_upper_bound(s.mean, s.variance, Rat(0));
    const RealInterval mode = mode_interval(to_double(s.mean), to_double(s.variance));
    Emitted e{document("summary"), {}};
    e.json["mean"] = rat_to_json(s.mean);
    e.json["variance"] = rat_to_json(s.variance);
    e.json["skewness"] = s.skewness;
    e.json["kurtosis"] = s.kurtosis;
    e.json["cantelli_separability_bound"] = rat_to_json(bound.bound);
    e.json["mode_interval"] = {mode.lo, mode.hi};
    std::ostringstream csv;
    csv << "quantity,exact,value\n"
        << "mean," << to_string(s.mean) << ',' << format_double(to_double(s.mean)) << '\n'
        << "variance," << to_string(s.variance) << ',' << format_double(to_double(s.variance)) << '\n'
        << "skewness,," << format_double(s.skewness) << '\n'
        << "kurtosis,," << format_double(s.kurtosis) << '\n'
        << "cantelli_separability_bound," << to_string(bound.bound) << ',' << format_double(to_double(bound.bound))
        << '\n'
        << "mode_lo,," << format_double(mode.lo) << '\n'
        << "mode_hi,," << format_double(mode.hi) << '\n';
    e.csv = csv.str();
    return e;
  }
  throw UsageError("exact: unknown kind '" + cfg.exact_kind +
                   "' (expected pt-moments, det-moments, coefficients, intermediate or summary)");
}

Emitted cmd_mc(const RunConfig& cfg) {
  EstimationConfig ec;
  ec.family = parse_family(cfg.family);
  ec.target = cfg.separability ? Target::det_pt : parse_target(cfg.target);
  ec.dim = cfg.dims;
  ec.max_order = cfg.orders;
  ec.samples = parse_count(cfg.samples);
  ec.seed = cfg.seed;
  ec.threads = cfg.threads;
  if (ec.samples < 10'000) throw UsageError("--n must be at least 1e4");
  if (cfg.separability && ec.dim != 4) throw UsageError("--sep needs --dims 4");
  const EstimationResult r = run_estimation(ec);
  return {estimation_to_json(r), estimation_to_csv(r)};
}

MomentVector source_moments(const RunConfig& cfg, int needed) {
  if (cfg.source == "file") {
    if (cfg.moment_file.empty()) throw UsageError("--source file needs --file PATH");
    std::ifstream in(cfg.moment_file);
    if (!in) throw std::runtime_error("cannot open moment file '" + cfg.moment_file + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      return parse_moment_file(buffer.str());
    } catch (const ParseError& e) {
      throw ParseError(e.line(), cfg.moment_file + ": " + e.what());
    }
  }
  if (cfg.source != "exact") throw UsageError("--source must be exact or file");
  const Target target = parse_target(cfg.target);
  if (target == Target::det_pt) {
    if (needed > kMaxTabulatedOrder) {
      throw UnsupportedOrder("exact detPT moments exist for orders 1..9; requested " + std::to_string(needed));
    }
    return pt_moment_vector(needed);
  }
  return det_moment_vector(parse_family(cfg.family), needed);
}

Emitted cmd_reconstruct(const RunConfig& cfg) {
  if (cfg.grid < 2) throw UsageError("--grid must be at least 2");
  const bool poly = cfg.method == "poly";
  if (!poly && cfg.method != "stable") throw UsageError("--method must be poly or stable");
  const int needed = poly ? cfg.degree : cfg.alpha;
  if (needed < 0) throw UsageError("degree/alpha must be nonnegative");

  const MomentVector mv = source_moments(cfg, needed);
  if (mv.size() < needed) {
    throw UnsupportedOrder("reconstruct: need " + std::to_string(needed) + " moments, source has " +
                           std::to_string(mv.size()));
  }
  const AffineMappedMoments mapped = map_moments(mv);

  Emitted e{document("reconstruct"), {}};
  e.json["method"] = cfg.method;
  e.json["support"] = {to_string(mv.support.lo), to_string(mv.support.hi)};
  nlohmann::json summary = nlohmann::json::object();
  std::ostringstream header;
  std::vector<CurvePoint> curve;

  if (poly) {
    const PolyDensity pd = fit_poly_density(mapped, cfg.degree);
    e.json["degree"] = cfg.degree;
    curve = density_curve(pd, cfg.grid);
    const NegativeMass neg = negative_mass(pd);
    summary["negative_mass"] = {{"below", neg.below}, {"above", neg.above}};
    header << "# negative_mass_below=" << format_double(neg.below) << "\n# negative_mass_above="
           << format_double(neg.above) << '\n';
    const Rat zero(0);
    if (mv.support.lo < zero && zero < mv.support.hi) {
      const Rat mass = mass_on_interval(pd, {zero, mv.support.hi});
      summary["mass_nonnegative"] = rat_to_json(mass);
      header << "# mass_nonnegative=" << format_double(to_double(mass)) << '\n';
    }
    const double argmax = density_argmax(pd);
    summary["argmax"] = argmax;
    header << "# argmax=" << format_double(argmax) << '\n';
  } else {
    e.json["alpha"] = cfg.alpha;
    curve = stable_curve(mapped, cfg.alpha, cfg.grid);
  }
  if (mv.size() >= 2) {
    const Rat mean = mv.moment(1);
    const Rat variance = mv.moment(2) - mean * mean;
    if (variance > 0) {
      const RealInterval mode = mode_interval(to_double(mean), to_double(variance));
      summary["mode_interval"] = {mode.lo, mode.hi};
      header << "# mode_interval=" << format_double(mode.lo) << ',' << format_double(mode.hi) << '\n';
    }
  }
  e.json["summary"] = std::move(summary);
  e.json["curve"] = curve_to_json(curve);
  e.csv = header.str() + curve_to_csv(curve);
  return e;
}

void emit(const RunConfig& cfg, const Emitted& e, std::ostream& out) {
  const std::string text = cfg.format == "csv" ? e.csv : e.json.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert-Schmidt determinant moments of two-qubit states", "hsmoments"};
  app.require_subcommand(1);
  RunConfig cfg;

  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");

  auto* exact = app.add_subcommand("exact", "Exact rational tables");
  exact->add_option("kind", cfg.exact_kind, "pt-moments | det-moments | coefficients | intermediate | summary")
      ->required();
  exact->add_option("--max", cfg.max_order, "Highest moment order");
  exact->add_option("--m", cfg.order, "Moment order of the intermediate polynomial");
  exact->add_flag("--derive", cfg.derive, "Derive I_m by symbolic integration instead of the table");
  exact->add_option("--family", cfg.family, "real | complex | quaternion");

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimation");
  mc->add_option("--family", cfg.family, "real | complex | quaternion");
  mc->add_option("--dims", cfg.dims, "Matrix dimension")->check(CLI::IsMember({4, 6}));
  mc->add_option("--target", cfg.target, "det | detPT");
  mc->add_option("--orders", cfg.orders, "Highest moment order")->check(CLI::Range(1, 30));
  mc->add_option("--n", cfg.samples, "Sample count (e.g. 1e6)");
  mc->add_option("--seed", cfg.seed, "Base seed");
  mc->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1, 1024));
  mc->add_flag("--sep", cfg.separability, "Estimate the separability probability");

  auto* rec = app.add_subcommand("reconstruct", "Density reconstruction from moments");
  rec->add_option("--source", cfg.source, "exact | file");
  rec->add_option("--file", cfg.moment_file, "Moment file for --source file");
  rec->add_option("--target", cfg.target, "det | detPT (exact source)");
  rec->add_option("--family", cfg.family, "real | complex | quaternion (exact det source)");
  rec->add_option("--method", cfg.method, "poly | stable");
  rec->add_option("--degree", cfg.degree, "Polynomial degree");
  rec->add_option("--alpha", cfg.alpha, "Stable approximation order");
  rec->add_option("--grid", cfg.grid, "Curve points");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    Emitted e;
    if (app.got_subcommand(exact)) {
      e = cmd_exact(cfg);
    } else if (app.got_subcommand(mc)) {
      e = cmd_mc(cfg);
    } else {
      e = cmd_reconstruct(cfg);
    }
    emit(cfg, e, out);
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hsm
