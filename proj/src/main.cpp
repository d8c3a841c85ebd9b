#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "casimir/analysis.hpp"
#include "casimir/energy.hpp"
#include "casimir/oracle.hpp"
#include "casimir/precision.hpp"
#include "output.hpp"

namespace {

using casimir::BoundaryCondition;
using casimir::PrecisionContext;
using casimir::Real;
using casimir::cli::OutputRecord;

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CommonOpts {
  int digits = 50;
  std::string format = "csv";
  std::string out_path;
  std::string cache_path;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_digits = true) {
  if (with_digits)
    cmd->add_option("--digits", opts.digits, "significant decimal digits")
        ->capture_default_str();
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "write output to this file instead of stdout");
  cmd->add_option("--cache", opts.cache_path,
                  "JSON-lines result cache (default: $CASIMIR_CACHE if set)");
  cmd->add_flag("--no-timestamp", opts.no_timestamp,
                "omit the timestamp field from JSON output");
}

std::string cache_path_or_env(const CommonOpts& opts) {
  if (!opts.cache_path.empty()) return opts.cache_path;
  const char* env = std::getenv("CASIMIR_CACHE");
  return env ? std::string(env) : std::string();
}

BoundaryCondition parse_bc(const std::string& name) {
  if (name == "dirichlet") return BoundaryCondition::dirichlet;
  if (name == "neumann") return BoundaryCondition::neumann;
  throw UsageError("unknown boundary condition: " + name);
}

std::string iso_timestamp_utc() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

void check_digits(int digits) {
  if (digits < PrecisionContext::min_target_digits || digits > 10000)
    throw UsageError("--digits must be in [10, 10000]");
}

// Runs the cache-or-compute dance and emits the record. `fill` is only
// invoked on a cache miss.
template <typename Fill>
int emit(OutputRecord record, const CommonOpts& opts, Fill&& fill) {
  const std::string cache = cache_path_or_env(opts);
  bool from_cache = false;
  if (!cache.empty()) {
    if (auto hit = casimir::cli::cache_lookup(cache, casimir::cli::cache_key(record))) {
      record = *hit;
      from_cache = true;
    }
  }
  if (!from_cache) {
    fill(record);
    if (!cache.empty())
      casimir::cli::cache_append(cache, casimir::cli::cache_key(record), record);
  }

  std::string payload;
  if (opts.format == "csv") {
    payload = casimir::cli::to_csv(record);
  } else {
    std::optional<std::string> ts;
    if (!opts.no_timestamp) ts = iso_timestamp_utc();
    payload = casimir::cli::to_json(record, ts).dump(2) + "\n";
  }
  if (opts.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.out_path);
    out << payload;
  }
  return 0;
}

std::string sign_cell(int sign) { return sign >= 0 ? "+" : "-"; }

int run_compute(const std::string& bc_name, int dim, const CommonOpts& opts) {
  check_digits(opts.digits);
  if (dim < 1) throw UsageError("--dim must be >= 1");
  BoundaryCondition bc = parse_bc(bc_name);

  OutputRecord record;
  record.command = "compute";
  record.parameters = {{"bc", bc_name},
                       {"dim", std::to_string(dim)},
                       {"digits", std::to_string(opts.digits)},
                       {"energy_significant_digits", std::to_string(opts.digits)},
                       {"diagnostic_significant_digits", "6"}};
  return emit(std::move(record), opts, [&](OutputRecord& r) {
    PrecisionContext ctx(opts.digits, 0);
    casimir::EnergyResult e = bc == BoundaryCondition::dirichlet
                                  ? casimir::dirichlet_energy(dim, ctx)
                                  : casimir::neumann_energy(dim, ctx);
    r.columns = {"D", "bc", "energy_beta", "sign", "max_abs_term",
                 "cancellation_digits_lost"};
    r.rows = {{std::to_string(dim), bc_name, to_sig_digits(e.value, opts.digits),
               sign_cell(e.sign), to_sig_digits(e.max_abs_term, 6),
               format_double(e.cancellation_digits_lost, "%.2f")}};
    r.summary["working_digits"] = e.context.working_digits();
  });
}

int run_scan(const std::string& bc_name, int from, int to, const CommonOpts& opts) {
  check_digits(opts.digits);
  if (from < 1 || from > to) throw UsageError("scan requires 1 <= --from <= --to");
  BoundaryCondition bc = parse_bc(bc_name);

  OutputRecord record;
  record.command = "scan";
  record.parameters = {{"bc", bc_name},
                       {"from", std::to_string(from)},
                       {"to", std::to_string(to)},
                       {"digits", std::to_string(opts.digits)},
                       {"energy_significant_digits", std::to_string(opts.digits)},
                       {"scaled_significant_digits", std::to_string(opts.digits)},
                       {"scaled_log_base", "10"}};
  return emit(std::move(record), opts, [&](OutputRecord& r) {
    PrecisionContext ctx(opts.digits, 0);
    casimir::ScanReport report = casimir::scan(bc, from, to, ctx);
    r.columns = {"D", "energy_beta", "sign", "scaled", "cancellation_digits_lost"};
    for (const auto& e : report.results) {
      std::string scaled;
      if (e.value.sign() != 0 &&
          e.value.abs() < Real::from_long(1, e.value.bits()))
        scaled = to_sig_digits(casimir::scaled_value(e), opts.digits);
      r.rows.push_back({std::to_string(e.dimension), to_sig_digits(e.value, opts.digits),
                        sign_cell(e.sign), scaled,
                        format_double(e.cancellation_digits_lost, "%.2f")});
    }
    r.summary["working_digits"] = report.working_digits;
    r.summary["critical_dimension"] =
        report.critical_dimension ? nlohmann::json(*report.critical_dimension)
                                  : nlohmann::json(nullptr);
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.sign_pattern_violations)
      violations.push_back({{"dimension", v.dimension},
                            {"expected", sign_cell(v.expected)},
                            {"actual", sign_cell(v.actual)}});
    r.summary["sign_pattern_violations"] = violations;
  });
}

int run_oracle_extract(const std::string& bc_name, int dim, double grid_start,
                       double grid_ratio, int grid_points, double threshold,
                       const CommonOpts& opts) {
  check_digits(opts.digits);
  if (dim < 1 || dim > 3)
    throw UsageError("oracle extraction is limited to D <= 3 (brute-force cost)");
  BoundaryCondition bc = parse_bc(bc_name);

  OutputRecord record;
  record.command = "oracle";
  auto fmt_param = [](double v) { return format_double(v, "%.17g"); };
  record.parameters = {{"bc", bc_name},
                       {"dim", std::to_string(dim)},
                       {"digits", std::to_string(opts.digits)},
                       {"grid_start", fmt_param(grid_start)},
                       {"grid_ratio", fmt_param(grid_ratio)},
                       {"grid_points", std::to_string(grid_points)},
                       {"threshold", fmt_param(threshold)},
                       {"value_significant_digits", "12"},
                       {"diagnostic_significant_digits", "6"}};
  return emit(std::move(record), opts, [&](OutputRecord& r) {
    PrecisionContext ctx(opts.digits, 0);
    casimir::CutoffGrid grid = casimir::CutoffGrid::geometric(
        grid_start, grid_ratio, grid_points, threshold, ctx.working_bits());
    casimir::OracleFit fit = casimir::extract_constant(dim, bc, grid, ctx);
    casimir::EnergyResult closed = bc == BoundaryCondition::dirichlet
                                       ? casimir::dirichlet_energy(dim, ctx)
                                       : casimir::neumann_energy(dim, ctx);
    Real diff = (fit.extracted_constant - closed.value).abs();
    r.columns = {"D",
                 "bc",
                 "extracted_constant",
                 "closed_form_energy",
                 "abs_difference",
                 "max_residual",
                 "condition_estimate"};
    r.rows = {{std::to_string(dim), bc_name, to_sig_digits(fit.extracted_constant, 12),
               to_sig_digits(closed.value, 12), to_sig_digits(diff, 6),
               to_sig_digits(fit.max_residual, 6),
               format_double(fit.condition_estimate, "%.3e")}};
    nlohmann::json coeffs = nlohmann::json::array();
    for (size_t i = 0; i < fit.basis_exponents.size(); ++i)
      coeffs.push_back({{"exponent", fit.basis_exponents[i]},
                        {"coefficient", to_sig_digits(fit.coefficients[i], 12)}});
    r.summary["fit_coefficients"] = coeffs;
  });
}

int run_oracle_negativity(int max_dim, const CommonOpts& opts) {
  if (max_dim < 1) throw UsageError("--max-dim must be >= 1");

  OutputRecord record;
  record.command = "oracle";
  record.parameters = {{"verify_negativity", "true"},
                       {"max_dim", std::to_string(max_dim)}};
  return emit(std::move(record), opts, [&](OutputRecord& r) {
    casimir::NegativityReport report = casimir::verify_neumann_negativity(max_dim);
    r.columns = {"max_dim", "pairs_checked", "violations"};
    r.rows = {{std::to_string(report.d_max), std::to_string(report.pairs_checked),
               std::to_string(report.violations.size())}};
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations)
      violations.push_back(
          {{"dimension", v.dimension}, {"i", v.i}, {"reason", v.reason}});
    r.summary["violations"] = violations;
  });
}

std::vector<int> parse_digit_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("bad digit list entry: " + item);
    }
  }
  return out;
}

int run_precision_study(int from, int to, const std::string& digit_list, int reference,
                        const CommonOpts& opts) {
  std::vector<int> settings = parse_digit_list(digit_list);
  if (settings.empty()) throw UsageError("--digits list must be non-empty");
  for (int s : settings)
    if (s < 2 || s > 1000) throw UsageError("digit settings must be in [2, 1000]");
  if (from < 1 || from > to) throw UsageError("requires 1 <= --from <= --to");
  int max_setting = *std::max_element(settings.begin(), settings.end());
  if (reference <= max_setting + 20)
    throw UsageError("--reference must exceed max(--digits) + 20");

  OutputRecord record;
  record.command = "precision-study";
  record.parameters = {{"from", std::to_string(from)},
                       {"to", std::to_string(to)},
                       {"digits", digit_list},
                       {"reference", std::to_string(reference)},
                       {"reference_significant_digits", "30"}};
  return emit(std::move(record), opts, [&](OutputRecord& r) {
    casimir::PrecisionStudyReport report =
        casimir::precision_study(from, to, settings, reference);
    r.columns = {"D", "reference"};
    for (int s : settings) r.columns.push_back("digits_" + std::to_string(s));
    for (int d = from; d <= to; ++d) {
      const size_t idx = static_cast<size_t>(d - from);
      std::vector<std::string> row = {std::to_string(d), report.reference_values[idx]};
      for (const auto& setting : report.per_setting) row.push_back(setting.values[idx]);
      r.rows.push_back(std::move(row));
    }
    nlohmann::json summaries = nlohmann::json::array();
    for (const auto& setting : report.per_setting) {
      nlohmann::json s;
      s["digits"] = setting.digits;
      s["first_sign_error"] = setting.first_sign_error
                                  ? nlohmann::json(*setting.first_sign_error)
                                  : nlohmann::json(nullptr);
      s["first_digit_error"] = setting.first_digit_error
                                   ? nlohmann::json(*setting.first_digit_error)
                                   : nlohmann::json(nullptr);
      summaries.push_back(s);
    }
    r.summary["settings"] = summaries;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir energy of a relativistic fluid in a D-dimensional box"};
  app.require_subcommand(1);

  // compute
  auto* compute = app.add_subcommand("compute", "single (D, boundary condition) energy");
  std::string compute_bc = "dirichlet";
  int compute_dim = 0;
  CommonOpts compute_opts;
  compute->add_option("--bc", compute_bc, "boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann"}))
      ->capture_default_str();
  compute->add_option("--dim", compute_dim, "dimension D")->required();
  add_common(compute, compute_opts);

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "energies over a dimension range");
  std::string scan_bc = "dirichlet";
  int scan_from = 1, scan_to = 1;
  CommonOpts scan_opts;
  scan_cmd->add_option("--bc", scan_bc, "boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann"}))
      ->capture_default_str();
  scan_cmd->add_option("--from", scan_from, "first dimension")->required();
  scan_cmd->add_option("--to", scan_to, "last dimension")->required();
  add_common(scan_cmd, scan_opts);

  // oracle
  auto* oracle = app.add_subcommand(
      "oracle", "brute-force finite-part extraction / exact negativity check");
  std::string oracle_bc = "dirichlet";
  int oracle_dim = 0;
  bool verify_negativity = false;
  int max_dim = 60;
  double grid_start = 0.4, grid_ratio = 0.8, threshold = 45.0;
  int grid_points = 12;
  CommonOpts oracle_opts;
  oracle->add_option("--bc", oracle_bc, "boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann"}))
      ->capture_default_str();
  oracle->add_option("--dim", oracle_dim, "dimension D (extraction, D <= 3)");
  oracle->add_flag("--verify-negativity", verify_negativity,
                   "run the exact-rational Neumann negativity check");
  oracle->add_option("--max-dim", max_dim, "largest D for --verify-negativity")
      ->capture_default_str();
  oracle->add_option("--grid-start", grid_start, "largest cutoff a")->capture_default_str();
  oracle->add_option("--grid-ratio", grid_ratio, "geometric grid ratio")
      ->capture_default_str();
  oracle->add_option("--grid-points", grid_points, "number of grid points")
      ->capture_default_str();
  oracle->add_option("--threshold", threshold, "truncation threshold T")
      ->capture_default_str();
  add_common(oracle, oracle_opts);

  // precision-study
  auto* study = app.add_subcommand("precision-study",
                                   "low-precision emulation vs full-precision reference");
  int study_from = 10, study_to = 80, study_reference = 100;
  std::string study_digits = "16,24,50";
  CommonOpts study_opts;
  study->add_option("--from", study_from, "first dimension")->capture_default_str();
  study->add_option("--to", study_to, "last dimension")->capture_default_str();
  study->add_option("--digits", study_digits, "comma-separated digit settings")
      ->capture_default_str();
  study->add_option("--reference", study_reference, "reference precision digits")
      ->capture_default_str();
  add_common(study, study_opts, /*with_digits=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compute->parsed()) return run_compute(compute_bc, compute_dim, compute_opts);
    if (scan_cmd->parsed()) return run_scan(scan_bc, scan_from, scan_to, scan_opts);
    if (oracle->parsed()) {
      if (verify_negativity) return run_oracle_negativity(max_dim, oracle_opts);
      if (oracle_dim == 0)
        throw UsageError("oracle needs --dim (extraction) or --verify-negativity");
      return run_oracle_extract(oracle_bc, oracle_dim, grid_start, grid_ratio, grid_points,
                                threshold, oracle_opts);
    }
    if (study->parsed())
      return run_precision_study(study_from, study_to, study_digits, study_reference,
                                 study_opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const casimir::InsufficientPrecision& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const casimir::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
