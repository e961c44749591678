#include "commands.hpp"

#include <cmath>
#include <sstream>

#include "format.hpp"
#include "json.hpp"
#include "kgo/oracle.hpp"
#include "kgo/spectrum.hpp"
#include "kgo/wavefn.hpp"

namespace kgo::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_mode_deformation(const RunConfig& config, double theta) {
  if (config.mode == Mode::Gup && !(theta > 0.0 && theta < 1.0)) {
    fail(ErrorCode::ThetaOutOfRange, "gup mode needs a deformation theta in (0, 1)");
  }
  if (config.mode == Mode::NoGup && theta != 0.0) {
    fail(ErrorCode::InvalidArgument,
         "nogup mode takes no deformation; drop --theta/--beta or set them to 0");
  }
}

}  // namespace

ModelParams resolve_params(const RunConfig& config) {
  const bool dimensionless = config.r.has_value() || config.theta.has_value();
  const bool physical = config.m0.has_value() || config.omega.has_value() ||
                        config.beta.has_value() || config.physical_constants_set;
  if (dimensionless && physical) {
    fail(ErrorCode::InvalidArgument,
         "supply either the dimensionless pair (--r/--theta) or physical "
         "parameters (--m0/--omega/--hbar/--c/--beta), not both");
  }
  if (!dimensionless && !physical) {
    fail(ErrorCode::InvalidArgument,
         "no parameters given; supply --r [--theta] or --m0 --omega [--beta]");
  }

  if (dimensionless) {
    if (!config.r) fail(ErrorCode::InvalidArgument, "--theta requires --r as well");
    const double theta = config.theta.value_or(0.0);
    if (!(theta >= 0.0 && theta < 1.0)) {
      fail(ErrorCode::ThetaOutOfRange, "theta must lie in [0, 1)");
    }
    check_mode_deformation(config, theta);
    return params_from_dimensionless(*config.r, theta);
  }

  if (!config.m0 || !config.omega) {
    fail(ErrorCode::InvalidArgument, "physical parameters need --m0 and --omega");
  }
  const ModelParams params =
      make_params(*config.m0, *config.omega, config.hbar, config.c,
                  config.beta.value_or(0.0));
  check_mode_deformation(config, params.theta);
  return params;
}

std::vector<double> resolve_sweep_thetas(const RunConfig& config,
                                         const std::string& theta_csv,
                                         const std::string& beta_csv) {
  if (theta_csv.empty() == beta_csv.empty()) {
    fail(ErrorCode::InvalidArgument,
         "sweep takes exactly one of --theta <list> or --beta <list>");
  }
  double lambda = 1.0;
  if (!beta_csv.empty()) {
    if (!config.m0 || !config.omega) {
      fail(ErrorCode::InvalidArgument, "--beta sweeps need --m0 and --omega");
    }
    lambda = *config.m0 * *config.omega * config.hbar;
  }
  const std::string& csv = theta_csv.empty() ? beta_csv : theta_csv;
  std::vector<double> thetas;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidArgument, "could not parse deformation value '" + item + "'");
    }
    if (used != item.size()) {
      fail(ErrorCode::InvalidArgument, "could not parse deformation value '" + item + "'");
    }
    if (!beta_csv.empty()) value *= lambda;
    if (!(value >= 0.0 && value < 1.0)) {
      fail(ErrorCode::ThetaOutOfRange,
           "sweep deformation " + format_double(value) + " outside [0, 1)");
    }
    thetas.push_back(value);
  }
  if (thetas.empty()) {
    fail(ErrorCode::InvalidArgument, "sweep needs a non-empty deformation list");
  }
  return thetas;
}

namespace {

constexpr const char* kSpectrumHeader = "n,j,N,E_plus,E_minus,source,error_flag";

void write_spectrum_csv(const spectrum::SpectrumTable& table, std::ostream& os) {
  os << kSpectrumHeader << "\n";
  for (const auto& row : table.rows) {
    os << row.n << ',' << row.j << ',' << row.N << ',';
    if (row.error_flag.empty()) {
      os << format_double(row.E_plus) << ',' << format_double(row.E_minus);
    } else {
      os << ',';
    }
    os << ',' << to_string(row.source) << ',' << row.error_flag << "\n";
  }
}

void write_spectrum_json(const spectrum::SpectrumTable& table, std::ostream& os) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj;
    obj["n"] = row.n;
    obj["j"] = row.j;
    obj["N"] = row.N;
    if (row.error_flag.empty()) {
      obj["E_plus"] = row.E_plus;
      obj["E_minus"] = row.E_minus;
    } else {
      obj["E_plus"] = nullptr;
      obj["E_minus"] = nullptr;
    }
    obj["source"] = to_string(row.source);
    obj["error_flag"] = row.error_flag;
    rows.push_back(obj);
  }
  os << rows.dump(2) << "\n";
}

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& os) {
  const ModelParams params = resolve_params(config);
  const spectrum::SpectrumTable table = spectrum::spectrum_table(
      params, config.n_max, config.j_max, config.mode, config.variant, config.allow_j0);
  if (config.format == "json") {
    write_spectrum_json(table, os);
  } else {
    write_spectrum_csv(table, os);
  }
  if (config.strict) {
    for (const auto& row : table.rows) {
      if (!row.error_flag.empty()) return 1;
    }
  }
  return 0;
}

namespace {

std::vector<double> wavefn_grid(const ModelParams& params, Mode mode, int samples) {
  std::vector<double> grid;
  grid.reserve(samples);
  if (mode == Mode::NoGup) {
    const double p_max = std::sqrt(80.0 * params.lambda);
    for (int i = 0; i < samples; ++i) {
      grid.push_back(p_max * i / (samples - 1));
    }
    return grid;
  }
  // geometric decades toward p = 0, then linear out to the decayed tail
  const double p_ref = 1.0 / std::sqrt(params.beta);
  const int geometric = samples / 2;
  const int linear = samples - geometric;
  for (int i = 0; i < geometric; ++i) {
    grid.push_back(p_ref * std::pow(10.0, -6.0 * (geometric - i) / geometric));
  }
  const double p_max = 50.0 * p_ref;
  for (int i = 0; i < linear; ++i) {
    grid.push_back(p_ref + (p_max - p_ref) * (i + 1) / linear);
  }
  return grid;
}

}  // namespace

int cmd_wavefn(const RunConfig& config, std::ostream& os) {
  if (config.samples < 2) {
    fail(ErrorCode::InvalidArgument, "--samples must be >= 2");
  }
  if (!config.wf_n || !config.wf_j) {
    fail(ErrorCode::InvalidArgument, "wavefn needs --n and --j");
  }
  const ModelParams params = resolve_params(config);
  const QuantumNumbers qn = make_quantum_numbers(*config.wf_n, *config.wf_j,
                                                 config.mode == Mode::Gup,
                                                 config.allow_j0);
  const wavefn::ProfileSpec spec{qn, params, config.mode, config.variant,
                                 wavefn::Measure::Deformed};
  const std::vector<double> grid = wavefn_grid(params, config.mode, config.samples);
  const wavefn::RadialProfile profile = wavefn::sample_profile(spec, grid);

  if (config.format == "json") {
    ordered_json doc;
    doc["normalized"] = true;
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
      ordered_json row;
      row["p"] = profile.grid[i];
      row["radial_value"] = profile.values[i];
      if (config.mode == Mode::Gup) {
        row["z"] = wavefn::map_z_of_p(profile.grid[i], params);
      } else {
        row["z"] = nullptr;
      }
      rows.push_back(row);
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
    return 0;
  }

  os << "# normalized=true\n";
  os << "p,radial_value,z\n";
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    os << format_double(profile.grid[i]) << ',' << format_double(profile.values[i])
       << ',';
    if (config.mode == Mode::Gup) {
      os << format_double(wavefn::map_z_of_p(profile.grid[i], params));
    }
    os << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& os) {
  const ModelParams params = resolve_params(config);
  oracle::VerifyOptions options;
  options.tolerance = config.tolerance;
  options.allow_j0 = config.allow_j0;
  const oracle::VerifyReport report = oracle::verify_spectrum(
      params, config.n_max, config.j_max, config.mode, config.variant, options);

  for (const auto& row : report.rows) {
    ordered_json obj;
    obj["n"] = row.n;
    obj["j"] = row.j;
    obj["N"] = row.N;
    if (row.error.empty()) {
      obj["oracle_E"] = row.oracle_E;
      obj["chain_E"] = row.chain_E;
      obj["eq70_E"] = row.eq70_E ? ordered_json(*row.eq70_E) : ordered_json(nullptr);
      obj["rel_diff_chain"] = row.rel_diff_chain;
      obj["rel_diff_eq70"] =
          row.rel_diff_eq70 ? ordered_json(*row.rel_diff_eq70) : ordered_json(nullptr);
      obj["pass"] = row.pass;
      obj["error"] = nullptr;
    } else {
      obj["oracle_E"] = nullptr;
      obj["chain_E"] = nullptr;
      obj["eq70_E"] = nullptr;
      obj["rel_diff_chain"] = nullptr;
      obj["rel_diff_eq70"] = nullptr;
      obj["pass"] = false;
      obj["error"] = row.error;
    }
    os << obj.dump() << "\n";
  }

  ordered_json summary;
  summary["max_rel_diff_chain"] = report.max_rel_diff_chain;
  summary["max_rel_diff_eq70"] = report.mode == Mode::Gup
                                     ? ordered_json(report.max_rel_diff_eq70)
                                     : ordered_json(nullptr);
  summary["all_pass"] = report.all_pass;
  summary["tolerance"] = report.tolerance;
  summary["mode"] = to_string(report.mode);
  summary["variant"] = to_string(report.variant);
  summary["r"] = report.r;
  summary["theta"] = report.theta;
  if (report.limit_check) {
    ordered_json check;
    check["pass"] = report.limit_check->pass;
    check["max_rel_error"] = report.limit_check->max_rel_error;
    check["mean_e2_offset"] = report.limit_check->mean_e2_offset;
    check["note"] = report.limit_check->note;
    summary["limit_check"] = check;
  } else {
    summary["limit_check"] = nullptr;
  }
  os << ordered_json{{"summary", summary}}.dump() << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_sweep(const RunConfig& config, const std::vector<double>& thetas,
              std::ostream& os) {
  if (!config.r && !(config.m0 && config.omega)) {
    fail(ErrorCode::InvalidArgument,
         "sweep needs --r or the physical parameter set (--m0 and --omega)");
  }
  const double r = config.r ? *config.r
                            : config.hbar * *config.omega /
                                  (*config.m0 * config.c * config.c);
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::NonPositiveInput, "r must be finite and > 0");
  }

  os << "theta,n,j,N,E_plus\n";
  bool any_flagged = false;
  for (double theta : thetas) {
    const ModelParams params = params_from_dimensionless(r, theta);
    const Mode row_mode = theta == 0.0 ? Mode::NoGup : Mode::Gup;
    const bool include_j0 = theta == 0.0 || config.allow_j0;
    const spectrum::SpectrumTable table =
        spectrum::spectrum_table(params, config.n_max, config.j_max, row_mode,
                                 config.variant, include_j0);
    for (const auto& row : table.rows) {
      os << format_double(theta) << ',' << row.n << ',' << row.j << ',' << row.N << ',';
      if (row.error_flag.empty()) {
        os << format_double(row.E_plus);
      } else {
        any_flagged = true;
      }
      os << "\n";
    }
  }
  return (config.strict && any_flagged) ? 1 : 0;
}

}  // namespace kgo::cli
