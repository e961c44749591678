#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgo/model.hpp"

namespace kgo::cli {

struct RunConfig {
  Mode mode = Mode::NoGup;
  Zeta2Variant variant = Zeta2Variant::Eq60;

  // exactly one of the dimensionless pair or the physical set may be supplied
  std::optional<double> r;
  std::optional<double> theta;
  std::optional<double> m0;
  std::optional<double> omega;
  std::optional<double> beta;
  double hbar = 1.0;
  double c = 1.0;
  bool physical_constants_set = false;  // --hbar/--c given explicitly

  int n_max = 3;
  int j_max = 3;
  std::string format = "csv";
  int samples = 256;
  bool strict = false;
  bool allow_j0 = false;
  double tolerance = 1e-5;
  std::string out = "stdout";

  // wavefn
  std::optional<int> wf_n;
  std::optional<int> wf_j;
};

/// Resolves the parameter set, enforcing the one-path rule and the
/// mode/deformation consistency. Throws kgo::Error on config problems.
ModelParams resolve_params(const RunConfig& config);

/// Deformation list for sweep; values are dimensionless theta in [0, 1).
std::vector<double> resolve_sweep_thetas(const RunConfig& config,
                                         const std::string& theta_csv,
                                         const std::string& beta_csv);

int cmd_spectrum(const RunConfig& config, std::ostream& os);
int cmd_wavefn(const RunConfig& config, std::ostream& os);
int cmd_verify(const RunConfig& config, std::ostream& os);
int cmd_sweep(const RunConfig& config, const std::vector<double>& thetas,
              std::ostream& os);

}  // namespace kgo::cli
