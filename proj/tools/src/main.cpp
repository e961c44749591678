#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "kgo/model.hpp"

namespace {

using kgo::cli::RunConfig;

const std::map<std::string, kgo::Mode> kModeNames{{"nogup", kgo::Mode::NoGup},
                                                  {"gup", kgo::Mode::Gup}};
const std::map<std::string, kgo::Zeta2Variant> kVariantNames{
    {"eq60", kgo::Zeta2Variant::Eq60}, {"eq69", kgo::Zeta2Variant::Eq69}};

struct SubcommandState {
  CLI::App* app = nullptr;
  RunConfig config;
  std::string theta_list;  // sweep only
  std::string beta_list;   // sweep only
  CLI::Option* opt_hbar = nullptr;
  CLI::Option* opt_c = nullptr;
};

void add_parameter_options(SubcommandState& state, bool theta_is_list) {
  CLI::App* sub = state.app;
  RunConfig& cfg = state.config;
  sub->add_option("--mode", cfg.mode, "Problem mode")
      ->transform(CLI::CheckedTransformer(kModeNames, CLI::ignore_case))
      ->default_str("nogup");
  sub->add_option("--variant", cfg.variant,
                  "Deformed quantization variant (eq60 is canonical; eq69 is the "
                  "alternate printed form kept for comparison)")
      ->transform(CLI::CheckedTransformer(kVariantNames, CLI::ignore_case))
      ->default_str("eq60");
  sub->add_option("--r", cfg.r, "Dimensionless oscillator strength hbar*omega/(m0 c^2)");
  if (theta_is_list) {
    sub->add_option("--theta", state.theta_list,
                    "Comma-separated dimensionless deformations, each in [0, 1)");
    sub->add_option("--beta", state.beta_list,
                    "Comma-separated physical deformations (needs --m0/--omega)");
  } else {
    sub->add_option("--theta", cfg.theta,
                    "Dimensionless deformation beta*lambda in [0, 1)");
    sub->add_option("--beta", cfg.beta, "Minimal-length deformation (1/momentum^2)");
  }
  sub->add_option("--m0", cfg.m0, "Rest mass");
  sub->add_option("--omega", cfg.omega, "Oscillator angular frequency");
  state.opt_hbar = sub->add_option("--hbar", cfg.hbar, "Reduced Planck constant");
  state.opt_c = sub->add_option("--c", cfg.c, "Speed of light");
  sub->add_option("--n-max", cfg.n_max, "Largest radial index")->check(CLI::NonNegativeNumber);
  sub->add_option("--j-max", cfg.j_max, "Largest |j|")->check(CLI::NonNegativeNumber);
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  sub->add_flag("--strict", cfg.strict, "Exit 1 when any row is flagged");
  sub->add_flag("--allow-j0", cfg.allow_j0,
                "Evaluate j = 0 in gup mode despite the bound-state conditions");
  sub->add_option("--out", cfg.out, "Output path, or 'stdout'")->default_str("stdout");
  // documentation only; the file is expanded into flags before parsing
  std::string ignored;
  sub->add_option("--config", ignored,
                  "Flat key=value config file mirroring the long flags; explicit "
                  "flags win over file values");
}

// Flat key=value config support: replace "--config <path>" with "--key=value"
// tokens for every file key not already present on the command line.
std::vector<std::string> expand_config_tokens(const std::vector<std::string>& tokens) {
  std::string path;
  std::vector<std::string> expanded;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    if (token == "--config") {
      if (i + 1 >= tokens.size()) {
        kgo::fail(kgo::ErrorCode::InvalidArgument, "--config needs a path");
      }
      path = tokens[++i];
    } else if (token.rfind("--config=", 0) == 0) {
      path = token.substr(9);
    } else {
      expanded.push_back(token);
    }
  }
  if (path.empty()) return expanded;

  std::ifstream file(path);
  if (!file) {
    kgo::fail(kgo::ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
  }
  auto flag_given = [&expanded](const std::string& flag) {
    return std::any_of(expanded.begin(), expanded.end(), [&flag](const std::string& t) {
      return t == flag || t.rfind(flag + "=", 0) == 0;
    });
  };
  std::string line;
  while (std::getline(file, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      kgo::fail(kgo::ErrorCode::InvalidArgument,
                "config line is not key=value: '" + line + "'");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    const std::string flag = "--" + key;
    if (!flag_given(flag)) expanded.push_back(flag + "=" + value);
  }
  return expanded;
}

int dispatch(SubcommandState& state, int (*command)(const RunConfig&, std::ostream&)) {
  state.config.physical_constants_set =
      state.opt_hbar->count() > 0 || state.opt_c->count() > 0;
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (state.config.out != "stdout") {
    file.open(state.config.out, std::ios::binary);
    if (!file) {
      kgo::fail(kgo::ErrorCode::InvalidArgument,
                "cannot open output path '" + state.config.out + "'");
    }
    os = &file;
  }
  return command(state.config, *os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Bound-state spectra and momentum-space wavefunctions of the planar "
      "relativistic oscillator, with and without a minimal-length deformation",
      "kgo"};
  app.require_subcommand(1);

  SubcommandState spectrum_state;
  spectrum_state.app = app.add_subcommand("spectrum", "Tabulate closed-form energy levels");
  add_parameter_options(spectrum_state, false);

  SubcommandState wavefn_state;
  wavefn_state.app = app.add_subcommand("wavefn", "Sample a normalized radial profile");
  add_parameter_options(wavefn_state, false);
  wavefn_state.app->add_option("--n", wavefn_state.config.wf_n, "Radial index");
  wavefn_state.app->add_option("--j", wavefn_state.config.wf_j, "Angular index");
  wavefn_state.app->add_option("--samples", wavefn_state.config.samples,
                               "Number of grid samples (>= 2)");

  SubcommandState verify_state;
  verify_state.app = app.add_subcommand(
      "verify", "Cross-check closed forms against the discretized-operator oracle");
  add_parameter_options(verify_state, false);
  verify_state.app->add_option("--tolerance", verify_state.config.tolerance,
                               "Relative oracle-vs-chain tolerance");

  SubcommandState sweep_state;
  sweep_state.app =
      app.add_subcommand("sweep", "Long-format table of E over a deformation list");
  add_parameter_options(sweep_state, true);

  try {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    tokens = expand_config_tokens(tokens);
    std::reverse(tokens.begin(), tokens.end());  // CLI11 vector parse convention
    app.parse(tokens);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kgo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (spectrum_state.app->parsed()) {
      return dispatch(spectrum_state, kgo::cli::cmd_spectrum);
    }
    if (wavefn_state.app->parsed()) {
      return dispatch(wavefn_state, kgo::cli::cmd_wavefn);
    }
    if (verify_state.app->parsed()) {
      return dispatch(verify_state, kgo::cli::cmd_verify);
    }
    if (sweep_state.app->parsed()) {
      sweep_state.config.physical_constants_set =
          sweep_state.opt_hbar->count() > 0 || sweep_state.opt_c->count() > 0;
      const std::vector<double> thetas = kgo::cli::resolve_sweep_thetas(
          sweep_state.config, sweep_state.theta_list, sweep_state.beta_list);
      std::ofstream file;
      std::ostream* os = &std::cout;
      if (sweep_state.config.out != "stdout") {
        file.open(sweep_state.config.out, std::ios::binary);
        if (!file) {
          kgo::fail(kgo::ErrorCode::InvalidArgument,
                    "cannot open output path '" + sweep_state.config.out + "'");
        }
        os = &file;
      }
      return kgo::cli::cmd_sweep(sweep_state.config, thetas, *os);
    }
  } catch (const kgo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
