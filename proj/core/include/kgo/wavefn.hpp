#pragma once

#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "kgo/model.hpp"
#include "kgo/spectrum.hpp"

namespace kgo::wavefn {

/// Integration weight for deformed-mode normalization. Deformed is
/// p dp dtheta/(1 + beta p^2), the measure under which the deformed position
/// operators are symmetric and fixed-j states come out exactly orthogonal.
/// Undeformed (plain p dp dtheta) is kept as a sensitivity check.
enum class Measure { Deformed, Undeformed };

/// q(p) = arctan(sqrt(beta) p)/(lambda sqrt(beta)), the flat coordinate of the
/// deformed radial problem; q in [0, pi/(2 lambda sqrt(beta))).
/// Throws BetaZero (the undeformed path never uses q).
double map_q_of_p(double p, const ModelParams& params);

/// z(p) = beta p^2/(1 + beta p^2) in [0, 1), the algebraic closed form of
/// sin^2(alpha q / lambda ...) composed with q(p).
double map_z_of_p(double p, const ModelParams& params);

/// Real radial amplitude of the undeformed eigenfunction:
///   norm * p^|j| exp(-p^2/(2 lambda)) 1F1(-n; |j|+1; p^2/lambda).
double radial_no_gup(const QuantumNumbers& qn, const ModelParams& params, double p,
                     double norm = 1.0);

/// Real radial amplitude of the deformed eigenfunction:
///   norm * p^(-1/2) z^(zeta1/2) (1-z)^(zeta2/2) 2F1(-n, zeta1+zeta2+n; zeta1+1/2; z).
/// Requires p > 0 (integrable inverse-sqrt prefactor) and beta > 0.
double radial_gup(const QuantumNumbers& qn, const ModelParams& params, double p,
                  Zeta2Variant variant = Zeta2Variant::Eq60, double norm = 1.0);

/// Full complex value radial(p) * e^{i |j| angle}.
std::complex<double> psi_no_gup(const QuantumNumbers& qn, const ModelParams& params,
                                double p, double angle, double norm = 1.0);
std::complex<double> psi_gup(const QuantumNumbers& qn, const ModelParams& params,
                             double p, double angle,
                             Zeta2Variant variant = Zeta2Variant::Eq60, double norm = 1.0);

struct ProfileSpec {
  QuantumNumbers qn;
  ModelParams params;
  Mode mode = Mode::NoGup;
  Zeta2Variant variant = Zeta2Variant::Eq60;
  Measure measure = Measure::Deformed;
};

/// One evaluated point of the full wavefunction. The modulus never depends on
/// the angle; the phase is exactly |j| * theta_angle up to the radial sign.
struct WaveSample {
  double p = 0.0;
  double theta_angle = 0.0;
  std::complex<double> value;
};

WaveSample wave_sample(const ProfileSpec& spec, double p, double theta_angle,
                       double norm = 1.0);

/// Integral of |psi|^2 over its measure with norm = 1, by adaptive
/// Gauss-Legendre panels (z variable for deformed states, p with a Gaussian
/// tail cut at p^2/(2 lambda) = 40 otherwise). Throws QuadratureNonConvergent.
double norm_squared_unit(const ProfileSpec& spec, double rel_tol = 1e-11);

/// Constant C with integral |C psi|^2 dmu = 1.
double normalize(const ProfileSpec& spec, double rel_tol = 1e-11);

/// Normalized cross overlap <a|b>/sqrt(<a|a><b|b>) for two states sharing
/// mode, parameters, measure and |j|.
double overlap(const ProfileSpec& a, const ProfileSpec& b, double rel_tol = 1e-11);

struct RadialProfile {
  std::vector<double> grid;    // strictly increasing momenta
  std::vector<double> values;  // normalized radial amplitudes
  double norm_constant = 1.0;
};

RadialProfile sample_profile(const ProfileSpec& spec, std::span<const double> grid);

struct NodeCount {
  int nodes = 0;
  bool grid_too_coarse = false;  // adjacent sign changes closer than 3 samples
};

/// Strict sign changes of the radial values on the open interior.
NodeCount count_radial_nodes(const RadialProfile& profile);

struct ResidualOptions {
  /// Energy fed into the governing equation. Defaults to the closed form for
  /// the mode (chain in GUP). GupEq70Printed substitutes the printed spectrum
  /// for comparison runs.
  std::optional<EnergySource> energy_source;
  /// Direct override of the dimensionless energy parameter s (the E^2 = 1 + r*s
  /// scale); negative control for off-quantization energies.
  std::optional<double> s_override;
};

/// Plugs the constructed radial part into the governing radial equation using
/// 5-point central differences and returns the largest residual normalized by
/// the largest participating term. Diagnostic; never throws on valid states.
double ode_residual(const QuantumNumbers& qn, const ModelParams& params, Mode mode,
                    Zeta2Variant variant, std::span<const double> sample_points,
                    const ResidualOptions& options = {});

/// Interior sample points suited to ode_residual for the given mode.
std::vector<double> default_residual_points(const ModelParams& params, Mode mode,
                                            int count = 50);

/// Per-(state, params, mode) normalization constants. Safe for concurrent
/// population; duplicate computations land on identical values.
class NormCache {
 public:
  double get_or_compute(const ProfileSpec& spec, double rel_tol = 1e-11);
  std::size_t size() const;

 private:
  struct Key {
    int mode, variant, measure, n, abs_j;
    double lambda, beta;
    auto operator<=>(const Key&) const = default;
  };
  static Key key_of(const ProfileSpec& spec);

  mutable std::mutex mutex_;
  std::map<Key, double> cache_;
};

}  // namespace kgo::wavefn
