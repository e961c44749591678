#pragma once

#include <array>
#include <string>
#include <vector>

#include "kgo/model.hpp"

namespace kgo::spectrum {

/// Poschl-Teller shape parameters for the deformed radial problem.
/// Plus roots of the two defining quadratics:
///   zeta1*(zeta1-1) = j^2 - 1/4
///   zeta2*(zeta2-1) = j^2 + 3/4 - 2/theta + 1/theta^2   (Eq60 variant)
/// The Eq69 variant replaces the 1/2 offset in zeta2 by 1 and no longer
/// satisfies the second quadratic; it is kept only for comparison runs.
struct PTParams {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double sigma = 1.0;  // anisotropy sqrt(1 + j^2/(1/theta - 1)^2) >= 1
  double theta = 0.0;  // dimensionless deformation; equals alpha^2 at lambda = 1
};

struct EnergyPair {
  double plus = 0.0;
  double minus = 0.0;  // always exactly -plus
};

/// E/(m0 c^2) = +-sqrt(1 + 2 r N), N = 2n + |j|.
EnergyPair no_gup_energy(double r, const QuantumNumbers& qn);

/// sqrt(1 + j^2/(1/theta - 1)^2); requires theta in [0, 1).
double sigma_factor(double theta, int j);

PTParams pt_parameters(double theta, int j, Zeta2Variant variant = Zeta2Variant::Eq60,
                       bool allow_extrapolation = false);

/// Dimensionless energy parameter s of the quantization chain, defined by
/// E^2/(m0 c^2)^2 = 1 + r*s and equal to theta*(zeta1+zeta2+2n)^2 - 1/theta,
/// evaluated in a cancellation-free product form that is exact down to
/// theta -> 0.
double chain_s_value(double theta, const QuantumNumbers& qn,
                     Zeta2Variant variant = Zeta2Variant::Eq60);

/// E/(m0 c^2) = +-sqrt(1 + r*s); throws ImaginaryEnergy when 1 + r*s < 0.
EnergyPair energy_from_s(double r, double s);

/// Quantization-chain spectrum (the canonical deformed result).
EnergyPair gup_energy_chain(double r, double theta, const QuantumNumbers& qn,
                            Zeta2Variant variant = Zeta2Variant::Eq60,
                            bool allow_extrapolation = false);

/// The final printed closed form, kept verbatim as a separate evaluator:
/// E^2 = 1 - 2r + 2*Sigma*r*(N+1) + r*theta*(N^2 - 2*Sigma*(N+1) + j^2),
/// where the deformation prefactor is read as r*theta. Disagrees with the
/// chain at finite theta; the oracle decides which one is physical.
EnergyPair gup_energy_eq70_printed(double r, double theta, const QuantumNumbers& qn);

std::array<EnergyLevel, 2> energy_levels(const EnergyPair& pair, EnergySource source);

struct SpectrumRow {
  int n = 0, j = 0, N = 0;
  double E_plus = 0.0, E_minus = 0.0;
  EnergySource source = EnergySource::NoGupClosed;
  std::string error_flag;  // empty when the row evaluated cleanly
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;  // sorted by (N, |j|, n, j)
  ModelParams params;
  Mode mode = Mode::NoGup;
  Zeta2Variant variant = Zeta2Variant::Eq60;
};

/// Enumerates all levels with n <= n_max, |j| <= j_max. In GUP mode j = 0 is
/// skipped unless allow_j0. Per-level failures become flagged rows; the table
/// itself never aborts.
SpectrumTable spectrum_table(const ModelParams& params, int n_max, int j_max, Mode mode,
                             Zeta2Variant variant = Zeta2Variant::Eq60,
                             bool allow_j0 = false);

}  // namespace kgo::spectrum
