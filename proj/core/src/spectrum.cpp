#include "kgo/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace kgo::spectrum {

namespace {

void check_r(double r) {
  if (!std::isfinite(r) || r <= 0.0) {
    fail(ErrorCode::NonPositiveInput, "r must be finite and > 0");
  }
}

void check_theta_open(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= 1.0) {
    fail(ErrorCode::ThetaOutOfRange, "theta must lie in (0, 1)");
  }
}

void check_qn(const QuantumNumbers& qn) {
  if (qn.n < 0) fail(ErrorCode::NegativeRadialIndex, "n = " + std::to_string(qn.n));
}

}  // namespace

EnergyPair no_gup_energy(double r, const QuantumNumbers& qn) {
  check_r(r);
  check_qn(qn);
  const double e = std::sqrt(1.0 + 2.0 * r * qn.N);
  return {e, -e};
}

double sigma_factor(double theta, int j) {
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 1.0) {
    fail(ErrorCode::ThetaOutOfRange, "theta must lie in [0, 1)");
  }
  // hypot keeps the theta -> 0 and |j| >> 1 corners accurate.
  return std::hypot(1.0, j * theta / (1.0 - theta));
}

PTParams pt_parameters(double theta, int j, Zeta2Variant variant, bool allow_extrapolation) {
  check_theta_open(theta);
  if (j == 0 && !allow_extrapolation) {
    fail(ErrorCode::ZeroAngularMomentumInGup,
         "j = 0 gives zeta1 = 1/2, outside the zeta > 1 bound-state conditions");
  }
  PTParams pt;
  pt.theta = theta;
  pt.sigma = sigma_factor(theta, j);
  pt.zeta1 = std::abs(j) + 0.5;
  const double offset = (variant == Zeta2Variant::Eq60) ? 0.5 : 1.0;
  pt.zeta2 = offset + (1.0 / theta - 1.0) * pt.sigma;
  return pt;
}

double chain_s_value(double theta, const QuantumNumbers& qn, Zeta2Variant variant) {
  check_theta_open(theta);
  check_qn(qn);
  const double sigma = sigma_factor(theta, qn.j);
  // s = theta*T^2 - 1/theta with T = zeta1 + zeta2 + 2n = c0 - 1 + 1/theta ... ;
  // factored as (theta*T + 1) * (theta*T - 1)/theta, where
  //   theta*T - 1 = theta*(c0 - Sigma) + (Sigma - 1)
  // and Sigma - 1 is expanded through its defining square to avoid cancellation.
  const double c0 = qn.N + 1.0 + ((variant == Zeta2Variant::Eq69) ? 0.5 : 0.0);
  const double jt = static_cast<double>(qn.j) * theta / (1.0 - theta);
  const double sigma_minus_one_over_theta = jt * jt / (theta * (sigma + 1.0));
  const double theta_T = theta * c0 + (1.0 - theta) * sigma;
  return (theta_T + 1.0) * ((c0 - sigma) + sigma_minus_one_over_theta);
}

EnergyPair energy_from_s(double r, double s) {
  check_r(r);
  const double e2 = 1.0 + r * s;
  if (e2 < 0.0) {
    fail(ErrorCode::ImaginaryEnergy,
         "E^2/(m0 c^2)^2 = " + std::to_string(e2) + " < 0: outside the bound-state regime");
  }
  const double e = std::sqrt(e2);
  return {e, -e};
}

EnergyPair gup_energy_chain(double r, double theta, const QuantumNumbers& qn,
                            Zeta2Variant variant, bool allow_extrapolation) {
  check_r(r);
  pt_parameters(theta, qn.j, variant, allow_extrapolation);  // validation only
  return energy_from_s(r, chain_s_value(theta, qn, variant));
}

EnergyPair gup_energy_eq70_printed(double r, double theta, const QuantumNumbers& qn) {
  check_r(r);
  check_qn(qn);
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 1.0) {
    fail(ErrorCode::ThetaOutOfRange, "theta must lie in [0, 1)");
  }
  const double sigma = sigma_factor(theta, qn.j);
  const double N = qn.N;
  const double j2 = static_cast<double>(qn.j) * qn.j;
  const double e2 = 1.0 - 2.0 * r + 2.0 * sigma * r * (N + 1.0) +
                    r * theta * (N * N - 2.0 * sigma * (N + 1.0) + j2);
  if (e2 < 0.0) {
    fail(ErrorCode::ImaginaryEnergy,
         "E^2/(m0 c^2)^2 = " + std::to_string(e2) + " < 0: outside the bound-state regime");
  }
  const double e = std::sqrt(e2);
  return {e, -e};
}

std::array<EnergyLevel, 2> energy_levels(const EnergyPair& pair, EnergySource source) {
  return {EnergyLevel{pair.plus, Branch::Plus, source},
          EnergyLevel{pair.minus, Branch::Minus, source}};
}

SpectrumTable spectrum_table(const ModelParams& params, int n_max, int j_max, Mode mode,
                             Zeta2Variant variant, bool allow_j0) {
  if (n_max < 0 || j_max < 0) {
    fail(ErrorCode::InvalidArgument, "n_max and j_max must be >= 0");
  }
  if (mode == Mode::Gup) check_theta_open(params.theta);

  SpectrumTable table;
  table.params = params;
  table.mode = mode;
  table.variant = variant;

  for (int j = -j_max; j <= j_max; ++j) {
    if (mode == Mode::Gup && j == 0 && !allow_j0) continue;
    for (int n = 0; n <= n_max; ++n) {
      SpectrumRow row;
      row.n = n;
      row.j = j;
      row.N = 2 * n + std::abs(j);
      row.source = (mode == Mode::NoGup) ? EnergySource::NoGupClosed : EnergySource::GupChain;
      try {
        const QuantumNumbers qn = make_quantum_numbers(n, j, mode == Mode::Gup, allow_j0);
        const EnergyPair e = (mode == Mode::NoGup)
                                 ? no_gup_energy(params.r, qn)
                                 : gup_energy_chain(params.r, params.theta, qn, variant, allow_j0);
        row.E_plus = e.plus;
        row.E_minus = e.minus;
      } catch (const Error& err) {
        row.error_flag = to_string(err.code());
      }
      table.rows.push_back(row);
    }
  }

  std::sort(table.rows.begin(), table.rows.end(),
            [](const SpectrumRow& a, const SpectrumRow& b) {
              return std::make_tuple(a.N, std::abs(a.j), a.n, a.j) <
                     std::make_tuple(b.N, std::abs(b.j), b.n, b.j);
            });
  return table;
}

}  // namespace kgo::spectrum
