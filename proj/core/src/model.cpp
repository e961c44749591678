#include "kgo/model.hpp"

#include <cmath>
#include <cstdlib>

namespace kgo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveInput: return "NonPositiveInput";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::NegativeRadialIndex: return "NegativeRadialIndex";
    case ErrorCode::ZeroAngularMomentumInGup: return "ZeroAngularMomentumInGUP";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ImaginaryEnergy: return "ImaginaryEnergy";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::NonPositiveMomentum: return "NonPositiveMomentum";
    case ErrorCode::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorCode::DomainContainsPole: return "DomainContainsPole";
    case ErrorCode::DomainTooSmall: return "DomainTooSmall";
    case ErrorCode::BisectionStall: return "BisectionStall";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

namespace {

void require_positive_finite(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    fail(ErrorCode::NonPositiveInput, std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

ModelParams make_params(double m0, double omega, double hbar, double c, double beta) {
  require_positive_finite(m0, "m0");
  require_positive_finite(omega, "omega");
  require_positive_finite(hbar, "hbar");
  require_positive_finite(c, "c");
  if (!std::isfinite(beta) || beta < 0.0) {
    fail(ErrorCode::NonPositiveInput, "beta must be finite and >= 0");
  }

  ModelParams p;
  p.m0 = m0;
  p.omega = omega;
  p.hbar = hbar;
  p.c = c;
  p.beta = beta;
  p.lambda = m0 * omega * hbar;
  p.r = hbar * omega / (m0 * c * c);
  p.theta = beta * p.lambda;
  p.alpha = p.lambda * std::sqrt(beta);
  if (p.theta >= 1.0) {
    fail(ErrorCode::ThetaOutOfRange,
         "beta*lambda = " + std::to_string(p.theta) + " but must lie in [0, 1)");
  }
  return p;
}

ModelParams params_from_dimensionless(double r, double theta) {
  if (!std::isfinite(r) || r <= 0.0) {
    fail(ErrorCode::NonPositiveInput, "r must be finite and > 0");
  }
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 1.0) {
    fail(ErrorCode::ThetaOutOfRange, "theta must lie in [0, 1)");
  }
  // m0 = hbar = c = 1: lambda = omega = r, so beta = theta/lambda.
  return make_params(1.0, r, 1.0, 1.0, theta / r);
}

QuantumNumbers make_quantum_numbers(int n, int j, bool gup_mode, bool allow_extrapolation) {
  if (n < 0) {
    fail(ErrorCode::NegativeRadialIndex, "n = " + std::to_string(n));
  }
  if (gup_mode && j == 0 && !allow_extrapolation) {
    fail(ErrorCode::ZeroAngularMomentumInGup,
         "j = 0 lies outside the deformed bound-state conditions; "
         "pass allow_extrapolation to evaluate it anyway");
  }
  return QuantumNumbers{n, j, 2 * n + std::abs(j)};
}

const char* to_string(Mode mode) { return mode == Mode::NoGup ? "nogup" : "gup"; }

const char* to_string(Zeta2Variant variant) {
  return variant == Zeta2Variant::Eq60 ? "eq60" : "eq69";
}

const char* to_string(EnergySource source) {
  switch (source) {
    case EnergySource::NoGupClosed: return "nogup_closed";
    case EnergySource::GupChain: return "gup_chain";
    case EnergySource::GupEq70Printed: return "gup_eq70_printed";
    case EnergySource::Oracle: return "oracle";
  }
  return "unknown";
}

}  // namespace kgo
