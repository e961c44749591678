#pragma once

#include <stdexcept>
#include <string>

namespace kgo {

enum class ErrorCode {
  NonPositiveInput,
  ThetaOutOfRange,
  NegativeRadialIndex,
  ZeroAngularMomentumInGup,
  DegenerateDenominator,
  ImaginaryEnergy,
  BetaZero,
  NonPositiveMomentum,
  QuadratureNonConvergent,
  DomainContainsPole,
  DomainTooSmall,
  BisectionStall,
  GridMismatch,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Domain error carrying a machine-readable code; what() starts with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail = {});

/// Physical oscillator inputs plus the derived dimensionless groups that the
/// spectra actually depend on. Immutable after construction.
struct ModelParams {
  double m0 = 1.0;     // rest mass
  double omega = 1.0;  // oscillator angular frequency
  double hbar = 1.0;
  double c = 1.0;
  double beta = 0.0;  // minimal-length deformation, 1/momentum^2, >= 0

  // derived
  double lambda = 1.0;  // m0*omega*hbar (momentum^2 scale)
  double r = 1.0;       // hbar*omega/(m0 c^2)
  double theta = 0.0;   // beta*lambda, in [0, 1)
  double alpha = 0.0;   // lambda*sqrt(beta) (momentum scale, 0 iff beta = 0)
};

/// Validates inputs and populates the derived groups.
/// Throws NonPositiveInput, ThetaOutOfRange.
ModelParams make_params(double m0, double omega, double hbar, double c, double beta);

/// Natural-units construction from the dimensionless pair the spectra depend on:
/// m0 = hbar = c = 1, omega = r, beta = theta/r.
ModelParams params_from_dimensionless(double r, double theta);

struct QuantumNumbers {
  int n = 0;  // radial index, >= 0
  int j = 0;  // angular momentum projection (any sign)
  int N = 0;  // principal number 2n + |j|
};

/// Validates (n, j). In GUP mode j = 0 is rejected unless allow_extrapolation:
/// the zeta1 = 1/2 edge sits outside the stated bound-state conditions.
/// Throws NegativeRadialIndex, ZeroAngularMomentumInGup.
QuantumNumbers make_quantum_numbers(int n, int j, bool gup_mode,
                                    bool allow_extrapolation = false);

enum class Mode { NoGup, Gup };
enum class Zeta2Variant { Eq60, Eq69 };
enum class EnergySource { NoGupClosed, GupChain, GupEq70Printed, Oracle };
enum class Branch { Plus, Minus };

struct EnergyLevel {
  double value = 0.0;  // E/(m0 c^2)
  Branch branch = Branch::Plus;
  EnergySource source = EnergySource::NoGupClosed;
};

const char* to_string(Mode mode);
const char* to_string(Zeta2Variant variant);
const char* to_string(EnergySource source);

}  // namespace kgo
