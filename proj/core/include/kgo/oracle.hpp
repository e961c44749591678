#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgo/model.hpp"
#include "kgo/spectrum.hpp"

namespace kgo::oracle {

/// Uniform Dirichlet box. Nodes sit at half-spacing offsets from both ends,
/// q_i = q_min + (i + 1/2) h with h = (q_max - q_min)/points, so singular
/// potential ends are never evaluated; the zero boundary value at the domain
/// ends is imposed through antisymmetric ghost nodes.
struct GridSpec {
  double q_min = 0.0;
  double q_max = 1.0;
  int points = 64;
};

struct TridiagonalOperator {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size points - 1
  GridSpec grid;
};

/// Full deformed-problem box (0, pi/(2 alpha)).
GridSpec pt_grid(double alpha, int points);

/// Radial box (0, sqrt(80 lambda)), wide enough that the Gaussian tail is
/// below double precision at the cut.
GridSpec radial_grid_no_gup(double lambda, int points);

/// -d^2/dq^2 + alpha^2 [zeta1(zeta1-1)/sin^2(alpha q) + zeta2(zeta2-1)/cos^2(alpha q)]
/// as a symmetric tridiagonal matrix; eigenvalues approximate sigma-bar.
/// Throws DomainContainsPole when the box reaches past a potential pole.
TridiagonalOperator build_pt_operator(const spectrum::PTParams& pt, double alpha,
                                      const GridSpec& grid);

/// Symmetrized undeformed radial problem with eigenvalues kappa^2
/// (kappa^2 = (2 lambda + sigma)/lambda^2). Discretized in conservative flux
/// form of the weighted equation -(p f')' + (j^2/p + p^3/lambda^2) f = kappa^2 p f
/// and symmetrized by the exact diag(sqrt(p_i)) similarity; this keeps second
/// order convergence for every j including the singular j = 0 channel.
/// Throws DomainTooSmall when p_max^2/(2 lambda) < 40.
TridiagonalOperator build_radial_operator_no_gup(double lambda, int j,
                                                 const GridSpec& grid);

struct OracleResult {
  std::vector<double> eigenvalues;  // ascending, raw grid values
  GridSpec grid;
  std::vector<double> extrapolated;    // filled by richardson_pair
  std::vector<double> error_estimate;  // filled by richardson_pair
};

/// Number of eigenvalues strictly below x (Sturm sequence sign count).
int eigen_count_below(const TridiagonalOperator& op, double x);

/// The `count` smallest eigenvalues by Sturm-sequence bisection, resolved to
/// 1e-12 * ||op|| with a fixed budget of 200 bisections per eigenvalue
/// (BisectionStall beyond that). Deterministic.
OracleResult eigen_lowest(const TridiagonalOperator& op, int count);

/// (4*fine - coarse)/3 elimination of the leading h^2 error; requires the
/// same domain and fine.points == 2*coarse.points (GridMismatch otherwise).
/// error_estimate is |fine - coarse|/3 per eigenvalue.
OracleResult richardson_pair(const OracleResult& coarse, const OracleResult& fine);

/// Build/solve/extrapolate at `points` and 2*points in one call.
OracleResult pt_eigenvalues_extrapolated(const spectrum::PTParams& pt, double alpha,
                                         int points, int count);
OracleResult no_gup_eigenvalues_extrapolated(double lambda, int j, int points,
                                             int count);

struct VerifyRow {
  int n = 0, j = 0, N = 0;
  double oracle_E = 0.0;
  double chain_E = 0.0;
  std::optional<double> eq70_E;  // GUP mode only
  double rel_diff_chain = 0.0;
  std::optional<double> rel_diff_eq70;
  double oracle_error_estimate = 0.0;
  bool pass = false;
  std::string error;  // empty when the row evaluated cleanly
};

/// beta -> 0 consistency of the chain formula against the undeformed
/// spectrum, evaluated at theta = 1e-9 across the verify lattice (|j| >= 1).
struct LimitCheck {
  bool pass = false;
  double max_rel_error = 0.0;
  double mean_e2_offset = 0.0;  // mean E^2 excess over the undeformed value
  std::string note;
};

struct VerifyOptions {
  double tolerance = 1e-5;     // oracle vs chain, relative
  int points_no_gup = 1024;    // coarse grid; fine grid doubles it
  int points_pt = 2048;
  bool allow_j0 = false;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;  // sorted by (N, |j|, n, j)
  double max_rel_diff_chain = 0.0;
  double max_rel_diff_eq70 = 0.0;
  bool all_pass = false;
  std::optional<LimitCheck> limit_check;  // present in GUP mode
  Mode mode = Mode::NoGup;
  Zeta2Variant variant = Zeta2Variant::Eq60;
  double r = 0.0, theta = 0.0, tolerance = 0.0;
};

/// Cross-checks every closed-form level against the discretized operator.
/// The oracle potential always uses the defining-quadratic roots; the variant
/// only selects which chain formula is compared (so the alternate variant
/// fails visibly). Oracle failures surface per row, never abort the sweep.
VerifyReport verify_spectrum(const ModelParams& params, int n_max, int j_max, Mode mode,
                             Zeta2Variant variant = Zeta2Variant::Eq60,
                             const VerifyOptions& options = {});

}  // namespace kgo::oracle
