#include "kgo/wavefn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "kgo/specfun.hpp"

namespace kgo::wavefn {

namespace {

constexpr int kGaussNodes = 20;
constexpr int kMaxDepth = 48;

struct GaussRule {
  std::array<double, kGaussNodes> x{};
  std::array<double, kGaussNodes> w{};
};

// Legendre nodes/weights by Newton iteration from the Chebyshev guess.
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    constexpr int n = kGaussNodes;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 64; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r.x[i] = x;
      r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& g = gauss_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < kGaussNodes; ++i) {
    acc += g.w[i] * f(mid + half * g.x[i]);
  }
  return half * acc;
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double whole, double rel_tol, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid);
  const double right = gauss_panel(f, mid, b);
  const double two = left + right;
  const double err = std::abs(two - whole);
  if (err <= std::max(rel_tol * std::abs(two), abs_tol)) return two;
  if (depth >= kMaxDepth) {
    fail(ErrorCode::QuadratureNonConvergent,
         "panel refinement exhausted at depth " + std::to_string(depth));
  }
  return adaptive_rec(f, a, mid, left, rel_tol, 0.5 * abs_tol, depth + 1) +
         adaptive_rec(f, mid, b, right, rel_tol, 0.5 * abs_tol, depth + 1);
}

/// Adaptive Gauss-Legendre. The absolute error floor is seeded from the
/// whole-interval magnitude (or scale_hint when the true value may vanish,
/// as for overlaps of orthogonal states) so negligible tail panels terminate.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double scale_hint = 0.0) {
  const double whole = gauss_panel(f, a, b);
  const double abs_tol = rel_tol * std::max(scale_hint, std::abs(whole));
  return adaptive_rec(f, a, b, whole, rel_tol, abs_tol, 0);
}

void check_beta_positive(const ModelParams& params) {
  if (params.beta <= 0.0) {
    fail(ErrorCode::BetaZero, "the deformed coordinate maps require beta > 0");
  }
}

struct GupShape {
  double zeta1, zeta2, b2f1, c2f1;
};

GupShape gup_shape(const QuantumNumbers& qn, double theta, Zeta2Variant variant) {
  // Quantum numbers are validated at construction; j = 0 reaching this point
  // means the caller opted into extrapolation.
  const spectrum::PTParams pt =
      spectrum::pt_parameters(theta, qn.j, variant, /*allow_extrapolation=*/true);
  return {pt.zeta1, pt.zeta2, pt.zeta1 + pt.zeta2 + qn.n, pt.zeta1 + 0.5};
}

// Radial factor w(z) = z^{zeta1/2} (1-z)^{zeta2/2} 2F1(-n, b; c; z) of the
// deformed state; the full radial amplitude is p^{-1/2} w(z(p)).
double gup_w_of_z(const GupShape& s, int n, double z, double one_minus_z) {
  return std::pow(z, 0.5 * s.zeta1) * std::pow(one_minus_z, 0.5 * s.zeta2) *
         specfun::gauss2f1_poly(n, s.b2f1, s.c2f1, z);
}

}  // namespace

double map_q_of_p(double p, const ModelParams& params) {
  check_beta_positive(params);
  if (p < 0.0) fail(ErrorCode::NonPositiveMomentum, "p must be >= 0");
  const double sqrt_beta = std::sqrt(params.beta);
  return std::atan(sqrt_beta * p) / (params.lambda * sqrt_beta);
}

double map_z_of_p(double p, const ModelParams& params) {
  check_beta_positive(params);
  if (p < 0.0) fail(ErrorCode::NonPositiveMomentum, "p must be >= 0");
  const double u = params.beta * p * p;
  return u / (1.0 + u);
}

double radial_no_gup(const QuantumNumbers& qn, const ModelParams& params, double p,
                     double norm) {
  if (p < 0.0) fail(ErrorCode::NonPositiveMomentum, "p must be >= 0");
  const int aj = std::abs(qn.j);
  const double t = p * p / params.lambda;
  return norm * std::pow(p, aj) * std::exp(-0.5 * t) *
         specfun::kummer_poly(qn.n, aj + 1.0, t);
}

double radial_gup(const QuantumNumbers& qn, const ModelParams& params, double p,
                  Zeta2Variant variant, double norm) {
  check_beta_positive(params);
  if (p <= 0.0) {
    fail(ErrorCode::NonPositiveMomentum,
         "the deformed radial amplitude carries p^(-1/2); p must be > 0");
  }
  const GupShape s = gup_shape(qn, params.theta, variant);
  const double u = params.beta * p * p;
  const double z = u / (1.0 + u);
  const double one_minus_z = 1.0 / (1.0 + u);
  return norm / std::sqrt(p) * gup_w_of_z(s, qn.n, z, one_minus_z);
}

std::complex<double> psi_no_gup(const QuantumNumbers& qn, const ModelParams& params,
                                double p, double angle, double norm) {
  return radial_no_gup(qn, params, p, norm) * std::polar(1.0, std::abs(qn.j) * angle);
}

std::complex<double> psi_gup(const QuantumNumbers& qn, const ModelParams& params,
                             double p, double angle, Zeta2Variant variant, double norm) {
  return radial_gup(qn, params, p, variant, norm) *
         std::polar(1.0, std::abs(qn.j) * angle);
}

namespace {

// 2*pi * integral f_a f_b p dp over the Gaussian-cut domain (norm = 1 inputs).
double no_gup_pair_integral(const ProfileSpec& a, const ProfileSpec& b, double rel_tol,
                            double scale_hint) {
  const double p_max = std::sqrt(80.0 * a.params.lambda);
  auto f = [&](double p) {
    return radial_no_gup(a.qn, a.params, p) * radial_no_gup(b.qn, b.params, p) * p;
  };
  return 2.0 * std::numbers::pi *
         adaptive_integrate(f, 0.0, p_max, rel_tol,
                            scale_hint / (2.0 * std::numbers::pi));
}

// pi/sqrt(beta) * integral z^{zeta1-1/2} (1-z)^{e2} F_a F_b dz, the z-space
// form of the deformed pair integral. e2 = zeta2 - 1/2 for the deformed
// measure, zeta2 - 3/2 for the plain one.
double gup_pair_integral(const ProfileSpec& a, const ProfileSpec& b, double rel_tol,
                         double scale_hint) {
  const GupShape sa = gup_shape(a.qn, a.params.theta, a.variant);
  const GupShape sb = gup_shape(b.qn, b.params.theta, b.variant);
  const double e2 =
      0.5 * (sa.zeta2 + sb.zeta2) - (a.measure == Measure::Deformed ? 0.5 : 1.5);
  const double e1 = 0.5 * (sa.zeta1 + sb.zeta1) - 0.5;
  const double prefactor = std::numbers::pi / std::sqrt(a.params.beta);
  auto f = [&](double z) {
    return std::pow(z, e1) * std::pow(1.0 - z, e2) *
           specfun::gauss2f1_poly(a.qn.n, sa.b2f1, sa.c2f1, z) *
           specfun::gauss2f1_poly(b.qn.n, sb.b2f1, sb.c2f1, z);
  };
  return prefactor * adaptive_integrate(f, 0.0, 1.0, rel_tol, scale_hint / prefactor);
}

double pair_integral(const ProfileSpec& a, const ProfileSpec& b, double rel_tol,
                     double scale_hint) {
  if (a.mode != b.mode || a.measure != b.measure ||
      std::abs(a.qn.j) != std::abs(b.qn.j) || a.params.lambda != b.params.lambda ||
      a.params.beta != b.params.beta || a.variant != b.variant) {
    fail(ErrorCode::InvalidArgument,
         "pair integrals require matching mode, measure, parameters and |j|");
  }
  return a.mode == Mode::NoGup ? no_gup_pair_integral(a, b, rel_tol, scale_hint)
                               : gup_pair_integral(a, b, rel_tol, scale_hint);
}

}  // namespace

double norm_squared_unit(const ProfileSpec& spec, double rel_tol) {
  return pair_integral(spec, spec, rel_tol, 0.0);
}

double normalize(const ProfileSpec& spec, double rel_tol) {
  return 1.0 / std::sqrt(norm_squared_unit(spec, rel_tol));
}

double overlap(const ProfileSpec& a, const ProfileSpec& b, double rel_tol) {
  const double naa = norm_squared_unit(a, rel_tol);
  const double nbb = norm_squared_unit(b, rel_tol);
  const double scale = std::sqrt(naa * nbb);
  return pair_integral(a, b, rel_tol, scale) / scale;
}

WaveSample wave_sample(const ProfileSpec& spec, double p, double theta_angle,
                       double norm) {
  const std::complex<double> value =
      spec.mode == Mode::NoGup
          ? psi_no_gup(spec.qn, spec.params, p, theta_angle, norm)
          : psi_gup(spec.qn, spec.params, p, theta_angle, spec.variant, norm);
  return WaveSample{p, theta_angle, value};
}

RadialProfile sample_profile(const ProfileSpec& spec, std::span<const double> grid) {
  if (grid.size() < 2) fail(ErrorCode::InvalidArgument, "profile grid needs >= 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      fail(ErrorCode::InvalidArgument, "profile grid must be strictly increasing");
    }
  }
  RadialProfile profile;
  profile.norm_constant = normalize(spec);
  profile.grid.assign(grid.begin(), grid.end());
  profile.values.reserve(grid.size());
  for (double p : grid) {
    profile.values.push_back(
        spec.mode == Mode::NoGup
            ? radial_no_gup(spec.qn, spec.params, p, profile.norm_constant)
            : radial_gup(spec.qn, spec.params, p, spec.variant, profile.norm_constant));
  }
  return profile;
}

NodeCount count_radial_nodes(const RadialProfile& profile) {
  NodeCount result;
  int last_sign = 0;
  std::size_t last_flip = 0;
  for (std::size_t i = 0; i < profile.values.size(); ++i) {
    const double v = profile.values[i];
    if (v == 0.0) continue;  // exact zeros sit on a node, not across one
    const int sign = v > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) {
      ++result.nodes;
      if (result.nodes > 1 && i - last_flip < 3) result.grid_too_coarse = true;
      last_flip = i;
    }
    last_sign = sign;
  }
  return result;
}

namespace {

struct Stencil {
  double value, d1, d2;
};

Stencil five_point(const std::function<double(double)>& f, double p, double h) {
  const double f0 = f(p - 2.0 * h);
  const double f1 = f(p - h);
  const double f2 = f(p);
  const double f3 = f(p + h);
  const double f4 = f(p + 2.0 * h);
  return {f2, (f0 - 8.0 * f1 + 8.0 * f3 - f4) / (12.0 * h),
          (-f0 + 16.0 * f1 - 30.0 * f2 + 16.0 * f3 - f4) / (12.0 * h * h)};
}

double residual_ratio(double t1, double t2, double t3) {
  const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  if (scale == 0.0) return 0.0;
  return std::abs(t1 + t2 + t3) / scale;
}

// s parameter of the printed final spectrum, (E^2 - 1)/r with r cancelled.
double eq70_s_value(double theta, const QuantumNumbers& qn) {
  const double sigma = spectrum::sigma_factor(theta, qn.j);
  const double N = qn.N;
  const double j2 = static_cast<double>(qn.j) * qn.j;
  return 2.0 * sigma * (N + 1.0) - 2.0 + theta * (N * N - 2.0 * sigma * (N + 1.0) + j2);
}

}  // namespace

double ode_residual(const QuantumNumbers& qn, const ModelParams& params, Mode mode,
                    Zeta2Variant variant, std::span<const double> sample_points,
                    const ResidualOptions& options) {
  if (sample_points.empty()) {
    fail(ErrorCode::InvalidArgument, "ode_residual needs at least one sample point");
  }
  const double lambda = params.lambda;
  double worst = 0.0;

  if (mode == Mode::NoGup) {
    if (options.energy_source && *options.energy_source != EnergySource::NoGupClosed) {
      fail(ErrorCode::InvalidArgument, "no-GUP residuals take the closed-form energy");
    }
    const double s = options.s_override.value_or(2.0 * qn.N);
    const double kappa2 = (2.0 * lambda + lambda * s) / (lambda * lambda);
    const double j2 = static_cast<double>(qn.j) * qn.j;
    auto f = [&](double p) { return radial_no_gup(qn, params, p); };
    for (double p : sample_points) {
      const double h = 1e-3 * std::max(std::sqrt(lambda), p);
      const Stencil st = five_point(f, p, h);
      const double t1 = st.d2;
      const double t2 = st.d1 / p;
      const double t3 =
          (kappa2 - p * p / (lambda * lambda) - j2 / (p * p)) * st.value;
      worst = std::max(worst, residual_ratio(t1, t2, t3));
    }
    return worst;
  }

  check_beta_positive(params);
  const EnergySource source = options.energy_source.value_or(EnergySource::GupChain);
  double s = 0.0;
  if (options.s_override) {
    s = *options.s_override;
  } else if (source == EnergySource::GupChain) {
    s = spectrum::chain_s_value(params.theta, qn, variant);
  } else if (source == EnergySource::GupEq70Printed) {
    s = eq70_s_value(params.theta, qn);
  } else {
    fail(ErrorCode::InvalidArgument, "unsupported energy source for GUP residuals");
  }
  const double sigma_energy = lambda * s;
  const double beta = params.beta;
  const double j2 = static_cast<double>(qn.j) * qn.j;
  auto f = [&](double p) { return radial_gup(qn, params, p, variant); };
  for (double p : sample_points) {
    const double h = 1e-4 * std::max(std::sqrt(lambda), p);
    const Stencil st = five_point(f, p, h);
    const double w = 1.0 + beta * p * p;
    const double a = lambda * lambda * w * w;
    const double b = -a / p - 2.0 * beta * lambda * lambda * w * p;
    const double c = p * p + j2 * a / (p * p) - 2.0 * lambda * w;
    const double t1 = -a * st.d2;
    const double t2 = b * st.d1;
    const double t3 = (c - sigma_energy) * st.value;
    worst = std::max(worst, residual_ratio(t1, t2, t3));
  }
  return worst;
}

std::vector<double> default_residual_points(const ModelParams& params, Mode mode,
                                            int count) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
  std::vector<double> pts;
  pts.reserve(count);
  if (mode == Mode::NoGup) {
    // t = p^2/lambda in [0.16, 9]
    const double lo = 0.4 * std::sqrt(params.lambda);
    const double hi = 3.0 * std::sqrt(params.lambda);
    for (int i = 0; i < count; ++i) {
      pts.push_back(lo + (hi - lo) * i / std::max(1, count - 1));
    }
  } else {
    check_beta_positive(params);
    // z in [0.05, 0.9], mapped back to momentum
    for (int i = 0; i < count; ++i) {
      const double z = 0.05 + 0.85 * i / std::max(1, count - 1);
      pts.push_back(std::sqrt(z / ((1.0 - z) * params.beta)));
    }
  }
  return pts;
}

NormCache::Key NormCache::key_of(const ProfileSpec& spec) {
  return Key{static_cast<int>(spec.mode),    static_cast<int>(spec.variant),
             static_cast<int>(spec.measure), spec.qn.n,
             std::abs(spec.qn.j),            spec.params.lambda,
             spec.params.beta};
}

double NormCache::get_or_compute(const ProfileSpec& spec, double rel_tol) {
  const Key key = key_of(spec);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const double value = normalize(spec, rel_tol);  // compute outside the lock
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.insert_or_assign(key, value).first->second;  // last write wins
}

std::size_t NormCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.size();
}

}  // namespace kgo::wavefn
