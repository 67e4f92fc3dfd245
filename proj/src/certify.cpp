#include "gpnex/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "gpnex/lp.hpp"
#include "gpnex/quadrature.hpp"

namespace gpnex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* kAssumpSampled = "almost-everywhere inequalities verified on a sampled grid only";
const char* kAssumpMeasureZero = "near-origin branch set assumed to have measure zero";
const char* kAssumpExtrapolated = "curve limit obtained by Richardson extrapolation";
const char* kAssumpMorseEll =
    "curve limit taken as alpha_c (origin-regular kernel), cross-checked by tracing";

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

const char* route_name(Route route) {
  switch (route) {
    case Route::StaticC0: return "static-c0";
    case Route::CorollaryGradient: return "corollary-gradient";
    case Route::CorollaryWindow: return "corollary-window";
    case Route::LpSigma: return "lp-sigma";
    case Route::EllMismatch: return "ell-mismatch";
    case Route::None: return "none";
  }
  return "?";
}

const char* verdict_status_name(VerdictStatus status) {
  return status == VerdictStatus::Certified ? "certified-nonexistence" : "inconclusive";
}

// ---------------------------------------------------------------------------
// Farkas system
// ---------------------------------------------------------------------------

Vector farkas_dual_closed_form(int n, double ell, const Vector& sigma) {
  const double tail_sum = sigma.tail(n - 1).sum();
  Vector d(n + 1);
  d[0] = -sigma[0] + tail_sum - 1.0;
  for (int j = 1; j < n; ++j) d[j] = sigma[0] + tail_sum + 2.0 * ell * sigma[j] - 1.0;
  d[n] = sigma[0] + (ell + 2.0) * tail_sum - 1.0;
  return d;
}

FarkasSystem build_farkas_system(int n, double ell, const Vector& sigma) {
  if (n < 2) throw std::invalid_argument("Farkas system needs n >= 2");
  if (!(ell > 0)) throw std::invalid_argument("Farkas system needs ell > 0");
  if (sigma.size() != n) throw std::invalid_argument("sigma must have length n");

  FarkasSystem sys;
  sys.n = n;
  sys.ell = ell;
  sys.A = Matrix::Ones(n + 1, n + 1);
  sys.A(0, 0) = -1.0;
  for (int i = 1; i < n; ++i) {
    sys.A(i, i) = 1.0 + 2.0 * ell;
    sys.A(i, n) = 2.0 + ell;
  }
  // last row stays all ones: it carries the energy identity K + U = E

  sys.sigma_prime.resize(n + 1);
  sys.sigma_prime.head(n) = sigma;
  sys.sigma_prime[n] = -1.0;
  sys.dual_components = sys.A.transpose() * sys.sigma_prime;

  const Vector closed = farkas_dual_closed_form(n, ell, sigma);
  if ((sys.dual_components - closed).cwiseAbs().maxCoeff() >
      1e-12 * (1.0 + closed.cwiseAbs().maxCoeff()))
    throw std::logic_error("Farkas dual components disagree with their closed forms");
  return sys;
}

// ---------------------------------------------------------------------------
// Static waves
// ---------------------------------------------------------------------------

SpeedVerdict check_static(const PotentialModel& model, const GridSpec& grid) {
  SpeedVerdict v;
  v.c = 0.0;
  double worst = -kInf;  // largest scaled-gradient component seen
  if (model.radial && model.profile) {
    for (Eigen::Index i = 0; i < grid.radii.size(); ++i) {
      const double r = grid.radii[i];
      const double d = model.profile->drho(r);
      worst = std::max(worst, d * r);
      if (d > 1e-12) {
        v.detail = "rho'(" + format_double(r) + ") = " + format_double(d) + " > 0";
        return v;
      }
    }
  } else {
    const GridSamples s = sample_grid(model, grid);
    for (size_t i = 0; i < s.points.size(); ++i) {
      const double row_max = s.grad.row(static_cast<Eigen::Index>(i)).maxCoeff();
      worst = std::max(worst, row_max);
      if (row_max > 1e-12) {
        v.detail = "xi_j d_j W_hat > 0 at |xi| = " + format_double(s.points[i].norm());
        return v;
      }
    }
  }
  v.status = VerdictStatus::Certified;
  v.route = Route::StaticC0;
  if (std::isfinite(worst)) v.margin = -worst;
  v.assumptions = {kAssumpSampled};
  return v;
}

// ---------------------------------------------------------------------------
// Radial ratio bound
// ---------------------------------------------------------------------------

namespace {

double profile_ratio(const RadialProfile& p, double r) {
  const double denom = std::abs(p.drho(r)) * r;
  // subnormal denominators carry almost no precision; treat such radii as
  // unconstrained rather than feed garbage into the endpoint extrapolation
  if (!(denom > 1e-290) || !std::isfinite(denom)) return kInf;
  return p.rho(r) / denom;
}

// ratio(r) ~ L + A/r^2 for the families of interest; two-point solve.
double tail_limit(double ra, double va, double rb, double vb) {
  return (vb * rb * rb - va * ra * ra) / (rb * rb - ra * ra);
}

}  // namespace

double radial_inf_ratio(const PotentialModel& model) {
  if (!model.radial || !model.profile)
    throw NonRadialModelError("radial ratio bound requested for a non-radial model");
  const RadialProfile& p = *model.profile;

  const int n = 400;
  const double r_lo = 1e-3, r_hi = 1e3;
  double best = kInf;
  int best_i = -1;
  std::vector<double> rs(n);
  for (int i = 0; i < n; ++i) {
    rs[i] = r_lo * std::pow(r_hi / r_lo, double(i) / (n - 1));
    const double v = profile_ratio(p, rs[i]);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i < 0) return kInf;  // derivative vanishes identically on the grid

  // golden-section refinement in log r around the sampled minimum
  {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(rs[std::max(0, best_i - 1)]);
    double b = std::log(rs[std::min(n - 1, best_i + 1)]);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = profile_ratio(p, std::exp(x1)), f2 = profile_ratio(p, std::exp(x2));
    for (int it = 0; it < 80; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = profile_ratio(p, std::exp(x1));
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = profile_ratio(p, std::exp(x2));
      }
    }
    best = std::min(best, std::min(f1, f2));
  }

  // endpoint limit r -> infinity, extrapolated from the largest radii where
  // the ratio is still finite
  double r_f = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    if (std::isfinite(profile_ratio(p, rs[i]))) {
      r_f = rs[i];
      break;
    }
  }
  if (r_f > 0.0) {
    const double v1 = profile_ratio(p, r_f / 4.0);
    const double v2 = profile_ratio(p, r_f / 2.0);
    const double v3 = profile_ratio(p, r_f);
    if (std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3)) {
      const double l1 = tail_limit(r_f / 4.0, v1, r_f / 2.0, v2);
      const double l2 = tail_limit(r_f / 2.0, v2, r_f, v3);
      if (std::abs(l1 - l2) <= 1e-7 * (1.0 + std::abs(l2))) best = std::min(best, l2);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Corollary fast paths
// ---------------------------------------------------------------------------

namespace {

double gradient_coefficient(int dim) { return std::max(1.0, 2.0 / (dim - 1)); }

// Worst slack of the gradient-domination inequality: the ratio-bound excess
// for radial models, the raw grid minimum of the left-hand side otherwise.
double gradient_bound_margin(const PotentialModel& model, const GridSamples& s) {
  if (model.radial) return radial_inf_ratio(model) - gradient_coefficient(model.dim());
  const double coef = gradient_coefficient(model.dim());
  double margin = kInf;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const auto g = s.grad.row(static_cast<Eigen::Index>(i));
    double tail = 0.0;
    for (int k = 1; k < model.dim(); ++k) tail += std::abs(g[k]);
    margin = std::min(margin, s.w[static_cast<Eigen::Index>(i)] - coef * tail - std::abs(g[0]));
  }
  return margin;
}

bool gradient_bound_from(const PotentialModel& model, const GridSamples& s) {
  return gradient_bound_margin(model, s) >= -1e-9;
}

// inf over the grid of (N-1) W_hat / sum_{k>=2} |xi_k d_k W_hat|; +inf when
// the denominator vanishes everywhere.
double window_inf_from(const PotentialModel& model, const GridSamples& s) {
  if (model.radial) return radial_inf_ratio(model);
  double m = kInf;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const auto g = s.grad.row(static_cast<Eigen::Index>(i));
    double denom = 0.0;
    for (int k = 1; k < model.dim(); ++k) denom += std::abs(g[k]);
    if (denom <= 1e-300) continue;
    m = std::min(m, (model.dim() - 1) * s.w[static_cast<Eigen::Index>(i)] / denom);
  }
  return m;
}

}  // namespace

bool corollary_gradient_bound(const PotentialModel& model, const GridSpec& grid) {
  if (model.radial) return radial_inf_ratio(model) >= gradient_coefficient(model.dim()) - 1e-9;
  return gradient_bound_from(model, sample_grid(model, grid));
}

bool corollary_speed_window(const PotentialModel& model, double c, const GridSpec& grid) {
  const SonicData sonic = sonic_speed(model);
  if (!sonic.defined || !(c > sonic.c_s)) return false;
  const double alpha = sonic.alpha(c);
  const double m = model.radial ? radial_inf_ratio(model)
                                : window_inf_from(model, sample_grid(model, grid));
  return alpha <= m + 1e-9 * std::max(1.0, std::abs(alpha));
}

// ---------------------------------------------------------------------------
// Sigma feasibility
// ---------------------------------------------------------------------------

namespace {

struct SigmaRows {
  Matrix a;  // unit-norm rows, a_i . sigma >= h_i
  Vector h;
  bool trivially_infeasible = false;
  Vector infeasible_point;
};

std::array<double, 3> sigma2_slack_values(int n, double ell, const Vector& sigma) {
  const double s = sigma.tail(n - 1).sum();
  double worst_c = kInf;
  for (int j = 1; j < n; ++j)
    worst_c = std::min(worst_c, s + 2.0 * ell * sigma[j] + sigma[0] - 1.0);
  return {s - sigma[0] - 1.0, s + (sigma[0] - 1.0) / (ell + 2.0), worst_c};
}

// First family: one row per grid point. Second family: the three bracketed
// constraints per j, written as a . sigma >= h. Rows are unit-normalized,
// deduplicated, and dominated rows (same direction, smaller offset) dropped.
SigmaRows build_sigma_rows(const PotentialModel& model, const GridSamples& s, double ell) {
  const int n = model.dim();
  SigmaRows out;
  std::map<std::vector<int64_t>, std::pair<Vector, double>> dedup;
  const double quant = 4e9;  // ~9 significant digits on unit vectors

  auto add_row = [&](Vector a, double h) {
    const double norm = a.norm();
    a /= norm;
    h /= norm;
    std::vector<int64_t> key(n);
    for (int k = 0; k < n; ++k) key[k] = llround(a[k] * quant);
    auto [it, inserted] = dedup.emplace(key, std::make_pair(a, h));
    if (!inserted && h > it->second.second) it->second.second = h;
  };

  for (size_t i = 0; i < s.points.size(); ++i) {
    const auto g = s.grad.row(static_cast<Eigen::Index>(i));
    Vector a(n);
    a[0] = -g[0];
    for (int k = 1; k < n; ++k) a[k] = ell * g[k];
    const double w = s.w[static_cast<Eigen::Index>(i)];
    if (a.norm() <= 1e-14 * (1.0 + std::abs(w))) {
      if (-w > 1e-12 * (1.0 + std::abs(w))) {
        out.trivially_infeasible = true;  // W_hat < 0 with vanishing gradient
        out.infeasible_point = s.points[i];
        return out;
      }
      continue;
    }
    add_row(a, -w);
  }

  {
    Vector a = Vector::Ones(n);
    a[0] = -1.0;
    add_row(a, 1.0);  // sum sigma_k - sigma_1 - 1 >= 0
  }
  {
    Vector a = Vector::Constant(n, ell + 2.0);
    a[0] = 1.0;
    add_row(a, 1.0);  // sigma_1 + (ell+2) sum sigma_k >= 1
  }
  for (int j = 1; j < n; ++j) {
    Vector a = Vector::Ones(n);
    a[0] = 1.0;
    a[j] = 1.0 + 2.0 * ell;
    add_row(a, 1.0);  // sigma_1 + sum sigma_k + 2 ell sigma_j >= 1
  }

  out.a.resize(static_cast<Eigen::Index>(dedup.size()), n);
  out.h.resize(static_cast<Eigen::Index>(dedup.size()));
  Eigen::Index r = 0;
  for (const auto& [key, row] : dedup) {
    out.a.row(r) = row.first.transpose();
    out.h[r] = row.second;
    ++r;
  }
  return out;
}

double raw_grid_margin(const PotentialModel& model, const GridSamples& s, double ell,
                       const Vector& sigma, Vector* worst_point = nullptr) {
  double margin = kInf;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const auto g = s.grad.row(static_cast<Eigen::Index>(i));
    double lhs = s.w[static_cast<Eigen::Index>(i)] - sigma[0] * g[0];
    for (int k = 1; k < model.dim(); ++k) lhs += ell * sigma[k] * g[k];
    if (lhs < margin) {
      margin = lhs;
      if (worst_point) *worst_point = s.points[i];
    }
  }
  return margin;
}

struct FeasibilityOutcome {
  std::optional<SigmaCertificate> certificate;
  double lp_margin = -kInf;
};

FeasibilityOutcome sigma_feasibility_from(const PotentialModel& model, const GridSamples& s,
                                          double ell) {
  FeasibilityOutcome out;
  const int n = model.dim();
  const SigmaRows rows = build_sigma_rows(model, s, ell);
  if (rows.trivially_infeasible) return out;

  // Max-margin LP over (sigma, delta): maximize delta subject to
  // a_i . sigma - delta >= h_i and delta <= 1.
  const Eigen::Index m = rows.a.rows();
  Matrix G(m + 1, n + 1);
  Vector h(m + 1);
  G.block(0, 0, m, n) = -rows.a;
  G.block(0, n, m, 1).setOnes();
  h.head(m) = -rows.h;
  G.row(m).setZero();
  G(m, n) = 1.0;
  h[m] = 1.0;
  Vector obj = Vector::Zero(n + 1);
  obj[n] = 1.0;

  const LpResult lp = solve_inequality_lp_max(obj, G, h);
  if (lp.status != LpStatus::Optimal) return out;
  out.lp_margin = lp.objective;
  if (lp.objective < -kFeasibilityTol) return out;

  SigmaCertificate cert;
  cert.sigma = lp.x.head(n);
  cert.ell = ell;
  cert.normalized_margin = (rows.a * cert.sigma - rows.h).minCoeff();
  cert.grid_margin = raw_grid_margin(model, s, ell, cert.sigma);
  cert.sigma2_slacks = sigma2_slack_values(n, ell, cert.sigma);
  cert.grid_points = static_cast<int>(s.points.size());
  out.certificate = cert;
  return out;
}

}  // namespace

namespace {

SigmaVerification verify_sigma_from(const PotentialModel& model, const GridSamples& s,
                                    double ell, const Vector& sigma) {
  SigmaVerification ver;
  ver.grid_margin = raw_grid_margin(model, s, ell, sigma, &ver.worst_point);
  const SigmaRows rows = build_sigma_rows(model, s, ell);
  ver.normalized_margin =
      rows.trivially_infeasible ? -kInf : (rows.a * sigma - rows.h).minCoeff();
  ver.sigma2_slacks = sigma2_slack_values(model.dim(), ell, sigma);
  return ver;
}

}  // namespace

std::optional<SigmaCertificate> sigma_feasibility(const PotentialModel& model, double ell,
                                                  const GridSpec& grid) {
  if (!(ell > 0)) throw std::invalid_argument("sigma feasibility needs ell > 0");
  return sigma_feasibility_from(model, sample_grid(model, grid), ell).certificate;
}

SigmaVerification verify_sigma(const PotentialModel& model, double ell, const Vector& sigma,
                               const GridSpec& fine_grid) {
  return verify_sigma_from(model, sample_grid(model, fine_grid), ell, sigma);
}

bool refined_margin_downgrades(double fine_normalized_margin, double tol) {
  return !(fine_normalized_margin >= -tol);
}

// ---------------------------------------------------------------------------
// Perturbation bound
// ---------------------------------------------------------------------------

PerturbationProfile gaussian_perturbation() {
  return {[](double r) { return std::exp(-r * r); },
          [](double r) { return -2.0 * r * std::exp(-r * r); }};
}

double EpsilonBound::sonic_speed(double eps) const {
  return std::sqrt(2.0 + 2.0 * eps * integral_f);
}

EpsilonBound epsilon_bound(const PerturbationProfile& profile, int dim) {
  if (dim < 2) throw UnsupportedDimensionError("dimension must be at least 2");
  const double surface =
      2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
  EpsilonBound out;
  out.dim = dim;
  out.f_l1 = surface * integrate_halfline([&](double r) {
               return std::abs(profile.f(r)) * std::pow(r, dim - 1);
             });
  out.grad_l1_sum = surface * integrate_halfline([&](double r) {
                      return std::abs(profile.df(r)) * std::pow(r, dim);
                    });
  out.integral_f = surface * integrate_halfline([&](double r) {
                     return profile.f(r) * std::pow(r, dim - 1);
                   });
  const double denom = 4.0 * out.f_l1 + out.grad_l1_sum;
  out.bound = denom > 0.0 ? 1.0 / denom : kInf;
  return out;
}

// ---------------------------------------------------------------------------
// Decision pipeline
// ---------------------------------------------------------------------------

namespace {

struct CertifyContext {
  GridSpec grid;
  GridSamples samples;
  GridSpec fine_grid;
  GridSamples fine_samples;
  HypothesisReport hypotheses;
  SonicData sonic;
  double gradient_margin = -kInf;
  bool gradient_corollary = false;
  double window_m = kInf;
};

CertifyContext make_context(const PotentialModel& model, const CertifyOptions& opts) {
  CertifyContext ctx;
  ctx.grid = opts.grid ? *opts.grid : make_default_grid(model);
  ctx.samples = sample_grid(model, ctx.grid);
  ctx.fine_grid = ctx.grid.refined(4, 4);
  ctx.fine_samples = sample_grid(model, ctx.fine_grid);
  ctx.hypotheses = check_hypotheses(model, ctx.grid);
  ctx.sonic = sonic_speed(model);
  ctx.gradient_margin = gradient_bound_margin(model, ctx.samples);
  ctx.gradient_corollary = ctx.gradient_margin >= -1e-9;
  ctx.window_m = window_inf_from(model, ctx.samples);
  return ctx;
}

// Shrinks the trace span until R(t, 0) < 0, so the branch roots exist on the
// whole grid; near the crossing onset the default span overshoots the domain.
TraceOptions fit_trace_span(const PotentialModel& model, double c, const TraceOptions& base) {
  TraceOptions opts = base;
  Vector e1 = Vector::Zero(model.dim());
  auto axis_gap = [&](double t) {
    e1[0] = t;
    return t * t + 2.0 * model.w_hat(e1) - c * c;
  };
  int halvings = 0;
  while (axis_gap(opts.t_max) >= 0.0 && halvings < 24) {
    opts.t_max *= 0.5;
    ++halvings;
  }
  opts.t_min = std::min(base.t_min, opts.t_max * std::pow(2.0, -(base.count - 1)));
  return opts;
}

std::string join_ells(const std::vector<double>& ells) {
  std::string s;
  for (size_t i = 0; i < ells.size(); ++i) {
    if (i) s += ", ";
    s += "ell_" + std::to_string(i + 2) + " = " + format_double(ells[i]);
  }
  return s;
}

SpeedVerdict certify_core(const PotentialModel& model, double c, const CertifyOptions& opts,
                          const CertifyContext& ctx) {
  if (c < 0.0) throw std::invalid_argument("speed must be nonnegative");
  SpeedVerdict v;
  v.c = c;

  if (!ctx.hypotheses.core_pass()) {
    v.detail = "sampled hypothesis failure; theorems do not apply";
    return v;
  }

  if (c == 0.0) {
    SpeedVerdict sv = check_static(model, ctx.grid);
    return sv;
  }

  if (ctx.sonic.defined && c <= ctx.sonic.c_s) {
    v.detail = "speed at or below the sonic speed " + format_double(ctx.sonic.c_s) +
               "; existence regime is not excluded";
    return v;
  }

  const bool origin_regular = ctx.hypotheses.origin_regular.status == CheckStatus::Pass;
  const TraceOptions topts =
      opts.adapt_trace_span ? fit_trace_span(model, c, opts.trace) : opts.trace;

  EllEqualityReport rep;
  try {
    rep = check_ell_equality(model, c, topts);
  } catch (const std::exception& e) {
    v.detail = std::string("curve tracing failed: ") + e.what();
    return v;
  }
  v.ell_report = rep;

  double ell = 0.0;
  if (origin_regular) {
    const double alpha = ctx.sonic.alpha(c);
    double max_diff = 0.0;
    for (double l : rep.ells) max_diff = std::max(max_diff, std::abs(l - alpha));
    const double scale = std::max(1.0, std::abs(alpha));
    if (max_diff <= 1e-3 * scale) {
      ell = alpha;
      v.assumptions.push_back(kAssumpMorseEll);
    } else if (max_diff <= 1e-2 * scale) {
      ell = std::accumulate(rep.ells.begin(), rep.ells.end(), 0.0) / rep.ells.size();
      v.assumptions.push_back(kAssumpExtrapolated);
    } else {
      v.detail = "traced curve limits diverge from alpha_c = " + format_double(alpha) +
                 " beyond tolerance (" + join_ells(rep.ells) + ")";
      return v;
    }
  } else {
    v.assumptions.push_back(kAssumpMeasureZero);
    if (!rep.equal) {
      if (rep.all_positive) {
        v.status = VerdictStatus::Certified;
        v.route = Route::EllMismatch;
        v.assumptions.push_back(kAssumpExtrapolated);
        v.detail = "necessary equality of curve limits fails: " + join_ells(rep.ells);
        return v;
      }
      v.detail = "curve limits unequal but not all positive: " + join_ells(rep.ells);
      v.assumptions.clear();
      return v;
    }
    ell = std::accumulate(rep.ells.begin(), rep.ells.end(), 0.0) / rep.ells.size();
    if (!(ell > 0.0)) {
      v.detail = "common curve limit is not positive (ell = " + format_double(ell) + ")";
      v.assumptions.clear();
      return v;
    }
    v.assumptions.push_back(kAssumpExtrapolated);
  }
  v.ell = ell;

  if (ctx.gradient_corollary) {
    v.status = VerdictStatus::Certified;
    v.route = Route::CorollaryGradient;
    if (std::isfinite(ctx.gradient_margin)) v.margin = ctx.gradient_margin;
    v.assumptions.push_back(kAssumpSampled);
    return v;
  }

  if (ell <= ctx.window_m + 1e-9 * std::max(1.0, std::abs(ell))) {
    v.status = VerdictStatus::Certified;
    v.route = Route::CorollaryWindow;
    if (std::isfinite(ctx.window_m)) v.margin = ctx.window_m - ell;
    v.assumptions.push_back(kAssumpSampled);
    v.detail = "ell = " + format_double(ell) + " <= " + format_double(ctx.window_m);
    return v;
  }

  FeasibilityOutcome lp = sigma_feasibility_from(model, ctx.samples, ell);
  if (!lp.certificate) {
    v.detail = "sampled multiplier system infeasible (max margin " +
               format_double(lp.lp_margin) + ")";
    v.assumptions.clear();
    return v;
  }
  const SigmaVerification fine =
      verify_sigma_from(model, ctx.fine_samples, ell, lp.certificate->sigma);
  if (refined_margin_downgrades(fine.normalized_margin)) {
    v.detail = "certificate margin flipped sign on the refined grid (" +
               format_double(fine.normalized_margin) + "); downgraded";
    v.assumptions.clear();
    return v;
  }
  SigmaCertificate cert = *lp.certificate;
  cert.grid_margin = std::min(cert.grid_margin, fine.grid_margin);
  cert.normalized_margin = std::min(cert.normalized_margin, fine.normalized_margin);
  cert.grid_points = static_cast<int>(ctx.fine_samples.points.size());
  v.certificate = cert;
  v.margin = cert.grid_margin;
  v.status = VerdictStatus::Certified;
  v.route = Route::LpSigma;
  v.assumptions.push_back(kAssumpSampled);
  return v;
}

}  // namespace

SpeedVerdict certify_speed(const PotentialModel& model, double c, const CertifyOptions& opts) {
  const CertifyContext ctx = make_context(model, opts);
  return certify_core(model, c, opts, ctx);
}

SweepReport sweep(const PotentialModel& model, const std::vector<double>& c_grid,
                  const CertifyOptions& opts) {
  if (!std::is_sorted(c_grid.begin(), c_grid.end()))
    throw std::invalid_argument("speed grid must be sorted ascending");
  const CertifyContext ctx = make_context(model, opts);
  SweepReport report;
  report.hypotheses = ctx.hypotheses;
  for (double c : c_grid) report.verdicts.push_back(certify_core(model, c, opts, ctx));

  for (size_t i = 0; i < report.verdicts.size();) {
    if (!report.verdicts[i].certified()) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < report.verdicts.size() && report.verdicts[j + 1].certified()) ++j;
    report.certified_intervals.emplace_back(report.verdicts[i].c, report.verdicts[j].c);
    i = j + 1;
  }
  return report;
}

}  // namespace gpnex
