#include "gpnex/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <ostream>

namespace gpnex {

SonicData sonic_speed(const PotentialModel& model) {
  SonicData s;
  if (model.smooth_at_origin && model.w_hat_origin && *model.w_hat_origin > 0.0) {
    s.defined = true;
    s.c_s = std::sqrt(2.0 * *model.w_hat_origin);
  }
  return s;
}

double omega_squared(const PotentialModel& model, const Vector& xi) {
  const double n2 = xi.squaredNorm();
  if (n2 == 0.0) {
    if (!model.smooth_at_origin)
      throw OriginEvaluationError("dispersion relation undefined at xi = 0 for this kernel");
    return 0.0;
  }
  return n2 * n2 + 2.0 * model.w_hat(xi) * n2;
}

double slice_w(const PotentialModel& model, int axis, double nu1, double nu2) {
  Vector xi = Vector::Zero(model.dim());
  xi[0] = nu1;
  xi[axis - 1] = nu2;
  return model.w_hat(xi);
}

double slice_residual(const PotentialModel& model, int axis, double c, double t, double y) {
  const double s = t * t + y * y;
  return s * s + 2.0 * slice_w(model, axis, t, y) * s - c * c * t * t;
}

namespace {

// d/dy of the slice residual, using the analytic scaled gradient.
double slice_residual_dy(const PotentialModel& model, int axis, double t, double y) {
  Vector xi = Vector::Zero(model.dim());
  xi[0] = t;
  xi[axis - 1] = y;
  const double s = t * t + y * y;
  const double w = model.w_hat(xi);
  const double dw = model.grad_scaled(xi)[axis - 1] / y;  // d_axis W_hat
  return 4.0 * s * y + 2.0 * s * dw + 4.0 * w * y;
}

// Root of R(t, .) on one side of the axis (side = +1 or -1). The bracket
// starts at the dispersion bound |nu|^2 <= c t (valid whenever W_hat >= 0 on
// the slice) and is widened if the kernel dips negative. Returns the signed
// root.
double branch_root(const PotentialModel& model, int axis, double c, double t, int side) {
  auto R = [&](double y) { return slice_residual(model, axis, c, t, side * y); };

  const double r0 = R(0.0);
  if (!(r0 < 0.0))
    throw NoRootError("no branch crossing at t = " + std::to_string(t) +
                      " (R(t,0) >= 0; speed below the local crossing regime)");

  double hi = 1.001 * std::sqrt(std::max(c * t, c * t - t * t));
  int expand = 0;
  while (R(hi) <= 0.0) {
    if (++expand > 8)
      throw NoRootError("bracket expansion exhausted at t = " + std::to_string(t));
    hi *= 2.0;
  }

  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 2.0 * std::numeric_limits<double>::epsilon() * hi;
       ++it) {
    const double mid = 0.5 * (lo + hi);
    if (R(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double y = 0.5 * (lo + hi);

  for (int it = 0; it < 3; ++it) {
    const double d = slice_residual_dy(model, axis, t, side * y) * side;
    if (d == 0.0 || !std::isfinite(d)) break;
    const double step = R(y) / d;
    const double y_next = y - step;
    if (y_next > lo && y_next < hi) y = y_next;
  }
  return side * y;
}

// Extrapolation in t^2 on a ratio-2 geometric grid: one Richardson stage
// removes the t^2 term, the second the t^4 term.
struct Extrapolated {
  double value = 0.0;
  double step_change = 0.0;
};

Extrapolated richardson(const std::vector<double>& q) {
  std::vector<double> r1, r2;
  for (size_t k = 0; k + 1 < q.size(); ++k) r1.push_back(q[k + 1] + (q[k + 1] - q[k]) / 3.0);
  for (size_t k = 0; k + 1 < r1.size(); ++k)
    r2.push_back(r1[k + 1] + (r1[k + 1] - r1[k]) / 15.0);
  Extrapolated e;
  const std::vector<double>& best = r2.size() >= 2 ? r2 : (r1.size() >= 2 ? r1 : q);
  e.value = best.back();
  e.step_change = std::abs(best.back() - best[best.size() - 2]);
  return e;
}

void fill_ell_fields(CurveTrace& trace) {
  std::vector<double> qp, qm;
  for (const auto& s : trace.samples) {
    qp.push_back(s.ratio_sq_plus());
    qm.push_back(s.ratio_sq_minus());
  }
  const Extrapolated ep = richardson(qp), em = richardson(qm);
  trace.ell_estimate = 0.5 * (ep.value + em.value);
  trace.ell_error = std::max({ep.step_change, em.step_change, 0.5 * std::abs(ep.value - em.value)});
  trace.branch_agreement = std::abs(qp.back() - qm.back());
}

}  // namespace

CurveTrace trace_gamma(const PotentialModel& model, int axis, double c,
                       const TraceOptions& opts) {
  if (axis < 2 || axis > model.dim())
    throw std::invalid_argument("trace axis must lie in {2..N}");
  if (!(c > 0.0)) throw std::invalid_argument("trace requires c > 0");
  if (!(opts.t_min > 0.0) || !(opts.t_min < opts.t_max))
    throw std::invalid_argument("trace requires 0 < t_min < t_max");

  CurveTrace trace;
  trace.axis = axis;
  trace.c = c;

  for (int k = 0; k < opts.count; ++k) {
    const double t = opts.t_max * std::pow(2.0, -k);
    if (t < opts.t_min) break;
    TraceSample s;
    s.t = t;
    s.gamma_plus = branch_root(model, axis, c, t, +1);
    s.gamma_minus = branch_root(model, axis, c, t, -1);
    s.residual_plus = slice_residual(model, axis, c, t, s.gamma_plus);
    s.residual_minus = slice_residual(model, axis, c, t, s.gamma_minus);
    const double budget = 1e-10 * (1.0 + t * t * t * t + c * c * t * t);
    if (std::abs(s.residual_plus) > budget || std::abs(s.residual_minus) > budget)
      throw NoRootError("root residual above tolerance at t = " + std::to_string(t));
    if (!trace.samples.empty()) {
      // Branch-jump guard: the ratio sequence of one smooth branch cannot
      // jump by orders of magnitude between halved t values.
      const double q_prev = trace.samples.back().ratio_sq_plus();
      const double q_cur = s.ratio_sq_plus();
      if (q_prev > 0 && q_cur > 0 &&
          std::abs(std::log(q_cur / q_prev)) > std::log(16.0))
        throw LostBranchError("continuation jumped branches near t = " + std::to_string(t));
    }
    trace.samples.push_back(s);
  }

  if (trace.samples.size() < 4)
    throw NoRootError("fewer than 4 trace samples between t_min and t_max");
  fill_ell_fields(trace);
  return trace;
}

double estimate_ell(const CurveTrace& trace) {
  if (trace.samples.size() < 4)
    throw std::invalid_argument("ell extrapolation needs at least 4 samples");
  std::vector<double> qp, qm;
  for (const auto& s : trace.samples) {
    qp.push_back(s.ratio_sq_plus());
    qm.push_back(s.ratio_sq_minus());
  }
  const Extrapolated ep = richardson(qp), em = richardson(qm);
  const double scale = std::max(std::abs(ep.value), std::abs(em.value));
  if (std::abs(ep.value - em.value) > std::max(1e-6, 1e-3 * scale))
    throw BranchMismatchError("branch limits disagree: " + std::to_string(ep.value) + " vs " +
                              std::to_string(em.value));
  return 0.5 * (ep.value + em.value);
}

MorseCheck morse_crosscheck(const PotentialModel& model, double c, const TraceOptions& opts) {
  MorseCheck check;
  const SonicData sonic = sonic_speed(model);
  if (!sonic.defined || !(c > sonic.c_s)) return check;  // not applicable
  check.applicable = true;
  check.predicted = sonic.alpha(c);
  for (int j = 2; j <= model.dim(); ++j) {
    const CurveTrace trace = trace_gamma(model, j, c, opts);
    const double ell = estimate_ell(trace);
    check.traced.push_back(ell);
    check.max_abs_diff = std::max(check.max_abs_diff, std::abs(ell - check.predicted));
  }
  return check;
}

EllEqualityReport check_ell_equality(const PotentialModel& model, double c,
                                     const TraceOptions& opts) {
  if (!(c > 0.0)) throw std::invalid_argument("requires c > 0");
  EllEqualityReport rep;
  for (int j = 2; j <= model.dim(); ++j) {
    const CurveTrace trace = trace_gamma(model, j, c, opts);
    rep.ells.push_back(estimate_ell(trace));
  }
  const auto [lo, hi] = std::minmax_element(rep.ells.begin(), rep.ells.end());
  rep.max_spread = *hi - *lo;
  rep.all_positive = *lo > 0.0;
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  rep.equal = rep.max_spread <= std::max(1e-6, 1e-3 * scale);
  return rep;
}

void write_trace_csv(std::ostream& os, const CurveTrace& trace) {
  os << "t,gamma_plus,gamma_minus,residual_plus,residual_minus,ratio_sq_plus,ratio_sq_minus\n";
  char line[256];
  for (const auto& s : trace.samples) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t,
                  s.gamma_plus, s.gamma_minus, s.residual_plus, s.residual_minus,
                  s.ratio_sq_plus(), s.ratio_sq_minus());
    os << line;
  }
}

}  // namespace gpnex
