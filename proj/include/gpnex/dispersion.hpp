#pragma once

#include <iosfwd>
#include <vector>

#include "gpnex/potential.hpp"

namespace gpnex {

// ---------------------------------------------------------------------------
// Sonic speed and the dispersion relation
// ---------------------------------------------------------------------------

// Long-wave phase speed sqrt(2 W_hat(0)). Undefined for kernels without a
// continuous positive value at the origin; "undefined" is a value, not an
// error.
struct SonicData {
  bool defined = false;
  double c_s = 0.0;

  // alpha(c) = c^2/c_s^2 - 1; positive exactly above the sonic speed.
  double alpha(double c) const { return c * c / (c_s * c_s) - 1.0; }
};

SonicData sonic_speed(const PotentialModel& model);

// omega(xi)^2 = |xi|^4 + 2 W_hat(xi) |xi|^2
double omega_squared(const PotentialModel& model, const Vector& xi);

// ---------------------------------------------------------------------------
// Slice curves gamma_{j,c} and their limits
// ---------------------------------------------------------------------------

// Transform restricted to the (e1, e_axis) plane, axis in {2..N}:
//   slice_w(nu1, nu2) = W_hat(nu1 e1 + nu2 e_axis).
double slice_w(const PotentialModel& model, int axis, double nu1, double nu2);

// R(t, y) = (t^2+y^2)^2 + 2 w(t,y) (t^2+y^2) - c^2 t^2; the branch set in the
// slice plane is its zero set.
double slice_residual(const PotentialModel& model, int axis, double c, double t, double y);

struct TraceSample {
  double t = 0;
  double gamma_plus = 0, gamma_minus = 0;
  double residual_plus = 0, residual_minus = 0;

  double ratio_sq_plus() const { return (gamma_plus / t) * (gamma_plus / t); }
  double ratio_sq_minus() const { return (gamma_minus / t) * (gamma_minus / t); }
};

struct TraceOptions {
  double t_min = 1e-4;
  double t_max = 0.3;
  int count = 12;  // geometric grid t_max * 2^{-k}
};

struct CurveTrace {
  int axis = 2;
  double c = 0.0;
  std::vector<TraceSample> samples;  // t strictly decreasing
  double ell_estimate = 0.0;         // extrapolated limit of (gamma/t)^2
  double ell_error = 0.0;            // last-step extrapolation change
  double branch_agreement = 0.0;     // |q+ - q-| at the smallest t
};

// Traces both branches (y > 0 and y < 0 roots of R) on the geometric t-grid
// with continuation; each root is bracketed, bisected to machine precision
// and Newton-polished. Throws NoRootError / LostBranchError.
CurveTrace trace_gamma(const PotentialModel& model, int axis, double c,
                       const TraceOptions& opts = {});

// Richardson extrapolation (in t^2) of both branch ratio sequences; requires
// at least 4 in-tolerance samples and branch limits that agree.
// Throws BranchMismatchError when the branch limits differ beyond tolerance.
double estimate_ell(const CurveTrace& trace);

// Compares the traced limits against alpha_c for every axis. Only applicable
// above a defined sonic speed.
struct MorseCheck {
  bool applicable = false;
  double predicted = 0.0;          // alpha_c
  std::vector<double> traced;      // per axis j = 2..N
  double max_abs_diff = 0.0;
};

MorseCheck morse_crosscheck(const PotentialModel& model, double c,
                            const TraceOptions& opts = {});

// Necessary-condition check: the per-axis limits of an admissible speed must
// coincide. "equal" uses relative tolerance 1e-3 with absolute floor 1e-6.
struct EllEqualityReport {
  std::vector<double> ells;  // j = 2..N
  bool all_positive = false;
  bool equal = false;
  double max_spread = 0.0;
};

EllEqualityReport check_ell_equality(const PotentialModel& model, double c,
                                     const TraceOptions& opts = {});

// CSV export: t, gamma_plus, gamma_minus, residual_plus, residual_minus,
// ratio_sq_plus, ratio_sq_minus.
void write_trace_csv(std::ostream& os, const CurveTrace& trace);

}  // namespace gpnex
