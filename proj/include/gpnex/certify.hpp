#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gpnex/dispersion.hpp"
#include "gpnex/potential.hpp"

namespace gpnex {

// Relative feasibility tolerance on unit-norm constraint rows.
constexpr double kFeasibilityTol = 1e-9;

// ---------------------------------------------------------------------------
// Multiplier certificates and the Farkas system
// ---------------------------------------------------------------------------

struct SigmaCertificate {
  Vector sigma;
  double ell = 0.0;
  double grid_margin = 0.0;        // min over the grid of the raw first-family lhs
  double normalized_margin = 0.0;  // min margin over unit-norm rows (both families)
  std::array<double, 3> sigma2_slacks{};  // three bracketed forms plus sum(sigma_k)
  int grid_points = 0;
};

// The (N+1)x(N+1) system behind the multiplier argument, with the dual-sign
// components (A^T sigma')_j that the second constraint family expands to.
struct FarkasSystem {
  int n = 0;
  double ell = 0.0;
  Matrix A;
  Vector sigma_prime;      // (sigma_1..sigma_N, -1)
  Vector dual_components;  // A^T sigma_prime
};

FarkasSystem build_farkas_system(int n, double ell, const Vector& sigma);

// Closed forms of the dual components; build_farkas_system checks its
// matrix-vector product against these.
Vector farkas_dual_closed_form(int n, double ell, const Vector& sigma);

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

enum class VerdictStatus { Certified, Inconclusive };
enum class Route { StaticC0, CorollaryGradient, CorollaryWindow, LpSigma, EllMismatch, None };

const char* route_name(Route route);
const char* verdict_status_name(VerdictStatus status);

struct SpeedVerdict {
  double c = 0.0;
  VerdictStatus status = VerdictStatus::Inconclusive;
  Route route = Route::None;
  std::optional<double> ell;
  // worst slack of the inequality behind the taken route: the first-family
  // grid margin for lp-sigma, the window/gradient slack for the corollaries,
  // the sign slack for the static route
  std::optional<double> margin;
  std::optional<SigmaCertificate> certificate;
  std::optional<EllEqualityReport> ell_report;
  std::vector<std::string> assumptions;  // non-empty whenever certified
  std::string detail;

  bool certified() const { return status == VerdictStatus::Certified; }
};

struct CertifyOptions {
  std::optional<GridSpec> grid;  // default model grid when absent
  TraceOptions trace;
  bool adapt_trace_span = true;  // shrink t_max into the root domain near onset
};

// ---------------------------------------------------------------------------
// Individual certification routes
// ---------------------------------------------------------------------------

// c = 0: certified when every scaled-gradient component is <= 0 on the grid
// (for radial models, when rho' <= 0 on the radius grid).
SpeedVerdict check_static(const PotentialModel& model, const GridSpec& grid);

// inf over r > 0 of rho(r) / (|rho'(r)| r), by golden-section refinement over
// a log radius grid plus extrapolated endpoint limits; +infinity when
// rho' vanishes identically. Throws NonRadialModelError.
double radial_inf_ratio(const PotentialModel& model);

// W_hat >= max{1, 2/(N-1)} sum_{k>=2} |xi_k d_k W_hat| + |xi_1 d_1 W_hat|,
// grid-sampled; radial fast path through radial_inf_ratio.
bool corollary_gradient_bound(const PotentialModel& model, const GridSpec& grid);

// alpha_c <= inf (N-1) W_hat / sum_{k>=2} |xi_k d_k W_hat| (radial fast path:
// the inf ratio); inf over an empty set is +infinity (always true).
bool corollary_speed_window(const PotentialModel& model, double c, const GridSpec& grid);

// Linear feasibility in sigma on the sampled grid:
//   W_hat + ell sum_{k>=2} sigma_k xi_k d_k W_hat - sigma_1 xi_1 d_1 W_hat >= 0
// at every grid point, plus the three bracketed constraints per j in {2..N}.
// Solved as a max-margin LP (dense two-phase simplex on the dual); absent when
// the sampled system is infeasible.
std::optional<SigmaCertificate> sigma_feasibility(const PotentialModel& model, double ell,
                                                  const GridSpec& grid);

struct SigmaVerification {
  double grid_margin = 0.0;
  double normalized_margin = 0.0;
  Vector worst_point;
  std::array<double, 3> sigma2_slacks{};
};

// Re-verifies a multiplier vector on a denser grid; reports the worst point.
SigmaVerification verify_sigma(const PotentialModel& model, double ell, const Vector& sigma,
                               const GridSpec& fine_grid);

// A certificate whose refined-grid margin flips sign beyond tolerance is
// downgraded to inconclusive.
bool refined_margin_downgrades(double fine_normalized_margin, double tol = kFeasibilityTol);

// ---------------------------------------------------------------------------
// Perturbation family bound
// ---------------------------------------------------------------------------

// Radial even profile f(|x|) with derivative, for the delta + eps f family.
struct PerturbationProfile {
  std::function<double(double)> f;
  std::function<double(double)> df;
};

PerturbationProfile gaussian_perturbation();  // f(x) = exp(-|x|^2)

struct EpsilonBound {
  double bound = 0.0;        // (4 ||f||_1 + sum_k ||x_k d_k f||_1)^{-1}
  double f_l1 = 0.0;         // ||f||_1
  double grad_l1_sum = 0.0;  // sum_k ||x_k d_k f||_1
  double integral_f = 0.0;   // signed integral of f
  int dim = 0;

  double sonic_speed(double eps) const;  // sqrt(2 + 2 eps integral_f)
};

EpsilonBound epsilon_bound(const PerturbationProfile& profile, int dim);

// ---------------------------------------------------------------------------
// Decision pipeline
// ---------------------------------------------------------------------------

// Route order: static (c = 0); sonic gate (never certifies c <= c_s); limit
// determination (alpha_c for origin-regular kernels, traced otherwise, with
// the mismatch route on unequal positive limits); corollary fast paths; the
// sigma LP with refined-grid verification.
SpeedVerdict certify_speed(const PotentialModel& model, double c,
                           const CertifyOptions& opts = {});

struct SweepReport {
  std::vector<SpeedVerdict> verdicts;
  std::vector<std::pair<double, double>> certified_intervals;  // maximal runs
  HypothesisReport hypotheses;
};

SweepReport sweep(const PotentialModel& model, const std::vector<double>& c_grid,
                  const CertifyOptions& opts = {});

}  // namespace gpnex
