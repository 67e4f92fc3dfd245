#pragma once

#include <Eigen/Core>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpnex/errors.hpp"

namespace gpnex {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// ---------------------------------------------------------------------------
// Kernel specifications
// ---------------------------------------------------------------------------

enum class KernelKind { Delta, RadialSK, DeltaPlusF, Dipolar, CustomRadial };

const char* kernel_kind_name(KernelKind kind);
KernelKind kernel_kind_from_name(const std::string& name);  // throws ConfigError

// Declarative description of an interaction potential, given through its
// Fourier transform. Parameters by family:
//   delta:         a > 0                      W_hat = a
//   radial-sk:     a > 0, b > 0               W_hat = (1 + a|xi|^2)^(-b/2)
//   delta-plus-f:  epsilon >= 0               W_hat = 1 + eps pi^(N/2) e^(-|xi|^2/4)
//   dipolar:       a, b_tilde (dim must be 3) W_hat = a + b_tilde (3 xi3^2/|xi|^2 - 1)
//   custom-radial: table of (r, rho(r)), strictly increasing r
struct PotentialSpec {
  KernelKind kind = KernelKind::Delta;
  int dim = 3;
  std::map<std::string, double> params;
  std::vector<std::pair<double, double>> table;  // custom-radial only

  double param(const std::string& name) const;              // throws InvalidParameterError
  double param_or(const std::string& name, double def) const;
};

// 1-D profile of a radial transform: W_hat(xi) = rho(|xi|).
struct RadialProfile {
  std::function<double(double)> rho;
  std::function<double(double)> drho;
};

// Evaluator bundle for W_hat and its scaled gradient (xi_k d_k W_hat),
// plus the structural flags the certification routes depend on.
// Immutable after construction; evaluators are pure.
struct PotentialModel {
  PotentialSpec spec;
  std::function<double(const Vector&)> w_hat;
  std::function<Vector(const Vector&)> grad_scaled;
  bool radial = false;
  bool even_per_component = true;
  bool smooth_at_origin = false;
  std::optional<double> w_hat_origin;
  std::optional<RadialProfile> profile;

  int dim() const { return spec.dim; }
};

PotentialModel build_potential(const PotentialSpec& spec);

// Builds a radial model straight from analytic profile callbacks. Used for
// profiles that have no JSON representation (tests, library callers).
PotentialModel make_radial_model(std::function<double(double)> rho,
                                 std::function<double(double)> drho, int dim,
                                 bool smooth_at_origin = true);

double eval_w_hat(const PotentialModel& model, const Vector& xi);
Vector eval_grad_scaled(const PotentialModel& model, const Vector& xi);
std::optional<RadialProfile> radial_profile(const PotentialModel& model);

// ---------------------------------------------------------------------------
// Sampling grids
// ---------------------------------------------------------------------------

// Product grid of log-spaced radii and unit directions used to sample the
// almost-everywhere conditions. Directions always include the coordinate
// axes; for radial kernels the binding directions of the feasibility
// constraints are exactly the axes.
struct GridSpec {
  Vector radii;        // strictly increasing, positive
  Matrix directions;   // one unit vector per row
  double exclusion_radius = 0.0;

  int dim() const { return static_cast<int>(directions.cols()); }
  GridSpec refined(int radius_factor, int direction_factor) const;
};

GridSpec make_default_grid(const PotentialModel& model, int n_r = 200, int n_dir = 64);
Matrix unit_directions(int dim, int count);

// W_hat and grad_scaled evaluated over a grid, reusable across speeds.
struct GridSamples {
  std::vector<Vector> points;
  Vector w;     // W_hat(points[i])
  Matrix grad;  // row i = grad_scaled(points[i])
};

GridSamples sample_grid(const PotentialModel& model, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Sampled hypothesis validation
// ---------------------------------------------------------------------------

enum class CheckStatus { Pass, Fail, NotApplicable };

struct HypothesisCheck {
  CheckStatus status = CheckStatus::NotApplicable;
  Vector witness;       // worst point seen (empty when not applicable)
  double value = 0.0;   // offending / extremal value at the witness
  std::string note;
};

// Sampled validators for the standing assumptions on W_hat:
//   evenness            W_hat(xi) = W_hat(-xi)
//   boundedness         sup |W_hat| finite (L-infinity surrogate)
//   gradient_bounded    sup |xi_j d_k W_hat| finite
//   nonnegativity       W_hat >= 0
//   origin_regular      C^2 near 0 (stencil-stable Hessian) and W_hat(0) > 0
// These are grid-sampled validations, never proofs.
struct HypothesisReport {
  HypothesisCheck evenness;
  HypothesisCheck boundedness;
  HypothesisCheck gradient_bounded;
  HypothesisCheck nonnegativity;
  HypothesisCheck origin_regular;

  bool core_pass() const;  // evenness .. nonnegativity all pass
};

HypothesisReport check_hypotheses(const PotentialModel& model, const GridSpec& grid);

}  // namespace gpnex
