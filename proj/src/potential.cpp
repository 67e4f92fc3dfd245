#include "gpnex/potential.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>

namespace gpnex {

namespace {

constexpr double kPi = std::numbers::pi;

// Fritsch-Carlson monotone cubic interpolant for tabulated radial profiles.
// Piecewise Hermite with tangents clamped so the interpolant never overshoots
// monotone data. Constant extension outside the knot range (derivative 0).
struct MonotoneCubic {
  std::vector<double> x, y, m;  // knots, values, tangents

  static MonotoneCubic fit(const std::vector<std::pair<double, double>>& table) {
    MonotoneCubic c;
    const size_t n = table.size();
    c.x.resize(n);
    c.y.resize(n);
    c.m.assign(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      c.x[i] = table[i].first;
      c.y[i] = table[i].second;
    }
    std::vector<double> d(n - 1);  // secants
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (c.y[i + 1] - c.y[i]) / (c.x[i + 1] - c.x[i]);
    c.m[0] = d[0];
    c.m[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i)
      c.m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
    for (size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        c.m[i] = c.m[i + 1] = 0.0;
        continue;
      }
      const double alpha = c.m[i] / d[i];
      const double beta = c.m[i + 1] / d[i];
      const double s = alpha * alpha + beta * beta;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        c.m[i] = tau * alpha * d[i];
        c.m[i + 1] = tau * beta * d[i];
      }
    }
    return c;
  }

  size_t segment(double r) const {
    size_t hi = std::upper_bound(x.begin(), x.end(), r) - x.begin();
    if (hi == 0) hi = 1;
    if (hi >= x.size()) hi = x.size() - 1;
    return hi - 1;
  }

  double value(double r) const {
    if (r <= x.front()) return y.front();
    if (r >= x.back()) return y.back();
    const size_t i = segment(r);
    const double h = x[i + 1] - x[i], t = (r - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m[i] +
           (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * m[i + 1];
  }

  double derivative(double r) const {
    if (r < x.front() || r > x.back()) return 0.0;
    const size_t i = segment(r);
    const double h = x[i + 1] - x[i], t = (r - x[i]) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y[i] + (3 * t2 - 4 * t + 1) * h * m[i] +
            (-6 * t2 + 6 * t) * y[i + 1] + (3 * t2 - 2 * t) * h * m[i + 1]) /
           h;
  }
};

PotentialModel radial_model_from_profile(PotentialSpec spec, std::function<double(double)> rho,
                                         std::function<double(double)> drho,
                                         bool smooth_at_origin) {
  PotentialModel model;
  model.spec = std::move(spec);
  model.radial = true;
  model.even_per_component = true;
  model.smooth_at_origin = smooth_at_origin;
  if (smooth_at_origin) model.w_hat_origin = rho(0.0);
  model.profile = RadialProfile{rho, drho};
  model.w_hat = [rho](const Vector& xi) { return rho(xi.norm()); };
  model.grad_scaled = [rho, drho](const Vector& xi) {
    const double r = xi.norm();
    Vector g = Vector::Zero(xi.size());
    if (r == 0.0) return g;
    const double slope = drho(r) / r;
    for (Eigen::Index k = 0; k < xi.size(); ++k) g[k] = slope * xi[k] * xi[k];
    return g;
  };
  return model;
}

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
  return (splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Delta: return "delta";
    case KernelKind::RadialSK: return "radial-sk";
    case KernelKind::DeltaPlusF: return "delta-plus-f";
    case KernelKind::Dipolar: return "dipolar";
    case KernelKind::CustomRadial: return "custom-radial";
  }
  return "?";
}

KernelKind kernel_kind_from_name(const std::string& name) {
  if (name == "delta") return KernelKind::Delta;
  if (name == "radial-sk") return KernelKind::RadialSK;
  if (name == "delta-plus-f") return KernelKind::DeltaPlusF;
  if (name == "dipolar") return KernelKind::Dipolar;
  if (name == "custom-radial") return KernelKind::CustomRadial;
  throw ConfigError("unknown kernel kind: '" + name + "'");
}

double PotentialSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end())
    throw InvalidParameterError(std::string(kernel_kind_name(kind)) +
                                ": missing parameter '" + name + "'");
  return it->second;
}

double PotentialSpec::param_or(const std::string& name, double def) const {
  auto it = params.find(name);
  return it == params.end() ? def : it->second;
}

PotentialModel build_potential(const PotentialSpec& spec) {
  if (spec.dim < 2) throw UnsupportedDimensionError("dimension must be at least 2");

  switch (spec.kind) {
    case KernelKind::Delta: {
      const double a = spec.param("a");
      if (!(a > 0)) throw InvalidParameterError("delta: requires a > 0");
      return radial_model_from_profile(
          spec, [a](double) { return a; }, [](double) { return 0.0; }, true);
    }

    case KernelKind::RadialSK: {
      const double a = spec.param("a"), b = spec.param("b");
      if (!(a > 0) || !(b > 0)) throw InvalidParameterError("radial-sk: requires a > 0 and b > 0");
      auto rho = [a, b](double r) { return std::pow(1.0 + a * r * r, -b / 2.0); };
      auto drho = [a, b](double r) {
        return -a * b * r * std::pow(1.0 + a * r * r, -b / 2.0 - 1.0);
      };
      return radial_model_from_profile(spec, rho, drho, true);
    }

    case KernelKind::DeltaPlusF: {
      // W = delta + eps f with f(x) = exp(-|x|^2); W_hat = 1 + eps f_hat,
      // f_hat(xi) = pi^(N/2) exp(-|xi|^2/4).
      const double eps = spec.param("epsilon");
      if (!(eps >= 0)) throw InvalidParameterError("delta-plus-f: requires epsilon >= 0");
      const double amp = eps * std::pow(kPi, spec.dim / 2.0);
      auto rho = [amp](double r) { return 1.0 + amp * std::exp(-r * r / 4.0); };
      auto drho = [amp](double r) { return -amp * (r / 2.0) * std::exp(-r * r / 4.0); };
      return radial_model_from_profile(spec, rho, drho, true);
    }

    case KernelKind::Dipolar: {
      if (spec.dim != 3)
        throw UnsupportedDimensionError("dipolar: kernel is defined on R^3 only");
      const double a = spec.param("a");
      const double bt = spec.param("b_tilde");
      PotentialModel model;
      model.spec = spec;
      model.radial = false;
      model.even_per_component = true;
      model.smooth_at_origin = false;  // direction-dependent limit at 0
      model.w_hat = [a, bt](const Vector& xi) {
        const double n2 = xi.squaredNorm();
        return a + bt * (3.0 * xi[2] * xi[2] / n2 - 1.0);
      };
      model.grad_scaled = [bt](const Vector& xi) {
        const double n2 = xi.squaredNorm();
        const double u = xi[2] * xi[2] / n2;
        Vector g(3);
        g[0] = -6.0 * bt * u * (xi[0] * xi[0] / n2);
        g[1] = -6.0 * bt * u * (xi[1] * xi[1] / n2);
        g[2] = 6.0 * bt * u * (1.0 - u);
        return g;
      };
      return model;
    }

    case KernelKind::CustomRadial: {
      if (spec.table.size() < 2)
        throw InvalidParameterError("custom-radial: table needs at least 2 rows");
      for (size_t i = 0; i + 1 < spec.table.size(); ++i)
        if (!(spec.table[i].first < spec.table[i + 1].first))
          throw InvalidParameterError("custom-radial: radii must be strictly increasing");
      if (spec.table.front().first < 0)
        throw InvalidParameterError("custom-radial: radii must be nonnegative");
      auto interp = std::make_shared<MonotoneCubic>(MonotoneCubic::fit(spec.table));
      const bool smooth = spec.table.front().first == 0.0;
      return radial_model_from_profile(
          spec, [interp](double r) { return interp->value(r); },
          [interp](double r) { return interp->derivative(r); }, smooth);
    }
  }
  throw InvalidParameterError("unknown kernel kind");
}

PotentialModel make_radial_model(std::function<double(double)> rho,
                                 std::function<double(double)> drho, int dim,
                                 bool smooth_at_origin) {
  if (dim < 2) throw UnsupportedDimensionError("dimension must be at least 2");
  PotentialSpec spec;
  spec.kind = KernelKind::CustomRadial;
  spec.dim = dim;
  return radial_model_from_profile(std::move(spec), std::move(rho), std::move(drho),
                                   smooth_at_origin);
}

double eval_w_hat(const PotentialModel& model, const Vector& xi) {
  if (!model.smooth_at_origin && xi.norm() == 0.0)
    throw OriginEvaluationError("W_hat is not defined at xi = 0 for this kernel");
  return model.w_hat(xi);
}

Vector eval_grad_scaled(const PotentialModel& model, const Vector& xi) {
  if (xi.norm() == 0.0)
    throw OriginEvaluationError("scaled gradient requested at xi = 0");
  return model.grad_scaled(xi);
}

std::optional<RadialProfile> radial_profile(const PotentialModel& model) {
  if (!model.radial) return std::nullopt;
  return model.profile;
}

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

Matrix unit_directions(int dim, int count) {
  Matrix dirs(count + dim, dim);
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * kPi * i / count;
      dirs(i, 0) = std::cos(th);
      dirs(i, 1) = std::sin(th);
    }
  } else if (dim == 3) {
    // Fibonacci sphere
    const double ga = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = ga * i;
      dirs(i, 0) = rxy * std::cos(phi);
      dirs(i, 1) = rxy * std::sin(phi);
      dirs(i, 2) = z;
    }
  } else {
    // deterministic low-discrepancy-ish directions via a fixed-seed stream
    uint64_t state = 0x5eedu + static_cast<uint64_t>(dim);
    for (int i = 0; i < count; ++i) {
      Vector v(dim);
      for (int k = 0; k < dim; ++k) {
        const double u1 = std::max(uniform01(state), 1e-12);
        const double u2 = uniform01(state);
        v[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
      }
      const double n = v.norm();
      if (n > 0)
        dirs.row(i) = (v / n).transpose();
      else
        dirs.row(i) = Vector::Unit(dim, 0).transpose();
    }
  }
  for (int k = 0; k < dim; ++k) dirs.row(count + k) = Vector::Unit(dim, k).transpose();
  return dirs;
}

GridSpec make_default_grid(const PotentialModel& model, int n_r, int n_dir) {
  GridSpec grid;
  const double r_min = 1e-3, r_max = 1e3;
  grid.radii.resize(n_r);
  for (int i = 0; i < n_r; ++i)
    grid.radii[i] = r_min * std::pow(r_max / r_min, n_r == 1 ? 0.0 : double(i) / (n_r - 1));
  grid.directions = unit_directions(model.dim(), n_dir);
  grid.exclusion_radius = model.smooth_at_origin ? 0.0 : 1e-6;
  return grid;
}

GridSpec GridSpec::refined(int radius_factor, int direction_factor) const {
  GridSpec fine;
  fine.exclusion_radius = exclusion_radius;
  const int n_r = static_cast<int>(radii.size()) * radius_factor;
  const double r_min = radii[0], r_max = radii[radii.size() - 1];
  fine.radii.resize(n_r);
  for (int i = 0; i < n_r; ++i)
    fine.radii[i] = r_min * std::pow(r_max / r_min, n_r == 1 ? 0.0 : double(i) / (n_r - 1));
  const int sphere = static_cast<int>(directions.rows()) - dim();
  fine.directions = unit_directions(dim(), sphere * direction_factor);
  return fine;
}

GridSamples sample_grid(const PotentialModel& model, const GridSpec& grid) {
  GridSamples out;
  const int n_r = static_cast<int>(grid.radii.size());
  const int n_d = static_cast<int>(grid.directions.rows());
  out.points.reserve(static_cast<size_t>(n_r) * n_d);
  std::vector<double> w;
  std::vector<Vector> g;
  for (int i = 0; i < n_r; ++i) {
    const double r = grid.radii[i];
    if (r <= grid.exclusion_radius) continue;
    for (int j = 0; j < n_d; ++j) {
      Vector xi = r * grid.directions.row(j).transpose();
      out.points.push_back(xi);
      w.push_back(model.w_hat(xi));
      g.push_back(model.grad_scaled(xi));
    }
  }
  out.w = Eigen::Map<Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
  out.grad.resize(static_cast<Eigen::Index>(g.size()), model.dim());
  for (size_t i = 0; i < g.size(); ++i) out.grad.row(static_cast<Eigen::Index>(i)) = g[i];
  return out;
}

// ---------------------------------------------------------------------------
// Hypothesis checks
// ---------------------------------------------------------------------------

namespace {

HypothesisCheck check_evenness(const PotentialModel& model, const GridSamples& s) {
  HypothesisCheck c;
  c.status = CheckStatus::Pass;
  double worst = 0.0;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const double diff = std::abs(model.w_hat(-s.points[i]) - s.w[static_cast<Eigen::Index>(i)]);
    if (diff > worst) {
      worst = diff;
      c.witness = s.points[i];
      c.value = diff;
    }
    if (diff > 1e-10 * (1.0 + std::abs(s.w[static_cast<Eigen::Index>(i)]))) {
      c.status = CheckStatus::Fail;
      c.note = "W_hat(xi) != W_hat(-xi)";
    }
  }
  return c;
}

HypothesisCheck check_boundedness(const GridSamples& s) {
  HypothesisCheck c;
  c.status = CheckStatus::Pass;
  double worst = -1.0;
  for (size_t i = 0; i < s.points.size(); ++i) {
    const double v = std::abs(s.w[static_cast<Eigen::Index>(i)]);
    if (!std::isfinite(v) || v > worst) {
      worst = v;
      c.witness = s.points[i];
      c.value = s.w[static_cast<Eigen::Index>(i)];
    }
    if (!std::isfinite(v) || v > 1e12) {
      c.status = CheckStatus::Fail;
      c.note = "sampled |W_hat| unbounded";
      return c;
    }
  }
  return c;
}

HypothesisCheck check_gradient_bounded(const PotentialModel& model, const GridSpec& grid,
                                       const GridSamples& s) {
  HypothesisCheck c;
  c.status = CheckStatus::Pass;
  double worst = -1.0;
  if (model.radial && model.profile) {
    // |xi_j d_k W_hat| = |rho'(r)| |xi_j xi_k| / r <= |rho'(r)| r on the sphere
    for (Eigen::Index i = 0; i < grid.radii.size(); ++i) {
      const double r = grid.radii[i];
      const double v = std::abs(model.profile->drho(r)) * r;
      if (!std::isfinite(v) || v > worst) {
        worst = v;
        c.witness = Vector::Unit(model.dim(), 0) * r;
        c.value = v;
      }
    }
  } else {
    const int n = model.dim();
    for (const auto& xi : s.points) {
      const double h = 1e-6 * std::max(1.0, xi.norm());
      for (int k = 0; k < n; ++k) {
        Vector xp = xi, xm = xi;
        xp[k] += h;
        xm[k] -= h;
        const double dk = (model.w_hat(xp) - model.w_hat(xm)) / (2 * h);
        for (int j = 0; j < n; ++j) {
          const double v = std::abs(xi[j] * dk);
          if (!std::isfinite(v) || v > worst) {
            worst = v;
            c.witness = xi;
            c.value = v;
          }
        }
      }
    }
  }
  if (!std::isfinite(worst) || worst > 1e12) {
    c.status = CheckStatus::Fail;
    c.note = "sampled |xi_j d_k W_hat| unbounded";
  }
  return c;
}

HypothesisCheck check_nonnegativity(const GridSamples& s) {
  HypothesisCheck c;
  c.status = CheckStatus::Pass;
  double lo = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.points.size(); ++i) {
    const double v = s.w[static_cast<Eigen::Index>(i)];
    if (v < lo) {
      lo = v;
      c.witness = s.points[i];
      c.value = v;
    }
  }
  if (lo < -1e-12) {
    c.status = CheckStatus::Fail;
    c.note = "W_hat < 0 at sampled point";
  }
  return c;
}

HypothesisCheck check_origin_regular(const PotentialModel& model) {
  HypothesisCheck c;
  if (!model.smooth_at_origin || !model.w_hat_origin) {
    c.status = CheckStatus::Fail;
    c.note = "transform has no continuous value at the origin";
    return c;
  }
  const double w0 = *model.w_hat_origin;
  if (!(w0 > 0)) {
    c.status = CheckStatus::Fail;
    c.value = w0;
    c.note = "W_hat(0) <= 0";
    c.witness = Vector::Zero(model.dim());
    return c;
  }
  // Second differences must stabilize across shrinking stencils. The 1e-6
  // floor keeps zero-Hessian kernels from tripping on rounding noise.
  const double scales[3] = {1e-2, 1e-3, 1e-4};
  const double floor_tol = 1e-6 * std::max(1.0, std::abs(w0));
  const int n = model.dim();
  c.status = CheckStatus::Pass;
  c.witness = Vector::Zero(n);
  c.value = w0;
  auto second_diff = [&](int i, int j, double h) {
    if (i == j) {
      Vector p = Vector::Zero(n);
      p[i] = h;
      return (model.w_hat(p) - 2 * w0 + model.w_hat(-p)) / (h * h);
    }
    Vector pp = Vector::Zero(n), pm = Vector::Zero(n);
    pp[i] = h;
    pp[j] = h;
    pm[i] = h;
    pm[j] = -h;
    return (model.w_hat(pp) - model.w_hat(pm) - model.w_hat(-pm) + model.w_hat(-pp)) /
           (4 * h * h);
  };
  for (int i = 0; i < n && c.status == CheckStatus::Pass; ++i) {
    for (int j = i; j < n && c.status == CheckStatus::Pass; ++j) {
      double d[3];
      for (int k = 0; k < 3; ++k) d[k] = second_diff(i, j, scales[k]);
      for (int k = 0; k + 1 < 3; ++k) {
        const double tol = 0.05 * std::max({std::abs(d[k]), std::abs(d[k + 1]), floor_tol});
        if (std::abs(d[k] - d[k + 1]) > tol) {
          c.status = CheckStatus::Fail;
          c.value = d[k + 1] - d[k];
          c.note = "Hessian stencil unstable near the origin";
        }
      }
    }
  }
  return c;
}

}  // namespace

bool HypothesisReport::core_pass() const {
  auto ok = [](const HypothesisCheck& c) { return c.status == CheckStatus::Pass; };
  return ok(evenness) && ok(boundedness) && ok(gradient_bounded) && ok(nonnegativity);
}

HypothesisReport check_hypotheses(const PotentialModel& model, const GridSpec& grid) {
  HypothesisReport rep;
  const GridSamples s = sample_grid(model, grid);
  rep.evenness = check_evenness(model, s);
  rep.boundedness = check_boundedness(s);
  rep.gradient_bounded = check_gradient_bounded(model, grid, s);
  rep.nonnegativity = check_nonnegativity(s);
  rep.origin_regular = check_origin_regular(model);
  return rep;
}

}  // namespace gpnex
