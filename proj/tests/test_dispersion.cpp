#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "gpnex/dispersion.hpp"

using namespace gpnex;

namespace {

PotentialModel make(KernelKind kind, int dim, std::map<std::string, double> params) {
  PotentialSpec spec;
  spec.kind = kind;
  spec.dim = dim;
  spec.params = std::move(params);
  return build_potential(spec);
}

// Closed-form branch for a slice on which the transform is the constant w0:
// the quartic is quadratic in s = t^2 + y^2, so
//   y(t) = sqrt(-w0 - t^2 + sqrt(w0^2 + c^2 t^2)).
double constant_slice_branch(double w0, double c, double t) {
  return std::sqrt(-w0 - t * t + std::sqrt(w0 * w0 + c * c * t * t));
}

// Closed-form branch for the anisotropic kernel's (e1, e3) slice.
double dipolar_branch3(double a, double bt, double c, double t) {
  return std::sqrt(-t * t - a - 2 * bt +
                   std::sqrt(6 * bt * t * t + (a + 2 * bt) * (a + 2 * bt) + c * c * t * t));
}

}  // namespace

TEST_CASE("dispersion relation values") {
  const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
  Vector xi(2);
  xi << 1.0, 0.0;
  CHECK(omega_squared(delta, xi) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(omega_squared(delta, Vector::Zero(2)) == 0.0);

  const PotentialModel sk = make(KernelKind::RadialSK, 3, {{"a", 1.0}, {"b", 2.0}});
  Vector e1 = Vector::Unit(3, 0);
  // |xi|^4 + 2 W_hat |xi|^2 = 1 + 2 * 0.5, checked against plain arithmetic
  CHECK(omega_squared(sk, e1) == doctest::Approx(1.0 + 2.0 * 0.5).epsilon(1e-15));

  const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}});
  CHECK_THROWS_AS(omega_squared(dip, Vector::Zero(3)), OriginEvaluationError);
}

TEST_CASE("sonic speed per family") {
  CHECK(sonic_speed(make(KernelKind::Delta, 2, {{"a", 2.0}})).c_s ==
        doctest::Approx(2.0).epsilon(1e-15));
  const SonicData sk = sonic_speed(make(KernelKind::RadialSK, 3, {{"a", 1.0}, {"b", 7.0}}));
  CHECK(sk.defined);
  CHECK(sk.c_s == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(!sonic_speed(make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}})).defined);
}

TEST_CASE("sonic scaling: c_s(delta(lambda a)) = sqrt(lambda) c_s(delta(a))") {
  const double base = sonic_speed(make(KernelKind::Delta, 2, {{"a", 1.7}})).c_s;
  for (double lambda : {0.25, 4.0}) {
    const double scaled =
        sonic_speed(make(KernelKind::Delta, 2, {{"a", 1.7 * lambda}})).c_s;
    CHECK(scaled == doctest::Approx(std::sqrt(lambda) * base).epsilon(1e-14));
  }
}

TEST_CASE("alpha_c sign characterizes supersonic speeds") {
  const SonicData sonic = sonic_speed(make(KernelKind::Delta, 2, {{"a", 1.0}}));
  CHECK(sonic.alpha(sonic.c_s) == doctest::Approx(0.0));
  CHECK(sonic.alpha(2.0) == doctest::Approx(1.0));
  CHECK(sonic.alpha(1.0) < 0.0);
}

TEST_CASE("delta trace matches the constant-slice closed form") {
  const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
  TraceOptions opts;
  opts.t_max = 0.1;  // puts t = 0.1 on the grid
  const CurveTrace trace = trace_gamma(delta, 2, 2.0, opts);
  CHECK(trace.samples[0].t == doctest::Approx(0.1));
  CHECK(trace.samples[0].gamma_plus == doctest::Approx(0.0990147).epsilon(1e-5));
  for (const auto& s : trace.samples) {
    CHECK(s.gamma_plus ==
          doctest::Approx(constant_slice_branch(1.0, 2.0, s.t)).epsilon(1e-12));
  }
}

TEST_CASE("dipolar axis-3 trace matches its explicit branch") {
  const double a = 1.0, bt = 0.25;
  const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", a}, {"b_tilde", bt}});
  for (double c : {std::sqrt(3.0), 2.0, 3.0}) {
    const CurveTrace trace = trace_gamma(dip, 3, c);
    for (const auto& s : trace.samples) {
      const double closed = dipolar_branch3(a, bt, c, s.t);
      CHECK(s.gamma_plus == doctest::Approx(closed).epsilon(1e-6));
    }
  }
}

TEST_CASE("branch symmetry for per-component-even kernels") {
  const std::vector<PotentialModel> models = {
      make(KernelKind::RadialSK, 3, {{"a", 1.0}, {"b", 2.0}}),
      make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}}),
  };
  for (const auto& model : models) {
    for (int axis = 2; axis <= 3; ++axis) {
      const CurveTrace trace = trace_gamma(model, axis, 2.0);
      for (const auto& s : trace.samples)
        CHECK(std::abs(s.gamma_minus + s.gamma_plus) <= 1e-12 * std::abs(s.gamma_plus));
    }
  }
}

TEST_CASE("kept samples satisfy the residual budget") {
  const PotentialModel sk = make(KernelKind::RadialSK, 2, {{"a", 1.0}, {"b", 1.0}});
  for (double c : {1.6, 2.0, 70.0}) {
    const CurveTrace trace = trace_gamma(sk, 2, c);
    CHECK(trace.samples.size() == 12);
    for (const auto& s : trace.samples) {
      const double budget = 1e-10 * (1.0 + std::pow(s.t, 4) + c * c * s.t * s.t);
      CHECK(std::abs(s.residual_plus) <= budget);
      CHECK(std::abs(s.residual_minus) <= budget);
    }
  }
}

TEST_CASE("no-root error below the crossing regime") {
  const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
  CHECK_THROWS_AS(trace_gamma(delta, 2, 1.0, {}), NoRootError);  // c < c_s
}

TEST_CASE("ell extrapolation: closed-form limits") {
  const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
  // alpha_c for the constant transform: c^2/(2a) - 1
  CHECK(estimate_ell(trace_gamma(delta, 2, 2.0)) == doctest::Approx(1.0).epsilon(1e-8));

  const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}});
  // axis 2 slice is the constant 0.75, so the limit is c^2/1.5 - 1
  CHECK(estimate_ell(trace_gamma(dip, 2, 2.0)) == doctest::Approx(5.0 / 3.0).epsilon(1e-8));
  CHECK(estimate_ell(trace_gamma(dip, 2, std::sqrt(3.0))) == doctest::Approx(1.0).epsilon(1e-8));
  // axis 3: -1 + (6 bt + c^2)/(2 (a + 2 bt))
  CHECK(estimate_ell(trace_gamma(dip, 3, 2.0)) == doctest::Approx(5.0 / 6.0).epsilon(1e-8));
  CHECK(estimate_ell(trace_gamma(dip, 3, std::sqrt(3.0))) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("estimate_ell requires at least 4 samples") {
  const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
  CurveTrace trace = trace_gamma(delta, 2, 2.0);
  trace.samples.resize(3);
  CHECK_THROWS_AS(estimate_ell(trace), std::invalid_argument);
}

TEST_CASE("branch mismatch detected for a kernel that is even only jointly") {
  // W_hat = 1 + eps xi1 xi2 / |xi|^2 is even under xi -> -xi but not in each
  // component, so the two branch limits of the axis-2 slice differ.
  PotentialModel model;
  model.spec.dim = 2;
  model.radial = false;
  model.even_per_component = false;
  model.smooth_at_origin = false;
  const double eps = 0.5;
  model.w_hat = [eps](const Vector& xi) {
    return 1.0 + eps * xi[0] * xi[1] / xi.squaredNorm();
  };
  model.grad_scaled = [eps](const Vector& xi) {
    const double n2 = xi.squaredNorm();
    const double x = xi[0], y = xi[1];
    Vector g(2);
    // xi_k d_k of (x y / n2)
    g[0] = eps * x * (y * n2 - x * y * 2.0 * x) / (n2 * n2);
    g[1] = eps * y * (x * n2 - x * y * 2.0 * y) / (n2 * n2);
    return g;
  };
  const CurveTrace trace = trace_gamma(model, 2, 2.0);
  CHECK(trace.branch_agreement > 0.1);
  CHECK_THROWS_AS(estimate_ell(trace), BranchMismatchError);
}

TEST_CASE("Morse cross-check for origin-regular kernels") {
  SUBCASE("radial-sk at c = 2") {
    const PotentialModel sk = make(KernelKind::RadialSK, 2, {{"a", 1.0}, {"b", 1.0}});
    const MorseCheck check = morse_crosscheck(sk, 2.0);
    REQUIRE(check.applicable);
    CHECK(check.predicted == doctest::Approx(1.0));
    CHECK(check.max_abs_diff <= 1e-4);
  }
  SUBCASE("delta at c = 1.5") {
    const PotentialModel delta = make(KernelKind::Delta, 2, {{"a", 1.0}});
    const MorseCheck check = morse_crosscheck(delta, 1.5);
    REQUIRE(check.applicable);
    CHECK(check.predicted == doctest::Approx(0.125));
    CHECK(check.traced[0] == doctest::Approx(0.125).epsilon(1e-6));
  }
  SUBCASE("not applicable without a sonic speed") {
    const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}});
    CHECK(!morse_crosscheck(dip, 2.0).applicable);
  }
}

TEST_CASE("ell equality across axes") {
  SUBCASE("radial models: identical slices") {
    const PotentialModel sk = make(KernelKind::RadialSK, 3, {{"a", 1.0}, {"b", 2.0}});
    const EllEqualityReport rep = check_ell_equality(sk, 1.6);
    REQUIRE(rep.ells.size() == 2);
    CHECK(rep.equal);
    CHECK(rep.all_positive);
    CHECK(rep.max_spread <= 1e-12);
  }
  SUBCASE("anisotropic kernel: limits differ at every admissible speed") {
    const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}});
    const EllEqualityReport at2 = check_ell_equality(dip, 2.0);
    CHECK(!at2.equal);
    CHECK(at2.all_positive);
    CHECK(at2.ells[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-6));
    CHECK(at2.ells[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-6));

    const EllEqualityReport at_sqrt3 = check_ell_equality(dip, std::sqrt(3.0));
    CHECK(!at_sqrt3.equal);
    CHECK(at_sqrt3.ells[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(at_sqrt3.ells[1] == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("trace CSV schema") {
  const PotentialModel dip = make(KernelKind::Dipolar, 3, {{"a", 1.0}, {"b_tilde", 0.25}});
  std::ostringstream os;
  write_trace_csv(os, trace_gamma(dip, 3, 2.0));
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header ==
        "t,gamma_plus,gamma_minus,residual_plus,residual_minus,ratio_sq_plus,ratio_sq_minus");
  int rows = 0;
  for (std::string line; std::getline(is, line);) ++rows;
  CHECK(rows == 12);
}
