#include "gpnex/quadrature.hpp"

#include <cmath>

namespace gpnex {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  if (depth <= 0) return left + right;
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw DivergentQuadratureError("non-finite integrand");
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, fm, whole, tol, 48);
}

double integrate_halfline(const std::function<double(double)>& f, double tol) {
  double total = adaptive_simpson(f, 0.0, 1.0, tol);
  double lo = 1.0;
  int quiet_panels = 0;
  while (quiet_panels < 2) {
    const double hi = 2.0 * lo;
    const double part = adaptive_simpson(f, lo, hi, tol);
    if (!std::isfinite(part)) throw DivergentQuadratureError("non-finite panel");
    total += part;
    quiet_panels = std::abs(part) <= tol * (1.0 + std::abs(total)) ? quiet_panels + 1 : 0;
    lo = hi;
    if (lo > 1e9) throw DivergentQuadratureError("tail of the integrand does not decay");
  }
  return total;
}

}  // namespace gpnex
