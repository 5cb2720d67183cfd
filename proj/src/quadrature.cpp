#include "kropina/quadrature.hpp"

#include <cmath>

namespace kropina {

namespace {

// Never accept a panel above this depth: guards against symmetric integrands
// whose coarse and refined Simpson sums agree by accident.
constexpr int kMinDepth = 4;

struct Simpson {
  const std::function<double(double)>& f;
  QuadratureResult& out;
  int max_depth;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                 int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= kMinDepth && std::abs(delta) <= 15.0 * tol) {
      out.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
      out.converged = false;
      out.error_estimate += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
  QuadratureResult out;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  out.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Simpson s{f, out, max_depth};
  out.value = s.recurse(a, b, fa, fm, fb, whole, abs_tol, 0);
  return out;
}

}  // namespace kropina
