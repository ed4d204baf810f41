#pragma once

// Scalar search primitives shared by the pump, mean-photon-number and
// distance solvers.

#include <cmath>
#include <utility>

namespace dpsrk {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section maximization of a unimodal `f` on [lo, hi], shrinking the
// bracket until its width is below `tol`. The endpoints are also evaluated;
// ties resolve toward the smaller abscissa.
template <class F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  if (!(hi > lo)) {
    return {lo, f(lo)};
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    // >= keeps the left sub-bracket on ties.
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (a + b);
  ScalarOptimum best{lo, f(lo)};
  for (const double x : {mid, hi}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

template <class F>
ScalarOptimum golden_section_minimize(F&& f, double lo, double hi, double tol) {
  auto negated = [&f](double x) { return -f(x); };
  ScalarOptimum r = golden_section_maximize(negated, lo, hi, tol);
  r.value = -r.value;
  return r;
}

// Given pred(lo) == true and pred(hi) == false, narrows the transition to a
// bracket narrower than `tol` and returns its true side.
template <class Pred>
double bisect_last_true(Pred&& pred, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace dpsrk
