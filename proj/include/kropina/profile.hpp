#pragma once

// Profile curves f(x1) > 0 of surfaces of revolution. Each profile carries an
// analytic triple (f, f', f'') written as generic expressions, so the same
// profile can be evaluated on doubles and on jets (the pullback metric is
// differentiated through f).

#include <string>
#include <utility>
#include <vector>

#include "kropina/scalar.hpp"

namespace kropina {

struct Interval {
  double lo = 0.1;
  double hi = 5.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct ProfileValues {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
};

class ProfileFunction {
 public:
  // f, df, d2f: generic callables S(const S&). The triple is checked at
  // construction: f > 0 on the interval, df against central differences of f
  // (1e-6) and d2f against central differences of df (1e-5). Violations throw
  // DomainError (f <= 0) or ConfigError (inconsistent derivatives).
  template <class F, class DF, class D2F>
  ProfileFunction(std::string spec, F f, DF df, D2F d2f, Interval interval = {})
      : spec_(std::move(spec)), f_(std::move(f)), df_(std::move(df)), d2f_(std::move(d2f)), interval_(interval) {
    validate();
  }

  static ProfileFunction linear(double slope, double intercept, Interval interval = {});
  // coeffs[k] multiplies x^k.
  static ProfileFunction polynomial(std::vector<double> coeffs, Interval interval = {});
  // scale ln(x) + shift
  static ProfileFunction logarithmic(double scale, double shift, Interval interval = {});
  // a x^p + c
  static ProfileFunction power(double a, double p, double c, Interval interval = {});
  // The minimal-cone generator x / sqrt(2) + c.
  static ProfileFunction cone(double c = 0.0, Interval interval = {});

  const std::string& spec() const { return spec_; }
  const Interval& interval() const { return interval_; }
  ProfileFunction with_interval(Interval interval) const;

  template <class S>
  S f(const S& x) const {
    return f_.template eval<S>(x);
  }
  template <class S>
  S df(const S& x) const {
    return df_.template eval<S>(x);
  }
  template <class S>
  S d2f(const S& x) const {
    return d2f_.template eval<S>(x);
  }

  // Analytic triple at x1; throws DomainError outside the working interval.
  ProfileValues at(double x1) const;

 private:
  void validate() const;

  std::string spec_;
  PolyFn<UnarySig> f_;
  PolyFn<UnarySig> df_;
  PolyFn<UnarySig> d2f_;
  Interval interval_;
};

// Parses "linear:slope,intercept", "poly:c0,c1,...", "log:scale,shift",
// "power:a,p,c" or "cone:c". Errors are ConfigErrors naming the column and
// the field that failed.
ProfileFunction parse_profile(const std::string& spec, Interval interval = {});

}  // namespace kropina
