#include "kropina/profile.hpp"

#include <charconv>
#include <cmath>
#include <span>
#include <sstream>

#include "kropina/errors.hpp"
#include "kropina/fd_oracle.hpp"

namespace kropina {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + fmt(v[k]);
  return s;
}

}  // namespace

ProfileFunction ProfileFunction::linear(double slope, double intercept, Interval interval) {
  return ProfileFunction(
      "linear:" + fmt(slope) + "," + fmt(intercept),
      [slope, intercept](const auto& x) { return slope * x + intercept; },
      [slope](const auto& x) { return 0.0 * x + slope; }, [](const auto& x) { return 0.0 * x; }, interval);
}

ProfileFunction ProfileFunction::polynomial(std::vector<double> coeffs, Interval interval) {
  if (coeffs.empty()) throw ConfigError("polynomial profile needs at least one coefficient");
  std::vector<double> d1, d2;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d1.push_back(static_cast<double>(k) * coeffs[k]);
  for (std::size_t k = 1; k < d1.size(); ++k) d2.push_back(static_cast<double>(k) * d1[k]);
  const auto horner = [](std::vector<double> c) {
    return [c](const auto& x) {
      using S = std::decay_t<decltype(x)>;
      S r = 0.0 * x;
      for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
      return r;
    };
  };
  const std::string spec = "poly:" + join(coeffs);
  return ProfileFunction(spec, horner(coeffs), horner(d1), horner(d2), interval);
}

ProfileFunction ProfileFunction::logarithmic(double scale, double shift, Interval interval) {
  return ProfileFunction(
      "log:" + fmt(scale) + "," + fmt(shift), [scale, shift](const auto& x) { return scale * log(x) + shift; },
      [scale](const auto& x) { return scale / x; }, [scale](const auto& x) { return -scale / (x * x); }, interval);
}

ProfileFunction ProfileFunction::power(double a, double p, double c, Interval interval) {
  return ProfileFunction(
      "power:" + fmt(a) + "," + fmt(p) + "," + fmt(c), [a, p, c](const auto& x) { return a * pow(x, p) + c; },
      [a, p](const auto& x) { return (a * p) * pow(x, p - 1.0); },
      [a, p](const auto& x) { return (a * p * (p - 1.0)) * pow(x, p - 2.0); }, interval);
}

ProfileFunction ProfileFunction::cone(double c, Interval interval) {
  ProfileFunction p = linear(1.0 / std::sqrt(2.0), c, interval);
  p.spec_ = "cone:" + fmt(c);
  return p;
}

ProfileFunction ProfileFunction::with_interval(Interval interval) const {
  ProfileFunction p = *this;
  p.interval_ = interval;
  p.validate();
  return p;
}

ProfileValues ProfileFunction::at(double x1) const {
  if (!interval_.contains(x1)) {
    throw DomainError("profile " + spec_, x1,
                      "outside the working interval [" + fmt(interval_.lo) + ", " + fmt(interval_.hi) + "]");
  }
  return {f<double>(x1), df<double>(x1), d2f<double>(x1)};
}

void ProfileFunction::validate() const {
  if (!(interval_.lo > 0.0) || !(interval_.hi > interval_.lo)) {
    throw ConfigError("profile " + spec_ + ": working interval must satisfy 0 < lo < hi");
  }
  constexpr int kSamples = 11;
  const FdOracle oracle;
  for (int k = 0; k < kSamples; ++k) {
    const double x = interval_.lo + (interval_.hi - interval_.lo) * k / (kSamples - 1);
    const double fx = f<double>(x);
    if (!(fx > 0.0)) throw DomainError("profile " + spec_, fx, "f must be positive at x1 = " + fmt(x));
    const double pt[1] = {x};
    const auto fd1 = oracle.derivatives([this](std::span<const double> s) { return f<double>(s[0]); }, pt, 1);
    const auto fd2 = oracle.derivatives([this](std::span<const double> s) { return df<double>(s[0]); }, pt, 1);
    const double d1 = df<double>(x);
    const double d2 = d2f<double>(x);
    if (std::abs(d1 - fd1.grad[0]) > 1e-6 * std::max(1.0, std::abs(d1))) {
      throw ConfigError("profile " + spec_ + ": f' disagrees with differences of f at x1 = " + fmt(x));
    }
    if (std::abs(d2 - fd2.grad[0]) > 1e-5 * std::max(1.0, std::abs(d2))) {
      throw ConfigError("profile " + spec_ + ": f'' disagrees with differences of f' at x1 = " + fmt(x));
    }
  }
}

ProfileFunction parse_profile(const std::string& spec, Interval interval) {
  const auto fail = [&spec](std::size_t column, const std::string& what) -> ConfigError {
    return ConfigError("profile spec '" + spec + "', column " + std::to_string(column + 1) + ": " + what);
  };
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw fail(spec.size(), "expected '<kind>:<numbers>'");
  const std::string kind = spec.substr(0, colon);

  struct Shape {
    const char* kind;
    std::vector<const char*> fields;  // empty: variadic (poly)
  };
  static const Shape shapes[] = {{"linear", {"slope", "intercept"}},
                                 {"poly", {}},
                                 {"log", {"scale", "shift"}},
                                 {"power", {"a", "p", "c"}},
                                 {"cone", {"c"}}};
  const Shape* shape = nullptr;
  for (const Shape& s : shapes)
    if (kind == s.kind) shape = &s;
  if (!shape) throw fail(0, "unknown profile kind '" + kind + "' (expected linear, poly, log, power or cone)");

  std::vector<double> values;
  std::size_t pos = colon + 1;
  while (true) {
    const std::size_t end = std::min(spec.find(',', pos), spec.size());
    const std::string field = shape->fields.empty() ? "c" + std::to_string(values.size())
                              : values.size() < shape->fields.size() ? shape->fields[values.size()]
                                                                     : "";
    if (field.empty()) throw fail(pos, "too many values for '" + kind + "'");
    double v = 0.0;
    const char* first = spec.data() + pos;
    const char* last = spec.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw fail(pos, "expected a number for field '" + field + "'");
    }
    values.push_back(v);
    if (end == spec.size()) break;
    pos = end + 1;
  }
  if (!shape->fields.empty() && values.size() != shape->fields.size()) {
    throw fail(spec.size(), "missing value for field '" + std::string(shape->fields[values.size()]) + "'");
  }

  if (kind == "linear") return ProfileFunction::linear(values[0], values[1], interval);
  if (kind == "poly") return ProfileFunction::polynomial(values, interval);
  if (kind == "log") return ProfileFunction::logarithmic(values[0], values[1], interval);
  if (kind == "power") return ProfileFunction::power(values[0], values[1], values[2], interval);
  return ProfileFunction::cone(values[0], interval);
}

}  // namespace kropina
