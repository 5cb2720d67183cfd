#pragma once

// Truncated multivariate Taylor jets (forward-mode differentiation).
//
// Jet2<T, N> carries value, gradient and Hessian of a scalar with respect to
// N seed variables; Jet3<T, N> additionally carries the third derivative
// tensor. Symmetric tensors are stored packed (one slot per sorted index
// tuple), so they are symmetric by construction.
//
// T is the coefficient type. T = double is the ordinary case; T = Jet2<double, M>
// nests jets, which gives mixed derivatives of derivatives (up to total order 4
// for Jet2<Jet2<double, M>, N>).

#include <array>
#include <cmath>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "kropina/errors.hpp"

namespace kropina {

inline constexpr int kMaxJetVars = 6;

namespace detail {

template <int N>
struct Packed2 {
  static constexpr int kSize = N * (N + 1) / 2;
  static constexpr int index(int a, int b) {
    if (a > b) std::swap(a, b);
    return a * N - a * (a - 1) / 2 + (b - a);
  }
};

template <int N>
struct Packed3 {
  static constexpr int kSize = N * (N + 1) * (N + 2) / 6;

  static constexpr std::array<int, N * N * N> make_table() {
    std::array<int, N * N * N> table{};
    int next = 0;
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b)
        for (int c = b; c < N; ++c) {
          const int perms[6][3] = {{a, b, c}, {a, c, b}, {b, a, c},
                                   {b, c, a}, {c, a, b}, {c, b, a}};
          for (const auto& p : perms) table[(p[0] * N + p[1]) * N + p[2]] = next;
          ++next;
        }
    return table;
  }

  static constexpr std::array<std::array<int, 3>, kSize> make_triples() {
    std::array<std::array<int, 3>, kSize> out{};
    int next = 0;
    for (int a = 0; a < N; ++a)
      for (int b = a; b < N; ++b)
        for (int c = b; c < N; ++c) out[next++] = {a, b, c};
    return out;
  }

  static constexpr std::array<int, N * N * N> table = make_table();
  static constexpr std::array<std::array<int, 3>, kSize> triples = make_triples();

  static constexpr int index(int a, int b, int c) { return table[(a * N + b) * N + c]; }
};

inline double ipow(double x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace detail

template <class T, int N>
struct Jet2;
template <class T, int N>
struct Jet3;

template <class T>
struct is_jet : std::false_type {};
template <class T, int N>
struct is_jet<Jet2<T, N>> : std::true_type {};
template <class T, int N>
struct is_jet<Jet3<T, N>> : std::true_type {};
template <class T>
inline constexpr bool is_jet_v = is_jet<T>::value;

// Innermost real value of a (possibly nested) jet.
inline double scalar_value(double v) { return v; }
template <class T, int N>
double scalar_value(const Jet2<T, N>& j);
template <class T, int N>
double scalar_value(const Jet3<T, N>& j);

template <class T, int N>
struct Jet2 {
  static_assert(N >= 1 && N <= kMaxJetVars, "jet arity must be in [1, 6]");
  static constexpr int kVars = N;
  using Coeff = T;
  using Hess = detail::Packed2<N>;

  T v{};
  std::array<T, N> g{};
  std::array<T, Hess::kSize> h{};

  Jet2() = default;
  Jet2(double c) : v(c) {}  // NOLINT: constants promote implicitly
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  Jet2(const T& c) : v(c) {}  // NOLINT

  static Jet2 variable(const T& value, int k) {
    Jet2 j(value);
    j.g[k] = T(1.0);
    return j;
  }

  const T& value() const { return v; }
  const T& grad(int a) const { return g[a]; }
  T& hess(int a, int b) { return h[Hess::index(a, b)]; }
  const T& hess(int a, int b) const { return h[Hess::index(a, b)]; }
};

template <class T, int N>
struct Jet3 {
  static_assert(N >= 1 && N <= kMaxJetVars, "jet arity must be in [1, 6]");
  static constexpr int kVars = N;
  using Coeff = T;
  using Third = detail::Packed3<N>;

  // Value, gradient and Hessian share the Jet2 representation and kernels.
  Jet2<T, N> low{};
  std::array<T, Third::kSize> t{};

  Jet3() = default;
  Jet3(double c) : low(c) {}  // NOLINT
  template <class U = T, std::enable_if_t<!std::is_same_v<U, double>, int> = 0>
  Jet3(const T& c) : low(c) {}  // NOLINT

  static Jet3 variable(const T& value, int k) {
    Jet3 j;
    j.low = Jet2<T, N>::variable(value, k);
    return j;
  }

  const T& value() const { return low.v; }
  const T& grad(int a) const { return low.g[a]; }
  const T& hess(int a, int b) const { return low.hess(a, b); }
  T& third(int a, int b, int c) { return t[Third::index(a, b, c)]; }
  const T& third(int a, int b, int c) const { return t[Third::index(a, b, c)]; }
};

template <class T, int N>
double scalar_value(const Jet2<T, N>& j) {
  return scalar_value(j.v);
}
template <class T, int N>
double scalar_value(const Jet3<T, N>& j) {
  return scalar_value(j.low.v);
}

// Seeds jets for the first values.size() variables: grad = unit vector,
// higher derivatives zero.
template <class J>
std::vector<J> seed(std::span<const double> values) {
  if (values.empty() || static_cast<int>(values.size()) > J::kVars ||
      static_cast<int>(values.size()) > kMaxJetVars) {
    throw DimensionError("seed: " + std::to_string(values.size()) +
                         " variables requested, jet supports 1.." + std::to_string(J::kVars));
  }
  std::vector<J> out;
  out.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) out.push_back(J::variable(values[k], static_cast<int>(k)));
  return out;
}

// ---------------------------------------------------------------------------
// Jet2 arithmetic

template <class T, int N>
Jet2<T, N> operator-(const Jet2<T, N>& a) {
  Jet2<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.g[i] = -a.g[i];
  for (std::size_t k = 0; k < a.h.size(); ++k) r.h[k] = -a.h[k];
  return r;
}

template <class T, int N>
Jet2<T, N> operator+(const Jet2<T, N>& a, const Jet2<T, N>& b) {
  Jet2<T, N> r;
  r.v = a.v + b.v;
  for (int i = 0; i < N; ++i) r.g[i] = a.g[i] + b.g[i];
  for (std::size_t k = 0; k < a.h.size(); ++k) r.h[k] = a.h[k] + b.h[k];
  return r;
}

template <class T, int N>
Jet2<T, N> operator-(const Jet2<T, N>& a, const Jet2<T, N>& b) {
  Jet2<T, N> r;
  r.v = a.v - b.v;
  for (int i = 0; i < N; ++i) r.g[i] = a.g[i] - b.g[i];
  for (std::size_t k = 0; k < a.h.size(); ++k) r.h[k] = a.h[k] - b.h[k];
  return r;
}

template <class T, int N>
Jet2<T, N> operator*(const Jet2<T, N>& a, const Jet2<T, N>& b) {
  Jet2<T, N> r;
  r.v = a.v * b.v;
  for (int i = 0; i < N; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      const int k = Jet2<T, N>::Hess::index(i, j);
      r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
    }
  return r;
}

// Scaling by a plain coefficient (double or T).
template <class T, int N, class S>
  requires(std::is_same_v<S, double> || std::is_same_v<S, T>)
Jet2<T, N> scale(const Jet2<T, N>& a, const S& s) {
  Jet2<T, N> r;
  r.v = a.v * s;
  for (int i = 0; i < N; ++i) r.g[i] = a.g[i] * s;
  for (std::size_t k = 0; k < a.h.size(); ++k) r.h[k] = a.h[k] * s;
  return r;
}

// Chain rule for a univariate function with derivatives f1, f2 at u.v.
template <class T, int N>
Jet2<T, N> chain(const Jet2<T, N>& u, const T& f0, const T& f1, const T& f2) {
  Jet2<T, N> r;
  r.v = f0;
  for (int i = 0; i < N; ++i) r.g[i] = f1 * u.g[i];
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      const int k = Jet2<T, N>::Hess::index(i, j);
      r.h[k] = f1 * u.h[k] + f2 * u.g[i] * u.g[j];
    }
  return r;
}

// ---------------------------------------------------------------------------
// Jet3 arithmetic

template <class T, int N>
Jet3<T, N> operator-(const Jet3<T, N>& a) {
  Jet3<T, N> r;
  r.low = -a.low;
  for (std::size_t k = 0; k < a.t.size(); ++k) r.t[k] = -a.t[k];
  return r;
}

template <class T, int N>
Jet3<T, N> operator+(const Jet3<T, N>& a, const Jet3<T, N>& b) {
  Jet3<T, N> r;
  r.low = a.low + b.low;
  for (std::size_t k = 0; k < a.t.size(); ++k) r.t[k] = a.t[k] + b.t[k];
  return r;
}

template <class T, int N>
Jet3<T, N> operator-(const Jet3<T, N>& a, const Jet3<T, N>& b) {
  Jet3<T, N> r;
  r.low = a.low - b.low;
  for (std::size_t k = 0; k < a.t.size(); ++k) r.t[k] = a.t[k] - b.t[k];
  return r;
}

template <class T, int N>
Jet3<T, N> operator*(const Jet3<T, N>& a, const Jet3<T, N>& b) {
  Jet3<T, N> r;
  r.low = a.low * b.low;
  const auto& A = a.low;
  const auto& B = b.low;
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    const auto [i, j, l] = Jet3<T, N>::Third::triples[k];
    r.t[k] = a.t[k] * B.v + A.hess(i, j) * B.g[l] + A.hess(i, l) * B.g[j] + A.hess(j, l) * B.g[i] +
             A.g[i] * B.hess(j, l) + A.g[j] * B.hess(i, l) + A.g[l] * B.hess(i, j) + A.v * b.t[k];
  }
  return r;
}

template <class T, int N, class S>
  requires(std::is_same_v<S, double> || std::is_same_v<S, T>)
Jet3<T, N> scale(const Jet3<T, N>& a, const S& s) {
  Jet3<T, N> r;
  r.low = scale(a.low, s);
  for (std::size_t k = 0; k < a.t.size(); ++k) r.t[k] = a.t[k] * s;
  return r;
}

template <class T, int N>
Jet3<T, N> chain(const Jet3<T, N>& u, const T& f0, const T& f1, const T& f2, const T& f3) {
  Jet3<T, N> r;
  r.low = chain(u.low, f0, f1, f2);
  const auto& U = u.low;
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    const auto [i, j, l] = Jet3<T, N>::Third::triples[k];
    r.t[k] = f1 * u.t[k] + f2 * (U.hess(i, j) * U.g[l] + U.hess(i, l) * U.g[j] + U.hess(j, l) * U.g[i]) +
             f3 * U.g[i] * U.g[j] * U.g[l];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Mixed operators (jet with double or coefficient type), shared by both jets.

template <class J>
concept AnyJet = is_jet_v<J>;

template <AnyJet J>
J operator+(const J& a, double c) {
  J r = a;
  if constexpr (requires { r.low; }) r.low.v = r.low.v + c;
  else r.v = r.v + c;
  return r;
}
template <AnyJet J>
J operator+(double c, const J& a) {
  return a + c;
}
template <AnyJet J>
J operator-(const J& a, double c) {
  return a + (-c);
}
template <AnyJet J>
J operator-(double c, const J& a) {
  return (-a) + c;
}
template <AnyJet J>
J operator*(const J& a, double c) {
  return scale(a, c);
}
template <AnyJet J>
J operator*(double c, const J& a) {
  return scale(a, c);
}

template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator+(const J& a, const typename J::Coeff& c) {
  return a + J(c);
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator+(const typename J::Coeff& c, const J& a) {
  return J(c) + a;
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator-(const J& a, const typename J::Coeff& c) {
  return a - J(c);
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator-(const typename J::Coeff& c, const J& a) {
  return J(c) - a;
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator*(const J& a, const typename J::Coeff& c) {
  return scale(a, c);
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator*(const typename J::Coeff& c, const J& a) {
  return scale(a, c);
}

// ---------------------------------------------------------------------------
// Elementary functions. Domain violations throw DomainError; the double
// overloads apply the same checks so generic code behaves identically for
// every scalar type.

inline double recip(double x) {
  if (x == 0.0) throw DomainError("division", x, "zero denominator");
  return 1.0 / x;
}
inline double sqrt(double x) {
  if (!(x > 0.0)) throw DomainError("sqrt", x, "requires a positive argument");
  return std::sqrt(x);
}
inline double log(double x) {
  if (!(x > 0.0)) throw DomainError("ln", x, "requires a positive argument");
  return std::log(x);
}
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double exp(double x) { return std::exp(x); }
inline double powi(double x, int n) {
  if (n < 0 && x == 0.0) throw DomainError("powi", x, "negative power of zero");
  return detail::ipow(x, n);
}
inline double pow(double x, double p) {
  if (!(x > 0.0)) throw DomainError("pow", x, "requires a positive base");
  return std::pow(x, p);
}

template <class T, int N>
Jet2<T, N> recip(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> sqrt(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> log(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> sin(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> cos(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> exp(const Jet2<T, N>& u);
template <class T, int N>
Jet2<T, N> powi(const Jet2<T, N>& u, int n);
template <class T, int N>
Jet2<T, N> pow(const Jet2<T, N>& u, double p);

template <class T, int N>
Jet2<T, N> recip(const Jet2<T, N>& u) {
  if (scalar_value(u) == 0.0) throw DomainError("division", 0.0, "zero denominator");
  const T r = kropina::recip(u.v);
  const T r2 = r * r;
  return chain(u, r, -r2, 2.0 * (r2 * r));
}
template <class T, int N>
Jet2<T, N> sqrt(const Jet2<T, N>& u) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("sqrt", x, "requires a positive argument");
  const T s = kropina::sqrt(u.v);
  const T inv = kropina::recip(s);
  return chain(u, s, 0.5 * inv, -0.25 * (inv * kropina::recip(u.v)));
}
template <class T, int N>
Jet2<T, N> log(const Jet2<T, N>& u) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("ln", x, "requires a positive argument");
  const T inv = kropina::recip(u.v);
  return chain(u, kropina::log(u.v), inv, -(inv * inv));
}
template <class T, int N>
Jet2<T, N> sin(const Jet2<T, N>& u) {
  const T s = kropina::sin(u.v);
  return chain(u, s, kropina::cos(u.v), -s);
}
template <class T, int N>
Jet2<T, N> cos(const Jet2<T, N>& u) {
  const T c = kropina::cos(u.v);
  return chain(u, c, -kropina::sin(u.v), -c);
}
template <class T, int N>
Jet2<T, N> exp(const Jet2<T, N>& u) {
  const T e = kropina::exp(u.v);
  return chain(u, e, e, e);
}
template <class T, int N>
Jet2<T, N> powi(const Jet2<T, N>& u, int n) {
  if (n == 0) return Jet2<T, N>(1.0);
  if (n < 0 && scalar_value(u) == 0.0) throw DomainError("powi", 0.0, "negative power of zero");
  const T f0 = kropina::powi(u.v, n);
  const T f1 = static_cast<double>(n) * kropina::powi(u.v, n - 1);
  const T f2 = static_cast<double>(n) * static_cast<double>(n - 1) * kropina::powi(u.v, n - 2);
  return chain(u, f0, f1, f2);
}
template <class T, int N>
Jet2<T, N> pow(const Jet2<T, N>& u, double p) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("pow", x, "requires a positive base");
  const T f0 = kropina::pow(u.v, p);
  const T f1 = p * kropina::pow(u.v, p - 1.0);
  const T f2 = p * (p - 1.0) * kropina::pow(u.v, p - 2.0);
  return chain(u, f0, f1, f2);
}

template <class T, int N>
Jet3<T, N> recip(const Jet3<T, N>& u) {
  if (scalar_value(u) == 0.0) throw DomainError("division", 0.0, "zero denominator");
  const T r = kropina::recip(u.low.v);
  const T r2 = r * r;
  return chain(u, r, -r2, 2.0 * (r2 * r), -6.0 * (r2 * r2));
}
template <class T, int N>
Jet3<T, N> sqrt(const Jet3<T, N>& u) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("sqrt", x, "requires a positive argument");
  const T s = kropina::sqrt(u.low.v);
  const T inv = kropina::recip(s);
  const T invx = kropina::recip(u.low.v);
  return chain(u, s, 0.5 * inv, -0.25 * (inv * invx), 0.375 * (inv * invx * invx));
}
template <class T, int N>
Jet3<T, N> log(const Jet3<T, N>& u) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("ln", x, "requires a positive argument");
  const T inv = kropina::recip(u.low.v);
  return chain(u, kropina::log(u.low.v), inv, -(inv * inv), 2.0 * (inv * inv * inv));
}
template <class T, int N>
Jet3<T, N> sin(const Jet3<T, N>& u) {
  const T s = kropina::sin(u.low.v);
  const T c = kropina::cos(u.low.v);
  return chain(u, s, c, -s, -c);
}
template <class T, int N>
Jet3<T, N> cos(const Jet3<T, N>& u) {
  const T c = kropina::cos(u.low.v);
  const T s = kropina::sin(u.low.v);
  return chain(u, c, -s, -c, s);
}
template <class T, int N>
Jet3<T, N> exp(const Jet3<T, N>& u) {
  const T e = kropina::exp(u.low.v);
  return chain(u, e, e, e, e);
}
template <class T, int N>
Jet3<T, N> powi(const Jet3<T, N>& u, int n) {
  if (n == 0) return Jet3<T, N>(1.0);
  if (n < 0 && scalar_value(u) == 0.0) throw DomainError("powi", 0.0, "negative power of zero");
  const double dn = n;
  const T f0 = kropina::powi(u.low.v, n);
  const T f1 = dn * kropina::powi(u.low.v, n - 1);
  const T f2 = dn * (dn - 1.0) * kropina::powi(u.low.v, n - 2);
  const T f3 = dn * (dn - 1.0) * (dn - 2.0) * kropina::powi(u.low.v, n - 3);
  return chain(u, f0, f1, f2, f3);
}
template <class T, int N>
Jet3<T, N> pow(const Jet3<T, N>& u, double p) {
  const double x = scalar_value(u);
  if (!(x > 0.0)) throw DomainError("pow", x, "requires a positive base");
  const T f0 = kropina::pow(u.low.v, p);
  const T f1 = p * kropina::pow(u.low.v, p - 1.0);
  const T f2 = p * (p - 1.0) * kropina::pow(u.low.v, p - 2.0);
  const T f3 = p * (p - 1.0) * (p - 2.0) * kropina::pow(u.low.v, p - 3.0);
  return chain(u, f0, f1, f2, f3);
}

template <AnyJet J>
J operator/(const J& a, const J& b) {
  return a * recip(b);
}
template <AnyJet J>
J operator/(const J& a, double c) {
  return a * kropina::recip(c);
}
template <AnyJet J>
J operator/(double c, const J& a) {
  return c * recip(a);
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator/(const J& a, const typename J::Coeff& c) {
  return a * J(kropina::recip(c));
}
template <AnyJet J>
  requires(!std::is_same_v<typename J::Coeff, double>)
J operator/(const typename J::Coeff& c, const J& a) {
  return J(c) * recip(a);
}

template <AnyJet J, class U>
J& operator+=(J& a, const U& b) {
  return a = a + b;
}
template <AnyJet J, class U>
J& operator-=(J& a, const U& b) {
  return a = a - b;
}
template <AnyJet J, class U>
J& operator*=(J& a, const U& b) {
  return a = a * b;
}
template <AnyJet J, class U>
J& operator/=(J& a, const U& b) {
  return a = a / b;
}

// Generic square; keeps expression code readable for every scalar type.
template <class S>
S sq(const S& x) {
  return x * x;
}

}  // namespace kropina
