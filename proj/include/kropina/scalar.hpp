#pragma once

// Scalar types used to evaluate metrics, profiles and densities, and a
// type-erased wrapper that holds one std::function per scalar type so a single
// generic lambda can be evaluated on doubles and on every jet the tensor
// pipelines need.

#include <array>
#include <functional>
#include <tuple>
#include <utility>

#include "kropina/diffkit.hpp"

namespace kropina {

template <class S>
using Vec2 = std::array<S, 2>;
template <class S>
using Vec3 = std::array<S, 3>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// Jets over the chart's tangent bundle: variables (x1, x2, y1, y2).
inline constexpr int kBundleVars = 4;
using Dual = Jet2<double, kBundleVars>;
using Dual3 = Jet3<double, kBundleVars>;
using DualDual = Jet2<Dual, kBundleVars>;

template <template <class> class Sig, class... Ts>
class BasicPolyFn {
 public:
  BasicPolyFn() = default;

  template <class G>
    requires(!std::is_same_v<std::decay_t<G>, BasicPolyFn>)
  explicit BasicPolyFn(G g) : fns_{std::function<Sig<Ts>>(g)...} {}

  template <class S, class... Args>
  S eval(Args&&... args) const {
    return std::get<std::function<Sig<S>>>(fns_)(std::forward<Args>(args)...);
  }

  explicit operator bool() const { return static_cast<bool>(std::get<0>(fns_)); }

 private:
  std::tuple<std::function<Sig<Ts>>...> fns_;
};

template <template <class> class Sig>
using PolyFn = BasicPolyFn<Sig, double, Dual, Dual3, DualDual>;

template <class S>
using UnarySig = S(const S&);
template <class S>
using PointSig = S(const Vec2<S>&);
template <class S>
using BundleSig = S(const Vec2<S>&, const Vec2<S>&);

}  // namespace kropina
