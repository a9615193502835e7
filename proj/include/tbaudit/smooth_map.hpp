#ifndef TBAUDIT_SMOOTH_MAP_HPP
#define TBAUDIT_SMOOTH_MAP_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "tbaudit/dual.hpp"

namespace tbaudit {

/// Scalars every smooth map can be evaluated at. Three nesting levels cover
/// the deepest chain used here (bundle curvature differentiates a connection
/// built from base curvature, i.e. third derivatives of the base metric).
template <class T>
concept SupportedScalar = std::is_same_v<T, double> || std::is_same_v<T, D1> ||
                          std::is_same_v<T, D2> || std::is_same_v<T, D3>;

/// Element type of the span a generic lambda receives.
template <class Span>
using scalar_of = std::remove_cvref_t<typename std::remove_cvref_t<Span>::value_type>;

/// Thrown by generic code that would need a deeper nesting than supported.
struct NestingDepthError : std::logic_error {
  NestingDepthError() : std::logic_error("derivative order exceeds supported dual nesting depth") {}
};

template <class T>
using SmoothFn = std::function<std::vector<T>(std::span<const T>)>;

/// Type-erased smooth map ℝ^in → ℝ^out, evaluable at every SupportedScalar.
///
/// Built from a generic callable `f(std::span<const T>) -> std::vector<T>`;
/// one instantiation is stored per scalar type, so automatic
/// differentiation is just evaluation at a dual argument.
class SmoothMap {
 public:
  SmoothMap() = default;

  template <class F>
  SmoothMap(std::size_t in_dim, std::size_t out_dim, F f)
      : in_dim_(in_dim),
        out_dim_(out_dim),
        fns_(wrap<double>(f), wrap<D1>(f), wrap<D2>(f), wrap<D3>(f)) {}

  [[nodiscard]] std::size_t in_dim() const { return in_dim_; }
  [[nodiscard]] std::size_t out_dim() const { return out_dim_; }
  [[nodiscard]] bool valid() const { return static_cast<bool>(std::get<0>(fns_)); }

  template <SupportedScalar T>
  std::vector<T> operator()(std::span<const T> x) const {
    if (x.size() != in_dim_) throw std::invalid_argument("SmoothMap: input dimension mismatch");
    auto out = std::get<SmoothFn<T>>(fns_)(x);
    if (out.size() != out_dim_) throw std::logic_error("SmoothMap: output dimension mismatch");
    return out;
  }
  template <SupportedScalar T>
  std::vector<T> operator()(const std::vector<T>& x) const {
    return (*this)(std::span<const T>(x));
  }

 private:
  template <class T, class F>
  static SmoothFn<T> wrap(const F& f) {
    return [f](std::span<const T> x) -> std::vector<T> { return f(x); };
  }

  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
  std::tuple<SmoothFn<double>, SmoothFn<D1>, SmoothFn<D2>, SmoothFn<D3>> fns_;
};

/// x + ε·direction, lifted one nesting level.
template <class T>
std::vector<Dual<T>> seed_direction(std::span<const T> x, std::span<const T> direction) {
  std::vector<Dual<T>> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = Dual<T>(x[k], direction[k]);
  return out;
}

/// x + ε·e_axis.
template <class T>
std::vector<Dual<T>> seed_axis(std::span<const T> x, std::size_t axis) {
  std::vector<Dual<T>> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = Dual<T>(x[k], k == axis ? T(1.0) : T(0.0));
  return out;
}

template <class T>
std::vector<T> lift_constant(std::span<const double> x) {
  return std::vector<T>(x.begin(), x.end());
}

}  // namespace tbaudit

#endif  // TBAUDIT_SMOOTH_MAP_HPP
