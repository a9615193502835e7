#ifndef TBAUDIT_FIELDS_HPP
#define TBAUDIT_FIELDS_HPP

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbaudit/base_geometry.hpp"
#include "tbaudit/smooth_map.hpp"

namespace tbaudit {

/// A named smooth vector field on the base chart, with an optional guard
/// restricting where it may be evaluated.
struct NamedField {
  std::string name;
  SmoothMap field;
  std::function<bool(std::span<const double>)> guard;

  [[nodiscard]] bool admits(std::span<const double> x) const { return !guard || guard(x); }
};

inline const std::vector<std::string>& field_names() {
  static const std::vector<std::string> names = {"zero",   "constant", "translation", "linear",
                                                 "shear",  "rotational", "killing",   "gradient"};
  return names;
}

namespace detail {
inline bool is_sphere(const ChartedMetric& m) { return m.name().rfind("sphere", 0) == 0; }
inline bool is_half_plane(const ChartedMetric& m) { return m.name() == "hyperbolic_half_plane"; }
}  // namespace detail

/// Whether `name` is defined on charts of this metric.
inline bool field_applicable(const ChartedMetric& m, const std::string& name) {
  if (name == "shear" || name == "rotational") return m.dim() >= 2;
  for (const auto& f : field_names())
    if (f == name) return true;
  return false;
}

/// Default field set for an audit: every applicable named field.
inline std::vector<std::string> default_fields(const ChartedMetric& m) {
  std::vector<std::string> out;
  for (const auto& f : field_names())
    if (field_applicable(m, f)) out.push_back(f);
  return out;
}

/// Fields:
///   zero         X = 0
///   constant     X^i = 1, 1/2, 1/4, ... (constant components)
///   translation  X = ∂_1
///   linear       X = x¹ ∂_1
///   shear        X = x² ∂_1
///   rotational   X = −x² ∂_1 + x¹ ∂_2
///   killing      an isometry generator of the metric (∂_φ on the sphere,
///                the dilation x∂_x + y∂_y on the half-plane, ∂_1 otherwise)
///   gradient     grad of a height function (cos θ on the sphere, y on the
///                half-plane, ½|x|² otherwise)
inline NamedField make_field(const ChartedMetric& m, const std::string& name) {
  const std::size_t n = m.dim();
  if (!field_applicable(m, name)) throw std::invalid_argument("unknown or inapplicable field '" + name + "' for " + m.name());

  auto make = [&](auto f) { return NamedField{name, SmoothMap(n, n, f), nullptr}; };

  if (name == "zero")
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      return std::vector<T>(n, T(0.0));
    });
  if (name == "constant")
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      std::vector<T> v(n);
      double c = 1.0;
      for (std::size_t i = 0; i < n; ++i, c *= 0.5) v[i] = T(c);
      return v;
    });
  if (name == "translation" || (name == "killing" && !detail::is_sphere(m) && !detail::is_half_plane(m)))
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      std::vector<T> v(n, T(0.0));
      v[0] = T(1.0);
      return v;
    });
  if (name == "linear")
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      std::vector<T> v(n, T(0.0));
      v[0] = x[0];
      return v;
    });
  if (name == "shear")
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      std::vector<T> v(n, T(0.0));
      v[0] = x[1];
      return v;
    });
  if (name == "rotational")
    return make([n](auto x) {
      using T = scalar_of<decltype(x)>;
      std::vector<T> v(n, T(0.0));
      v[0] = -x[1];
      v[1] = x[0];
      return v;
    });
  if (name == "killing") {
    if (detail::is_sphere(m))
      return make([](auto x) {
        using T = scalar_of<decltype(x)>;
        return std::vector<T>{T(0.0), T(1.0)};
      });
    return make([](auto x) {
      using T = scalar_of<decltype(x)>;
      return std::vector<T>{x[0], x[1]};
    });
  }
  // gradient
  if (detail::is_sphere(m)) {
    // grad(R cos θ) = g^{θθ} ∂_θ(R cos θ) ∂_θ = −sin θ / R ∂_θ
    auto g0 = m.eval<double>(std::vector<double>{std::numbers::pi / 2, 0.0});
    const double radius = std::sqrt(g0(0, 0));
    return make([radius](auto x) {
      using T = scalar_of<decltype(x)>;
      using std::sin;
      return std::vector<T>{-sin(x[0]) / radius, T(0.0)};
    });
  }
  if (detail::is_half_plane(m))
    // grad y = y² ∂_y
    return make([](auto x) {
      using T = scalar_of<decltype(x)>;
      return std::vector<T>{T(0.0), x[1] * x[1]};
    });
  return make([](auto x) {
    using T = scalar_of<decltype(x)>;
    return std::vector<T>(x.begin(), x.end());
  });
}

}  // namespace tbaudit

#endif  // TBAUDIT_FIELDS_HPP
