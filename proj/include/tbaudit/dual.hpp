#ifndef TBAUDIT_DUAL_HPP
#define TBAUDIT_DUAL_HPP

#include <cmath>
#include <ostream>
#include <type_traits>

namespace tbaudit {

/// Forward-mode dual number a + b·ε with ε² = 0.
///
/// Nesting is the mechanism for higher derivatives: Dual<Dual<double>>
/// carries mixed second derivatives when the inner and outer parts are
/// seeded along different directions. All arithmetic is written once for
/// any inner scalar, so every geometric routine templated on its scalar
/// differentiates itself.
template <class T>
struct Dual {
  using value_type = T;

  T v{};  ///< real part
  T d{};  ///< ε coefficient

  constexpr Dual() = default;
  constexpr Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  // Implicit lift of constants (double, int, or the inner scalar type).
  template <class U>
    requires std::is_convertible_v<const U&, T>
  constexpr Dual(const U& value) : v(static_cast<T>(value)), d(0.0) {}

  constexpr Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    *this = *this / o;
    return *this;
  }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.v;
    return {a.v * inv, (a.d * b.v - a.v * b.d) * inv * inv};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend constexpr Dual operator+(const Dual& a) { return a; }

  friend Dual sin(const Dual& a) {
    using std::cos;
    using std::sin;
    return {sin(a.v), a.d * cos(a.v)};
  }
  friend Dual cos(const Dual& a) {
    using std::cos;
    using std::sin;
    return {cos(a.v), -(a.d * sin(a.v))};
  }
  friend Dual tan(const Dual& a) {
    using std::cos;
    using std::tan;
    T c = cos(a.v);
    return {tan(a.v), a.d / (c * c)};
  }
  friend Dual exp(const Dual& a) {
    using std::exp;
    T e = exp(a.v);
    return {e, a.d * e};
  }
  friend Dual log(const Dual& a) {
    using std::log;
    return {log(a.v), a.d / a.v};
  }
  friend Dual sqrt(const Dual& a) {
    using std::sqrt;
    T s = sqrt(a.v);
    return {s, a.d / (T(2.0) * s)};
  }
  friend Dual pow(const Dual& a, double p) {
    using std::pow;
    return {pow(a.v, p), a.d * (p * pow(a.v, p - 1.0))};
  }
  friend Dual atan2(const Dual& y, const Dual& x) {
    using std::atan2;
    T r2 = x.v * x.v + y.v * y.v;
    return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
  }

  friend std::ostream& operator<<(std::ostream& os, const Dual& a) {
    return os << '(' << a.v << " + " << a.d << "e)";
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};
template <class T>
inline constexpr bool is_dual_v = is_dual<T>::value;

/// Innermost real part of a (possibly nested) dual number.
inline constexpr double value_of(double x) { return x; }
template <class T>
constexpr double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

/// Number of nesting levels: 0 for double.
template <class T>
inline constexpr int dual_depth = 0;
template <class T>
inline constexpr int dual_depth<Dual<T>> = 1 + dual_depth<T>;

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

}  // namespace tbaudit

#endif  // TBAUDIT_DUAL_HPP
