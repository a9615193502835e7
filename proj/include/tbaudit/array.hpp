#ifndef TBAUDIT_ARRAY_HPP
#define TBAUDIT_ARRAY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tbaudit/dual.hpp"

namespace tbaudit {

/// Dense row-major array of fixed rank and runtime extents.
///
/// Component tables in this library are small (n ≤ 4 in practice, rank ≤ 5),
/// so a flat std::vector with computed strides is all that is needed.
template <class T, std::size_t Rank>
class Array {
 public:
  using value_type = T;
  using extents_type = std::array<std::size_t, Rank>;

  Array() = default;

  explicit Array(const extents_type& extents, const T& fill = T{})
      : extents_(extents), data_(count(extents), fill) {}

  template <class... E>
    requires(sizeof...(E) == Rank && (std::is_integral_v<E> && ...))
  explicit Array(E... extents)
      : Array(extents_type{static_cast<std::size_t>(extents)...}) {}

  /// Equal extents along every axis.
  static Array cube(std::size_t n, const T& fill = T{}) {
    extents_type e;
    e.fill(n);
    return Array(e, fill);
  }

  template <class... I>
    requires(sizeof...(I) == Rank)
  T& operator()(I... idx) {
    return data_[offset(static_cast<std::size_t>(idx)...)];
  }
  template <class... I>
    requires(sizeof...(I) == Rank)
  const T& operator()(I... idx) const {
    return data_[offset(static_cast<std::size_t>(idx)...)];
  }

  [[nodiscard]] const extents_type& extents() const { return extents_; }
  [[nodiscard]] std::size_t extent(std::size_t axis) const { return extents_[axis]; }
  [[nodiscard]] std::size_t size() const { return data_.size(); }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  friend bool operator==(const Array&, const Array&) = default;

 private:
  static std::size_t count(const extents_type& e) {
    return std::accumulate(e.begin(), e.end(), std::size_t{1}, std::multiplies<>());
  }

  template <class... I>
  std::size_t offset(I... idx) const {
    std::array<std::size_t, Rank> ix{idx...};
    std::size_t off = 0;
    for (std::size_t a = 0; a < Rank; ++a) off = off * extents_[a] + ix[a];
    return off;
  }

  extents_type extents_{};
  std::vector<T> data_;
};

template <class T>
using Matrix = Array<T, 2>;

/// Real parts of a (possibly dual-valued) array.
template <class T, std::size_t R>
Array<double, R> values_of(const Array<T, R>& a) {
  Array<double, R> out(a.extents());
  std::transform(a.begin(), a.end(), out.begin(), [](const T& x) { return value_of(x); });
  return out;
}

/// ε-parts of a dual-valued array.
template <class T, std::size_t R>
Array<T, R> derivatives_of(const Array<Dual<T>, R>& a) {
  Array<T, R> out(a.extents());
  std::transform(a.begin(), a.end(), out.begin(), [](const Dual<T>& x) { return x.d; });
  return out;
}

template <class T, std::size_t R>
Array<T, R> reals_of(const Array<Dual<T>, R>& a) {
  Array<T, R> out(a.extents());
  std::transform(a.begin(), a.end(), out.begin(), [](const Dual<T>& x) { return x.v; });
  return out;
}

template <std::size_t R>
double max_abs(const Array<double, R>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

template <std::size_t R>
double max_abs_diff(const Array<double, R>& a, const Array<double, R>& b) {
  if (a.extents() != b.extents()) throw std::invalid_argument("max_abs_diff: extent mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

template <class T>
Matrix<T> identity(std::size_t n) {
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
  return m;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t r = a.extent(0), k = a.extent(1), c = b.extent(1);
  if (b.extent(0) != k) throw std::invalid_argument("matmul: inner extent mismatch");
  Matrix<T> out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      T s(0.0);
      for (std::size_t m = 0; m < k; ++m) s += a(i, m) * b(m, j);
      out(i, j) = s;
    }
  return out;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> out(a.extent(1), a.extent(0));
  for (std::size_t i = 0; i < a.extent(0); ++i)
    for (std::size_t j = 0; j < a.extent(1); ++j) out(j, i) = a(i, j);
  return out;
}

/// Lower Cholesky factor of a symmetric matrix; nullopt unless positive definite.
/// Works for dual scalars: pivots are tested on the real part.
template <class T>
std::optional<Matrix<T>> cholesky(const Matrix<T>& a) {
  using std::sqrt;
  const std::size_t n = a.extent(0);
  Matrix<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(value_of(diag) > 0.0) || !std::isfinite(value_of(diag))) return std::nullopt;
    l(j, j) = sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

/// Inverse of a symmetric positive-definite matrix via Cholesky.
/// The result is symmetrised exactly.
template <class T>
Matrix<T> spd_inverse(const Matrix<T>& a) {
  const std::size_t n = a.extent(0);
  auto l = cholesky(a);
  if (!l) throw std::domain_error("spd_inverse: matrix is not positive definite");
  // Solve L Lᵀ X = I column by column.
  Matrix<T> inv(n, n);
  std::vector<T> z(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      T s = (i == c) ? T(1.0) : T(0.0);
      for (std::size_t k = 0; k < i; ++k) s -= (*l)(i, k) * z[k];
      z[i] = s / (*l)(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      T s = z[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= (*l)(k, ii) * inv(k, c);
      inv(ii, c) = s / (*l)(ii, ii);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) inv(j, i) = inv(i, j);
  return inv;
}

}  // namespace tbaudit

#endif  // TBAUDIT_ARRAY_HPP
