#ifndef TBAUDIT_BUNDLE_FRAME_HPP
#define TBAUDIT_BUNDLE_FRAME_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/base_geometry.hpp"
#include "tbaudit/smooth_map.hpp"

namespace tbaudit {

// Frame indices run 0..n-1 for the horizontal fields X_(i) and n..2n-1 for
// the vertical fields X_(ī). Induced coordinates are q = (x¹..xⁿ, y¹..yⁿ).

/// A point (x, y) of the tangent bundle with its fiber scalars.
struct BundlePoint {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_lower;  ///< y_j = g_ji y^i
  double r2 = 0.0;              ///< g_ji y^j y^i
  double alpha = 1.0;           ///< 1 + r2

  [[nodiscard]] std::size_t dim() const { return x.size(); }
  [[nodiscard]] BasePoint base() const { return {x}; }
  [[nodiscard]] std::vector<double> coords() const {
    std::vector<double> q(x);
    q.insert(q.end(), y.begin(), y.end());
    return q;
  }
};

inline BundlePoint make_bundle_point(const ChartedMetric& m, std::vector<double> x, std::vector<double> y) {
  if (x.size() != m.dim() || y.size() != m.dim()) throw std::invalid_argument("make_bundle_point: dimension mismatch");
  require_domain(m, x);
  BundlePoint p;
  p.x = std::move(x);
  p.y = std::move(y);
  auto g = m.eval<double>(std::span<const double>(p.x));
  const std::size_t n = m.dim();
  p.y_lower.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p.y_lower[j] += g(j, i) * p.y[i];
  p.r2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) p.r2 += p.y_lower[j] * p.y[j];
  p.alpha = 1.0 + p.r2;
  return p;
}

inline BundlePoint make_bundle_point(const ChartedMetric& m, std::span<const double> q) {
  const std::size_t n = m.dim();
  if (q.size() != 2 * n) throw std::invalid_argument("make_bundle_point: expected 2n coordinates");
  return make_bundle_point(m, std::vector<double>(q.begin(), q.begin() + n), std::vector<double>(q.begin() + n, q.end()));
}

/// Base metric data and fiber scalars at q, for any scalar type.
template <SupportedScalar T>
struct FiberData {
  std::size_t n = 0;
  Matrix<T> g, ginv;
  std::vector<T> y, y_lower;
  T r2{}, alpha{};
};

template <SupportedScalar T>
FiberData<T> fiber_data(const ChartedMetric& m, std::span<const T> q) {
  FiberData<T> f;
  f.n = m.dim();
  auto x = q.first(f.n);
  f.g = m.eval<T>(x);
  f.ginv = spd_inverse(f.g);
  f.y.assign(q.begin() + f.n, q.end());
  f.y_lower.assign(f.n, T(0.0));
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t i = 0; i < f.n; ++i) f.y_lower[j] += f.g(j, i) * f.y[i];
  f.r2 = T(0.0);
  for (std::size_t j = 0; j < f.n; ++j) f.r2 += f.y_lower[j] * f.y[j];
  f.alpha = T(1.0) + f.r2;
  return f;
}

/// Columns are the adapted frame fields in induced coordinates:
/// X_(i) = ∂_i − y^s Γ^h_{si} ∂_{h̄}, X_(ī) = ∂_{ī}.
template <SupportedScalar T>
Matrix<T> frame_matrix(const ChartedMetric& m, std::span<const T> q) {
  const std::size_t n = m.dim();
  auto gam = christoffel<T>(m, q.first(n));
  Matrix<T> a = identity<T>(2 * n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < n; ++i) {
      T s(0.0);
      for (std::size_t k = 0; k < n; ++k) s += q[n + k] * gam(h, k, i);
      a(n + h, i) = -s;
    }
  return a;
}

/// Inverse of the unipotent frame matrix: the coframe {dx^h, dy^h + y^sΓ^h_{si}dx^i}.
template <SupportedScalar T>
Matrix<T> frame_matrix_inverse(const Matrix<T>& a, std::size_t n) {
  Matrix<T> inv = identity<T>(2 * n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < n; ++i) inv(n + h, i) = -a(n + h, i);
  return inv;
}

/// (1/α)(g_ji + y_j y_i)
template <SupportedScalar T>
Matrix<T> vertical_block(const FiberData<T>& f) {
  Matrix<T> vv(f.n, f.n);
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t i = 0; i < f.n; ++i) vv(j, i) = (f.g(j, i) + f.y_lower[j] * f.y_lower[i]) / f.alpha;
  return vv;
}

/// Sherman–Morrison inverse of the vertical block: α g^{ji} − y^j y^i.
template <SupportedScalar T>
Matrix<T> vertical_block_inverse(const FiberData<T>& f) {
  Matrix<T> vi(f.n, f.n);
  for (std::size_t j = 0; j < f.n; ++j)
    for (std::size_t i = 0; i < f.n; ++i) vi(j, i) = f.alpha * f.ginv(j, i) - f.y[j] * f.y[i];
  return vi;
}

/// CG metric components in the adapted frame (2n×2n, block diagonal).
template <SupportedScalar T>
Matrix<T> cg_frame_metric(const ChartedMetric& m, std::span<const T> q) {
  auto f = fiber_data<T>(m, q);
  auto vv = vertical_block(f);
  const std::size_t n = f.n;
  Matrix<T> big(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      big(j, i) = f.g(j, i);
      big(n + j, n + i) = vv(j, i);
    }
  return big;
}

template <SupportedScalar T>
Matrix<T> cg_frame_metric_inverse(const ChartedMetric& m, std::span<const T> q) {
  auto f = fiber_data<T>(m, q);
  auto vi = vertical_block_inverse(f);
  const std::size_t n = f.n;
  Matrix<T> big(2 * n, 2 * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      big(j, i) = f.ginv(j, i);
      big(n + j, n + i) = vi(j, i);
    }
  return big;
}

/// CG metric in induced coordinates: A⁻ᵀ G A⁻¹.
template <SupportedScalar T>
Matrix<T> cg_coordinate_metric(const ChartedMetric& m, std::span<const T> q) {
  const std::size_t n = m.dim();
  auto ainv = frame_matrix_inverse(frame_matrix<T>(m, q), n);
  auto gf = cg_frame_metric<T>(m, q);
  auto out = matmul(transpose(ainv), matmul(gf, ainv));
  for (std::size_t a = 0; a < 2 * n; ++a)
    for (std::size_t b = a + 1; b < 2 * n; ++b) out(b, a) = out(a, b);
  return out;
}

/// D_α f for every frame field: the directional derivative of a function
/// on TM along X_(α), layout (α, component). `f` is a generic callable
/// `(std::span<const U>) -> std::vector<U>` over bundle coordinates.
template <SupportedScalar T, class F>
Matrix<T> frame_derivative(const ChartedMetric& m, std::span<const T> q, const F& f) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n2 = 2 * m.dim();
    auto a = frame_matrix<T>(m, q);
    Matrix<T> out;
    std::vector<T> dir(n2);
    for (std::size_t al = 0; al < n2; ++al) {
      for (std::size_t c = 0; c < n2; ++c) dir[c] = a(c, al);
      auto qs = seed_direction<T>(q, dir);
      std::vector<Dual<T>> val = f(std::span<const Dual<T>>(qs));
      if (al == 0) out = Matrix<T>(n2, val.size());
      for (std::size_t k = 0; k < val.size(); ++k) out(al, k) = val[k].d;
    }
    return out;
  }
}

/// Ω^ε_{αβ} with [X_α, X_β] = Ω^ε_{αβ} X_ε, from numerically differentiated
/// frame fields; layout (ε, α, β).
template <SupportedScalar T>
Array<T, 3> structure_coefficients(const ChartedMetric& m, std::span<const T> q) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  auto a = frame_matrix<T>(m, q);
  auto ainv = frame_matrix_inverse(a, n);
  // da(α, c·n2 + β) = D_α (X_β)^c
  auto da = frame_derivative<T>(m, q, [&m, n2](auto qq) {
    using U = scalar_of<decltype(qq)>;
    auto fa = frame_matrix<U>(m, qq);
    return std::vector<U>(fa.begin(), fa.end());
  });
  Array<T, 3> omega = Array<T, 3>::cube(n2);
  std::vector<T> br(n2);
  for (std::size_t al = 0; al < n2; ++al)
    for (std::size_t be = al + 1; be < n2; ++be) {
      for (std::size_t c = 0; c < n2; ++c) br[c] = da(al, c * n2 + be) - da(be, c * n2 + al);
      for (std::size_t e = 0; e < n2; ++e) {
        T s(0.0);
        for (std::size_t c = 0; c < n2; ++c) s += ainv(e, c) * br[c];
        omega(e, al, be) = s;
        omega(e, be, al) = -s;
      }
    }
  return omega;
}

/// Closed form Ω^{h̄}_{iȷ̄} = Γ^h_{ji} = −Ω^{h̄}_{ȷ̄i}, Ω^{h̄}_{ij} = −sign·y^s R^h_{ijs}.
template <SupportedScalar T>
Array<T, 3> structure_coefficients_closed(const ChartedMetric& m, std::span<const T> q, int sign = +1) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  auto x = q.first(n);
  auto gam = christoffel<T>(m, x);
  auto r = riemann<T>(m, x);
  Array<T, 3> omega = Array<T, 3>::cube(n2);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        omega(n + h, i, n + j) = gam(h, j, i);
        omega(n + h, n + j, i) = -gam(h, j, i);
        T s(0.0);
        for (std::size_t k = 0; k < n; ++k) s += q[n + k] * r(h, i, j, k);
        omega(n + h, i, j) = -double(sign) * s;
      }
  return omega;
}

// ---------------------------------------------------------------------------
// Lifts

enum class LiftKind { vertical, complete, horizontal };

inline std::string to_string(LiftKind k) {
  switch (k) {
    case LiftKind::vertical: return "vertical";
    case LiftKind::complete: return "complete";
    case LiftKind::horizontal: return "horizontal";
  }
  return "?";
}

/// Adapted-frame components of a lifted base field:
/// ^V X = (0, X^h), ^H X = (X^h, 0), ^C X = (X^h, y^s ∇_s X^h).
template <SupportedScalar T>
std::vector<T> lift_frame_components(const ChartedMetric& m, const SmoothMap& field, LiftKind kind,
                                     std::span<const T> q) {
  const std::size_t n = m.dim();
  auto x = q.first(n);
  auto xv = field(x);
  std::vector<T> out(2 * n, T(0.0));
  switch (kind) {
    case LiftKind::vertical:
      for (std::size_t h = 0; h < n; ++h) out[n + h] = xv[h];
      break;
    case LiftKind::horizontal:
      for (std::size_t h = 0; h < n; ++h) out[h] = xv[h];
      break;
    case LiftKind::complete: {
      auto nx = cov_deriv_vector<T>(m, field, x);
      for (std::size_t h = 0; h < n; ++h) {
        out[h] = xv[h];
        T s(0.0);
        for (std::size_t k = 0; k < n; ++k) s += q[n + k] * nx(k, h);
        out[n + h] = s;
      }
      break;
    }
  }
  return out;
}

/// Induced-coordinate components of a lifted base field (A · frame components).
template <SupportedScalar T>
std::vector<T> lift_coordinate_components(const ChartedMetric& m, const SmoothMap& field, LiftKind kind,
                                          std::span<const T> q) {
  const std::size_t n2 = 2 * m.dim();
  auto a = frame_matrix<T>(m, q);
  auto fc = lift_frame_components<T>(m, field, kind, q);
  std::vector<T> out(n2, T(0.0));
  for (std::size_t c = 0; c < n2; ++c)
    for (std::size_t al = 0; al < n2; ++al) out[c] += a(c, al) * fc[al];
  return out;
}

/// CG-lowering of a lift: G_{γα} X^α with the frame metric blocks.
template <SupportedScalar T>
std::vector<T> lowered_lift_components(const ChartedMetric& m, const SmoothMap& field, LiftKind kind,
                                       std::span<const T> q) {
  const std::size_t n2 = 2 * m.dim();
  auto gf = cg_frame_metric<T>(m, q);
  auto fc = lift_frame_components<T>(m, field, kind, q);
  std::vector<T> out(n2, T(0.0));
  for (std::size_t c = 0; c < n2; ++c)
    for (std::size_t al = 0; al < n2; ++al) out[c] += gf(c, al) * fc[al];
  return out;
}

/// Associated covector of a lift written out component by component:
///   ^V X_B = (0, (1/α)(X_i + g_is X_t y^s y^t))
///   ^C X_B = (X_i, (1/α)(y^n∇_nX_i + g_is y^n∇_nX_t y^s y^t))
///   ^H X_B = (X_i, 0)
template <SupportedScalar T>
std::vector<T> associated_covector_components(const ChartedMetric& m, const SmoothMap& field, LiftKind kind,
                                              std::span<const T> q) {
  const std::size_t n = m.dim();
  auto f = fiber_data<T>(m, q);
  auto x = q.first(n);
  auto xv = field(x);
  std::vector<T> xl(n, T(0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < n; ++s) xl[i] += f.g(i, s) * xv[s];
  std::vector<T> out(2 * n, T(0.0));
  if (kind != LiftKind::vertical)
    for (std::size_t i = 0; i < n; ++i) out[i] = xl[i];
  if (kind == LiftKind::vertical) {
    T yx(0.0);
    for (std::size_t t = 0; t < n; ++t) yx += xl[t] * f.y[t];
    for (std::size_t i = 0; i < n; ++i) out[n + i] = (xl[i] + f.y_lower[i] * yx) / f.alpha;
  } else if (kind == LiftKind::complete) {
    auto nw = cov_deriv_covector<T>(m, lowered(m, field), x);  // ∇_n X_i
    std::vector<T> ynx(n, T(0.0));                             // y^n ∇_n X_i
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t nn = 0; nn < n; ++nn) ynx[i] += f.y[nn] * nw(nn, i);
    T yyn(0.0);
    for (std::size_t t = 0; t < n; ++t) yyn += f.y[t] * ynx[t];
    for (std::size_t i = 0; i < n; ++i) out[n + i] = (ynx[i] + f.y_lower[i] * yyn) / f.alpha;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Double-valued public surface.

struct AdaptedFrame {
  Matrix<double> matrix;
};

struct StructureCoefficients {
  Array<double, 3> omega;  ///< layout (ε, α, β)
};

struct BundleMetricBlocks {
  Matrix<double> hh, hv, vv;

  [[nodiscard]] Matrix<double> assemble() const {
    const std::size_t n = hh.extent(0);
    Matrix<double> big(2 * n, 2 * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        big(j, i) = hh(j, i);
        big(j, n + i) = hv(j, i);
        big(n + i, j) = hv(j, i);
        big(n + j, n + i) = vv(j, i);
      }
    return big;
  }
};

struct LiftedVector {
  std::vector<double> horizontal_part;
  std::vector<double> vertical_part;
  LiftKind kind = LiftKind::vertical;
  SmoothMap base_field;
};

using LiftedCovector = LiftedVector;

inline AdaptedFrame adapted_frame_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  return {frame_matrix<double>(m, std::span<const double>(q))};
}

inline StructureCoefficients structure_coefficients_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  return {structure_coefficients<double>(m, std::span<const double>(q))};
}

inline BundleMetricBlocks cg_metric_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  auto f = fiber_data<double>(m, std::span<const double>(q));
  return {f.g, Matrix<double>(f.n, f.n), vertical_block(f)};
}

inline BundleMetricBlocks cg_metric_inverse_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  auto f = fiber_data<double>(m, std::span<const double>(q));
  return {f.ginv, Matrix<double>(f.n, f.n), vertical_block_inverse(f)};
}

/// γ g_X = y^j g_ji X^i
inline double gamma_pairing(const ChartedMetric&, const BundlePoint& p, std::span<const double> field_value) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) s += p.y_lower[i] * field_value[i];
  return s;
}

namespace detail {
inline LiftedVector split(std::vector<double> v, LiftKind kind, const SmoothMap& field) {
  const std::size_t n = v.size() / 2;
  return {std::vector<double>(v.begin(), v.begin() + n), std::vector<double>(v.begin() + n, v.end()), kind, field};
}
}  // namespace detail

inline LiftedVector lift_vector(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& field, LiftKind kind) {
  auto q = p.coords();
  return detail::split(lift_frame_components<double>(m, field, kind, std::span<const double>(q)), kind, field);
}

inline LiftedCovector lift_covector(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& field,
                                    LiftKind kind) {
  auto q = p.coords();
  return detail::split(associated_covector_components<double>(m, field, kind, std::span<const double>(q)), kind,
                       field);
}

}  // namespace tbaudit

#endif  // TBAUDIT_BUNDLE_FRAME_HPP
