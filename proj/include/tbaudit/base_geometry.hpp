#ifndef TBAUDIT_BASE_GEOMETRY_HPP
#define TBAUDIT_BASE_GEOMETRY_HPP

#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/dual.hpp"
#include "tbaudit/smooth_map.hpp"

namespace tbaudit {

/// Distance kept from chart singularities (sphere poles, half-plane boundary).
inline constexpr double kChartMargin = 1e-3;

struct BasePoint {
  std::vector<double> coords;
};

/// A single-chart Riemannian metric g_ij(x).
class ChartedMetric {
 public:
  using DomainCheck = std::function<bool(std::span<const double>)>;

  ChartedMetric() = default;

  /// `f` is a generic callable returning the n·n row-major components of g.
  template <class F>
  ChartedMetric(std::string name, std::size_t dim, F f, DomainCheck domain,
                std::vector<double> box_lo, std::vector<double> box_hi)
      : name_(std::move(name)),
        dim_(dim),
        eval_(dim, dim * dim, std::move(f)),
        domain_(std::move(domain)),
        box_lo_(std::move(box_lo)),
        box_hi_(std::move(box_hi)) {
    if (dim_ == 0) throw std::invalid_argument("ChartedMetric: dimension must be positive");
    if (box_lo_.size() != dim_ || box_hi_.size() != dim_)
      throw std::invalid_argument("ChartedMetric: sample box dimension mismatch");
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<double>& box_lo() const { return box_lo_; }
  [[nodiscard]] const std::vector<double>& box_hi() const { return box_hi_; }

  [[nodiscard]] bool in_domain(std::span<const double> x) const {
    return x.size() == dim_ && (!domain_ || domain_(x));
  }

  /// g_ij at x; the lower triangle is copied from the upper one so the
  /// result is symmetric bit for bit.
  template <SupportedScalar T>
  Matrix<T> eval(std::span<const T> x) const {
    auto flat = eval_(x);
    Matrix<T> g(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j) {
        g(i, j) = flat[i * dim_ + j];
        g(j, i) = flat[i * dim_ + j];
      }
    return g;
  }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  SmoothMap eval_;
  DomainCheck domain_;
  std::vector<double> box_lo_, box_hi_;
};

namespace detail {
template <class T>
std::vector<T> diag_flat(const std::vector<T>& d) {
  const std::size_t n = d.size();
  std::vector<T> out(n * n, T(0.0));
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = d[i];
  return out;
}
}  // namespace detail

/// Built-in charts: euclidean(n), sphere(radius), hyperbolic_half_plane,
/// flat_torus(n). Throws std::invalid_argument on unknown names or bad params.
inline ChartedMetric builtin_metric(const std::string& name, const std::vector<double>& params = {}) {
  auto dim_param = [&](double dflt) {
    double n = params.empty() ? dflt : params[0];
    if (n < 1 || n > 8 || n != std::floor(n))
      throw std::invalid_argument("builtin_metric: dimension must be an integer in [1, 8]");
    return static_cast<std::size_t>(n);
  };
  if (name == "euclidean" || name == "flat_torus") {
    const std::size_t n = dim_param(2);
    auto f = [n](auto x) {
      using T = scalar_of<decltype(x)>;
      return detail::diag_flat(std::vector<T>(n, T(1.0)));
    };
    const bool torus = name == "flat_torus";
    std::vector<double> lo(n, torus ? 0.0 : -2.0), hi(n, torus ? 2.0 * std::numbers::pi : 2.0);
    return {name + "(" + std::to_string(n) + ")", n, f, nullptr, lo, hi};
  }
  if (name == "sphere") {
    const double r = params.empty() ? 1.0 : params[0];
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("builtin_metric: sphere radius must be positive");
    auto f = [r](auto x) {
      using T = scalar_of<decltype(x)>;
      using std::sin;
      T s = sin(x[0]);
      return detail::diag_flat(std::vector<T>{T(r * r), T(r * r) * s * s});
    };
    auto domain = [](std::span<const double> x) {
      return x[0] > kChartMargin && x[0] < std::numbers::pi - kChartMargin;
    };
    // Sampling stays well inside the chart so cot θ remains moderate.
    std::ostringstream label;
    label << "sphere(" << std::setprecision(12) << r << ")";
    return {label.str(), 2, f, domain,
            {0.25, -std::numbers::pi}, {std::numbers::pi - 0.25, std::numbers::pi}};
  }
  if (name == "hyperbolic_half_plane" || name == "hyperbolic") {
    auto f = [](auto x) {
      using T = scalar_of<decltype(x)>;
      T c = T(1.0) / (x[1] * x[1]);
      return detail::diag_flat(std::vector<T>{c, c});
    };
    auto domain = [](std::span<const double> x) { return x[1] > kChartMargin; };
    return {"hyperbolic_half_plane", 2, f, domain, {-2.0, 0.4}, {2.0, 3.0}};
  }
  throw std::invalid_argument("builtin_metric: unknown metric '" + name + "'");
}

// ---------------------------------------------------------------------------
// Generic (dual-differentiable) kernels. Index layout is documented per
// function; the first index of a connection/curvature table is the upper one.

/// ∂_k g_ij, layout (k, i, j).
template <SupportedScalar T>
Array<T, 3> metric_derivative(const ChartedMetric& m, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    Array<T, 3> dg = Array<T, 3>::cube(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto xs = seed_axis<T>(x, k);
      auto gd = m.eval<Dual<T>>(std::span<const Dual<T>>(xs));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dg(k, i, j) = gd(i, j).d;
    }
    return dg;
  }
}

/// Γ^h_{ji} = ½ g^{hm}(∂_j g_{mi} + ∂_i g_{mj} − ∂_m g_{ji}), layout (h, j, i).
template <SupportedScalar T>
Array<T, 3> christoffel(const ChartedMetric& m, std::span<const T> x) {
  const std::size_t n = m.dim();
  auto ginv = spd_inverse(m.eval<T>(x));
  auto dg = metric_derivative<T>(m, x);
  Array<T, 3> gam = Array<T, 3>::cube(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < n; ++i) {
        T s(0.0);
        for (std::size_t mm = 0; mm < n; ++mm)
          s += ginv(h, mm) * (dg(j, mm, i) + dg(i, mm, j) - dg(mm, j, i));
        s = s * 0.5;
        gam(h, j, i) = s;
        gam(h, i, j) = s;
      }
  return gam;
}

/// ∂_k Γ^h_{ji}, layout (k, h, j, i).
template <SupportedScalar T>
Array<T, 4> christoffel_derivative(const ChartedMetric& m, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    Array<T, 4> out = Array<T, 4>::cube(n);
    for (std::size_t k = 0; k < n; ++k) {
      auto xs = seed_axis<T>(x, k);
      auto gd = christoffel<Dual<T>>(m, std::span<const Dual<T>>(xs));
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) out(k, h, j, i) = gd(h, j, i).d;
    }
    return out;
  }
}

/// R^h_{jik} = ∂_jΓ^h_{ik} − ∂_iΓ^h_{jk} + Γ^h_{jm}Γ^m_{ik} − Γ^h_{im}Γ^m_{jk},
/// layout (h, j, i, k). With this ordering R(∂_j, ∂_i)∂_k = R^h_{jik} ∂_h.
template <SupportedScalar T>
Array<T, 4> riemann(const ChartedMetric& m, std::span<const T> x) {
  const std::size_t n = m.dim();
  auto gam = christoffel<T>(m, x);
  auto dgam = christoffel_derivative<T>(m, x);
  Array<T, 4> r = Array<T, 4>::cube(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j + 1; i < n; ++i) {
          T s = dgam(j, h, i, k) - dgam(i, h, j, k);
          for (std::size_t mm = 0; mm < n; ++mm) s += gam(h, j, mm) * gam(mm, i, k) - gam(h, i, mm) * gam(mm, j, k);
          r(h, j, i, k) = s;
          r(h, i, j, k) = -s;
        }
  return r;
}

/// ∇_l R^h_{jik}, layout (l, h, j, i, k).
template <SupportedScalar T>
Array<T, 5> nabla_riemann(const ChartedMetric& m, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    auto gam = christoffel<T>(m, x);
    auto r = riemann<T>(m, x);
    Array<T, 5> out = Array<T, 5>::cube(n);
    for (std::size_t l = 0; l < n; ++l) {
      auto xs = seed_axis<T>(x, l);
      auto rd = riemann<Dual<T>>(m, std::span<const Dual<T>>(xs));
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
              T s = rd(h, j, i, k).d;
              for (std::size_t mm = 0; mm < n; ++mm) {
                s += gam(h, l, mm) * r(mm, j, i, k);
                s -= gam(mm, l, j) * r(h, mm, i, k);
                s -= gam(mm, l, i) * r(h, j, mm, k);
                s -= gam(mm, l, k) * r(h, j, i, mm);
              }
              out(l, h, j, i, k) = s;
            }
    }
    return out;
  }
}

/// How the raised/lowered curvature symbol R^{h·}_{·ikj} is contracted.
enum class MixedReading {
  canonical,  ///< g^{ht} g_{js} R^s_{tik}
  swapped,    ///< g^{ht} g_{js} R^s_{itk} (raising metric on the second slot)
};

/// R^{h·}_{·ikj}, layout (h, i, k, j).
template <class T>
Array<T, 4> mixed_from(const Matrix<T>& g, const Matrix<T>& ginv, const Array<T, 4>& r,
                       MixedReading reading = MixedReading::canonical) {
  const std::size_t n = g.extent(0);
  // lowered(t, i, k, j) = g_{js} R^s_{tik}
  Array<T, 4> low = Array<T, 4>::cube(n);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          T s(0.0);
          for (std::size_t ss = 0; ss < n; ++ss)
            s += g(j, ss) * (reading == MixedReading::canonical ? r(ss, t, i, k) : r(ss, i, t, k));
          low(t, i, k, j) = s;
        }
  Array<T, 4> out = Array<T, 4>::cube(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          T s(0.0);
          for (std::size_t t = 0; t < n; ++t) s += ginv(h, t) * low(t, i, k, j);
          out(h, i, k, j) = s;
        }
  return out;
}

/// ∂_i X^h + Γ^h_{im} X^m for a vector field, layout (i, h).
template <SupportedScalar T>
Matrix<T> cov_deriv_vector(const ChartedMetric& m, const SmoothMap& field, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    auto gam = christoffel<T>(m, x);
    auto xv = field(x);
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto xs = seed_axis<T>(x, i);
      auto xd = field(std::span<const Dual<T>>(xs));
      for (std::size_t h = 0; h < n; ++h) {
        T s = xd[h].d;
        for (std::size_t mm = 0; mm < n; ++mm) s += gam(h, i, mm) * xv[mm];
        out(i, h) = s;
      }
    }
    return out;
  }
}

/// ∂_i ω_j − Γ^m_{ij} ω_m for a covector field, layout (i, j).
template <SupportedScalar T>
Matrix<T> cov_deriv_covector(const ChartedMetric& m, const SmoothMap& field, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 3) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    auto gam = christoffel<T>(m, x);
    auto w = field(x);
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto xs = seed_axis<T>(x, i);
      auto wd = field(std::span<const Dual<T>>(xs));
      for (std::size_t j = 0; j < n; ++j) {
        T s = wd[j].d;
        for (std::size_t mm = 0; mm < n; ++mm) s -= gam(mm, i, j) * w[mm];
        out(i, j) = s;
      }
    }
    return out;
  }
}

/// ∇_i∇_j ω_k, layout (i, j, k).
template <SupportedScalar T>
Array<T, 3> second_cov_deriv_covector(const ChartedMetric& m, const SmoothMap& field, std::span<const T> x) {
  if constexpr (dual_depth<T> >= 2) {
    throw NestingDepthError{};
  } else {
    const std::size_t n = m.dim();
    auto gam = christoffel<T>(m, x);
    auto nw = cov_deriv_covector<T>(m, field, x);
    Array<T, 3> out = Array<T, 3>::cube(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto xs = seed_axis<T>(x, i);
      auto nwd = cov_deriv_covector<Dual<T>>(m, field, std::span<const Dual<T>>(xs));
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          T s = nwd(j, k).d;
          for (std::size_t mm = 0; mm < n; ++mm) s -= gam(mm, i, j) * nw(mm, k) + gam(mm, i, k) * nw(j, mm);
          out(i, j, k) = s;
        }
    }
    return out;
  }
}

/// Covector field X_j = g_js X^s of a vector field.
inline SmoothMap lowered(const ChartedMetric& m, const SmoothMap& vector_field) {
  const std::size_t n = m.dim();
  return SmoothMap(n, n, [m, vector_field, n](auto x) {
    using T = scalar_of<decltype(x)>;
    auto g = m.eval<T>(x);
    auto v = vector_field(x);
    std::vector<T> out(n, T(0.0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t s = 0; s < n; ++s) out[j] += g(j, s) * v[s];
    return out;
  });
}

// ---------------------------------------------------------------------------
// Double-valued public surface.

struct ChristoffelTable {
  Array<double, 3> values;  ///< Γ^h_{ji}, layout (h, j, i)
};

struct CurvatureTable {
  Array<double, 4> mixed;  ///< R^h_{jik}, layout (h, j, i, k)
  int convention_sign = +1;
};

inline void require_domain(const ChartedMetric& m, std::span<const double> x) {
  if (!m.in_domain(x)) throw std::domain_error("point outside chart domain of " + m.name());
}

inline Matrix<double> metric_at(const ChartedMetric& m, const BasePoint& x) {
  require_domain(m, x.coords);
  return m.eval<double>(std::span<const double>(x.coords));
}

inline ChristoffelTable christoffel_at(const ChartedMetric& m, const BasePoint& x) {
  require_domain(m, x.coords);
  return {christoffel<double>(m, std::span<const double>(x.coords))};
}

inline CurvatureTable riemann_at(const ChartedMetric& m, const BasePoint& x) {
  require_domain(m, x.coords);
  return {riemann<double>(m, std::span<const double>(x.coords)), +1};
}

inline Array<double, 4> mixed_riemann_at(const ChartedMetric& m, const BasePoint& x,
                                         MixedReading reading = MixedReading::canonical) {
  require_domain(m, x.coords);
  std::span<const double> xs(x.coords);
  auto g = m.eval<double>(xs);
  return mixed_from(g, spd_inverse(g), riemann<double>(m, xs), reading);
}

/// Fully lowered R_{abcd} = g(R(∂_c, ∂_d)∂_b, ∂_a) = g_{am} R^m_{cdb}.
inline Array<double, 4> lowered_riemann_at(const ChartedMetric& m, const BasePoint& x) {
  require_domain(m, x.coords);
  std::span<const double> xs(x.coords);
  const std::size_t n = m.dim();
  auto g = m.eval<double>(xs);
  auto r = riemann<double>(m, xs);
  Array<double, 4> out = Array<double, 4>::cube(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          double s = 0.0;
          for (std::size_t mm = 0; mm < n; ++mm) s += g(a, mm) * r(mm, c, d, b);
          out(a, b, c, d) = s;
        }
  return out;
}

/// K(u, v) = g(R(u,v)v, u) / (|u|²|v|² − g(u,v)²) on the base.
inline double base_sectional_curvature(const ChartedMetric& m, const BasePoint& x, std::span<const double> u,
                                       std::span<const double> v) {
  auto rl = lowered_riemann_at(m, x);
  auto g = metric_at(m, x);
  const std::size_t n = m.dim();
  double num = 0.0, uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      uu += g(a, b) * u[a] * u[b];
      vv += g(a, b) * v[a] * v[b];
      uv += g(a, b) * u[a] * v[b];
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) num += rl(a, b, c, d) * u[a] * v[b] * u[c] * v[d];
    }
  const double den = uu * vv - uv * uv;
  if (den <= 1e-12) throw std::invalid_argument("base_sectional_curvature: degenerate plane");
  return num / den;
}

inline Matrix<double> covariant_derivative_vector(const ChartedMetric& m, const SmoothMap& field, const BasePoint& x) {
  require_domain(m, x.coords);
  return cov_deriv_vector<double>(m, field, std::span<const double>(x.coords));
}

inline Matrix<double> covariant_derivative_covector(const ChartedMetric& m, const SmoothMap& field,
                                                    const BasePoint& x) {
  require_domain(m, x.coords);
  return cov_deriv_covector<double>(m, field, std::span<const double>(x.coords));
}

inline Array<double, 3> second_covariant_derivative_covector(const ChartedMetric& m, const SmoothMap& field,
                                                             const BasePoint& x) {
  require_domain(m, x.coords);
  return second_cov_deriv_covector<double>(m, field, std::span<const double>(x.coords));
}

// ---------------------------------------------------------------------------
// Self-check residuals

/// max |∂_k g_ij − Γ^m_{ki} g_mj − Γ^m_{kj} g_im|
inline double base_metric_compatibility_residual(const ChartedMetric& m, const BasePoint& x) {
  require_domain(m, x.coords);
  std::span<const double> xs(x.coords);
  const std::size_t n = m.dim();
  auto g = m.eval<double>(xs);
  auto dg = metric_derivative<double>(m, xs);
  auto gam = christoffel<double>(m, xs);
  double w = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double s = dg(k, i, j);
        for (std::size_t mm = 0; mm < n; ++mm) s -= gam(mm, k, i) * g(mm, j) + gam(mm, k, j) * g(i, mm);
        w = std::max(w, std::abs(s));
      }
  return w;
}

/// max |R^h_{jik} + R^h_{ijk}| together with the first Bianchi identity
/// max |R^h_{jik} + R^h_{ikj} + R^h_{kji}|.
inline double riemann_symmetry_residual(const ChartedMetric& m, const BasePoint& x) {
  auto r = riemann_at(m, x).mixed;
  const std::size_t n = m.dim();
  double w = 0.0;
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          w = std::max(w, std::abs(r(h, j, i, k) + r(h, i, j, k)));
          w = std::max(w, std::abs(r(h, j, i, k) + r(h, i, k, j) + r(h, k, j, i)));
        }
  return w;
}

/// Ricci identity on the associated covector:
/// max |(∇_i∇_j − ∇_j∇_i)X_k + sign · R^h_{ijk} X_h|.
inline double ricci_identity_residual(const ChartedMetric& m, const SmoothMap& field, const BasePoint& x,
                                      int sign = +1) {
  require_domain(m, x.coords);
  std::span<const double> xs(x.coords);
  const std::size_t n = m.dim();
  auto low = lowered(m, field);
  auto nn = second_cov_deriv_covector<double>(m, low, xs);
  auto w = low(xs);
  auto r = riemann<double>(m, xs);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double s = nn(i, j, k) - nn(j, i, k);
        for (std::size_t h = 0; h < n; ++h) s += sign * r(h, i, j, k) * w[h];
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

}  // namespace tbaudit

#endif  // TBAUDIT_BASE_GEOMETRY_HPP
