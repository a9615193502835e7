#ifndef TBAUDIT_CG_CONNECTION_HPP
#define TBAUDIT_CG_CONNECTION_HPP

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"

namespace tbaudit {

/// Connection tables are Γ^γ_{αβ} with ∇_{X_α} X_β = Γ^γ_{αβ} X_γ,
/// layout (γ, α, β).

/// Levi-Civita connection of the CG metric from the anholonomic Koszul formula
///   2 G(∇_α X_β, X_γ) = D_α G_βγ + D_β G_αγ − D_γ G_αβ
///                      + Ω^ε_αβ G_εγ − Ω^ε_αγ G_εβ − Ω^ε_βγ G_εα,
/// with frame metric from the block form and Ω from differentiated frame fields.
template <SupportedScalar T>
Array<T, 3> koszul_connection(const ChartedMetric& m, std::span<const T> q) {
  const std::size_t n2 = 2 * m.dim();
  auto gf = cg_frame_metric<T>(m, q);
  auto gi = cg_frame_metric_inverse<T>(m, q);
  auto dg = frame_derivative<T>(m, q, [&m](auto qq) {
    using U = scalar_of<decltype(qq)>;
    auto g = cg_frame_metric<U>(m, qq);
    return std::vector<U>(g.begin(), g.end());
  });
  auto om = structure_coefficients<T>(m, q);
  auto dG = [&](std::size_t a, std::size_t b, std::size_t c) -> const T& { return dg(a, b * n2 + c); };

  Array<T, 3> lowered = Array<T, 3>::cube(n2);  // (α, β, γ) = G(∇_α X_β, X_γ)
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      for (std::size_t c = 0; c < n2; ++c) {
        T s = dG(a, b, c) + dG(b, a, c) - dG(c, a, b);
        for (std::size_t e = 0; e < n2; ++e) s += om(e, a, b) * gf(e, c) - om(e, a, c) * gf(e, b) - om(e, b, c) * gf(e, a);
        lowered(a, b, c) = s * 0.5;
      }
  Array<T, 3> gam = Array<T, 3>::cube(n2);
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b) {
        T s(0.0);
        for (std::size_t c = 0; c < n2; ++c) s += gi(d, c) * lowered(a, b, c);
        gam(d, a, b) = s;
      }
  return gam;
}

enum class VerticalVariant {
  printed,    ///< vertical-vertical family exactly as printed
  corrected,  ///< Levi-Civita connection of the fiber metric
};

struct ClosedFormOptions {
  int sign = +1;  ///< multiplies every base curvature occurrence
  MixedReading reading = MixedReading::canonical;
  VerticalVariant vertical = VerticalVariant::printed;
};

/// Printed Γ^{h̄}_{ȷ̄ī} = −(1/α)(y_jδ^h_i + y_iδ^h_j) + ((1+α)/α) g_ji y^h − (1/α) y_j y_i y^h,
/// layout (h, j, i).
template <SupportedScalar T>
Array<T, 3> vertical_vertical_printed(const FiberData<T>& f) {
  const std::size_t n = f.n;
  Array<T, 3> out = Array<T, 3>::cube(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        T s = (h == i ? f.y_lower[j] : T(0.0)) + (h == j ? f.y_lower[i] : T(0.0));
        out(h, j, i) = -s / f.alpha + (T(1.0) + f.alpha) / f.alpha * f.g(j, i) * f.y[h] -
                       f.y_lower[j] * f.y_lower[i] * f.y[h] / f.alpha;
      }
  return out;
}

/// Γ^{h̄}_{ȷ̄ī} = −(1/α)(y_jδ^h_i + y_iδ^h_j) + ((1+α)/α²) g_ji y^h + (1/α²) y_j y_i y^h,
/// the Christoffel symbols of the fiber metric (g + y♭⊗y♭)/α; layout (h, j, i).
template <SupportedScalar T>
Array<T, 3> vertical_vertical_corrected(const FiberData<T>& f) {
  const std::size_t n = f.n;
  const T a2 = f.alpha * f.alpha;
  Array<T, 3> out = Array<T, 3>::cube(n);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        T s = (h == i ? f.y_lower[j] : T(0.0)) + (h == j ? f.y_lower[i] : T(0.0));
        out(h, j, i) = -s / f.alpha + (T(1.0) + f.alpha) / a2 * f.g(j, i) * f.y[h] +
                       f.y_lower[j] * f.y_lower[i] * f.y[h] / a2;
      }
  return out;
}

template <SupportedScalar T>
Array<T, 3> vertical_vertical(const FiberData<T>& f, VerticalVariant v) {
  return v == VerticalVariant::printed ? vertical_vertical_printed(f) : vertical_vertical_corrected(f);
}

/// The eight closed-form families of the CG connection in the adapted frame.
template <SupportedScalar T>
Array<T, 3> closed_form_connection(const ChartedMetric& m, std::span<const T> q, const ClosedFormOptions& opt = {}) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  auto f = fiber_data<T>(m, q);
  auto x = q.first(n);
  auto gam = christoffel<T>(m, x);
  auto r = riemann<T>(m, x);
  auto mixed = mixed_from(f.g, f.ginv, r, opt.reading);
  auto vv = vertical_vertical(f, opt.vertical);
  const double s = opt.sign;
  Array<T, 3> out = Array<T, 3>::cube(n2);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) {
        T ry(0.0), mj(0.0), mi(0.0);
        for (std::size_t k = 0; k < n; ++k) {
          ry += r(h, j, i, k) * f.y[k];
          mj += mixed(h, j, k, i) * f.y[k];  // R^{h·}_{·jki} y^k
          mi += mixed(h, i, k, j) * f.y[k];  // R^{h·}_{·ikj} y^k
        }
        out(h, j, i) = gam(h, j, i);
        out(n + h, j, i) = -0.5 * s * ry;
        out(h, j, n + i) = -s * mj / (2.0 * f.alpha);
        out(n + h, j, n + i) = gam(h, j, i);
        out(h, n + j, i) = -s * mi / (2.0 * f.alpha);
        out(n + h, n + j, i) = T(0.0);
        out(h, n + j, n + i) = T(0.0);
        out(n + h, n + j, n + i) = vv(h, j, i);
      }
  return out;
}

/// ∇_β X^α = D_β X^α + Γ^α_{βδ} X^δ for frame components given by `field`
/// (2n → 2n over bundle coordinates); layout (β, α).
template <SupportedScalar T, class F>
Matrix<T> frame_covariant_derivative(const ChartedMetric& m, std::span<const T> q, const F& field,
                                     const Array<T, 3>& conn) {
  const std::size_t n2 = 2 * m.dim();
  auto dx = frame_derivative<T>(m, q, field);
  std::vector<T> xv = field(q);
  Matrix<T> out(n2, n2);
  for (std::size_t b = 0; b < n2; ++b)
    for (std::size_t a = 0; a < n2; ++a) {
      T s = dx(b, a);
      for (std::size_t d = 0; d < n2; ++d) s += conn(a, b, d) * xv[d];
      out(b, a) = s;
    }
  return out;
}

/// ∇_β ω_γ = D_β ω_γ − Γ^δ_{βγ} ω_δ; layout (β, γ).
template <SupportedScalar T, class F>
Matrix<T> frame_covariant_derivative_covector(const ChartedMetric& m, std::span<const T> q, const F& field,
                                              const Array<T, 3>& conn) {
  const std::size_t n2 = 2 * m.dim();
  auto dw = frame_derivative<T>(m, q, field);
  std::vector<T> w = field(q);
  Matrix<T> out(n2, n2);
  for (std::size_t b = 0; b < n2; ++b)
    for (std::size_t c = 0; c < n2; ++c) {
      T s = dw(b, c);
      for (std::size_t d = 0; d < n2; ++d) s -= conn(d, b, c) * w[d];
      out(b, c) = s;
    }
  return out;
}

/// Frame-component field of a lift, as a smooth map on bundle coordinates.
inline SmoothMap frame_lift(const ChartedMetric& m, const SmoothMap& field, LiftKind kind) {
  const std::size_t n2 = 2 * m.dim();
  return SmoothMap(n2, n2, [m, field, kind](auto q) {
    using T = scalar_of<decltype(q)>;
    if constexpr (dual_depth<T> >= 3) {
      throw NestingDepthError{};
      return std::vector<T>{};
    } else {
      return lift_frame_components<T>(m, field, kind, q);
    }
  });
}

/// CG-lowered frame components of a lift.
inline SmoothMap lowered_frame_lift(const ChartedMetric& m, const SmoothMap& field, LiftKind kind) {
  const std::size_t n2 = 2 * m.dim();
  return SmoothMap(n2, n2, [m, field, kind](auto q) {
    using T = scalar_of<decltype(q)>;
    if constexpr (dual_depth<T> >= 3) {
      throw NestingDepthError{};
      return std::vector<T>{};
    } else {
      return lowered_lift_components<T>(m, field, kind, q);
    }
  });
}

// ---------------------------------------------------------------------------
// Residuals of the defining properties.

/// max |∇_α G_βγ| = |D_α G_βγ − Γ^δ_{αβ} G_δγ − Γ^δ_{αγ} G_βδ|
inline double metric_compatibility_residual(const ChartedMetric& m, std::span<const double> q,
                                            const Array<double, 3>& conn) {
  const std::size_t n2 = 2 * m.dim();
  auto gf = cg_frame_metric<double>(m, q);
  auto dg = frame_derivative<double>(m, q, [&m](auto qq) {
    using U = scalar_of<decltype(qq)>;
    auto g = cg_frame_metric<U>(m, qq);
    return std::vector<U>(g.begin(), g.end());
  });
  double worst = 0.0;
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      for (std::size_t c = 0; c < n2; ++c) {
        double s = dg(a, b * n2 + c);
        for (std::size_t d = 0; d < n2; ++d) s -= conn(d, a, b) * gf(d, c) + conn(d, a, c) * gf(b, d);
        worst = std::max(worst, std::abs(s));
      }
  return worst;
}

/// max |Γ^γ_{αβ} − Γ^γ_{βα} − Ω^γ_{αβ}|
inline double torsion_residual(const ChartedMetric& m, std::span<const double> q, const Array<double, 3>& conn) {
  const std::size_t n2 = 2 * m.dim();
  auto om = structure_coefficients<double>(m, q);
  double worst = 0.0;
  for (std::size_t c = 0; c < n2; ++c)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        worst = std::max(worst, std::abs(conn(c, a, b) - conn(c, b, a) - om(c, a, b)));
  return worst;
}

// ---------------------------------------------------------------------------
// Double-valued public surface.

enum class ConnectionSource { closed_form, oracle, corrected };

inline std::string to_string(ConnectionSource s) {
  switch (s) {
    case ConnectionSource::closed_form: return "closed_form";
    case ConnectionSource::oracle: return "oracle";
    case ConnectionSource::corrected: return "corrected";
  }
  return "?";
}

struct BundleConnectionTable {
  Array<double, 3> values;  ///< layout (γ, α, β)
  ConnectionSource source = ConnectionSource::oracle;
};

/// D_α f at p for every frame field; layout (α, component).
inline Matrix<double> frame_derivative_at(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& f) {
  auto q = p.coords();
  return frame_derivative<double>(m, std::span<const double>(q), f);
}

inline BundleConnectionTable closed_form_connection_at(const ChartedMetric& m, const BundlePoint& p, int sign = +1) {
  auto q = p.coords();
  return {closed_form_connection<double>(m, std::span<const double>(q), {sign, MixedReading::canonical,
                                                                          VerticalVariant::printed}),
          ConnectionSource::closed_form};
}

/// Closed forms with the vertical-vertical family replaced by the fiber Christoffels.
inline BundleConnectionTable corrected_connection_at(const ChartedMetric& m, const BundlePoint& p, int sign = +1) {
  auto q = p.coords();
  return {closed_form_connection<double>(m, std::span<const double>(q), {sign, MixedReading::canonical,
                                                                          VerticalVariant::corrected}),
          ConnectionSource::corrected};
}

inline BundleConnectionTable koszul_connection_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  return {koszul_connection<double>(m, std::span<const double>(q)), ConnectionSource::oracle};
}

inline BundleConnectionTable connection_at(const ChartedMetric& m, const BundlePoint& p, ConnectionSource source,
                                           int sign = +1) {
  switch (source) {
    case ConnectionSource::closed_form: return closed_form_connection_at(m, p, sign);
    case ConnectionSource::corrected: return corrected_connection_at(m, p, sign);
    case ConnectionSource::oracle: break;
  }
  return koszul_connection_at(m, p);
}

/// Γ^{h̄}_{ȷ̄ī} from the fiber-metric formula, layout (h, j, i).
inline Array<double, 3> corrected_vertical_vertical_at(const ChartedMetric& m, const BundlePoint& p) {
  auto q = p.coords();
  return vertical_vertical_corrected(fiber_data<double>(m, std::span<const double>(q)));
}

/// ∇_β X^α of a bundle field given by its frame components; layout (β, α).
inline Matrix<double> bundle_covariant_derivative(const ChartedMetric& m, const BundlePoint& p,
                                                  const SmoothMap& frame_field, const BundleConnectionTable& conn) {
  auto q = p.coords();
  return frame_covariant_derivative<double>(m, std::span<const double>(q), frame_field, conn.values);
}

/// ∇_β ω_γ of a bundle covector field given by its frame components; layout (β, γ).
inline Matrix<double> bundle_covariant_derivative_covector(const ChartedMetric& m, const BundlePoint& p,
                                                           const SmoothMap& frame_field,
                                                           const BundleConnectionTable& conn) {
  auto q = p.coords();
  return frame_covariant_derivative_covector<double>(m, std::span<const double>(q), frame_field, conn.values);
}

/// Outcome of fixing the curvature sign convention against the oracle.
struct SignPin {
  int sign = +1;
  double residual_plus = 0.0;   ///< max residual of the Γ^{h̄}_{ji} family with sign +1
  double residual_minus = 0.0;  ///< same with sign −1
};

/// Picks the curvature sign for which the closed-form Γ^{h̄}_{ji} family
/// matches the Koszul oracle over the given points.
inline SignPin pin_convention_sign(const ChartedMetric& m, const std::vector<BundlePoint>& points) {
  const std::size_t n = m.dim();
  SignPin pin;
  for (const auto& p : points) {
    auto oracle = koszul_connection_at(m, p).values;
    for (int sign : {+1, -1}) {
      auto cf = closed_form_connection_at(m, p, sign).values;
      double worst = 0.0;
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(cf(n + h, j, i) - oracle(n + h, j, i)));
      double& slot = sign > 0 ? pin.residual_plus : pin.residual_minus;
      slot = std::max(slot, worst);
    }
  }
  pin.sign = pin.residual_plus <= pin.residual_minus ? +1 : -1;
  return pin;
}

}  // namespace tbaudit

#endif  // TBAUDIT_CG_CONNECTION_HPP
