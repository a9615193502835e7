#ifndef TBAUDIT_KILLING_CURVATURE_HPP
#define TBAUDIT_KILLING_CURVATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/cg_connection.hpp"
#include "tbaudit/lift_calculus.hpp"

namespace tbaudit {

// Bundle curvature tables are R^δ_{αβγ} with R(X_α, X_β)X_γ = R^δ_{αβγ} X_δ,
// layout (δ, α, β, γ).

/// R^δ_{αβγ} = D_α Γ^δ_{βγ} − D_β Γ^δ_{αγ} + Γ^δ_{αε}Γ^ε_{βγ} − Γ^δ_{βε}Γ^ε_{αγ} − Ω^ε_{αβ}Γ^δ_{εγ}
/// for a connection given as a generic callable `conn(std::span<const U>) -> Array<U, 3>`.
template <class ConnFn>
Array<double, 4> anholonomic_curvature(const ChartedMetric& m, std::span<const double> q, const ConnFn& conn) {
  const std::size_t n2 = 2 * m.dim();
  auto gam = conn(q);
  auto dgam = frame_derivative<double>(m, q, [&conn](auto qq) {
    auto c = conn(qq);
    using U = scalar_of<decltype(qq)>;
    return std::vector<U>(c.begin(), c.end());
  });
  auto om = structure_coefficients<double>(m, q);
  auto D = [&](std::size_t a, std::size_t d, std::size_t b, std::size_t c) { return dgam(a, (d * n2 + b) * n2 + c); };
  Array<double, 4> r = Array<double, 4>::cube(n2);
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t c = 0; c < n2; ++c) {
          double s = D(a, d, b, c) - D(b, d, a, c);
          for (std::size_t e = 0; e < n2; ++e)
            s += gam(d, a, e) * gam(e, b, c) - gam(d, b, e) * gam(e, a, c) - om(e, a, b) * gam(d, e, c);
          r(d, a, b, c) = s;
        }
  return r;
}

enum class CurvatureSource { eq17_oracle_connection, eq17_closed_form_connection, eq17_corrected_connection, eq18 };

inline std::string to_string(CurvatureSource s) {
  switch (s) {
    case CurvatureSource::eq17_oracle_connection: return "eq17_oracle_connection";
    case CurvatureSource::eq17_closed_form_connection: return "eq17_closed_form_connection";
    case CurvatureSource::eq17_corrected_connection: return "eq17_corrected_connection";
    case CurvatureSource::eq18: return "eq18";
  }
  return "?";
}

struct BundleCurvatureTable {
  Array<double, 4> values;  ///< layout (δ, α, β, γ)
  CurvatureSource source = CurvatureSource::eq17_oracle_connection;
};

inline BundleCurvatureTable bundle_curvature_eq17(const ChartedMetric& m, const BundlePoint& p, ConnectionSource source,
                                                  int sign = +1) {
  auto q = p.coords();
  std::span<const double> qs(q);
  switch (source) {
    case ConnectionSource::oracle:
      return {anholonomic_curvature(m, qs, [&m](auto qq) { return koszul_connection<scalar_of<decltype(qq)>>(m, qq); }),
              CurvatureSource::eq17_oracle_connection};
    case ConnectionSource::closed_form:
    case ConnectionSource::corrected: {
      ClosedFormOptions opt{sign, MixedReading::canonical,
                            source == ConnectionSource::closed_form ? VerticalVariant::printed
                                                                    : VerticalVariant::corrected};
      return {anholonomic_curvature(
                  m, qs, [&m, opt](auto qq) { return closed_form_connection<scalar_of<decltype(qq)>>(m, qq, opt); }),
              source == ConnectionSource::closed_form ? CurvatureSource::eq17_closed_form_connection
                                                      : CurvatureSource::eq17_corrected_connection};
    }
  }
  throw std::invalid_argument("bundle_curvature_eq17: unknown source");
}

/// Readings for the two garbled lines of the printed curvature components.
enum class Eq18Variant {
  a,  ///< minimal typographic repair
  b,  ///< alternate repair (see bundle_curvature_eq18)
};

struct Eq18Options {
  int sign = +1;
  MixedReading reading = MixedReading::canonical;
  Eq18Variant variant = Eq18Variant::a;
  VerticalVariant vertical = VerticalVariant::printed;  ///< connection used inside the R^{h̄}_{jik̄} bracket
};

/// The printed curvature components of the CG metric, under these repairs:
///  - R^{h̄}_{jik̄}: "g_{nk}y^y" is read g_{nk}y^h and the bracket is contracted
///    with R^n_{jim}y^m; variant a reads "R^h_{.jnm}" as R^h_{jnm}, variant b as
///    the mixed R^{h·}_{·jnm}.
///  - R^{h̄}_{jīk}: variant a repairs the bracket to
///    (y_iδ^h_n + y_nδ^h_i) + ((1+α)/α) g_in y^h − (1/α) y_n y_i y^h; variant b
///    uses α times the vertical-vertical connection Γ̄^h_{in}.
/// `vertical` picks which Γ̄ (printed or fiber) appears where the display uses it.
/// Families reached by antisymmetry in the first slot pair are filled in;
/// everything else unprinted is zero.
inline BundleCurvatureTable bundle_curvature_eq18(const ChartedMetric& m, const BundlePoint& p,
                                                  const Eq18Options& opt = {}) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  auto q = p.coords();
  std::span<const double> qs(q);
  auto f = fiber_data<double>(m, qs);
  auto x = qs.first(n);
  const double s = opt.sign, al = f.alpha;
  auto r = riemann<double>(m, x);
  for (auto& v : r) v *= s;
  auto mx = mixed_from(f.g, f.ginv, r, opt.reading);
  auto nr = nabla_riemann<double>(m, x);  // (l, h, j, i, k)
  for (auto& v : nr) v *= s;
  auto vvp = vertical_vertical(f, opt.vertical);
  const auto& y = f.y;
  const auto& yl = f.y_lower;
  auto delta = [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; };

  // ∇_j R^{h·}_{·kmi}, layout (j, h, k, m, i)
  Array<double, 5> nmx = Array<double, 5>::cube(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t mm = 0; mm < n; ++mm)
          for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t t = 0; t < n; ++t)
              for (std::size_t ss = 0; ss < n; ++ss)
                acc += f.ginv(h, t) * f.g(i, ss) *
                       (opt.reading == MixedReading::canonical ? nr(j, ss, t, k, mm) : nr(j, ss, k, t, mm));
            nmx(j, h, k, mm, i) = acc;
          }

  Array<double, 4> out = Array<double, 4>::cube(n2);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          // family: R^h_{jik}
          double f1 = r(h, j, i, k);
          for (std::size_t mm = 0; mm < n; ++mm)
            for (std::size_t nn = 0; nn < n; ++nn)
              for (std::size_t l = 0; l < n; ++l) {
                f1 += (mx(h, i, mm, nn) * r(nn, j, k, l) - mx(h, j, mm, nn) * r(nn, i, k, l)) * y[mm] * y[l] / (4.0 * al);
                f1 -= r(nn, j, i, mm) * mx(h, k, l, nn) * y[mm] * y[l] / (2.0 * al);
              }
          // family: R^{h̄}_{jik}
          double f2 = 0.0;
          for (std::size_t mm = 0; mm < n; ++mm) f2 += 0.5 * (nr(j, h, i, k, mm) - nr(i, h, j, k, mm)) * y[mm];
          // family: R^{h̄}_{jik̄}
          double f3 = r(h, j, i, k);
          for (std::size_t mm = 0; mm < n; ++mm)
            for (std::size_t nn = 0; nn < n; ++nn) {
              for (std::size_t l = 0; l < n; ++l) {
                double second = opt.variant == Eq18Variant::a ? r(h, j, nn, mm) : mx(h, j, nn, mm);
                f3 += (r(h, i, nn, mm) * mx(nn, j, l, k) - second * mx(nn, i, l, k)) * y[mm] * y[l] / (4.0 * al);
              }
              f3 -= r(nn, j, i, mm) * y[mm] * vvp(h, nn, k);
            }
          // family: R^h_{j̄īk}
          double f4 = 0.0;
          for (std::size_t mm = 0; mm < n; ++mm)
            for (std::size_t nn = 0; nn < n; ++nn)
              for (std::size_t l = 0; l < n; ++l)
                f4 += (mx(h, nn, mm, j) * mx(nn, k, l, i) - mx(h, nn, mm, i) * mx(nn, k, l, j)) * y[mm] * y[l] /
                      (4.0 * al * al);
          // family: R^h_{jīk}
          double f6 = 0.0;
          for (std::size_t mm = 0; mm < n; ++mm) f6 -= nmx(j, h, k, mm, i) * y[mm] / (2.0 * al);
          // family: R^{h̄}_{jīk}
          double f7 = 0.5 * r(h, j, i, k);
          for (std::size_t nn = 0; nn < n; ++nn) {
            for (std::size_t mm = 0; mm < n; ++mm)
              for (std::size_t l = 0; l < n; ++l) f7 += r(h, j, nn, mm) * mx(nn, k, l, i) * y[mm] * y[l] / (4.0 * al);
            double bracket = opt.variant == Eq18Variant::a
                                 ? (yl[i] * delta(h, nn) + yl[nn] * delta(h, i)) + (1.0 + al) / al * f.g(i, nn) * y[h] -
                                       yl[nn] * yl[i] * y[h] / al
                                 : al * vvp(h, i, nn);
            double ry = 0.0;
            for (std::size_t mm = 0; mm < n; ++mm) ry += r(nn, j, k, mm) * y[mm];
            f7 += bracket * ry / (2.0 * al);
          }
          out(h, j, i, k) = f1;
          out(n + h, j, i, k) = f2;
          out(n + h, j, i, n + k) = f3;
          out(h, n + j, n + i, k) = f4;
          out(h, j, n + i, k) = f6;
          out(h, n + i, j, k) = -f6;
          out(n + h, j, n + i, k) = f7;
          out(n + h, n + i, j, k) = -f7;
        }
  return {out, CurvatureSource::eq18};
}

/// G_{δε} R^ε_{αβγ}, layout (δ, α, β, γ).
inline Array<double, 4> lower_bundle_curvature(const ChartedMetric& m, const BundlePoint& p,
                                               const Array<double, 4>& r) {
  const std::size_t n2 = 2 * m.dim();
  auto q = p.coords();
  auto gf = cg_frame_metric<double>(m, std::span<const double>(q));
  Array<double, 4> low = Array<double, 4>::cube(n2);
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t c = 0; c < n2; ++c) {
          double s = 0.0;
          for (std::size_t e = 0; e < n2; ++e) s += gf(d, e) * r(e, a, b, c);
          low(d, a, b, c) = s;
        }
  return low;
}

/// max |R^δ_{αβγ} + R^δ_{βαγ}|
inline double curvature_antisymmetry_residual(const Array<double, 4>& r) {
  const std::size_t n2 = r.extent(0);
  double w = 0.0;
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t c = 0; c < n2; ++c) w = std::max(w, std::abs(r(d, a, b, c) + r(d, b, a, c)));
  return w;
}

/// Pair symmetry of the lowered tensor: low(δ,α,β,γ) = low(α,δ,γ,β).
inline double curvature_pair_symmetry_residual(const Array<double, 4>& low) {
  const std::size_t n2 = low.extent(0);
  double w = 0.0;
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t c = 0; c < n2; ++c) w = std::max(w, std::abs(low(d, a, b, c) - low(a, d, c, b)));
  return w;
}

/// K(u, v) = G(R(u,v)v, u) / (|u|²|v|² − G(u,v)²) with the oracle curvature;
/// u, v are adapted-frame components.
inline double sectional_curvature(const ChartedMetric& m, const BundlePoint& p, std::span<const double> u,
                                  std::span<const double> v) {
  const std::size_t n2 = 2 * m.dim();
  if (u.size() != n2 || v.size() != n2) throw std::invalid_argument("sectional_curvature: expected 2n components");
  auto q = p.coords();
  auto gf = cg_frame_metric<double>(m, std::span<const double>(q));
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      uu += gf(a, b) * u[a] * u[b];
      vv += gf(a, b) * v[a] * v[b];
      uv += gf(a, b) * u[a] * v[b];
    }
  const double den = uu * vv - uv * uv;
  if (!(den > 1e-12)) throw std::invalid_argument("sectional_curvature: degenerate plane");
  auto low = lower_bundle_curvature(m, p, bundle_curvature_eq17(m, p, ConnectionSource::oracle).values);
  double num = 0.0;
  for (std::size_t d = 0; d < n2; ++d)
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t c = 0; c < n2; ++c) num += low(d, a, b, c) * u[d] * u[a] * v[b] * v[c];
  return num / den;
}

// ---------------------------------------------------------------------------
// Lie derivatives

/// Coordinate components of a lifted base field as a smooth map on TM.
inline SmoothMap coordinate_lift(const ChartedMetric& m, const SmoothMap& field, LiftKind kind) {
  const std::size_t n2 = 2 * m.dim();
  return SmoothMap(n2, n2, [m, field, kind](auto q) {
    using T = scalar_of<decltype(q)>;
    if constexpr (dual_depth<T> >= 3) {
      throw NestingDepthError{};
      return std::vector<T>{};
    } else {
      return lift_coordinate_components<T>(m, field, kind, q);
    }
  });
}

/// (L_V G)(X_α, X_β) for a bundle vector field with coordinate components V,
/// computed in induced coordinates as V^c∂_c G_ab + G_cb ∂_a V^c + G_ac ∂_b V^c
/// and then expressed in the adapted frame. Layout (α, β).
inline Matrix<double> lie_derivative_oracle(const ChartedMetric& m, const BundlePoint& p,
                                            const SmoothMap& coordinate_field) {
  const std::size_t n2 = 2 * m.dim();
  auto qv = p.coords();
  std::span<const double> q(qv);
  auto gc = cg_coordinate_metric<double>(m, q);
  auto v = coordinate_field(q);
  Array<double, 3> dgc = Array<double, 3>::cube(n2);  // (c, a, b)
  Matrix<double> dv(n2, n2);                           // (a, c) = ∂_a V^c
  for (std::size_t c = 0; c < n2; ++c) {
    auto qs = seed_axis<double>(q, c);
    std::span<const D1> qd(qs);
    auto gd = cg_coordinate_metric<D1>(m, qd);
    for (std::size_t a = 0; a < n2; ++a)
      for (std::size_t b = 0; b < n2; ++b) dgc(c, a, b) = gd(a, b).d;
    auto vd = coordinate_field(qd);
    for (std::size_t k = 0; k < n2; ++k) dv(c, k) = vd[k].d;
  }
  Matrix<double> lc(n2, n2);
  for (std::size_t a = 0; a < n2; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      double s = 0.0;
      for (std::size_t c = 0; c < n2; ++c) s += v[c] * dgc(c, a, b) + gc(c, b) * dv(a, c) + gc(a, c) * dv(b, c);
      lc(a, b) = s;
    }
  auto a = frame_matrix<double>(m, q);
  auto out = matmul(transpose(a), matmul(lc, a));
  return out;
}

enum class LieClosedForm { complete_eq15, horizontal_eq16 };

struct LieOptions {
  int sign = +1;
  MixedReading reading = MixedReading::canonical;
  VerticalVariant vertical = VerticalVariant::printed;
};

/// Printed Lie derivative blocks assembled into a 2n×2n array (rows β, cols γ).
///   complete_eq15:   [[A1, B1], [C1, D1]]
///   horizontal_eq16: [[∇_iX_j + ∇_jX_i, −(1/α)R^{m·}_{·ikj}y^kX_m], [−(1/α)R^{m·}_{·jki}y^kX_m, 0]]
/// In D1, "∇X_m" is read y^n∇_nX_m.
inline Matrix<double> lie_derivative_closed_form_from_jet(const BaseFieldJet& jt, LieClosedForm kind,
                                                          const ClaimOptions& opt = {}) {
  const std::size_t n = jt.n;
  const auto& f = jt.f;
  const auto& y = f.y;
  const double al = f.alpha;
  Matrix<double> out(2 * n, 2 * n);
  const auto& mx = jt.mixed(opt.reading);
  auto ryx = [&](std::size_t i, std::size_t j) { return detail::mix_lowered(jt, mx, i, j); };
  const auto& vv = jt.vv(opt.vertical);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double sym = jt.nxl(i, j) + jt.nxl(j, i);
      if (kind == LieClosedForm::horizontal_eq16) {
        out(i, j) = sym;
        out(i, n + j) = -ryx(i, j) / al;
        out(n + i, j) = -ryx(j, i) / al;
        out(n + i, n + j) = 0.0;
        continue;
      }
      double b1 = 0.0;
      for (std::size_t nn = 0; nn < n; ++nn) {
        b1 += jt.nnxl(i, nn, j) * y[nn];
        for (std::size_t s = 0; s < n; ++s)
          for (std::size_t t = 0; t < n; ++t)
            b1 += (f.g(j, s) * jt.nnxl(i, nn, t) + f.g(i, s) * jt.nnxl(j, nn, t)) * y[s] * y[t] * y[nn];
      }
      b1 = (b1 - ryx(i, j)) / al;
      double d1 = jt.nxl(i, j) - jt.nxl(j, i);
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t) d1 += (f.g(j, s) * jt.nxl(i, t) - f.g(i, s) * jt.nxl(j, t)) * y[s] * y[t];
      d1 /= al;
      double yx = 0.0;  // X_t y^t
      for (std::size_t t = 0; t < n; ++t) yx += jt.xl[t] * y[t];
      for (std::size_t mm = 0; mm < n; ++mm) {
        // printed bracket/α = −Γ̄^m_{ij}
        double w = jt.ynx[mm] + f.y_lower[mm] * yx;
        d1 += -2.0 * vv(mm, i, j) * w / al;
      }
      out(i, j) = sym;
      out(i, n + j) = b1;
      out(n + i, j) = -ryx(j, i) / al;
      out(n + i, n + j) = d1;
    }
  return out;
}

inline Matrix<double> lie_derivative_closed_form(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& field,
                                                 LieClosedForm kind, const LieOptions& opt = {}) {
  return lie_derivative_closed_form_from_jet(base_field_jet(m, p, field, opt.sign), kind, {opt.reading, opt.vertical});
}

// ---------------------------------------------------------------------------
// Classification audits

inline constexpr double kKillingThreshold = 1e-7;

struct KillingClassification {
  bool base_killing = true;
  bool cov_deriv_zero = true;
  bool second_cov_deriv_zero = true;
  bool complete_lift_killing = true;
  bool horizontal_lift_killing = true;
  bool prop3a_consistent = true;  ///< complete lift Killing ⇔ (Killing ∧ ∇X = 0)
  bool prop3b_consistent = true;  ///< horizontal lift Killing ⇔ (Killing ∧ ∇∇X = 0)
  double max_complete_lie = 0.0;
  double max_horizontal_lie = 0.0;
};

inline KillingClassification killing_classify(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                              const SmoothMap& field) {
  KillingClassification k;
  auto low = lowered(m, field);
  auto cl = coordinate_lift(m, field, LiftKind::complete);
  auto hl = coordinate_lift(m, field, LiftKind::horizontal);
  double ksym = 0.0, nabla = 0.0, nabla2 = 0.0;
  for (const auto& p : points) {
    std::span<const double> x(p.x);
    auto nx = cov_deriv_covector<double>(m, low, x);
    auto nnx = second_cov_deriv_covector<double>(m, low, x);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) {
        ksym = std::max(ksym, std::abs(nx(i, j) + nx(j, i)));
        nabla = std::max(nabla, std::abs(nx(i, j)));
      }
    nabla2 = std::max(nabla2, max_abs(nnx));
    k.max_complete_lie = std::max(k.max_complete_lie, max_abs(lie_derivative_oracle(m, p, cl)));
    k.max_horizontal_lie = std::max(k.max_horizontal_lie, max_abs(lie_derivative_oracle(m, p, hl)));
  }
  k.base_killing = ksym <= kKillingThreshold;
  k.cov_deriv_zero = nabla <= kKillingThreshold;
  k.second_cov_deriv_zero = nabla2 <= kKillingThreshold;
  k.complete_lift_killing = k.max_complete_lie <= kKillingThreshold;
  k.horizontal_lift_killing = k.max_horizontal_lie <= kKillingThreshold;
  k.prop3a_consistent = k.complete_lift_killing == (k.base_killing && k.cov_deriv_zero);
  k.prop3b_consistent = k.horizontal_lift_killing == (k.base_killing && k.second_cov_deriv_zero);
  return k;
}

struct FlatnessAudit {
  bool base_flat = true;
  bool bundle_flat = true;
  double max_base_curv = 0.0;
  double max_bundle_curv = 0.0;
  [[nodiscard]] bool consistent() const { return base_flat == bundle_flat; }
};

inline FlatnessAudit flatness_audit(const ChartedMetric& m, const std::vector<BundlePoint>& points) {
  FlatnessAudit a;
  for (const auto& p : points) {
    a.max_base_curv = std::max(a.max_base_curv, max_abs(riemann_at(m, p.base()).mixed));
    a.max_bundle_curv =
        std::max(a.max_bundle_curv, max_abs(bundle_curvature_eq17(m, p, ConnectionSource::oracle).values));
  }
  a.base_flat = a.max_base_curv <= 1e-8;
  a.bundle_flat = a.max_bundle_curv <= 1e-6;
  return a;
}

// ---------------------------------------------------------------------------
// Geodesics on (TM, CG metric) in induced coordinates.

/// Coordinate Christoffels of the CG metric from the frame oracle:
/// Γ^c_{ab} = A^c_δ (∂_a (A⁻¹)^δ_b + (A⁻¹)^α_a (A⁻¹)^β_b Γ^δ_{αβ}); layout (c, a, b).
inline Array<double, 3> coordinate_connection(const ChartedMetric& m, std::span<const double> q) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  auto a = frame_matrix<double>(m, q);
  auto ainv = frame_matrix_inverse(a, n);
  auto fg = koszul_connection<double>(m, q);
  Array<double, 3> dainv = Array<double, 3>::cube(n2);  // (a, δ, b) = ∂_a (A⁻¹)^δ_b
  for (std::size_t ax = 0; ax < n2; ++ax) {
    auto qs = seed_axis<double>(q, ax);
    auto ad = frame_matrix_inverse(frame_matrix<D1>(m, std::span<const D1>(qs)), n);
    for (std::size_t d = 0; d < n2; ++d)
      for (std::size_t b = 0; b < n2; ++b) dainv(ax, d, b) = ad(d, b).d;
  }
  Array<double, 3> out = Array<double, 3>::cube(n2);
  for (std::size_t c = 0; c < n2; ++c)
    for (std::size_t ax = 0; ax < n2; ++ax)
      for (std::size_t b = 0; b < n2; ++b) {
        double s = 0.0;
        for (std::size_t d = 0; d < n2; ++d) {
          double inner = dainv(ax, d, b);
          for (std::size_t al = 0; al < n2; ++al)
            for (std::size_t be = 0; be < n2; ++be) inner += ainv(al, ax) * ainv(be, b) * fg(d, al, be);
          s += a(c, d) * inner;
        }
        out(c, ax, b) = s;
      }
  return out;
}

struct GeodesicState {
  std::vector<double> q;  ///< (x, y)
  std::vector<double> v;  ///< dq/dt
  double t = 0.0;
};

struct GeodesicResult {
  std::vector<GeodesicState> trajectory;
  std::vector<double> energy;            ///< G(v, v) per state
  std::optional<std::size_t> exit_index;  ///< step at which the chart domain was left
};

inline double geodesic_energy(const ChartedMetric& m, const GeodesicState& s) {
  auto gc = cg_coordinate_metric<double>(m, std::span<const double>(s.q));
  double e = 0.0;
  for (std::size_t a = 0; a < s.v.size(); ++a)
    for (std::size_t b = 0; b < s.v.size(); ++b) e += gc(a, b) * s.v[a] * s.v[b];
  return e;
}

/// Classical RK4 on q̈^c = −Γ^c_{ab} q̇^a q̇^b.
inline GeodesicResult geodesic_integrate(const ChartedMetric& m, const GeodesicState& start, double step,
                                         std::size_t n_steps) {
  const std::size_t n2 = 2 * m.dim();
  if (!(step > 0.0)) throw std::invalid_argument("geodesic_integrate: step must be positive");
  if (start.q.size() != n2 || start.v.size() != n2)
    throw std::invalid_argument("geodesic_integrate: state must have 2n coordinates and velocities");
  auto in_domain = [&](const std::vector<double>& q) { return m.in_domain(std::span<const double>(q).first(m.dim())); };
  if (!in_domain(start.q)) throw std::domain_error("geodesic_integrate: start outside chart domain");

  auto accel = [&](const std::vector<double>& q, const std::vector<double>& v) {
    auto gam = coordinate_connection(m, q);
    std::vector<double> acc(n2, 0.0);
    for (std::size_t c = 0; c < n2; ++c)
      for (std::size_t a = 0; a < n2; ++a)
        for (std::size_t b = 0; b < n2; ++b) acc[c] -= gam(c, a, b) * v[a] * v[b];
    return acc;
  };
  auto axpy = [](const std::vector<double>& x, double h, const std::vector<double>& d) {
    std::vector<double> out(x);
    for (std::size_t k = 0; k < x.size(); ++k) out[k] += h * d[k];
    return out;
  };

  GeodesicResult res;
  res.trajectory.reserve(n_steps + 1);
  res.trajectory.push_back(start);
  res.energy.push_back(geodesic_energy(m, start));
  GeodesicState s = start;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double h = step;
    auto k1q = s.v;
    auto k1v = accel(s.q, s.v);
    auto q2 = axpy(s.q, h / 2, k1q), v2 = axpy(s.v, h / 2, k1v);
    if (!in_domain(q2)) {
      res.exit_index = k;
      break;
    }
    auto k2v = accel(q2, v2);
    auto q3 = axpy(s.q, h / 2, v2), v3 = axpy(s.v, h / 2, k2v);
    if (!in_domain(q3)) {
      res.exit_index = k;
      break;
    }
    auto k3v = accel(q3, v3);
    auto q4 = axpy(s.q, h, v3), v4 = axpy(s.v, h, k3v);
    if (!in_domain(q4)) {
      res.exit_index = k;
      break;
    }
    auto k4v = accel(q4, v4);
    GeodesicState next;
    next.q.resize(n2);
    next.v.resize(n2);
    for (std::size_t c = 0; c < n2; ++c) {
      next.q[c] = s.q[c] + h / 6 * (k1q[c] + 2 * v2[c] + 2 * v3[c] + v4[c]);
      next.v[c] = s.v[c] + h / 6 * (k1v[c] + 2 * k2v[c] + 2 * k3v[c] + k4v[c]);
    }
    next.t = start.t + static_cast<double>(k + 1) * h;
    if (!in_domain(next.q)) {
      res.exit_index = k;
      break;
    }
    s = std::move(next);
    res.trajectory.push_back(s);
    res.energy.push_back(geodesic_energy(m, s));
  }
  return res;
}

/// The CG metric in induced coordinates as a 2n-dimensional chart, so the
/// generic base-geometry kernels can be run on TM itself.
inline ChartedMetric bundle_coordinate_metric(const ChartedMetric& m, double y_box = 2.0) {
  const std::size_t n = m.dim(), n2 = 2 * n;
  std::vector<double> lo(m.box_lo()), hi(m.box_hi());
  lo.resize(n2, -y_box);
  hi.resize(n2, y_box);
  return ChartedMetric(
      "TM[" + m.name() + "]", n2,
      [m](auto q) {
        using T = scalar_of<decltype(q)>;
        if constexpr (dual_depth<T> >= 3) {
          throw NestingDepthError{};
          return std::vector<T>{};
        } else {
          auto g = cg_coordinate_metric<T>(m, q);
          return std::vector<T>(g.begin(), g.end());
        }
      },
      [m, n](std::span<const double> q) { return m.in_domain(q.first(n)); }, lo, hi);
}

// ---------------------------------------------------------------------------
// Claim audits

namespace detail {

inline std::vector<double> block4(const Array<double, 4>& t, std::size_t n, std::array<bool, 4> bar) {
  std::vector<double> out;
  out.reserve(n * n * n * n);
  const std::size_t o0 = bar[0] ? n : 0, o1 = bar[1] ? n : 0, o2 = bar[2] ? n : 0, o3 = bar[3] ? n : 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) out.push_back(t(o0 + a, o1 + b, o2 + c, o3 + d));
  return out;
}

}  // namespace detail

struct LieClaim {
  ClaimInfo info;
  LieClosedForm form;
  bool vert_row, vert_col;
};

inline const std::vector<LieClaim>& lie_registry() {
  using F = LieClosedForm;
  static const std::vector<LieClaim> reg = {
      {{"eq15.A1", "eq. (15) A1", "∇_iX_j + ∇_jX_i", "", false, false}, F::complete_eq15, false, false},
      {{"eq15.B1", "eq. (15) B1",
        "(1/α)[∇_i∇_nX_j y^n + (g_js∇_i∇_nX_t + g_is∇_j∇_nX_t) y^s y^t y^n − R^{m·}_{·ikj} y^k X_m]", "", true, false},
       F::complete_eq15, false, true},
      {{"eq15.C1", "eq. (15) C1", "−(1/α) R^{m·}_{·jki} y^k X_m", "", true, false}, F::complete_eq15, true, false},
      {{"eq15.D1", "eq. (15) D1",
        "(1/α)[(∇_iX_j − ∇_jX_i) + (g_js∇_iX_t − g_is∇_jX_t) y^s y^t] + [(y_iδ^m_j + y_jδ^m_i) − (1+α) g_ij y^m + "
        "y_i y_j y^m] 2(∇X_m + g_ms X_t y^s y^t)/α²",
        "\"∇X_m\" read y^n ∇_n X_m", false, true},
       F::complete_eq15, true, true},
      {{"eq16.hh", "eq. (16) block (i, j)", "∇_iX_j + ∇_jX_i", "", false, false}, F::horizontal_eq16, false, false},
      {{"eq16.hv", "eq. (16) block (i, j̄)", "−(1/α) R^{m·}_{·ikj} y^k X_m", "", true, false}, F::horizontal_eq16,
       false, true},
      {{"eq16.vh", "eq. (16) block (ī, j)", "−(1/α) R^{m·}_{·jki} y^k X_m", "", true, false}, F::horizontal_eq16, true,
       false},
      {{"eq16.vv", "eq. (16) block (ī, j̄)", "0", "", false, false}, F::horizontal_eq16, true, true},
  };
  return reg;
}

inline std::vector<ClaimResult> audit_lie_claims(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                                 const std::vector<NamedField>& fields, int sign = +1,
                                                 const Tolerances& tol = {},
                                                 const std::vector<std::string>& only = {}) {
  std::vector<const LieClaim*> claims;
  std::vector<ClaimAccumulator> acc;
  for (const auto& c : lie_registry())
    if (only.empty() || std::find(only.begin(), only.end(), c.info.id) != only.end()) {
      claims.push_back(&c);
      acc.emplace_back(c.info);
    }
  if (claims.empty()) return {};
  const std::size_t n = m.dim();
  for (const auto& f : fields) {
    auto complete = coordinate_lift(m, f.field, LiftKind::complete);
    auto horizontal = coordinate_lift(m, f.field, LiftKind::horizontal);
    for (const auto& p : points) {
      if (!f.admits(p.x)) {
        for (auto& a : acc) a.skip();
        continue;
      }
      auto jet = base_field_jet(m, p, f.field, sign);
      auto oc = lie_derivative_oracle(m, p, complete);
      auto oh = lie_derivative_oracle(m, p, horizontal);
      for (std::size_t k = 0; k < claims.size(); ++k) {
        const auto* c = claims[k];
        const auto& oracle = c->form == LieClosedForm::complete_eq15 ? oc : oh;
        acc[k].add(
            [&](const ClaimOptions& o) {
              return block_of(lie_derivative_closed_form_from_jet(jet, c->form, o), c->vert_row ? n : 0,
                              c->vert_col ? n : 0, n);
            },
            block_of(oracle, c->vert_row ? n : 0, c->vert_col ? n : 0, n));
      }
    }
  }
  std::vector<ClaimResult> out;
  for (const auto& a : acc) out.push_back(a.finish(tol));
  return out;
}

struct CurvatureClaim {
  ClaimInfo info;
  bool eq17 = false;                    ///< whole table from the closed-form connection
  Eq18Variant variant = Eq18Variant::a;  ///< for printed-component families
  std::array<bool, 4> bar{};             ///< (δ, α, β, γ) block
};

inline const std::vector<CurvatureClaim>& curvature_registry() {
  using V = Eq18Variant;
  static const std::vector<CurvatureClaim> reg = {
      {{"eq17.closed_form", "eq. (17) with eq. (2)",
        "R^δ_{αβγ} = D_αΓ^δ_{βγ} − D_βΓ^δ_{αγ} + Γ^δ_{αε}Γ^ε_{βγ} − Γ^δ_{βε}Γ^ε_{αγ} − Ω^ε_{αβ}Γ^δ_{εγ}",
        "connection from the printed closed forms", true, true},
       true, V::a, {}},
      {{"eq18.hhh_h", "eq. (18) R^h_{jik}",
        "R^h_{jik} + (1/4α)(R^{h·}_{·imn}R^n_{jkl} − R^{h·}_{·jmn}R^n_{ikl}) y^m y^l − (1/2α) R^n_{jim} R^{h·}_{·ksn} "
        "y^m y^s",
        "", true, false},
       false, V::a, {false, false, false, false}},
      {{"eq18.hhh_v", "eq. (18) R^h̄_{jik}", "½(∇_jR^h_{ikm} − ∇_iR^h_{jkm}) y^m", "", false, false},
       false, V::a, {true, false, false, false}},
      {{"eq18.hhv_v_a", "eq. (18) R^h̄_{jik̄}",
        "R^h_{jik} + (1/4α)(R^h_{inm}R^{n·}_{·jlk} − R^h_{·jnm}R^{n·}_{·ilk}) y^m y^l − R^h_{jim} y^m [−(1/α)(y_nδ^h_k "
        "+ y_kδ^h_n) + ((1+α)/α) g_nk y^y − (1/α) y_n y_k y^h]",
        "y^y read y^h; bracket contracted with R^n_{jim} y^m; R^h_{·jnm} read R^h_{jnm}", true, true},
       false, V::a, {true, false, false, true}},
      {{"eq18.hhv_v_b", "eq. (18) R^h̄_{jik̄}",
        "R^h_{jik} + (1/4α)(R^h_{inm}R^{n·}_{·jlk} − R^h_{·jnm}R^{n·}_{·ilk}) y^m y^l − R^h_{jim} y^m [−(1/α)(y_nδ^h_k "
        "+ y_kδ^h_n) + ((1+α)/α) g_nk y^y − (1/α) y_n y_k y^h]",
        "y^y read y^h; bracket contracted with R^n_{jim} y^m; R^h_{·jnm} read R^{h·}_{·jnm}", true, true},
       false, V::b, {true, false, false, true}},
      {{"eq18.vvh_h", "eq. (18) R^h_{j̄īk}",
        "(1/4α²)(R^{h·}_{·nmj}R^{n·}_{·kli} − R^{h·}_{·nmi}R^{n·}_{·klj}) y^m y^l", "", true, false},
       false, V::a, {false, true, true, false}},
      {{"eq18.vvh_zero", "eq. (18) R^h̄_{j̄īk}", "0", "", false, false}, false, V::a, {true, true, true, false}},
      {{"eq18.vvv_zero", "eq. (18) R^h̄_{j̄īk̄}", "0", "", false, false}, false, V::a, {true, true, true, true}},
      {{"eq18.hvv_zero", "eq. (18) R^h̄_{jīk̄}", "0", "", false, false}, false, V::a, {true, false, true, true}},
      {{"eq18.hvh_h", "eq. (18) R^h_{jīk}", "−(1/2α)(∇_jR^{h·}_{·kmi}) y^m", "", true, false},
       false, V::a, {false, false, true, false}},
      {{"eq18.hvh_v_a", "eq. (18) R^h̄_{jīk}",
        "½R^h_{jik} + (1/4α) R^h_{jnm}R^{n·}_{·kli} y^m y^l + (1/2α)[(y_iδ^h_n + y_nδ^h_i) + ((1+α)/α) g_in y^n − "
        "(1/α) y_n y_k y^h] R^n_{jkm} y^m",
        "g_in y^n read g_in y^h; y_n y_k y^h read y_n y_i y^h", true, false},
       false, V::a, {true, false, true, false}},
      {{"eq18.hvh_v_b", "eq. (18) R^h̄_{jīk}",
        "½R^h_{jik} + (1/4α) R^h_{jnm}R^{n·}_{·kli} y^m y^l + (1/2α)[(y_iδ^h_n + y_nδ^h_i) + ((1+α)/α) g_in y^n − "
        "(1/α) y_n y_k y^h] R^n_{jkm} y^m",
        "bracket read as α Γ̄^h_{in}", true, true},
       false, V::b, {true, false, true, false}},
  };
  return reg;
}

inline std::vector<ClaimResult> audit_curvature_claims(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                                       int sign = +1, const Tolerances& tol = {},
                                                       const std::vector<std::string>& only = {}) {
  std::vector<const CurvatureClaim*> claims;
  std::vector<ClaimAccumulator> acc;
  for (const auto& c : curvature_registry())
    if (only.empty() || std::find(only.begin(), only.end(), c.info.id) != only.end()) {
      claims.push_back(&c);
      acc.emplace_back(c.info);
    }
  if (claims.empty()) return {};
  const std::size_t n = m.dim();
  for (const auto& p : points) {
    auto oracle = bundle_curvature_eq17(m, p, ConnectionSource::oracle).values;
    auto qv = p.coords();
    std::span<const double> q(qv);
    for (std::size_t k = 0; k < claims.size(); ++k) {
      const auto* c = claims[k];
      if (c->eq17) {
        acc[k].add(
            [&](const ClaimOptions& o) {
              ClosedFormOptions co{sign, o.reading, o.vertical};
              auto t = anholonomic_curvature(
                  m, q, [&m, co](auto qq) { return closed_form_connection<scalar_of<decltype(qq)>>(m, qq, co); });
              return std::vector<double>(t.begin(), t.end());
            },
            std::vector<double>(oracle.begin(), oracle.end()));
        continue;
      }
      acc[k].add(
          [&](const ClaimOptions& o) {
            auto t = bundle_curvature_eq18(m, p, {sign, o.reading, c->variant, o.vertical}).values;
            return detail::block4(t, n, c->bar);
          },
          detail::block4(oracle, n, c->bar));
    }
  }
  std::vector<ClaimResult> out;
  for (const auto& a : acc) out.push_back(a.finish(tol));
  return out;
}

}  // namespace tbaudit

#endif  // TBAUDIT_KILLING_CURVATURE_HPP
