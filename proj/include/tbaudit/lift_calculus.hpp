#ifndef TBAUDIT_LIFT_CALCULUS_HPP
#define TBAUDIT_LIFT_CALCULUS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/cg_connection.hpp"
#include "tbaudit/claims.hpp"
#include "tbaudit/fields.hpp"

namespace tbaudit {

/// Base-field quantities at a bundle point used by the printed lift formulas.
/// Curvature entries already carry the convention sign.
struct BaseFieldJet {
  std::size_t n = 0;
  FiberData<double> f;
  Array<double, 3> gam;
  Array<double, 4> r;                  ///< R^h_{jik}
  Array<double, 4> mixed_canonical;    ///< R^{h·}_{·ikj}, layout (h, i, k, j)
  Array<double, 4> mixed_swapped;
  Array<double, 3> vv_printed, vv_corrected;
  std::vector<double> xu;   ///< X^h
  std::vector<double> xl;   ///< X_h
  Matrix<double> nxu;       ///< ∇_i X^h, layout (i, h)
  Matrix<double> nxl;       ///< ∇_i X_j, layout (i, j)
  Array<double, 3> nnxl;    ///< ∇_i ∇_j X_k, layout (i, j, k)
  Array<double, 3> nnxu;    ///< ∇_i ∇_j X^h, layout (i, j, h)
  std::vector<double> ynx;  ///< y^n ∇_n X_h

  [[nodiscard]] const Array<double, 4>& mixed(MixedReading r) const {
    return r == MixedReading::canonical ? mixed_canonical : mixed_swapped;
  }
  [[nodiscard]] const Array<double, 3>& vv(VerticalVariant v) const {
    return v == VerticalVariant::printed ? vv_printed : vv_corrected;
  }
};

inline BaseFieldJet base_field_jet(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& field,
                                   int sign = +1) {
  BaseFieldJet j;
  const std::size_t n = j.n = m.dim();
  auto qv = p.coords();
  std::span<const double> q(qv);
  auto x = q.first(n);
  j.f = fiber_data<double>(m, q);
  j.gam = christoffel<double>(m, x);
  j.r = riemann<double>(m, x);
  for (auto& v : j.r) v *= sign;
  j.mixed_canonical = mixed_from(j.f.g, j.f.ginv, j.r, MixedReading::canonical);
  j.mixed_swapped = mixed_from(j.f.g, j.f.ginv, j.r, MixedReading::swapped);
  j.vv_printed = vertical_vertical_printed(j.f);
  j.vv_corrected = vertical_vertical_corrected(j.f);
  j.xu = field(x);
  j.xl.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < n; ++s) j.xl[i] += j.f.g(i, s) * j.xu[s];
  j.nxu = cov_deriv_vector<double>(m, field, x);
  auto low = lowered(m, field);
  j.nxl = cov_deriv_covector<double>(m, low, x);
  j.nnxl = second_cov_deriv_covector<double>(m, low, x);
  j.nnxu = Array<double, 3>::cube(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t t = 0; t < n; ++t) j.nnxu(a, b, h) += j.f.ginv(h, t) * j.nnxl(a, b, t);
  j.ynx.assign(n, 0.0);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t k = 0; k < n; ++k) j.ynx[h] += j.f.y[k] * j.nxl(k, h);
  return j;
}

/// Everything a lift claim needs at one (point, field) pair, oracles included.
struct LiftContext {
  BaseFieldJet jet;
  std::array<Matrix<double>, 3> vector_oracle;    ///< ∇_β (lift)^α, layout (β, α), by LiftKind
  std::array<Matrix<double>, 3> covector_oracle;  ///< ∇_β (lowered lift)_γ, layout (β, γ)

  [[nodiscard]] const Matrix<double>& vec(LiftKind k) const { return vector_oracle[static_cast<int>(k)]; }
  [[nodiscard]] const Matrix<double>& cov(LiftKind k) const { return covector_oracle[static_cast<int>(k)]; }
  [[nodiscard]] Matrix<double> rot(LiftKind k) const {
    const auto& c = cov(k);
    Matrix<double> r(c.extent(0), c.extent(1));
    for (std::size_t a = 0; a < c.extent(0); ++a)
      for (std::size_t b = 0; b < c.extent(1); ++b) r(a, b) = c(a, b) - c(b, a);
    return r;
  }
};

/// `oracle_connection` is the Koszul table at p.
inline LiftContext make_lift_context(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& field,
                                     const Array<double, 3>& oracle_connection, int sign = +1) {
  LiftContext c;
  c.jet = base_field_jet(m, p, field, sign);
  auto qv = p.coords();
  std::span<const double> q(qv);
  for (auto k : {LiftKind::vertical, LiftKind::complete, LiftKind::horizontal}) {
    c.vector_oracle[static_cast<int>(k)] =
        frame_covariant_derivative<double>(m, q, frame_lift(m, field, k), oracle_connection);
    c.covector_oracle[static_cast<int>(k)] =
        frame_covariant_derivative_covector<double>(m, q, lowered_frame_lift(m, field, k), oracle_connection);
  }
  return c;
}

struct LiftClaim {
  ClaimInfo info;
  std::function<std::vector<double>(const LiftContext&, const ClaimOptions&)> evaluate;
  std::function<std::vector<double>(const LiftContext&)> oracle;
};

namespace detail {

// Σ_{k,m} M(h, a, k, b) y^k X^m style contractions used across the displays.

/// Σ_{k,m} mixed(h, i, k, m) y^k X^m
inline double mix_hikm(const BaseFieldJet& J, const Array<double, 4>& mx, std::size_t h, std::size_t i) {
  double s = 0.0;
  for (std::size_t k = 0; k < J.n; ++k)
    for (std::size_t m = 0; m < J.n; ++m) s += mx(h, i, k, m) * J.f.y[k] * J.xu[m];
  return s;
}

/// Σ_{k,m} mixed(h, m, k, i) y^k X^m
inline double mix_hmki(const BaseFieldJet& J, const Array<double, 4>& mx, std::size_t h, std::size_t i) {
  double s = 0.0;
  for (std::size_t k = 0; k < J.n; ++k)
    for (std::size_t m = 0; m < J.n; ++m) s += mx(h, m, k, i) * J.f.y[k] * J.xu[m];
  return s;
}

/// Σ_{k,m} R^h_{imk} y^k X^m
inline double r_himk(const BaseFieldJet& J, std::size_t h, std::size_t i) {
  double s = 0.0;
  for (std::size_t k = 0; k < J.n; ++k)
    for (std::size_t m = 0; m < J.n; ++m) s += J.r(h, i, m, k) * J.f.y[k] * J.xu[m];
  return s;
}

/// Σ_{k,m} R^{m·}_{·ikj} y^k X_m
inline double mix_lowered(const BaseFieldJet& J, const Array<double, 4>& mx, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < J.n; ++k)
    for (std::size_t m = 0; m < J.n; ++m) s += mx(m, i, k, j) * J.f.y[k] * J.xl[m];
  return s;
}

/// Σ_{h,k} R^h_{ijk} y^k w_h
inline double r_ijk_w(const BaseFieldJet& J, std::size_t i, std::size_t j, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t h = 0; h < J.n; ++h)
    for (std::size_t k = 0; k < J.n; ++k) s += J.r(h, i, j, k) * J.f.y[k] * w[h];
  return s;
}

/// w_h = v_h + y_h (v_t y^t)
inline std::vector<double> with_fiber_term(const BaseFieldJet& J, const std::vector<double>& v) {
  double vy = 0.0;
  for (std::size_t t = 0; t < J.n; ++t) vy += v[t] * J.f.y[t];
  std::vector<double> w(J.n);
  for (std::size_t h = 0; h < J.n; ++h) w[h] = v[h] + J.f.y_lower[h] * vy;
  return w;
}

/// ∇_i X_j + y_j (∇_i X_t y^t)
inline double nabla_fiber(const BaseFieldJet& J, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t t = 0; t < J.n; ++t) s += J.nxl(i, t) * J.f.y[t];
  return J.nxl(i, j) + J.f.y_lower[j] * s;
}

/// y^n ∇_i ∇_n X_j
inline double ynn(const BaseFieldJet& J, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < J.n; ++k) s += J.nnxl(i, k, j) * J.f.y[k];
  return s;
}

/// (y^t y^n ∇_i ∇_n X_t)
inline double yynn(const BaseFieldJet& J, std::size_t i) {
  double s = 0.0;
  for (std::size_t t = 0; t < J.n; ++t) s += ynn(J, i, t) * J.f.y[t];
  return s;
}

/// (∇_iX_j − ∇_jX_i) + (y_j ∇_iX_t − y_i ∇_jX_t) y^t
inline double rotation_fiber(const BaseFieldJet& J, std::size_t i, std::size_t j) {
  double si = 0.0, sj = 0.0;
  for (std::size_t t = 0; t < J.n; ++t) {
    si += J.nxl(i, t) * J.f.y[t];
    sj += J.nxl(j, t) * J.f.y[t];
  }
  return (J.nxl(i, j) - J.nxl(j, i)) + J.f.y_lower[j] * si - J.f.y_lower[i] * sj;
}

inline std::function<std::vector<double>(const LiftContext&)> vec_block(LiftKind k, bool vert_row, bool vert_col) {
  return [=](const LiftContext& c) {
    const std::size_t n = c.jet.n;
    return block_of(c.vec(k), vert_row ? n : 0, vert_col ? n : 0, n);
  };
}

inline std::function<std::vector<double>(const LiftContext&)> cov_block(LiftKind k, bool vert_row, bool vert_col) {
  return [=](const LiftContext& c) {
    const std::size_t n = c.jet.n;
    return block_of(c.cov(k), vert_row ? n : 0, vert_col ? n : 0, n);
  };
}

inline std::function<std::vector<double>(const LiftContext&)> rot_block(LiftKind k, bool vert_row, bool vert_col) {
  return [=](const LiftContext& c) {
    const std::size_t n = c.jet.n;
    return block_of(c.rot(k), vert_row ? n : 0, vert_col ? n : 0, n);
  };
}

inline std::vector<double> zeros(const LiftContext& c, const ClaimOptions&) {
  return std::vector<double>(c.jet.n * c.jet.n, 0.0);
}

}  // namespace detail

/// Every displayed component family of the lift derivative formulas. Vector
/// families are tabulated as (i, h) = (derivative index, component index);
/// covector and rotation families as (i, j) = (β, γ).
inline const std::vector<LiftClaim>& lift_registry() {
  using namespace detail;
  using K = LiftKind;
  using C = const LiftContext&;
  using O = const ClaimOptions&;
  static const std::vector<LiftClaim> reg = [] {
    std::vector<LiftClaim> r;
    auto add = [&r](ClaimInfo info, auto eval, auto oracle) { r.push_back({std::move(info), eval, oracle}); };

    // vertical lift ^V X
    add({"eq4.line1", "eq. (4) line 1", "∇_i ^V X^h = −(1/2α) R^{h·}_{·ikm} y^k X^m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto h) { return -mix_hikm(J, J.mixed(o.reading), h, i) / (2 * J.f.alpha); });
        },
        vec_block(K::vertical, false, false));
    add({"eq4.line2", "eq. (4) line 2", "∇_ī ^V X^h = 0", "", false, false}, zeros, vec_block(K::vertical, true, false));
    add({"eq4.line3", "eq. (4) line 3", "∇_i ^V X^h̄ = ∇_i X^h", "", false, false},
        [](C c, O) { return tabulate(c.jet.n, [&](auto i, auto h) { return c.jet.nxu(i, h); }); },
        vec_block(K::vertical, false, true));
    add({"eq4.line4", "eq. (4) line 4",
         "∇_ī ^V X^h̄ = [−(1/α)(y_iδ^h_m + y_mδ^h_i) + ((1+α)/α) g_im y^h − (1/α) y_i y_m y^h] X^h",
         "trailing X^h read X^m and contracted over m", false, true},
        [](C c, O o) {
          const auto& J = c.jet;
          const auto& vv = J.vv(o.vertical);
          return tabulate(J.n, [&](auto i, auto h) {
            double s = 0.0;
            for (std::size_t m = 0; m < J.n; ++m) s += vv(h, i, m) * J.xu[m];
            return s;
          });
        },
        vec_block(K::vertical, true, true));

    // complete lift ^C X
    add({"eq5.line1", "eq. (5) line 1", "∇_i ^C X^h = ∇_i X^h − (1/2α) R^{h·}_{·ikm} y^k X^m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto h) {
            return J.nxu(i, h) - mix_hikm(J, J.mixed(o.reading), h, i) / (2 * J.f.alpha);
          });
        },
        vec_block(K::complete, false, false));
    add({"eq5.line2", "eq. (5) line 2", "∇_ī ^C X^h = −(1/2α) R^{h·}_{·mki} y^k X^m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto h) { return -mix_hmki(J, J.mixed(o.reading), h, i) / (2 * J.f.alpha); });
        },
        vec_block(K::complete, true, false));
    add({"eq5.line3", "eq. (5) line 3", "∇_i ^C X^h̄ = ∇_i∇_k X^h y^k − ½ R^h_{imk} y^k X^m", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto h) {
            double s = 0.0;
            for (std::size_t k = 0; k < J.n; ++k) s += J.nnxu(i, k, h) * J.f.y[k];
            return s - 0.5 * r_himk(J, h, i);
          });
        },
        vec_block(K::complete, false, true));
    add({"eq5.line4", "eq. (5) line 4",
         "∇_ī ^C X^h̄ = ∇_i X^h + [−(1/α)(y_iδ^h_m + y_mδ^h_i) + ((1+α)/α) g_im y^h − (1/α) y_i y_m y^h] X^h",
         "trailing X^h read X^m and contracted over m", false, true},
        [](C c, O o) {
          const auto& J = c.jet;
          const auto& vv = J.vv(o.vertical);
          return tabulate(J.n, [&](auto i, auto h) {
            double s = J.nxu(i, h);
            for (std::size_t m = 0; m < J.n; ++m) s += vv(h, i, m) * J.xu[m];
            return s;
          });
        },
        vec_block(K::complete, true, true));

    // horizontal lift ^H X; suffix is (row α, column β) of the display
    add({"eq6.hh", "eq. (6) block (h, i)", "∇_i X^h", "", false, false},
        [](C c, O) { return tabulate(c.jet.n, [&](auto i, auto h) { return c.jet.nxu(i, h); }); },
        vec_block(K::horizontal, false, false));
    add({"eq6.hv", "eq. (6) block (h, ī)", "−(1/2α) R^{h·}_{·mki} y^k X^m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto h) { return -mix_hmki(J, J.mixed(o.reading), h, i) / (2 * J.f.alpha); });
        },
        vec_block(K::horizontal, true, false));
    add({"eq6.vh", "eq. (6) block (h̄, i)", "−½ R^h_{imk} y^k X^m", "", false, false},
        [](C c, O) { return tabulate(c.jet.n, [&](auto i, auto h) { return -0.5 * r_himk(c.jet, h, i); }); },
        vec_block(K::horizontal, false, true));
    add({"eq6.vv", "eq. (6) block (h̄, ī)", "0", "", false, false}, zeros, vec_block(K::horizontal, true, true));

    // lowered vertical lift ^V X_B
    add({"eq8.line1", "eq. (8) line 1", "∇_i ^V X_j = −(1/2α) R^h_{ijk} y^k (X_h + g_hs X_t y^s y^t)", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          auto w = with_fiber_term(J, J.xl);
          return tabulate(J.n, [&](auto i, auto j) { return -r_ijk_w(J, i, j, w) / (2 * J.f.alpha); });
        },
        cov_block(K::vertical, false, false));
    add({"eq8.line2", "eq. (8) line 2", "∇_i ^V X_j̄ = (1/α)(∇_i X_j + ∇ iX_t g_js y^s y^t)",
         "\"∇ iX_t\" read ∇_i X_t", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return nabla_fiber(J, i, j) / J.f.alpha; });
        },
        cov_block(K::vertical, false, true));
    add({"eq8.line3", "eq. (8) line 3", "∇_ī ^V X_j = 0", "", false, false}, zeros, cov_block(K::vertical, true, false));
    add({"eq8.line4", "eq. (8) line 4",
         "∇_ī ^V X_j̄ = [−(y_iδ^h_j + y_jδ^h_i) + (1+α) g_ij y^h − y_i y_j y^h] (X_h + g_hs X_t y^s y^t)/α²", "",
         false, true},
        [](C c, O o) {
          const auto& J = c.jet;
          const auto& vv = J.vv(o.vertical);
          auto w = with_fiber_term(J, J.xl);
          return tabulate(J.n, [&](auto i, auto j) {
            double s = 0.0;
            for (std::size_t h = 0; h < J.n; ++h) s += vv(h, i, j) * w[h];
            return s / J.f.alpha;
          });
        },
        cov_block(K::vertical, true, true));

    // lowered complete lift ^C X_B
    add({"eq9.line1", "eq. (9) line 1", "∇_i ^C X_j = ∇_i X_j − (1/2α) R^h_{ijk} y^k (∇X_h + g_hs ∇X_t y^s y^t)",
         "\"∇X_h\" read y^n ∇_n X_h", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          auto w = with_fiber_term(J, J.ynx);
          return tabulate(J.n, [&](auto i, auto j) { return J.nxl(i, j) - r_ijk_w(J, i, j, w) / (2 * J.f.alpha); });
        },
        cov_block(K::complete, false, false));
    add({"eq9.line2", "eq. (9) line 2",
         "∇_i ^C X_j̄ = (1/α)(∇_i∇_n X_j y^n + g_js ∇_i∇_n X_t y^s y^t y^n) − (1/2α) R^{m·}_{·ikj} y^k X_m", "", true,
         false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) {
            return (ynn(J, i, j) + J.f.y_lower[j] * yynn(J, i)) / J.f.alpha -
                   mix_lowered(J, J.mixed(o.reading), i, j) / (2 * J.f.alpha);
          });
        },
        cov_block(K::complete, false, true));
    add({"eq9.line3", "eq. (9) line 3", "∇_ī ^C X_j = −(1/2α) R^{m·}_{·jki} y^k X_m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return -mix_lowered(J, J.mixed(o.reading), j, i) / (2 * J.f.alpha); });
        },
        cov_block(K::complete, true, false));
    auto eq9_line4 = [](bool differentiated) {
      return [differentiated](C c, O o) {
        const auto& J = c.jet;
        const auto& vv = J.vv(o.vertical);
        // "g_ms" read g_hs
        double xy = 0.0, ny = 0.0;
        for (std::size_t t = 0; t < J.n; ++t) {
          xy += J.xl[t] * J.f.y[t];
          ny += J.ynx[t] * J.f.y[t];
        }
        std::vector<double> w(J.n);
        for (std::size_t h = 0; h < J.n; ++h) w[h] = J.ynx[h] + J.f.y_lower[h] * (differentiated ? ny : xy);
        return tabulate(J.n, [&](auto i, auto j) {
          double s = nabla_fiber(J, i, j) / J.f.alpha;
          // printed bracket / α² = −Γ̄^h_{ij} / α
          for (std::size_t h = 0; h < J.n; ++h) s -= vv(h, i, j) * w[h] / J.f.alpha;
          return s;
        });
      };
    };
    const std::string q9 =
        "∇_ī ^C X_j̄ = (1/α)(∇_i X_j + g_js ∇_i X_t y^s y^t) + [(y_iδ^h_j + y_jδ^h_i) − (1+α) g_ij y^h + y_i y_j y^h]"
        " (∇X_h + g_ms X_t y^s y^t)/α²";
    add({"eq9.line4a", "eq. (9) line 4", q9,
         "\"∇X_h\" read y^n∇_nX_h, \"g_ms X_t\" read g_hs y^n∇_nX_t", false, true},
        eq9_line4(true), cov_block(K::complete, true, true));
    add({"eq9.line4b", "eq. (9) line 4", q9, "\"∇X_h\" read y^n∇_nX_h, \"g_ms X_t\" read g_hs X_t", false, true},
        eq9_line4(false), cov_block(K::complete, true, true));

    // lowered horizontal lift ^H X_B; suffix is (row β, column γ)
    add({"eq10.hh", "eq. (10) block (i, j)", "∇_i X_j", "", false, false},
        [](C c, O) { return tabulate(c.jet.n, [&](auto i, auto j) { return c.jet.nxl(i, j); }); },
        cov_block(K::horizontal, false, false));
    add({"eq10.hv", "eq. (10) block (i, j̄)", "−(1/2α) R^{m·}_{·ikj} y^k X_m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return -mix_lowered(J, J.mixed(o.reading), i, j) / (2 * J.f.alpha); });
        },
        cov_block(K::horizontal, false, true));
    add({"eq10.vh", "eq. (10) block (ī, j)", "−(1/2α) R^{m·}_{·jki} y^k X_m", "", true, false},
        [](C c, O o) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return -mix_lowered(J, J.mixed(o.reading), j, i) / (2 * J.f.alpha); });
        },
        cov_block(K::horizontal, true, false));
    add({"eq10.vv", "eq. (10) block (ī, j̄)", "0", "", false, false}, zeros, cov_block(K::horizontal, true, true));

    // rotations
    add({"eq11.hh", "eq. (11) block (i, j)", "∇_i X_j − ∇_j X_i", "", false, false},
        [](C c, O) {
          return tabulate(c.jet.n, [&](auto i, auto j) { return c.jet.nxl(i, j) - c.jet.nxl(j, i); });
        },
        rot_block(K::horizontal, false, false));
    add({"eq11.hv", "eq. (11) block (i, j̄)", "0", "", false, false}, zeros, rot_block(K::horizontal, false, true));
    add({"eq11.vh", "eq. (11) block (ī, j)", "0", "", false, false}, zeros, rot_block(K::horizontal, true, false));
    add({"eq11.vv", "eq. (11) block (ī, j̄)", "0", "", false, false}, zeros, rot_block(K::horizontal, true, true));

    add({"eq12.A", "eq. (12) A", "(∇_iX_j − ∇_jX_i) − (1/α) R^h_{ijk} y^k (∇X_h + g_hs ∇X_t y^s y^t)",
         "\"∇X_h\" read y^n ∇_n X_h", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          auto w = with_fiber_term(J, J.ynx);
          return tabulate(J.n, [&](auto i, auto j) {
            return (J.nxl(i, j) - J.nxl(j, i)) - r_ijk_w(J, i, j, w) / J.f.alpha;
          });
        },
        rot_block(K::complete, false, false));
    add({"eq12.B", "eq. (12) B",
         "(1/α)(∇_i∇_n X_j y^n + (g_js ∇_i∇_n X_t − g_is ∇_j∇_n X_t) y^s y^t y^n)", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) {
            return (ynn(J, i, j) + J.f.y_lower[j] * yynn(J, i) - J.f.y_lower[i] * yynn(J, j)) / J.f.alpha;
          });
        },
        rot_block(K::complete, false, true));
    add({"eq12.C", "eq. (12) C", "0", "", false, false}, zeros, rot_block(K::complete, true, false));
    add({"eq12.D", "eq. (12) D", "(1/α)[(∇_iX_j − ∇_jX_i) + (g_js ∇_iX_t − g_is ∇_jX_t) y^s y^t]", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return rotation_fiber(J, i, j) / J.f.alpha; });
        },
        rot_block(K::complete, true, true));

    add({"eq13.A", "eq. (13) A'", "−(1/α) R^h_{ijk} y^k (X_h + g_hs X_t y^s y^t)", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          auto w = with_fiber_term(J, J.xl);
          return tabulate(J.n, [&](auto i, auto j) { return -r_ijk_w(J, i, j, w) / J.f.alpha; });
        },
        rot_block(K::vertical, false, false));
    add({"eq13.B", "eq. (13) B'", "(1/α)[(∇_iX_j − ∇_jX_i) + (g_js ∇_iX_t − g_is ∇_jX_t) y^s y^t]", "", false, false},
        [](C c, O) {
          const auto& J = c.jet;
          return tabulate(J.n, [&](auto i, auto j) { return rotation_fiber(J, i, j) / J.f.alpha; });
        },
        rot_block(K::vertical, false, true));
    add({"eq13.C", "eq. (13) C'", "0", "", false, false}, zeros, rot_block(K::vertical, true, false));
    add({"eq13.D", "eq. (13) D'", "0", "", false, false}, zeros, rot_block(K::vertical, true, true));
    return r;
  }();
  return reg;
}

/// Runs every lift claim (optionally filtered by id) over points × fields.
/// Points where a field refuses evaluation are counted as skipped.
inline std::vector<ClaimResult> audit_lift_claims(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                                  const std::vector<NamedField>& fields, int sign = +1,
                                                  const Tolerances& tol = {},
                                                  const std::vector<std::string>& only = {}) {
  std::vector<const LiftClaim*> claims;
  std::vector<ClaimAccumulator> acc;
  for (const auto& c : lift_registry())
    if (only.empty() || std::find(only.begin(), only.end(), c.info.id) != only.end()) {
      claims.push_back(&c);
      acc.emplace_back(c.info);
    }
  if (claims.empty()) return {};
  for (const auto& p : points) {
    auto q = p.coords();
    auto conn = koszul_connection<double>(m, std::span<const double>(q));
    for (const auto& f : fields) {
      if (!f.admits(p.x)) {
        for (auto& a : acc) a.skip();
        continue;
      }
      auto ctx = make_lift_context(m, p, f.field, conn, sign);
      for (std::size_t k = 0; k < claims.size(); ++k) {
        const auto* c = claims[k];
        acc[k].add([&](const ClaimOptions& o) { return c->evaluate(ctx, o); }, c->oracle(ctx));
      }
    }
  }
  std::vector<ClaimResult> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back(a.finish(tol));
  return out;
}

inline constexpr double kClosednessThreshold = 1e-8;

struct ClosednessRecord {
  bool base_closed = true;
  bool second_cov_deriv_zero = true;
  bool complete_lift_closed = true;
  bool horizontal_lift_closed = true;
  /// (base_closed ∧ second_cov_deriv_zero) ⇒ complete_lift_closed
  [[nodiscard]] bool implication_holds() const {
    return !(base_closed && second_cov_deriv_zero) || complete_lift_closed;
  }
};

inline ClosednessRecord closedness_check(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                         const SmoothMap& field) {
  ClosednessRecord rec;
  double base = 0.0, second = 0.0, comp = 0.0, hor = 0.0;
  const std::size_t n = m.dim();
  for (const auto& p : points) {
    auto q = p.coords();
    auto conn = koszul_connection<double>(m, std::span<const double>(q));
    auto ctx = make_lift_context(m, p, field, conn);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) base = std::max(base, std::abs(ctx.jet.nxl(i, j) - ctx.jet.nxl(j, i)));
    second = std::max(second, max_abs(ctx.jet.nnxl));
    comp = std::max(comp, max_abs(ctx.rot(LiftKind::complete)));
    hor = std::max(hor, max_abs(ctx.rot(LiftKind::horizontal)));
  }
  rec.base_closed = base <= kClosednessThreshold;
  rec.second_cov_deriv_zero = second <= kClosednessThreshold;
  rec.complete_lift_closed = comp <= kClosednessThreshold;
  rec.horizontal_lift_closed = hor <= kClosednessThreshold;
  return rec;
}

struct ParallelRecord {
  bool base_parallel = true;
  bool complete_parallel = true;
  bool horizontal_parallel = true;
  double max_base = 0.0;
  double max_complete = 0.0;
  double max_horizontal = 0.0;
  /// base_parallel ⇔ (complete_parallel ∧ horizontal_parallel)
  [[nodiscard]] bool equivalence_holds() const { return base_parallel == (complete_parallel && horizontal_parallel); }
};

inline ParallelRecord parallel_lift_check(const ChartedMetric& m, const std::vector<BundlePoint>& points,
                                          const SmoothMap& field) {
  ParallelRecord rec;
  for (const auto& p : points) {
    auto q = p.coords();
    auto conn = koszul_connection<double>(m, std::span<const double>(q));
    std::span<const double> qs(q);
    rec.max_base = std::max(rec.max_base, max_abs(cov_deriv_vector<double>(m, field, qs.first(m.dim()))));
    rec.max_complete = std::max(
        rec.max_complete,
        max_abs(frame_covariant_derivative<double>(m, qs, frame_lift(m, field, LiftKind::complete), conn)));
    rec.max_horizontal = std::max(
        rec.max_horizontal,
        max_abs(frame_covariant_derivative<double>(m, qs, frame_lift(m, field, LiftKind::horizontal), conn)));
  }
  rec.base_parallel = rec.max_base <= kClosednessThreshold;
  rec.complete_parallel = rec.max_complete <= kClosednessThreshold;
  rec.horizontal_parallel = rec.max_horizontal <= kClosednessThreshold;
  return rec;
}

}  // namespace tbaudit

#endif  // TBAUDIT_LIFT_CALCULUS_HPP
