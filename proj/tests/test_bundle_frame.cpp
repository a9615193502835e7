#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/fields.hpp"

using namespace tbaudit;

namespace {

std::span<const double> sp(const std::vector<double>& v) { return {v.data(), v.size()}; }

const LiftKind kKinds[] = {LiftKind::vertical, LiftKind::complete, LiftKind::horizontal};

}  // namespace

TEST(BundlePoint, FiberScalars) {
  auto s = builtin_metric("sphere");
  auto p = make_bundle_point(s, {1.0, 0.2}, {0.5, 2.0});
  const double s2 = std::sin(1.0) * std::sin(1.0);
  EXPECT_NEAR(p.y_lower[1], 2.0 * s2, 1e-15);
  EXPECT_NEAR(p.r2, 0.25 + 4.0 * s2, 1e-15);
  EXPECT_NEAR(p.alpha, 1.25 + 4.0 * s2, 1e-15);
  EXPECT_EQ(p.coords().size(), 4u);
  EXPECT_THROW(make_bundle_point(s, {1.0}, {0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(make_bundle_point(s, {0.0, 0.0}, {0.0, 0.0}), std::domain_error);
  EXPECT_THROW(make_bundle_point(s, std::vector<double>{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(AdaptedFrame, UnipotentAndMatchesOracle) {
  gen::Gen g(31);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    const std::size_t n = m.dim();
    for (int k = 0; k < 20; ++k) {
      auto p = g.point(m);
      auto a = adapted_frame_at(m, p).matrix;
      auto ai = frame_matrix_inverse(a, n);
      EXPECT_LE(max_abs_diff(a, ob.frame(p.coords())), 1e-9) << m.name();
      EXPECT_EQ(max_abs_diff(matmul(a, ai), identity<double>(2 * n)), 0.0);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < 2 * n; ++c) EXPECT_EQ(a(r, c), r == c ? 1.0 : 0.0);
    }
  }
}

TEST(StructureCoefficients, AntisymmetricAndMatchClosedForm) {
  gen::Gen g(32);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    const std::size_t n2 = 2 * m.dim();
    for (int k = 0; k < 20; ++k) {
      auto q = g.point(m).coords();
      auto om = structure_coefficients<double>(m, sp(q));
      auto cf = structure_coefficients_closed<double>(m, sp(q), +1);
      EXPECT_LE(max_abs_diff(om, cf), 1e-10) << m.name();
      for (std::size_t e = 0; e < n2; ++e)
        for (std::size_t a = 0; a < n2; ++a)
          for (std::size_t b = 0; b < n2; ++b) EXPECT_NEAR(om(e, a, b), -om(e, b, a), 1e-14);
      for (std::size_t e = 0; e < n2; ++e)
        for (std::size_t a = n2 / 2; a < n2; ++a)
          for (std::size_t b = n2 / 2; b < n2; ++b) EXPECT_EQ(om(e, a, b), 0.0);
    }
  }
}

TEST(StructureCoefficients, OppositeSignIsDetectedOnCurvedBase) {
  auto s = builtin_metric("sphere");
  auto q = make_bundle_point(s, {1.0, 0.3}, {0.7, -0.4}).coords();
  auto om = structure_coefficients<double>(s, sp(q));
  EXPECT_GT(max_abs_diff(om, structure_coefficients_closed<double>(s, sp(q), -1)), 0.1);
}

TEST(BundleMetric, BlocksMatchTextbookMetricAndArePositiveDefinite) {
  gen::Gen g(33);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    const std::size_t n2 = 2 * m.dim();
    for (int k = 0; k < 20; ++k) {
      auto p = g.point(m);
      auto q = p.coords();
      auto gf = cg_metric_at(m, p).assemble();
      EXPECT_LE(max_abs_diff(gf, ob.frame_metric(q)), 1e-12) << m.name();
      EXPECT_TRUE(cholesky(gf).has_value());
      auto gi = cg_metric_inverse_at(m, p).assemble();
      EXPECT_LE(max_abs_diff(matmul(gf, gi), identity<double>(n2)), 1e-12);
      auto gc = cg_coordinate_metric<double>(m, sp(q));
      auto ref = ob.metric(q);
      double scale = 1.0;
      for (double v : ref) scale = std::max(scale, std::abs(v));
      EXPECT_LE(max_abs_diff(std::vector<double>(gc.begin(), gc.end()), ref) / scale, 1e-8) << m.name();
    }
  }
}

TEST(BundleMetric, FlatFiberAtZeroSection) {
  auto e = builtin_metric("euclidean", {3});
  auto p = make_bundle_point(e, {0.1, 0.2, 0.3}, {0.0, 0.0, 0.0});
  EXPECT_EQ(max_abs_diff(cg_metric_at(e, p).assemble(), identity<double>(6)), 0.0);
}

TEST(Lifts, FrameComponentsByKind) {
  auto e = builtin_metric("euclidean", {2});
  auto f = make_field(e, "linear");
  auto p = make_bundle_point(e, {0.5, 0.0}, {2.0, 3.0});
  auto v = lift_vector(e, p, f.field, LiftKind::vertical);
  EXPECT_EQ(v.horizontal_part, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(v.vertical_part, (std::vector<double>{0.5, 0.0}));
  auto c = lift_vector(e, p, f.field, LiftKind::complete);
  EXPECT_EQ(c.horizontal_part, (std::vector<double>{0.5, 0.0}));
  EXPECT_EQ(c.vertical_part, (std::vector<double>{2.0, 0.0}));
  auto h = lift_vector(e, p, f.field, LiftKind::horizontal);
  EXPECT_EQ(h.vertical_part, (std::vector<double>{0.0, 0.0}));
}

TEST(Lifts, CoordinateComponentsMatchClassicalLifts) {
  gen::Gen g(34);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    for (int k = 0; k < 10; ++k) {
      auto q = g.point(m).coords();
      auto f = make_field(m, g.field(m));
      oracle::FieldFn X = [&](const oracle::Vec& x) { return f.field(x); };
      const std::pair<LiftKind, oracle::Lift> kinds[] = {{LiftKind::vertical, oracle::Lift::vertical},
                                                          {LiftKind::complete, oracle::Lift::complete},
                                                          {LiftKind::horizontal, oracle::Lift::horizontal}};
      for (auto [kind, ok] : kinds) {
        auto mine = lift_coordinate_components<double>(m, f.field, kind, sp(q));
        auto ref = oracle::coordinate_lift(ob, X, ok)(q);
        EXPECT_LE(max_abs_diff(mine, ref), 1e-8) << m.name() << " " << f.name << " " << to_string(kind);
      }
    }
  }
}

TEST(Lifts, AssociatedCovectorEqualsMetricLowering) {
  gen::Gen g(35);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    for (const auto& p : g.points(m, 100)) {
      auto q = p.coords();
      for (const auto& name : default_fields(m)) {
        auto f = make_field(m, name);
        for (auto kind : kKinds) {
          auto a = associated_covector_components<double>(m, f.field, kind, sp(q));
          auto b = lowered_lift_components<double>(m, f.field, kind, sp(q));
          EXPECT_LE(max_abs_diff(a, b), 1e-12) << m.name() << " " << name << " " << to_string(kind);
        }
      }
    }
  }
}

TEST(Lifts, VerticalCovectorWorkedExample) {
  auto e = builtin_metric("euclidean", {2});
  auto f = make_field(e, "translation");
  auto p = make_bundle_point(e, {0.3, -0.2}, {1.0, 0.0});
  auto c = lift_covector(e, p, f.field, LiftKind::vertical);
  EXPECT_EQ(c.horizontal_part, (std::vector<double>{0.0, 0.0}));
  EXPECT_NEAR(c.vertical_part[0], 1.0, 1e-15);
  EXPECT_NEAR(c.vertical_part[1], 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(gamma_pairing(e, p, std::vector<double>{1.0, 0.0}), 1.0);
}
