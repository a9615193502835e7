#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "tbaudit/expected_verdicts.hpp"
#include "tbaudit/killing_curvature.hpp"

using namespace tbaudit;

namespace {

std::vector<double> axis(std::size_t n2, std::size_t k) {
  std::vector<double> e(n2, 0.0);
  e[k] = 1.0;
  return e;
}

double max_energy_drift(const GeodesicResult& r) {
  double d = 0.0;
  for (double e : r.energy) d = std::max(d, std::abs(e - r.energy.front()));
  return d;
}

}  // namespace

TEST(LieOracle, SymmetricAndMatchesFiniteDifferences) {
  gen::Gen g(61);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    for (const auto& p : g.points(m, 4, 1.5)) {
      auto f = make_field(m, g.field(m));
      oracle::FieldFn X = [&](const oracle::Vec& x) { return f.field(x); };
      const std::pair<LiftKind, oracle::Lift> kinds[] = {{LiftKind::vertical, oracle::Lift::vertical},
                                                          {LiftKind::complete, oracle::Lift::complete},
                                                          {LiftKind::horizontal, oracle::Lift::horizontal}};
      for (auto [kind, ok] : kinds) {
        auto l = lie_derivative_oracle(m, p, coordinate_lift(m, f.field, kind));
        EXPECT_LE(max_abs_diff(l, transpose(l)), 1e-13);
        auto ref = oracle::lie_derivative(ob, oracle::coordinate_lift(ob, X, ok), p.coords());
        EXPECT_LE(max_abs_diff(l, ref), 1e-6) << m.name() << " " << f.name << " " << to_string(kind);
      }
    }
  }
}

TEST(LieOracle, IsometriesOfTheBaseLiftToZero) {
  gen::Gen g(62);
  auto e = builtin_metric("euclidean", {2});
  auto t = make_field(e, "translation");
  for (const auto& p : g.points(e, 10)) {
    EXPECT_EQ(max_abs(lie_derivative_oracle(e, p, coordinate_lift(e, t.field, LiftKind::complete))), 0.0);
    EXPECT_EQ(max_abs(lie_derivative_oracle(e, p, coordinate_lift(e, t.field, LiftKind::horizontal))), 0.0);
  }
  auto s = builtin_metric("sphere");
  auto k = make_field(s, "killing");
  for (const auto& p : g.points(s, 10))
    EXPECT_LE(max_abs(lie_derivative_oracle(s, p, coordinate_lift(s, k.field, LiftKind::complete))), 1e-7);
}

TEST(LieClosedForm, HorizontalBlocksUnderSwappedReading) {
  gen::Gen g(63);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    for (const auto& p : g.points(m, 10)) {
      auto f = make_field(m, g.field(m));
      auto ref = lie_derivative_oracle(m, p, coordinate_lift(m, f.field, LiftKind::horizontal));
      auto cf = lie_derivative_closed_form(m, p, f.field, LieClosedForm::horizontal_eq16,
                                           {+1, MixedReading::swapped, VerticalVariant::printed});
      EXPECT_LE(max_abs_diff(cf, ref), 1e-9) << m.name() << " " << f.name;
    }
  }
}

TEST(LieRegistry, EightClaimsAndOnlyKnownFailures) {
  EXPECT_EQ(lie_registry().size(), 8u);
  gen::Gen g(64);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    std::vector<NamedField> fields;
    for (const auto& n : default_fields(m)) fields.push_back(make_field(m, n));
    for (const auto& r : audit_lie_claims(m, g.points(m, 10), fields))
      if (!is_known_discrepancy(r.id)) {
        EXPECT_EQ(r.verdict, Verdict::pass) << m.name() << " " << r.id;
      }
  }
}

TEST(KillingClassification, Examples) {
  gen::Gen g(65);
  auto e = builtin_metric("euclidean", {2});
  auto t = killing_classify(e, g.points(e, 10), make_field(e, "translation").field);
  EXPECT_TRUE(t.base_killing && t.cov_deriv_zero && t.complete_lift_killing && t.horizontal_lift_killing);
  EXPECT_TRUE(t.prop3a_consistent && t.prop3b_consistent);
  auto r = killing_classify(e, g.points(e, 10), make_field(e, "rotational").field);
  EXPECT_TRUE(r.base_killing);
  EXPECT_FALSE(r.cov_deriv_zero);
  EXPECT_TRUE(r.second_cov_deriv_zero);
  EXPECT_TRUE(r.horizontal_lift_killing);
  // a rotation of the plane lifts to an isometry of TM
  EXPECT_TRUE(r.complete_lift_killing);
  EXPECT_FALSE(r.prop3a_consistent);
  auto lin = killing_classify(e, g.points(e, 10), make_field(e, "linear").field);
  EXPECT_FALSE(lin.base_killing);
  EXPECT_FALSE(lin.complete_lift_killing);
  EXPECT_TRUE(lin.prop3a_consistent && lin.prop3b_consistent);
}

TEST(KillingClassification, HorizontalLiftPropositionHoldsEverywhere) {
  gen::Gen g(66);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    for (const auto& name : default_fields(m)) {
      auto k = killing_classify(m, g.points(m, 5), make_field(m, name).field);
      EXPECT_TRUE(k.prop3b_consistent) << m.name() << " " << name;
    }
  }
}

TEST(Curvature, AntisymmetryAndPairSymmetry) {
  gen::Gen g(67);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    for (const auto& p : g.points(m, 100)) {
      auto r = bundle_curvature_eq17(m, p, ConnectionSource::oracle).values;
      EXPECT_LE(curvature_antisymmetry_residual(r), 1e-10) << m.name();
      EXPECT_LE(curvature_pair_symmetry_residual(lower_bundle_curvature(m, p, r)), 1e-8) << m.name();
    }
  }
}

TEST(Curvature, MatchesCoordinateRiemannOfTheBundleMetric) {
  gen::Gen g(68);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    for (const auto& p : g.points(m, 2, 1.2)) {
      auto r = bundle_curvature_eq17(m, p, ConnectionSource::oracle).values;
      EXPECT_LE(max_abs_diff(r, ob.frame_curvature(p.coords())), 1e-4) << m.name();
    }
  }
}

TEST(Curvature, CorrectedClosedFormsReproduceTheOracleOnFlatBase) {
  gen::Gen g(69);
  auto e = builtin_metric("euclidean", {2});
  for (const auto& p : g.points(e, 10)) {
    auto ora = bundle_curvature_eq17(e, p, ConnectionSource::oracle).values;
    EXPECT_LE(max_abs_diff(bundle_curvature_eq17(e, p, ConnectionSource::corrected).values, ora), 1e-10);
  }
}

TEST(Curvature, ZeroSectionRestrictsToTheBase) {
  gen::Gen g(70);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    const std::size_t n = m.dim();
    for (int k = 0; k < 10; ++k) {
      auto x = g.point(m).x;
      auto p = make_bundle_point(m, x, std::vector<double>(n, 0.0));
      auto r = bundle_curvature_eq17(m, p, ConnectionSource::oracle).values;
      auto base = riemann_at(m, p.base()).mixed;
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < n; ++c) EXPECT_NEAR(r(h, j, i, c), base(h, j, i, c), 1e-10) << m.name();
    }
  }
}

TEST(SectionalCurvature, KnownValuesOnTheZeroSection) {
  auto s = builtin_metric("sphere");
  auto e = builtin_metric("euclidean", {2});
  for (const auto* m : {&s, &e}) {
    auto p = make_bundle_point(*m, {1.0, 0.2}, {0.0, 0.0});
    EXPECT_NEAR(sectional_curvature(*m, p, axis(4, 2), axis(4, 3)), 3.0, 1e-6) << m->name();
    EXPECT_NEAR(sectional_curvature(*m, p, axis(4, 0), axis(4, 2)), 0.0, 1e-10) << m->name();
  }
  auto p = make_bundle_point(e, {1.0, 0.2}, {0.0, 0.0});
  EXPECT_NEAR(sectional_curvature(e, p, axis(4, 0), axis(4, 1)), 0.0, 1e-12);
  auto q = make_bundle_point(s, {1.0, 0.2}, {0.0, 0.0});
  EXPECT_NEAR(sectional_curvature(s, q, axis(4, 0), axis(4, 1)), 1.0, 1e-10);
  EXPECT_THROW(sectional_curvature(s, q, axis(4, 0), axis(4, 0)), std::invalid_argument);
  EXPECT_THROW(sectional_curvature(s, q, axis(2, 0), axis(2, 1)), std::invalid_argument);
}

TEST(SectionalCurvature, IndependentOfTheBasisOfThePlane) {
  gen::Gen g(71);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    for (const auto& p : g.points(m, 5)) {
      auto u = g.vec(4), v = g.vec(4);
      const double a = g.uniform(0.5, 2.0), b = g.uniform(-1.0, 1.0), c = g.uniform(-1.0, 1.0),
                   d = g.uniform(0.5, 2.0);
      std::vector<double> u2(4), v2(4);
      for (int k = 0; k < 4; ++k) {
        u2[k] = a * u[k] + b * v[k];
        v2[k] = c * u[k] + d * v[k];
      }
      EXPECT_NEAR(sectional_curvature(m, p, u, v), sectional_curvature(m, p, u2, v2), 1e-9) << m.name();
    }
  }
}

TEST(Flatness, CurvedFiberOverFlatBase) {
  gen::Gen g(72);
  auto e2 = builtin_metric("euclidean", {2});
  auto f2 = flatness_audit(e2, g.points(e2, 10));
  EXPECT_TRUE(f2.base_flat);
  EXPECT_FALSE(f2.bundle_flat);
  auto e1 = builtin_metric("euclidean", {1});
  auto f1 = flatness_audit(e1, g.points(e1, 10));
  EXPECT_TRUE(f1.base_flat && f1.bundle_flat && f1.consistent());
  auto s = builtin_metric("sphere");
  auto fs = flatness_audit(s, g.points(s, 10));
  EXPECT_FALSE(fs.base_flat);
  EXPECT_FALSE(fs.bundle_flat);
  EXPECT_TRUE(fs.consistent());
}

TEST(CurvatureRegistry, PrintedComponentsVanishOnFlatBaseAndOneDimensionalFiber) {
  EXPECT_EQ(curvature_registry().size(), 12u);
  gen::Gen g(73);
  auto e1 = builtin_metric("euclidean", {1});
  for (const auto& r : audit_curvature_claims(e1, g.points(e1, 10))) {
    EXPECT_EQ(r.verdict, Verdict::pass) << r.id;
    EXPECT_LE(r.max_abs_residual, 1e-10) << r.id;
  }
}

TEST(CurvatureRegistry, OnlyKnownFailures) {
  gen::Gen g(74);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    for (const auto& r : audit_curvature_claims(m, g.points(m, 10)))
      if (!is_known_discrepancy(r.id)) {
        EXPECT_EQ(r.verdict, Verdict::pass) << m.name() << " " << r.id;
      }
  }
}

TEST(Geodesic, EnergyIsConservedAndErrorIsFourthOrder) {
  auto s = builtin_metric("sphere");
  GeodesicState start{{1.2, 0.1, 0.4, -0.3}, {0.2, 0.1, 0.3, 0.5}, 0.0};
  auto fine = geodesic_integrate(s, start, 1e-3, 10000);
  ASSERT_FALSE(fine.exit_index.has_value());
  EXPECT_EQ(fine.trajectory.size(), 10001u);
  EXPECT_NEAR(fine.trajectory.back().t, 10.0, 1e-9);
  EXPECT_LE(max_energy_drift(fine), 1e-6);

  auto e = builtin_metric("euclidean", {2});
  GeodesicState st{{0.1, 0.2, 0.5, -0.3}, {0.3, 0.1, 0.4, 0.7}, 0.0};
  auto coarse = geodesic_integrate(e, st, 0.02, 100);
  auto half = geodesic_integrate(e, st, 0.01, 200);
  EXPECT_GE(max_energy_drift(coarse) / max_energy_drift(half), 8.0);
}

TEST(Geodesic, ZeroSectionIsTotallyGeodesic) {
  auto s = builtin_metric("sphere");
  GeodesicState start{{1.0, 0.0, 0.0, 0.0}, {0.1, 0.4, 0.0, 0.0}, 0.0};
  auto r = geodesic_integrate(s, start, 1e-2, 300);
  for (const auto& st : r.trajectory) {
    EXPECT_LE(std::abs(st.q[2]) + std::abs(st.q[3]), 1e-14);
    EXPECT_LE(std::abs(st.v[2]) + std::abs(st.v[3]), 1e-14);
  }
}

TEST(Geodesic, ZeroVelocityStaysPut) {
  auto h = builtin_metric("hyperbolic_half_plane");
  GeodesicState start{{0.2, 1.0, 0.3, 0.4}, {0.0, 0.0, 0.0, 0.0}, 0.0};
  auto r = geodesic_integrate(h, start, 1e-2, 50);
  EXPECT_EQ(r.trajectory.back().q, start.q);
  EXPECT_EQ(r.energy.back(), 0.0);
}

TEST(Geodesic, LeavingTheChartIsReported) {
  auto h = builtin_metric("hyperbolic_half_plane");
  GeodesicState start{{0.0, 0.3, 0.0, 0.0}, {0.0, -5.0, 0.0, 0.0}, 0.0};
  auto r = geodesic_integrate(h, start, 0.05, 1000);
  EXPECT_TRUE(r.exit_index.has_value() || r.trajectory.size() == 1001u);
  EXPECT_THROW(geodesic_integrate(h, {{0.0, -1.0, 0.0, 0.0}, {0, 0, 0, 0}, 0.0}, 0.1, 1), std::domain_error);
  EXPECT_THROW(geodesic_integrate(h, start, 0.0, 1), std::invalid_argument);
}

TEST(Geodesic, BundleChartCurvatureAgreesWithFrameCurvature) {
  auto s = builtin_metric("sphere");
  auto tm = bundle_coordinate_metric(s);
  auto p = make_bundle_point(s, {1.1, 0.3}, {0.4, -0.6});
  auto coord = riemann_at(tm, {p.coords()}).mixed;
  auto frame = bundle_curvature_eq17(s, p, ConnectionSource::oracle).values;
  auto a = adapted_frame_at(s, p).matrix;
  auto ai = frame_matrix_inverse(a, 2);
  double w = 0.0;
  for (std::size_t d = 0; d < 4; ++d)
    for (std::size_t al = 0; al < 4; ++al)
      for (std::size_t be = 0; be < 4; ++be)
        for (std::size_t ga = 0; ga < 4; ++ga) {
          double v = 0.0;
          for (std::size_t h = 0; h < 4; ++h)
            for (std::size_t x = 0; x < 4; ++x)
              for (std::size_t y = 0; y < 4; ++y)
                for (std::size_t z = 0; z < 4; ++z) v += ai(d, h) * coord(h, x, y, z) * a(x, al) * a(y, be) * a(z, ga);
          w = std::max(w, std::abs(v - frame(d, al, be, ga)));
        }
  EXPECT_LE(w, 1e-12);
}
