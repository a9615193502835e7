#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "tbaudit/expected_verdicts.hpp"
#include "tbaudit/lift_calculus.hpp"

using namespace tbaudit;

namespace {

const std::pair<LiftKind, oracle::Lift> kKinds[] = {{LiftKind::vertical, oracle::Lift::vertical},
                                                    {LiftKind::complete, oracle::Lift::complete},
                                                    {LiftKind::horizontal, oracle::Lift::horizontal}};

LiftContext context(const ChartedMetric& m, const BundlePoint& p, const SmoothMap& f) {
  auto q = p.coords();
  return make_lift_context(m, p, f, koszul_connection<double>(m, std::span<const double>(q)));
}

std::vector<NamedField> fields_of(const ChartedMetric& m) {
  std::vector<NamedField> out;
  for (const auto& n : default_fields(m)) out.push_back(make_field(m, n));
  return out;
}

}  // namespace

TEST(LiftRegistry, ThirtySevenUniqueFamilies) {
  const auto& reg = lift_registry();
  EXPECT_EQ(reg.size(), 37u);
  std::set<std::string> ids;
  for (const auto& c : reg) {
    EXPECT_TRUE(ids.insert(c.info.id).second) << c.info.id;
    EXPECT_FALSE(c.info.quote.empty());
    EXPECT_FALSE(c.info.location.empty());
  }
}

TEST(LiftRegistry, ZeroFieldGivesExactZeros) {
  gen::Gen g(51);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto z = make_field(m, "zero");
    for (const auto& p : g.points(m, 5)) {
      auto ctx = context(m, p, z.field);
      for (const auto& c : lift_registry()) {
        for (auto r : {MixedReading::canonical, MixedReading::swapped})
          for (auto v : {VerticalVariant::printed, VerticalVariant::corrected})
            for (double x : c.evaluate(ctx, {r, v})) EXPECT_EQ(x, 0.0) << c.info.id;
        for (double x : c.oracle(ctx)) EXPECT_EQ(x, 0.0) << c.info.id;
      }
    }
  }
}

TEST(LiftRegistry, OnlyKnownDiscrepanciesFail) {
  gen::Gen g(52);
  for (const auto& mc : gen::all_metrics()) {
    auto m = mc.make();
    auto res = audit_lift_claims(m, g.points(m, 15), fields_of(m));
    ASSERT_EQ(res.size(), 37u);
    for (const auto& r : res) {
      EXPECT_EQ(r.samples, 15 * default_fields(m).size());
      if (!is_known_discrepancy(r.id)) {
        EXPECT_EQ(r.verdict, Verdict::pass) << m.name() << " " << r.id;
      }
    }
  }
}

TEST(LiftRegistry, FilterSelectsById) {
  auto e = builtin_metric("euclidean", {2});
  gen::Gen g(53);
  auto res = audit_lift_claims(e, g.points(e, 3), fields_of(e), +1, {}, {"eq4.line1", "eq4.line3"});
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].id, "eq4.line1");
  EXPECT_TRUE(audit_lift_claims(e, g.points(e, 3), fields_of(e), +1, {}, {"nosuch"}).empty());
}

TEST(LiftOracle, VectorDerivativeMatchesCoordinateLeviCivita) {
  gen::Gen g(54);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    for (const auto& p : g.points(m, 3, 1.5)) {
      auto f = make_field(m, g.field(m));
      oracle::FieldFn X = [&](const oracle::Vec& x) { return f.field(x); };
      auto ctx = context(m, p, f.field);
      for (auto [kind, ok] : kKinds)
        EXPECT_LE(max_abs_diff(ctx.vec(kind), oracle::covariant_derivative(ob, oracle::coordinate_lift(ob, X, ok),
                                                                           p.coords())),
                  1e-5)
            << m.name() << " " << f.name << " " << to_string(kind);
    }
  }
}

TEST(LiftOracle, RotationIsAntisymmetricAndMatchesExteriorDerivative) {
  gen::Gen g(55);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    auto ob = oracle::bundle_of(m);
    for (const auto& p : g.points(m, 5, 1.5)) {
      auto f = make_field(m, g.field(m));
      oracle::FieldFn X = [&](const oracle::Vec& x) { return f.field(x); };
      auto ctx = context(m, p, f.field);
      for (auto [kind, ok] : kKinds) {
        auto r = ctx.rot(kind);
        for (std::size_t a = 0; a < r.extent(0); ++a)
          for (std::size_t b = 0; b < r.extent(1); ++b) EXPECT_EQ(r(a, b), -r(b, a));
        EXPECT_LE(max_abs_diff(r, oracle::rotation_of_lowered(ob, oracle::coordinate_lift(ob, X, ok), p.coords())),
                  1e-6)
            << m.name() << " " << f.name << " " << to_string(kind);
      }
    }
  }
}

TEST(LiftOracle, CompleteAndHorizontalCoincideForParallelFields) {
  gen::Gen g(56);
  for (const char* name : {"euclidean", "flat_torus"}) {
    auto m = builtin_metric(name, {3});
    for (const char* fname : {"constant", "translation"}) {
      auto f = make_field(m, fname);
      for (const auto& p : g.points(m, 10)) {
        auto ctx = context(m, p, f.field);
        EXPECT_LE(max_abs_diff(ctx.vec(LiftKind::complete), ctx.vec(LiftKind::horizontal)), 1e-14);
        EXPECT_LE(max_abs_diff(ctx.cov(LiftKind::complete), ctx.cov(LiftKind::horizontal)), 1e-14);
      }
    }
  }
}

TEST(Closedness, LinearFieldCounterexample) {
  // X = x¹∂_1 on the plane: closed with ∇∇X = 0, but d(^C X_B) has the vertical
  // component 2y¹y²(1/α + 1/α²) on X_(1̄) ∧ X_(2̄).
  auto e = builtin_metric("euclidean", {2});
  auto f = make_field(e, "linear");
  auto p = make_bundle_point(e, {0.3, 0.4}, {0.7, -1.1});
  auto r = context(e, p, f.field).rot(LiftKind::complete);
  const double a = p.alpha;
  EXPECT_NEAR(r(2, 3), 2 * 0.7 * -1.1 * (1 / a + 1 / (a * a)), 1e-12);
  gen::Gen g(57);
  auto rec = closedness_check(e, g.points(e, 10), f.field);
  EXPECT_TRUE(rec.base_closed);
  EXPECT_TRUE(rec.second_cov_deriv_zero);
  EXPECT_FALSE(rec.complete_lift_closed);
  EXPECT_FALSE(rec.implication_holds());
}

TEST(Closedness, ParallelAndNonClosedFields) {
  gen::Gen g(58);
  auto e = builtin_metric("euclidean", {2});
  auto t = closedness_check(e, g.points(e, 10), make_field(e, "translation").field);
  EXPECT_TRUE(t.base_closed && t.second_cov_deriv_zero && t.complete_lift_closed && t.horizontal_lift_closed);
  auto rot = closedness_check(e, g.points(e, 10), make_field(e, "rotational").field);
  EXPECT_FALSE(rot.base_closed);
  EXPECT_TRUE(rot.implication_holds());
  auto s = builtin_metric("sphere");
  auto grad = closedness_check(s, g.points(s, 10), make_field(s, "gradient").field);
  EXPECT_TRUE(grad.base_closed);
  EXPECT_FALSE(grad.second_cov_deriv_zero);
}

TEST(Parallel, EquivalenceOnExamples) {
  gen::Gen g(59);
  auto e = builtin_metric("euclidean", {2});
  auto t = parallel_lift_check(e, g.points(e, 10), make_field(e, "translation").field);
  EXPECT_TRUE(t.base_parallel && t.complete_parallel && t.horizontal_parallel);
  EXPECT_EQ(t.max_complete, 0.0);
  for (const auto& mc : gen::core_metrics()) {
    auto m = mc.make();
    for (const auto& name : default_fields(m)) {
      auto rec = parallel_lift_check(m, g.points(m, 5), make_field(m, name).field);
      EXPECT_TRUE(rec.equivalence_holds()) << m.name() << " " << name;
    }
  }
  auto s = builtin_metric("sphere");
  auto k = parallel_lift_check(s, g.points(s, 5), make_field(s, "killing").field);
  EXPECT_FALSE(k.base_parallel);
  EXPECT_FALSE(k.horizontal_parallel);
}
