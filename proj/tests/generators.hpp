#ifndef TBAUDIT_TESTS_GENERATORS_HPP
#define TBAUDIT_TESTS_GENERATORS_HPP

// Seeded case generators for the property tests. Each property draws its
// cases from a Gen constructed with a fixed seed, so failures reproduce.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/fields.hpp"
#include "tbaudit/sampling.hpp"

namespace gen {

struct MetricCase {
  std::string name;
  std::vector<double> params;
  [[nodiscard]] tbaudit::ChartedMetric make() const { return tbaudit::builtin_metric(name, params); }
};

/// The four metrics the acceptance criteria name.
inline std::vector<MetricCase> core_metrics() {
  return {{"euclidean", {2}}, {"sphere", {1.0}}, {"hyperbolic_half_plane", {}}, {"flat_torus", {2}}};
}

/// Core metrics plus dimension and radius variations.
inline std::vector<MetricCase> all_metrics() {
  auto v = core_metrics();
  v.push_back({"euclidean", {1}});
  v.push_back({"euclidean", {3}});
  v.push_back({"sphere", {2.5}});
  return v;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  std::vector<double> vec(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

  MetricCase metric() {
    auto all = all_metrics();
    return all[index(all.size())];
  }

  std::string field(const tbaudit::ChartedMetric& m) {
    auto names = tbaudit::default_fields(m);
    return names[index(names.size())];
  }

  std::vector<tbaudit::BundlePoint> points(const tbaudit::ChartedMetric& m, std::size_t count, double y_max = 3.0) {
    return tbaudit::sample_bundle_points(m, count, rng_(), y_max);
  }

  tbaudit::BundlePoint point(const tbaudit::ChartedMetric& m, double y_max = 3.0) { return points(m, 1, y_max)[0]; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gen

#endif  // TBAUDIT_TESTS_GENERATORS_HPP
