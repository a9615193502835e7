#ifndef TBAUDIT_SAMPLING_HPP
#define TBAUDIT_SAMPLING_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "tbaudit/array.hpp"
#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"

namespace tbaudit {

/// Seeded bundle points: x uniform in the metric's sampling box (rejecting
/// points outside the domain), y uniform in the g-ball of radius y_max.
class BundleSampler {
 public:
  BundleSampler(const ChartedMetric& m, std::uint64_t seed, double y_max = 3.0) : m_(m), rng_(seed), y_max_(y_max) {
    if (!(y_max > 0.0) || !std::isfinite(y_max)) throw std::invalid_argument("BundleSampler: y_max must be finite and > 0");
  }

  BasePoint next_base() {
    const std::size_t n = m_.dim();
    std::vector<double> x(n);
    for (int attempt = 0; attempt < 10000; ++attempt) {
      for (std::size_t i = 0; i < n; ++i) {
        std::uniform_real_distribution<double> u(m_.box_lo()[i], m_.box_hi()[i]);
        x[i] = u(rng_);
      }
      if (m_.in_domain(x)) return {x};
    }
    throw std::runtime_error("BundleSampler: sampling box misses the chart domain");
  }

  BundlePoint next() {
    const std::size_t n = m_.dim();
    auto x = next_base();
    // uniform direction and radius ~ u^{1/n} in the unit ball, then y = y_max L^{-T} z with g = L Lᵀ
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    std::vector<double> z(n);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& v : z) {
        v = normal(rng_);
        norm += v * v;
      }
    } while (norm < 1e-24);
    const double radius = std::pow(unit(rng_), 1.0 / static_cast<double>(n)) / std::sqrt(norm);
    for (auto& v : z) v *= radius * y_max_;
    auto g = m_.eval<double>(std::span<const double>(x.coords));
    auto l = cholesky(g);
    if (!l) throw std::domain_error("BundleSampler: metric not positive definite");
    std::vector<double> y(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {  // back-substitution for Lᵀ y = z
      double s = z[i];
      for (std::size_t k = i + 1; k < n; ++k) s -= (*l)(k, i) * y[k];
      y[i] = s / (*l)(i, i);
    }
    return make_bundle_point(m_, std::move(x.coords), std::move(y));
  }

  std::vector<BundlePoint> take(std::size_t count) {
    std::vector<BundlePoint> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(next());
    return out;
  }

 private:
  const ChartedMetric& m_;
  std::mt19937_64 rng_;
  double y_max_;
};

inline std::vector<BundlePoint> sample_bundle_points(const ChartedMetric& m, std::size_t count, std::uint64_t seed,
                                                     double y_max = 3.0) {
  return BundleSampler(m, seed, y_max).take(count);
}

}  // namespace tbaudit

#endif  // TBAUDIT_SAMPLING_HPP
