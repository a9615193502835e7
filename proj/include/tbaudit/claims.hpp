#ifndef TBAUDIT_CLAIMS_HPP
#define TBAUDIT_CLAIMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tbaudit/base_geometry.hpp"
#include "tbaudit/cg_connection.hpp"

namespace tbaudit {

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS") return Verdict::pass;
  if (s == "FAIL") return Verdict::fail;
  if (s == "INCONCLUSIVE") return Verdict::inconclusive;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

inline std::string to_string(MixedReading r) { return r == MixedReading::canonical ? "canonical" : "swapped"; }

struct Tolerances {
  double pass = 1e-6;
  double fail = 1e-3;
};

inline Verdict classify(double residual, const Tolerances& tol) {
  if (!std::isfinite(residual)) return Verdict::fail;
  if (residual <= tol.pass) return Verdict::pass;
  if (residual > tol.fail) return Verdict::fail;
  return Verdict::inconclusive;
}

/// Static description of an audited formula.
struct ClaimInfo {
  std::string id;
  std::string location;
  std::string quote;
  std::string reading_note;  ///< typo repairs applied before evaluation
  bool uses_mixed = false;   ///< contains the mixed curvature R^{h·}_{·ikj}
  bool uses_vertical = false;  ///< contains the printed vertical-vertical connection
};

/// Which interpretation of the ambiguous pieces to evaluate a claim under.
struct ClaimOptions {
  MixedReading reading = MixedReading::canonical;
  VerticalVariant vertical = VerticalVariant::printed;
};

struct ClaimResult {
  std::string id;
  std::string location;
  std::string quote;
  Verdict verdict = Verdict::pass;
  double max_abs_residual = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;
  std::optional<std::string> reading;            ///< only for claims with mixed curvature
  std::optional<double> corrected_residual;      ///< vertical-vertical connection replaced by the fiber one

  bool operator==(const ClaimResult&) const = default;
};

/// Running maxima of a claim's residual under every interpretation it admits.
class ClaimAccumulator {
 public:
  explicit ClaimAccumulator(ClaimInfo info) : info_(std::move(info)) {}

  [[nodiscard]] const ClaimInfo& info() const { return info_; }

  /// `eval(opts)` returns the claimed components; `oracle` the ground truth.
  template <class Eval>
  void add(const Eval& eval, const std::vector<double>& oracle) {
    for (int r = 0; r < (info_.uses_mixed ? 2 : 1); ++r) {
      ClaimOptions o{r == 0 ? MixedReading::canonical : MixedReading::swapped, VerticalVariant::printed};
      bump(printed_[r], max_abs_diff(eval(o), oracle));
      if (info_.uses_vertical) {
        o.vertical = VerticalVariant::corrected;
        bump(corrected_[r], max_abs_diff(eval(o), oracle));
      }
    }
    ++samples_;
  }

  void skip() { ++skipped_; }

  [[nodiscard]] ClaimResult finish(const Tolerances& tol) const {
    ClaimResult res{info_.id, info_.location, info_.quote, Verdict::pass, 0.0, samples_, skipped_, {}, {}};
    int r = 0;
    if (info_.uses_mixed) {
      if (!(printed_[0] <= tol.pass) && printed_[1] <= tol.pass) r = 1;
      res.reading = to_string(r == 0 ? MixedReading::canonical : MixedReading::swapped);
    }
    res.max_abs_residual = printed_[r];
    if (info_.uses_vertical) res.corrected_residual = corrected_[r];
    res.verdict = samples_ == 0 ? Verdict::inconclusive : classify(res.max_abs_residual, tol);
    return res;
  }

 private:
  static void bump(double& slot, double v) {
    // NaN must stick
    if (std::isnan(v) || v > slot) slot = v;
  }

  ClaimInfo info_;
  double printed_[2] = {0.0, 0.0};
  double corrected_[2] = {0.0, 0.0};
  std::size_t samples_ = 0;
  std::size_t skipped_ = 0;
};

/// Row-major n×n sub-block of a square matrix.
inline std::vector<double> block_of(const Matrix<double>& a, std::size_t r0, std::size_t c0, std::size_t n) {
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = a(r0 + i, c0 + j);
  return out;
}

/// Row-major n×n table of f(i, j).
template <class F>
std::vector<double> tabulate(std::size_t n, const F& f) {
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = f(i, j);
  return out;
}

}  // namespace tbaudit

#endif  // TBAUDIT_CLAIMS_HPP
