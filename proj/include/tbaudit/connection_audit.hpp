#ifndef TBAUDIT_CONNECTION_AUDIT_HPP
#define TBAUDIT_CONNECTION_AUDIT_HPP

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/cg_connection.hpp"
#include "tbaudit/claims.hpp"

namespace tbaudit {

/// One family of the closed-form connection; `bar` marks which of (γ, α, β)
/// are vertical indices.
struct ConnectionClaim {
  ClaimInfo info;
  std::array<bool, 3> bar{};
};

inline const std::vector<ConnectionClaim>& connection_registry() {
  static const std::vector<ConnectionClaim> reg = {
      {{"eq2.h_ji", "eq. (2) Γ^h_{ji}", "Γ^h_{ji}", "", false, false}, {false, false, false}},
      {{"eq2.hbar_ji", "eq. (2) Γ^h̄_{ji}", "−½ R^h_{jik} y^k", "", false, false}, {true, false, false}},
      {{"eq2.h_jibar", "eq. (2) Γ^h_{jī}", "−(1/2α) R^{h·}_{·jki} y^k", "", true, false}, {false, false, true}},
      {{"eq2.hbar_jibar", "eq. (2) Γ^h̄_{jī}", "Γ^h_{ji}", "", false, false}, {true, false, true}},
      {{"eq2.h_jbari", "eq. (2) Γ^h_{j̄i}", "−(1/2α) R^{h·}_{·ikj} y^k", "", true, false}, {false, true, false}},
      {{"eq2.hbar_jbari", "eq. (2) Γ^h̄_{j̄i}", "0", "", false, false}, {true, true, false}},
      {{"eq2.h_jbaribar", "eq. (2) Γ^h_{j̄ī}", "0", "", false, false}, {false, true, true}},
      {{"eq2.vertical_vertical", "eq. (2) Γ^h̄_{j̄ī}",
        "−(1/α)(y_jδ^h_i + y_iδ^h_j) + ((1+α)/α) g_ji y^h − (1/α) y_j y_i y^h", "", false, true},
       {true, true, true}},
  };
  return reg;
}

namespace detail {
inline std::vector<double> block3(const Array<double, 3>& t, std::size_t n, std::array<bool, 3> bar) {
  std::vector<double> out;
  out.reserve(n * n * n);
  const std::size_t o0 = bar[0] ? n : 0, o1 = bar[1] ? n : 0, o2 = bar[2] ? n : 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) out.push_back(t(o0 + a, o1 + b, o2 + c));
  return out;
}
}  // namespace detail

inline std::vector<ClaimResult> audit_connection_claims(const ChartedMetric& m,
                                                        const std::vector<BundlePoint>& points, int sign = +1,
                                                        const Tolerances& tol = {},
                                                        const std::vector<std::string>& only = {}) {
  std::vector<const ConnectionClaim*> claims;
  std::vector<ClaimAccumulator> acc;
  for (const auto& c : connection_registry())
    if (only.empty() || std::find(only.begin(), only.end(), c.info.id) != only.end()) {
      claims.push_back(&c);
      acc.emplace_back(c.info);
    }
  if (claims.empty()) return {};
  const std::size_t n = m.dim();
  for (const auto& p : points) {
    auto qv = p.coords();
    std::span<const double> q(qv);
    auto oracle = koszul_connection<double>(m, q);
    Array<double, 3> closed[2][2];
    for (int r = 0; r < 2; ++r)
      for (int v = 0; v < 2; ++v)
        closed[r][v] = closed_form_connection<double>(
            m, q,
            {sign, r == 0 ? MixedReading::canonical : MixedReading::swapped,
             v == 0 ? VerticalVariant::printed : VerticalVariant::corrected});
    for (std::size_t k = 0; k < claims.size(); ++k) {
      const auto* c = claims[k];
      acc[k].add(
          [&](const ClaimOptions& o) {
            const int r = o.reading == MixedReading::canonical ? 0 : 1;
            const int v = o.vertical == VerticalVariant::printed ? 0 : 1;
            return detail::block3(closed[r][v], n, c->bar);
          },
          detail::block3(oracle, n, c->bar));
    }
  }
  std::vector<ClaimResult> out;
  for (const auto& a : acc) out.push_back(a.finish(tol));
  return out;
}

}  // namespace tbaudit

#endif  // TBAUDIT_CONNECTION_AUDIT_HPP
