#ifndef TBAUDIT_EXPECTED_VERDICTS_HPP
#define TBAUDIT_EXPECTED_VERDICTS_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace tbaudit {

/// A claim the audit is allowed to reject. Every registered claim not listed
/// here must PASS on every metric; a listed claim may PASS on some metrics
/// (typically flat ones, where the faulty term vanishes).
struct KnownDiscrepancy {
  std::string_view id;
  std::string_view reason;
};

inline const std::vector<KnownDiscrepancy>& known_discrepancies() {
  static const std::vector<KnownDiscrepancy> ledger = {
      {"eq2.vertical_vertical",
       "printed coefficients differ from the Christoffel symbols of the fiber metric (g + y♭⊗y♭)/α; "
       "the fiber formula matches the oracle"},
      {"eq4.line4", "built on the printed vertical-vertical connection"},
      {"eq5.line1", "curvature term contracts X^m where y^s∇_sX^m is needed"},
      {"eq5.line4", "built on the printed vertical-vertical connection; X^m in place of y^s∇_sX^m"},
      {"eq8.line1", "curvature term has the wrong sign"},
      {"eq8.line4", "built on the printed vertical-vertical connection"},
      {"eq9.line1", "curvature term has the wrong sign"},
      {"eq9.line4a", "built on the printed vertical-vertical connection"},
      {"eq9.line4b", "built on the printed vertical-vertical connection"},
      {"eq12.A", "curvature term has the wrong sign"},
      {"eq12.B", "curvature contributions disagree with the oracle; agrees on flat bases"},
      {"eq12.C", "a rotation is antisymmetric, so this block is minus the transpose of B, not 0"},
      {"eq12.D", "omits the fiber-derivative terms of the 1/α factor"},
      {"eq13.A", "curvature term has the wrong sign"},
      {"eq13.B", "the mixed block is ∇_iω_j̄ − ∇_j̄ω_i with nothing antisymmetrised in i, j; for n = 1 it is X′, "
       "while the printed form vanishes"},
      {"eq13.C", "a rotation is antisymmetric, so this block is minus the transpose of B, not 0"},
      {"eq13.D", "the vertical covector lift is not closed along the fiber: (1/α + 2/α²)(y_jX_i − y_iX_j)"},
      {"eq15.B1", "curvature contribution disagrees with the oracle; agrees on flat bases"},
      {"eq15.C1", "not the transpose of B1 although the Lie derivative of a metric is symmetric"},
      {"eq15.D1", "puts the antisymmetric ∇_iX_j − ∇_jX_i into a symmetric tensor; fails already on flat bases"},
      {"eq17.closed_form", "built on the printed vertical-vertical connection"},
      {"eq18.hhh_h", "last curvature-product term needs coefficient 2 to match the oracle"},
      {"eq18.hhv_v_a", "does not match the oracle under either repair of the printed indices"},
      {"eq18.hhv_v_b", "does not match the oracle under either repair of the printed indices"},
      {"eq18.vvh_h", "does not match the oracle; no coefficient repair found"},
      {"eq18.vvv_zero", "the fiber metric is curved (Gaussian curvature 3/(1+ρ²)² for n = 2)"},
      {"eq18.hvh_v_a", "does not match the oracle under either repair of the printed indices"},
      {"eq18.hvh_v_b", "does not match the oracle under either repair of the printed indices"},
  };
  return ledger;
}

inline bool is_known_discrepancy(std::string_view id) {
  const auto& l = known_discrepancies();
  return std::any_of(l.begin(), l.end(), [&](const KnownDiscrepancy& k) { return k.id == id; });
}

/// Proposition records that may come out inconsistent without failing a run.
/// The Killing-lift records are informational by design; the other two are
/// refuted by the oracle.
inline const std::vector<KnownDiscrepancy>& known_proposition_failures() {
  static const std::vector<KnownDiscrepancy> ledger = {
      {"closed_lifts",
       "X = x¹∂₁ on a flat base is closed with vanishing second derivative, but the fiber part of its "
       "complete-lift covector has exterior derivative 2y¹(1/α + 1/α²) dy¹∧(y·dy)"},
      {"killing_complete_lift",
       "informational: the complete lift of a Killing field generates tangent maps of isometries, which "
       "preserve the bundle metric whether or not the field is parallel"},
      {"killing_horizontal_lift", "informational"},
      {"flat_bundle", "the fiber metric is curved for n >= 2, so a flat base does not give a flat bundle"},
  };
  return ledger;
}

inline bool is_known_inconsistent_proposition(std::string_view id) {
  const auto& l = known_proposition_failures();
  return std::any_of(l.begin(), l.end(), [&](const KnownDiscrepancy& k) { return k.id == id; });
}

}  // namespace tbaudit

#endif  // TBAUDIT_EXPECTED_VERDICTS_HPP
