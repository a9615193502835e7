#ifndef TBAUDIT_AUDIT_HPP
#define TBAUDIT_AUDIT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbaudit/base_geometry.hpp"
#include "tbaudit/bundle_frame.hpp"
#include "tbaudit/cg_connection.hpp"
#include "tbaudit/claims.hpp"
#include "tbaudit/connection_audit.hpp"
#include "tbaudit/expected_verdicts.hpp"
#include "tbaudit/fields.hpp"
#include "tbaudit/killing_curvature.hpp"
#include "tbaudit/lift_calculus.hpp"
#include "tbaudit/sampling.hpp"

namespace tbaudit {

inline constexpr const char* kReportVersion = "tbaudit-report/1";

inline const std::vector<std::string>& section_names() {
  static const std::vector<std::string> s = {"base", "connection", "lifts", "killing", "curvature"};
  return s;
}

struct MetricSpec {
  std::string name = "sphere";
  std::vector<double> params;
  bool operator==(const MetricSpec&) const = default;
};

struct AuditConfig {
  MetricSpec metric;
  std::size_t samples = 50;
  std::uint64_t seed = 42;
  double y_max = 3.0;
  double tolerance_pass = 1e-6;
  double tolerance_fail = 1e-3;
  std::vector<std::string> claims;  ///< empty: every registered claim
  std::vector<std::string> fields;  ///< empty: every field defined on the metric
  std::vector<std::vector<double>> points;  ///< explicit (x, y) points; replaces sampling when non-empty
  std::vector<std::string> sections = section_names();
  bool timing = false;

  [[nodiscard]] Tolerances tolerances() const { return {tolerance_pass, tolerance_fail}; }
  [[nodiscard]] bool has(const std::string& section) const {
    return std::find(sections.begin(), sections.end(), section) != sections.end();
  }
  bool operator==(const AuditConfig&) const = default;
};

/// A numerical self-check of the engine; `lower_bound` flips the comparison.
struct CheckRecord {
  std::string id;
  double value = 0.0;
  double threshold = 0.0;
  bool lower_bound = false;
  bool ok = true;
  bool operator==(const CheckRecord&) const = default;
};

struct PropositionRecord {
  std::string id;
  bool consistent = true;
  std::string notes;
  bool operator==(const PropositionRecord&) const = default;
};

struct AuditReport {
  std::string version = kReportVersion;
  AuditConfig config;
  std::string metric_label;
  int convention_sign = +1;
  std::vector<ClaimResult> claims;
  std::vector<PropositionRecord> propositions;
  std::vector<CheckRecord> checks;
  std::vector<std::string> falsified_claims;
  std::vector<std::string> unexpected_claims;
  std::optional<double> timing_ms;
  bool operator==(const AuditReport&) const = default;

  /// True when every claim outside the discrepancy ledger passed, every
  /// self-check held and every asserted proposition was consistent.
  [[nodiscard]] bool ok() const {
    if (!unexpected_claims.empty()) return false;
    for (const auto& c : checks)
      if (!c.ok) return false;
    for (const auto& p : propositions)
      if (!p.consistent && !is_known_inconsistent_proposition(p.id)) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Validation

inline std::vector<std::string> registered_claim_ids() {
  std::vector<std::string> ids;
  for (const auto& c : connection_registry()) ids.push_back(c.info.id);
  for (const auto& c : lift_registry()) ids.push_back(c.info.id);
  for (const auto& c : lie_registry()) ids.push_back(c.info.id);
  for (const auto& c : curvature_registry()) ids.push_back(c.info.id);
  return ids;
}

inline void validate(const AuditConfig& c) {
  if (c.samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!std::isfinite(c.y_max) || !(c.y_max > 0.0)) throw std::invalid_argument("y_max must be finite and > 0");
  if (!(c.tolerance_pass >= 0.0) || !(c.tolerance_pass < c.tolerance_fail) || !std::isfinite(c.tolerance_fail))
    throw std::invalid_argument("tolerances must satisfy 0 <= tolerance_pass < tolerance_fail");
  const auto ids = registered_claim_ids();
  for (const auto& id : c.claims)
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw std::invalid_argument("unknown claim '" + id + "'");
  for (const auto& s : c.sections)
    if (std::find(section_names().begin(), section_names().end(), s) == section_names().end())
      throw std::invalid_argument("unknown section '" + s + "'");
}

inline ChartedMetric make_metric(const MetricSpec& spec) { return builtin_metric(spec.name, spec.params); }

inline std::vector<BundlePoint> audit_points(const ChartedMetric& m, const AuditConfig& c) {
  if (c.points.empty()) return sample_bundle_points(m, c.samples, c.seed, c.y_max);
  std::vector<BundlePoint> out;
  for (const auto& q : c.points) {
    if (q.size() != 2 * m.dim())
      throw std::invalid_argument("explicit point needs " + std::to_string(2 * m.dim()) + " coordinates");
    out.push_back(make_bundle_point(m, std::span<const double>(q)));
  }
  return out;
}

inline std::vector<NamedField> audit_fields(const ChartedMetric& m, const AuditConfig& c) {
  std::vector<NamedField> out;
  for (const auto& name : c.fields.empty() ? default_fields(m) : c.fields) out.push_back(make_field(m, name));
  return out;
}

// ---------------------------------------------------------------------------
// Run

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << v;
  return s.str();
}

inline CheckRecord upper(std::string id, double value, double threshold) {
  return {std::move(id), value, threshold, false, value <= threshold};
}

inline CheckRecord lower(std::string id, double value, double threshold) {
  return {std::move(id), value, threshold, true, value >= threshold};
}

inline void base_checks(const ChartedMetric& m, const std::vector<BundlePoint>& pts,
                        const std::vector<NamedField>& fields, int sign, std::vector<CheckRecord>& out) {
  double compat = 0.0, sym = 0.0, ricci = 0.0;
  for (const auto& p : pts) {
    compat = std::max(compat, base_metric_compatibility_residual(m, p.base()));
    sym = std::max(sym, riemann_symmetry_residual(m, p.base()));
    for (const auto& f : fields)
      if (f.admits(p.x)) ricci = std::max(ricci, ricci_identity_residual(m, f.field, p.base(), sign));
  }
  out.push_back(upper("base.metric_compatibility", compat, 1e-10));
  out.push_back(upper("base.riemann_symmetries", sym, 1e-9));
  out.push_back(upper("base.ricci_identity", ricci, 1e-8));
}

inline void connection_checks(const ChartedMetric& m, const std::vector<BundlePoint>& pts,
                              const std::vector<NamedField>& fields, int sign, std::vector<CheckRecord>& out) {
  const std::size_t n = m.dim();
  double compat = 0.0, tors = 0.0, vv = 0.0, omega = 0.0, lowering = 0.0;
  for (const auto& p : pts) {
    auto qv = p.coords();
    std::span<const double> q(qv);
    auto conn = koszul_connection<double>(m, q);
    compat = std::max(compat, metric_compatibility_residual(m, q, conn));
    tors = std::max(tors, torsion_residual(m, q, conn));
    omega = std::max(omega, max_abs_diff(structure_coefficients<double>(m, q),
                                         structure_coefficients_closed<double>(m, q, sign)));
    auto fib = vertical_vertical_corrected(fiber_data<double>(m, q));
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          vv = std::max(vv, std::abs(fib(h, j, i) - conn(n + h, n + j, n + i)));
    for (const auto& f : fields) {
      if (!f.admits(p.x)) continue;
      for (auto kind : {LiftKind::vertical, LiftKind::complete, LiftKind::horizontal})
        lowering = std::max(lowering, max_abs_diff(lowered_lift_components<double>(m, f.field, kind, q),
                                                   associated_covector_components<double>(m, f.field, kind, q)));
    }
  }
  out.push_back(upper("oracle.metric_compatibility", compat, 1e-7));
  out.push_back(upper("oracle.torsion", tors, 1e-7));
  out.push_back(upper("frame.structure_closed_form", omega, 1e-8));
  out.push_back(upper("fiber.corrected_vertical_vertical", vv, 1e-8));
  out.push_back(upper("lift.covector_lowering", lowering, 1e-12));
}

inline void curvature_checks(const ChartedMetric& m, const std::vector<BundlePoint>& pts,
                             std::vector<CheckRecord>& out) {
  double anti = 0.0, pair = 0.0;
  for (const auto& p : pts) {
    auto r = bundle_curvature_eq17(m, p, ConnectionSource::oracle).values;
    anti = std::max(anti, curvature_antisymmetry_residual(r));
    pair = std::max(pair, curvature_pair_symmetry_residual(lower_bundle_curvature(m, p, r)));
  }
  out.push_back(upper("curvature.antisymmetry", anti, 1e-10));
  out.push_back(upper("curvature.pair_symmetry", pair, 1e-8));
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline void append_note(std::string& notes, const std::string& entry) {
  if (!notes.empty()) notes += "; ";
  notes += entry;
}

}  // namespace detail

/// Sign pinning always runs on the unit sphere, whatever metric is audited.
inline SignPin pin_sign_on_sphere(std::uint64_t seed) {
  auto sphere = builtin_metric("sphere", {1.0});
  return pin_convention_sign(sphere, sample_bundle_points(sphere, 20, seed));
}

inline void classify_claims(AuditReport& r) {
  r.falsified_claims.clear();
  r.unexpected_claims.clear();
  for (const auto& c : r.claims) {
    if (c.verdict == Verdict::pass) continue;
    (is_known_discrepancy(c.id) ? r.falsified_claims : r.unexpected_claims).push_back(c.id);
  }
}

inline AuditReport run_audit(const AuditConfig& cfg) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = make_metric(cfg.metric);
  const auto pts = audit_points(m, cfg);
  const auto fields = audit_fields(m, cfg);
  const auto tol = cfg.tolerances();

  AuditReport rep;
  rep.config = cfg;
  rep.metric_label = m.name();
  const auto pin = pin_sign_on_sphere(cfg.seed);
  rep.convention_sign = pin.sign;
  const int sign = pin.sign;
  rep.checks.push_back(detail::upper("sign_pin.pinned_residual", std::min(pin.residual_plus, pin.residual_minus),
                                     tol.pass));
  rep.checks.push_back(
      detail::lower("sign_pin.opposite_residual", std::max(pin.residual_plus, pin.residual_minus), 0.1));

  auto take = [&](std::vector<ClaimResult> v) {
    for (auto& c : v) rep.claims.push_back(std::move(c));
  };

  if (cfg.has("base")) detail::base_checks(m, pts, fields, sign, rep.checks);

  if (cfg.has("connection")) {
    detail::connection_checks(m, pts, fields, sign, rep.checks);
    take(audit_connection_claims(m, pts, sign, tol, cfg.claims));
  }

  if (cfg.has("lifts")) {
    take(audit_lift_claims(m, pts, fields, sign, tol, cfg.claims));
    bool par_ok = true, closed_ok = true;
    std::string par_notes, closed_notes;
    for (const auto& f : fields) {
      auto par = parallel_lift_check(m, pts, f.field);
      auto cl = closedness_check(m, pts, f.field);
      par_ok = par_ok && par.equivalence_holds();
      closed_ok = closed_ok && cl.implication_holds();
      detail::append_note(par_notes, f.name + ": base " + detail::yes(par.base_parallel) + ", complete " +
                                         detail::yes(par.complete_parallel) + ", horizontal " +
                                         detail::yes(par.horizontal_parallel));
      detail::append_note(closed_notes, f.name + ": base " + detail::yes(cl.base_closed) +
                                            ", second derivative zero " + detail::yes(cl.second_cov_deriv_zero) +
                                            ", complete " + detail::yes(cl.complete_lift_closed) + ", horizontal " +
                                            detail::yes(cl.horizontal_lift_closed));
    }
    rep.propositions.push_back({"parallel_lifts", par_ok,
                                "field parallel iff complete and horizontal lifts parallel. " + par_notes});
    rep.propositions.push_back({"closed_lifts", closed_ok,
                                "closed with vanishing second derivative implies closed complete lift. " +
                                    closed_notes});
  }

  if (cfg.has("killing")) {
    take(audit_lie_claims(m, pts, fields, sign, tol, cfg.claims));
    bool a_ok = true, b_ok = true;
    std::string a_notes, b_notes;
    for (const auto& f : fields) {
      auto k = killing_classify(m, pts, f.field);
      a_ok = a_ok && k.prop3a_consistent;
      b_ok = b_ok && k.prop3b_consistent;
      const std::string base = f.name + ": killing " + detail::yes(k.base_killing);
      detail::append_note(a_notes, base + ", parallel " + detail::yes(k.cov_deriv_zero) +
                                       ", complete lift killing " + detail::yes(k.complete_lift_killing) + " (max " +
                                       detail::fmt(k.max_complete_lie) + ")");
      detail::append_note(b_notes, base + ", second derivative zero " + detail::yes(k.second_cov_deriv_zero) +
                                       ", horizontal lift killing " + detail::yes(k.horizontal_lift_killing) +
                                       " (max " + detail::fmt(k.max_horizontal_lie) + ")");
    }
    rep.propositions.push_back({"killing_complete_lift", a_ok,
                                "stated: complete lift Killing iff Killing and parallel. " + a_notes});
    rep.propositions.push_back({"killing_horizontal_lift", b_ok,
                                "stated: horizontal lift Killing iff Killing with vanishing second derivative. " +
                                    b_notes});
  }

  if (cfg.has("curvature")) {
    detail::curvature_checks(m, pts, rep.checks);
    take(audit_curvature_claims(m, pts, sign, tol, cfg.claims));
    auto fl = flatness_audit(m, pts);
    rep.propositions.push_back(
        {"flat_bundle", fl.consistent(),
         "stated: bundle flat iff base flat. base flat " + detail::yes(fl.base_flat) + " (max " +
             detail::fmt(fl.max_base_curv) + "), bundle flat " + detail::yes(fl.bundle_flat) + " (max " +
             detail::fmt(fl.max_bundle_curv) + ")"});
  }

  classify_claims(rep);
  if (cfg.timing)
    rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

inline double num_from(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace detail

inline nlohmann::json to_json(const AuditConfig& c) {
  return {{"metric", {{"name", c.metric.name}, {"params", c.metric.params}}},
          {"samples", c.samples},
          {"seed", c.seed},
          {"y_max", c.y_max},
          {"tolerance_pass", c.tolerance_pass},
          {"tolerance_fail", c.tolerance_fail},
          {"claims", c.claims},
          {"fields", c.fields},
          {"points", c.points},
          {"sections", c.sections},
          {"timing", c.timing}};
}

/// Reads a config object. Missing keys keep the values already in `base`;
/// unknown keys are rejected.
inline AuditConfig config_from_json(const nlohmann::json& j, AuditConfig base = {}) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "metric") {
      if (v.is_string()) {
        base.metric.name = v.get<std::string>();
      } else {
        base.metric.name = v.at("name").get<std::string>();
        base.metric.params = v.value("params", std::vector<double>{});
      }
    } else if (key == "samples") {
      if (!v.is_number_integer() || v.get<long long>() < 1) throw std::invalid_argument("samples must be an integer >= 1");
      base.samples = v.get<std::size_t>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw std::invalid_argument("seed must be an unsigned integer");
      base.seed = v.get<std::uint64_t>();
    } else if (key == "y_max") {
      base.y_max = v.get<double>();
    } else if (key == "tolerance_pass") {
      base.tolerance_pass = v.get<double>();
    } else if (key == "tolerance_fail") {
      base.tolerance_fail = v.get<double>();
    } else if (key == "claims") {
      base.claims = v.get<std::vector<std::string>>();
    } else if (key == "fields") {
      base.fields = v.get<std::vector<std::string>>();
    } else if (key == "points") {
      base.points = v.get<std::vector<std::vector<double>>>();
    } else if (key == "sections") {
      base.sections = v.get<std::vector<std::string>>();
    } else if (key == "timing") {
      base.timing = v.get<bool>();
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return base;
}

inline nlohmann::json to_json(const ClaimResult& c) {
  nlohmann::json j = {{"id", c.id},
                      {"location", c.location},
                      {"quote", c.quote},
                      {"verdict", to_string(c.verdict)},
                      {"max_abs_residual", detail::num(c.max_abs_residual)},
                      {"samples", c.samples},
                      {"skipped", c.skipped}};
  if (c.reading) j["reading"] = *c.reading;
  if (c.corrected_residual) j["corrected_residual"] = detail::num(*c.corrected_residual);
  return j;
}

inline ClaimResult claim_from_json(const nlohmann::json& j) {
  ClaimResult c;
  c.id = j.at("id").get<std::string>();
  c.location = j.at("location").get<std::string>();
  c.quote = j.at("quote").get<std::string>();
  c.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  c.max_abs_residual = detail::num_from(j.at("max_abs_residual"));
  c.samples = j.at("samples").get<std::size_t>();
  c.skipped = j.value("skipped", std::size_t{0});
  if (j.contains("reading")) c.reading = j["reading"].get<std::string>();
  if (j.contains("corrected_residual")) c.corrected_residual = detail::num_from(j["corrected_residual"]);
  return c;
}

inline nlohmann::json to_json(const AuditReport& r) {
  nlohmann::json claims = nlohmann::json::array(), props = nlohmann::json::array(),
                 checks = nlohmann::json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  for (const auto& p : r.propositions)
    props.push_back({{"id", p.id}, {"consistent", p.consistent}, {"notes", p.notes}});
  for (const auto& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"value", detail::num(c.value)},
                      {"threshold", c.threshold},
                      {"lower_bound", c.lower_bound},
                      {"ok", c.ok}});
  nlohmann::json j = {{"version", r.version},
                      {"config", to_json(r.config)},
                      {"metric_label", r.metric_label},
                      {"convention_sign", r.convention_sign},
                      {"claims", claims},
                      {"propositions", props},
                      {"checks", checks},
                      {"falsified_claims", r.falsified_claims},
                      {"unexpected_claims", r.unexpected_claims}};
  j["timing_ms"] = r.timing_ms ? nlohmann::json(*r.timing_ms) : nlohmann::json(nullptr);
  return j;
}

inline AuditReport report_from_json(const nlohmann::json& j) {
  AuditReport r;
  r.version = j.at("version").get<std::string>();
  r.config = config_from_json(j.at("config"));
  r.metric_label = j.at("metric_label").get<std::string>();
  r.convention_sign = j.at("convention_sign").get<int>();
  for (const auto& c : j.at("claims")) r.claims.push_back(claim_from_json(c));
  for (const auto& p : j.at("propositions"))
    r.propositions.push_back({p.at("id").get<std::string>(), p.at("consistent").get<bool>(),
                              p.at("notes").get<std::string>()});
  for (const auto& c : j.value("checks", nlohmann::json::array()))
    r.checks.push_back({c.at("id").get<std::string>(), detail::num_from(c.at("value")),
                        c.at("threshold").get<double>(), c.at("lower_bound").get<bool>(), c.at("ok").get<bool>()});
  r.falsified_claims = j.at("falsified_claims").get<std::vector<std::string>>();
  r.unexpected_claims = j.value("unexpected_claims", std::vector<std::string>{});
  if (!j.at("timing_ms").is_null()) r.timing_ms = j["timing_ms"].get<double>();
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

enum class ReportFormat { json, table };

inline ReportFormat format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "table") return ReportFormat::table;
  throw std::invalid_argument("unknown format '" + s + "'");
}

namespace detail {

/// Pads to a display width, counting code points and skipping combining
/// marks (the bars over vertical indices).
inline std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto ch = static_cast<unsigned char>(s[k]);
    if ((ch & 0xC0) == 0x80) continue;
    // U+0300..U+036F encode as CC 80..CD AF
    if (k + 1 < s.size() && (ch == 0xCC || ch == 0xCD)) {
      const auto nx = static_cast<unsigned char>(s[k + 1]);
      if (ch == 0xCC || nx <= 0xAF) continue;
    }
    ++cols;
  }
  return cols >= width ? s + " " : s + std::string(width - cols, ' ');
}

}  // namespace detail

inline std::string render_report(const AuditReport& r, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "metric " << r.metric_label << "  seed " << r.config.seed << "  points "
      << (r.config.points.empty() ? r.config.samples : r.config.points.size()) << "  convention_sign "
      << (r.convention_sign > 0 ? "+1" : "-1") << "\n\n";
  out << detail::pad("claim", 22) << detail::pad("location", 26) << detail::pad("verdict", 14) << "max residual\n";
  std::size_t pass = 0, fail = 0, inc = 0;
  for (const auto& c : r.claims) {
    out << detail::pad(c.id, 22) << detail::pad(c.location, 26) << detail::pad(to_string(c.verdict), 14)
        << detail::fmt(c.max_abs_residual);
    if (c.verdict != Verdict::pass) out << (is_known_discrepancy(c.id) ? "  (known)" : "  (UNEXPECTED)");
    out << "\n";
    switch (c.verdict) {
      case Verdict::pass: ++pass; break;
      case Verdict::fail: ++fail; break;
      case Verdict::inconclusive: ++inc; break;
    }
  }
  if (!r.propositions.empty()) out << "\n";
  for (const auto& p : r.propositions)
    out << detail::pad(p.id, 26) << (p.consistent ? "consistent" : "INCONSISTENT")
        << (!p.consistent && is_known_inconsistent_proposition(p.id) ? "  (known)" : "") << "\n";
  std::size_t bad_checks = 0;
  for (const auto& c : r.checks)
    if (!c.ok) {
      ++bad_checks;
      out << "check " << c.id << " failed: " << detail::fmt(c.value) << (c.lower_bound ? " < " : " > ")
          << detail::fmt(c.threshold) << "\n";
    }
  out << "\nPASS " << pass << "  FAIL " << fail << "  INCONCLUSIVE " << inc << "  total " << r.claims.size()
      << "  |  known discrepancies " << r.falsified_claims.size() << "  unexpected " << r.unexpected_claims.size()
      << "  failed checks " << bad_checks << "\n";
  if (r.timing_ms) out << "time " << std::fixed << std::setprecision(1) << *r.timing_ms << " ms\n";
  return out.str();
}

/// Writes via a sibling temporary file and a rename, so readers never see a
/// partial report.
inline void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace tbaudit

#endif  // TBAUDIT_AUDIT_HPP
