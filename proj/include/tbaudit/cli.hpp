#ifndef TBAUDIT_CLI_HPP
#define TBAUDIT_CLI_HPP

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tbaudit/audit.hpp"
#include "tbaudit/killing_curvature.hpp"

namespace tbaudit {

enum ExitCode : int { kExitOk = 0, kExitUnexpected = 1, kExitUsage = 2 };

namespace detail {

struct MetricFlags {
  std::string name;
  int dim = 0;
  double radius = 0.0;
  std::vector<double> params;
  CLI::Option* name_opt = nullptr;
  CLI::Option* dim_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* params_opt = nullptr;

  void attach(CLI::App& app) {
    name_opt = app.add_option("--metric", name, "euclidean | flat_torus | sphere | hyperbolic_half_plane");
    dim_opt = app.add_option("--dim", dim, "base dimension for euclidean and flat_torus")->check(CLI::Range(1, 8));
    radius_opt = app.add_option("--radius", radius, "sphere radius")->check(CLI::PositiveNumber);
    params_opt = app.add_option("--params", params, "raw metric parameters")->delimiter(',');
  }

  void apply(MetricSpec& spec) const {
    if (name_opt->count()) spec.name = name;
    if (params_opt->count()) spec.params = params;
    if (dim_opt->count()) spec.params = {static_cast<double>(dim)};
    if (radius_opt->count()) spec.params = {radius};
  }
};

struct AuditFlags {
  MetricFlags metric;
  std::string config_path;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double y_max = 0.0, tol_pass = 0.0, tol_fail = 0.0;
  std::vector<std::string> claims, fields, points;
  std::string out_path;
  std::string format = "table";
  bool timing = false;
  CLI::Option *samples_opt = nullptr, *seed_opt = nullptr, *y_opt = nullptr, *tp_opt = nullptr, *tf_opt = nullptr,
              *claims_opt = nullptr, *fields_opt = nullptr, *points_opt = nullptr;

  void attach(CLI::App& app, bool with_fields = true) {
    metric.attach(app);
    app.add_option("--config", config_path, "JSON config file; flags override its values")->check(CLI::ExistingFile);
    samples_opt = app.add_option("--samples", samples, "number of sampled bundle points")->check(CLI::PositiveNumber);
    seed_opt = app.add_option("--seed", seed, "sampler seed (fallback: TBAUDIT_SEED)");
    y_opt = app.add_option("--y-max", y_max, "fiber sampling radius")->check(CLI::PositiveNumber);
    tp_opt = app.add_option("--tol-pass", tol_pass, "PASS tolerance");
    tf_opt = app.add_option("--tol-fail", tol_fail, "FAIL tolerance");
    claims_opt = app.add_option("--claims", claims, "only these claim ids")->delimiter(',');
    if (with_fields) fields_opt = app.add_option("--fields", fields, "only these base fields")->delimiter(',');
    points_opt = app.add_option("--point", points, "explicit point x1,..,xn,y1,..,yn (repeatable)");
    app.add_option("--out", out_path, "write the JSON report here");
    app.add_option("--format", format, "stdout format")->check(CLI::IsMember({"table", "json"}));
    app.add_flag("--timing", timing, "record wall-clock time in the report");
  }

  [[nodiscard]] AuditConfig build(std::vector<std::string> sections) const {
    AuditConfig c;
    if (const char* env = std::getenv("TBAUDIT_SEED")) {
      std::size_t used = 0;
      std::string s(env);
      try {
        c.seed = std::stoull(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != s.size() || s.front() == '-')
        throw std::invalid_argument("TBAUDIT_SEED is not an unsigned integer: '" + s + "'");
    }
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(f);
        c = config_from_json(j, c);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("cannot read " + config_path + ": " + e.what());
      }
    }
    metric.apply(c.metric);
    if (samples_opt->count()) c.samples = samples;
    if (seed_opt->count()) c.seed = seed;
    if (y_opt->count()) c.y_max = y_max;
    if (tp_opt->count()) c.tolerance_pass = tol_pass;
    if (tf_opt->count()) c.tolerance_fail = tol_fail;
    if (claims_opt->count()) c.claims = claims;
    if (fields_opt && fields_opt->count()) c.fields = fields;
    if (points_opt->count()) {
      c.points.clear();
      for (const auto& p : points) c.points.push_back(parse_list(p));
    }
    if (timing) c.timing = true;
    c.sections = std::move(sections);
    return c;
  }

  static std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw std::invalid_argument("not a number list: '" + s + "'");
      out.push_back(v);
    }
    return out;
  }
};

inline int emit(const AuditFlags& flags, const AuditReport& rep, std::ostream& out) {
  if (!flags.out_path.empty()) write_atomically(flags.out_path, render_report(rep, ReportFormat::json));
  out << render_report(rep, format_from_string(flags.format));
  return rep.ok() ? kExitOk : kExitUnexpected;
}

}  // namespace detail

/// Entry point of the `tbaudit` tool. Exit codes: 0 when every claim outside
/// the discrepancy ledger passed, 1 otherwise, 2 for usage or config errors.
inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Numerical audit of Cheeger-Gromoll tangent bundle formulas", "tbaudit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  detail::AuditFlags audit_f, conn_f, curv_f, lift_f, kill_f;
  auto* audit = app.add_subcommand("audit", "run every audit section");
  audit_f.attach(*audit);
  auto* conn = app.add_subcommand("connection", "connection formulas and oracle checks");
  conn_f.attach(*conn);
  auto* curv = app.add_subcommand("curvature", "curvature formulas, flatness and curvature checks");
  curv_f.attach(*curv);
  auto* lifts = app.add_subcommand("lifts", "lift derivatives, covector lifts and rotations");
  lift_f.attach(*lifts);
  auto* kill = app.add_subcommand("killing", "Lie derivatives of the metric along lifts of one field");
  kill_f.attach(*kill, false);
  std::string kill_field;
  kill->add_option("--field", kill_field, "base field name")->required();

  detail::MetricFlags geo_m;
  std::vector<double> gx, gy, gv;
  std::size_t steps = 1000;
  double dt = 1e-3;
  std::string geo_out;
  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic of the bundle metric, CSV output");
  geo_m.attach(*geo);
  geo->add_option("--x", gx, "base point")->delimiter(',')->required();
  geo->add_option("--y", gy, "fiber point")->delimiter(',')->required();
  geo->add_option("--v", gv, "initial velocity in induced coordinates (2n values)")->delimiter(',')->required();
  geo->add_option("--steps", steps, "number of RK4 steps");
  geo->add_option("--dt", dt, "step size")->check(CLI::PositiveNumber);
  geo->add_option("--out", geo_out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*audit) return detail::emit(audit_f, run_audit(audit_f.build(section_names())), out);
    if (*conn) return detail::emit(conn_f, run_audit(conn_f.build({"base", "connection"})), out);
    if (*curv) return detail::emit(curv_f, run_audit(curv_f.build({"curvature"})), out);
    if (*lifts) return detail::emit(lift_f, run_audit(lift_f.build({"lifts"})), out);
    if (*kill) {
      auto cfg = kill_f.build({"killing"});
      cfg.fields = {kill_field};
      return detail::emit(kill_f, run_audit(cfg), out);
    }
    if (*geo) {
      MetricSpec spec;
      geo_m.apply(spec);
      auto m = make_metric(spec);
      GeodesicState s;
      s.q = gx;
      s.q.insert(s.q.end(), gy.begin(), gy.end());
      s.v = gv;
      if (gx.size() != m.dim() || gy.size() != m.dim() || gv.size() != 2 * m.dim())
        throw std::invalid_argument("geodesic needs --x and --y with n values and --v with 2n values");
      auto res = geodesic_integrate(m, s, dt, steps);
      std::ostringstream csv;
      const std::size_t n = m.dim();
      csv << "t";
      for (std::size_t i = 1; i <= n; ++i) csv << ",x" << i;
      for (std::size_t i = 1; i <= n; ++i) csv << ",y" << i;
      for (std::size_t i = 1; i <= 2 * n; ++i) csv << ",v" << i;
      csv << ",energy\n" << std::setprecision(17);
      for (std::size_t k = 0; k < res.trajectory.size(); ++k) {
        const auto& st = res.trajectory[k];
        csv << st.t;
        for (double q : st.q) csv << "," << q;
        for (double v : st.v) csv << "," << v;
        csv << "," << res.energy[k] << "\n";
      }
      if (geo_out.empty())
        out << csv.str();
      else
        write_atomically(geo_out, csv.str());
      if (res.exit_index) {
        err << "geodesic left the chart domain at step " << *res.exit_index << "\n";
        return kExitUnexpected;
      }
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "tbaudit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "tbaudit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "tbaudit: " << e.what() << "\n";
    return kExitUnexpected;
  }
  return kExitUsage;
}

}  // namespace tbaudit

#endif  // TBAUDIT_CLI_HPP
