// akgeo: analyze almost-Hermitian specs, verify them against the built-in
// expected tables, compute plurigenera, and run the acceptance suite.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "akgeo/acceptance.hpp"

namespace {

using namespace akgeo;

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

/// "name=start:step:stop", inclusive of stop up to rounding.
GridAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw Error("grid '" + text + "': expected name=start:step:stop");
  GridAxis axis{text.substr(0, eq), {}};
  static const std::vector<std::string> names{"a", "t1", "t2", "t3", "t4"};
  if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
    throw Error("grid '" + text + "': parameter must be one of a, t1, t2, t3, t4");
  }
  std::vector<double> parts;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw Error("grid '" + text + "': bad number '" + item + "'");
    parts.push_back(v);
  }
  if (parts.size() == 1) {
    axis.values = parts;
    return axis;
  }
  if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
    throw Error("grid '" + text + "': expected start:step:stop with step > 0 and stop >= start");
  }
  const auto steps = static_cast<long long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
  if (steps > 10000) throw Error("grid '" + text + "': too many points");
  for (long long i = 0; i <= steps; ++i) axis.values.push_back(parts[0] + static_cast<double>(i) * parts[1]);
  return axis;
}

/// The spec rebuilt at one grid point. Only family specs can be swept.
AlmostHermitianSpec at_point(const AlmostHermitianSpec& base, const std::map<std::string, double>& point) {
  if (base.family == FamilyKind::kodaira_thurston && base.a) {
    double a = *base.a;
    for (const auto& [k, v] : point) {
      if (k != "a") throw Error("parameter '" + k + "' does not apply to the Kodaira-Thurston family");
      a = v;
    }
    return kodaira_thurston_coordinate(a);
  }
  if (base.family == FamilyKind::nakamura && base.nakamura) {
    DeformationParameter t = base.nakamura->t;
    for (const auto& [k, v] : point) {
      if (k == "a") throw Error("parameter 'a' does not apply to the Nakamura family");
      t[static_cast<std::size_t>(k[1] - '1')] = v;
    }
    return nakamura(t, base.nakamura->zeta);
  }
  throw Error("grid sweeps need a family spec (kodaira_thurston or nakamura)");
}

std::vector<std::map<std::string, double>> grid_points(const std::vector<GridAxis>& axes) {
  std::vector<std::map<std::string, double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::map<std::string, double>> next;
    for (const auto& p : out) {
      for (double v : axis.values) {
        auto q = p;
        q[axis.name] = v;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string point_text(const std::map<std::string, double>& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write '" + out_path + "'");
  out << text;
}

DeformationParameter parse_t(const std::string& text) {
  DeformationParameter t{};
  std::stringstream ss(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 4) throw Error("--t expects four comma-separated numbers");
    std::size_t used = 0;
    try {
      t[i] = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw Error("--t: bad number '" + item + "'");
    ++i;
  }
  if (i != 4) throw Error("--t expects four comma-separated numbers");
  return t;
}

int run_analyze(const std::string& path, const std::string& format, std::optional<double> tol,
                const std::string& out_path) {
  const AlmostHermitianSpec spec = load_spec(path);
  Report report = run_pipeline(spec);
  if (const auto ex = expected_for(spec)) {
    report.verification = verify(report, *ex, tol ? *tol : default_tolerance());
  }
  emit(format_report(report, format == "json" ? ReportFormat::json : ReportFormat::text), out_path);
  return report.verification && !report.verification->passed() ? kExitFail : kExitPass;
}

int run_verify(const std::string& path, const std::vector<std::string>& grid,
               std::optional<double> tol_opt, const std::string& out_path) {
  const double tol = tol_opt ? *tol_opt : default_tolerance();
  const AlmostHermitianSpec base = load_spec(path);
  std::vector<GridAxis> axes;
  for (const auto& g : grid) axes.push_back(parse_axis(g));
  // Sorted parameter order keeps output deterministic.
  std::sort(axes.begin(), axes.end(), [](const auto& l, const auto& r) { return l.name < r.name; });

  std::ostringstream os;
  bool all = true;
  for (const auto& point : grid_points(axes)) {
    const AlmostHermitianSpec spec = point.empty() ? base : at_point(base, point);
    const auto ex = expected_for(spec);
    if (!ex) throw Error("no expected values for spec '" + spec.name + "'");
    const Report report = run_pipeline(spec);
    const VerificationResult v = verify(report, *ex, tol);
    all = all && v.passed();
    os << (v.passed() ? "PASS" : "FAIL") << "  " << spec.name;
    if (!point.empty()) os << "  [" << point_text(point) << "]";
    os << "\n";
    for (const auto& it : v.items) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.3g", it.residual);
      os << "    " << (it.passed ? "ok  " : "FAIL") << "  " << it.name << "  " << buf << "\n";
    }
  }
  os << (all ? "all points pass" : "verification failed") << " (tol " << tol << ")\n";
  emit(os.str(), out_path);
  return all ? kExitPass : kExitFail;
}

int run_kodaira(const std::string& t_text, int m_max, long long bound, std::optional<double> zeta_opt,
                const std::string& format) {
  const DeformationParameter t = parse_t(t_text);
  const double zeta = zeta_opt ? *zeta_opt : default_zeta();
  const PlurigenusResult res = kodaira_dimension(t, m_max, bound, zeta);
  if (format == "json") {
    nlohmann::json doc;
    doc["t"] = t;
    doc["zeta"] = zeta;
    doc["mode_bound"] = bound;
    nlohmann::json per_m = nlohmann::json::object();
    for (const auto& [m, p] : res.per_m) per_m[std::to_string(m)] = p;
    doc["P"] = per_m;
    doc["kappa"] = to_string(res.kappa);
    std::cout << doc.dump(2) << "\n";
    return kExitPass;
  }
  std::cout << "t = (" << t[0] << ", " << t[1] << ", " << t[2] << ", " << t[3] << "), zeta = " << zeta
            << ", mode bound " << bound << "\n";
  for (const auto& ev : res.evidence) {
    std::cout << "  m = " << ev.m << "  P_m = " << res.per_m.at(ev.m) << "  modes " << ev.analytic.size()
              << " (brute force " << ev.brute_force.size() << ")  D(0) = " << ev.discriminant_at_zero << "\n";
  }
  std::cout << "kappa = " << to_string(res.kappa) << "\n";
  return kExitPass;
}

int run_paper_check() {
  bool all = true;
  for (const auto& r : run_acceptance()) {
    std::cout << format_criterion(r) << "\n";
    all = all && r.passed();
  }
  std::cout << (all ? "paper-check: all criteria pass" : "paper-check: FAILED") << "\n";
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"akgeo: canonical connection curvature and Kodaira dimension of invariant almost-Hermitian structures"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string format = "text";
  std::string out_path;
  std::optional<double> tol;
  std::vector<std::string> grid;

  auto* analyze = app.add_subcommand("analyze", "run the full pipeline on a spec file");
  analyze->add_option("spec", spec_path, "spec JSON file")->required();
  analyze->add_option("--report", format, "output format")->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--tol", tol, "verification tolerance (default AKGEO_TOL or 1e-9)");
  analyze->add_option("--out", out_path, "write the report here instead of stdout");

  auto* verify_cmd = app.add_subcommand("verify", "compare a family spec with its expected tables");
  verify_cmd->add_option("spec", spec_path, "spec JSON file")->required();
  verify_cmd->add_option("--grid", grid, "sweep name=start:step:stop (repeatable)");
  verify_cmd->add_option("--tol", tol, "tolerance (default AKGEO_TOL or 1e-9)");
  verify_cmd->add_option("--out", out_path, "write the summary here instead of stdout");

  std::string t_text;
  int m_max = 10;
  long long bound = 1000;
  std::optional<double> zeta;
  auto* kodaira = app.add_subcommand("kodaira", "plurigenera and Kodaira dimension of Y_t");
  kodaira->add_option("--t", t_text, "t1,t2,t3,t4")->required();
  kodaira->add_option("--m-max", m_max, "largest tensor power")->check(CLI::Range(1, 1000));
  kodaira->add_option("--mode-bound", bound, "Fourier mode bound")->check(CLI::Range(1LL, 100000LL));
  kodaira->add_option("--zeta", zeta, "lattice parameter (default log((3 + sqrt 5) / 2))");
  kodaira->add_option("--report", format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto* paper = app.add_subcommand("paper-check", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (analyze->parsed()) return run_analyze(spec_path, format, tol, out_path);
    if (verify_cmd->parsed()) return run_verify(spec_path, grid, tol, out_path);
    if (kodaira->parsed()) return run_kodaira(t_text, m_max, bound, zeta, format);
    if (paper->parsed()) return run_paper_check();
  } catch (const std::exception& e) {
    std::cerr << "akgeo: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
