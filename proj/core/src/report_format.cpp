#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "akgeo/report.hpp"

namespace akgeo {

namespace {

using nlohmann::json;

constexpr double kPrintZero = tol::kPrune;

/// Round to 12 significant digits; tiny values and -0 become 0.
double round12(double x) {
  if (!std::isfinite(x)) return x;
  if (std::abs(x) < kPrintZero) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string fmt(double x) {
  if (std::abs(x) < kPrintZero) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(Complex z) {
  const double re = std::abs(z.real()) < kPrintZero ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < kPrintZero ? 0.0 : z.imag();
  if (im == 0.0) return fmt(re);
  if (re == 0.0) return fmt(im) + "i";
  return fmt(re) + (im < 0 ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return round12(x);
}

json table_json(const ValueTable& t) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    re.push_back(number(t.flat(i).real()));
    im.push_back(number(t.flat(i).imag()));
  }
  return json{{"shape", t.shape()}, {"real", re}, {"imag", im}};
}

std::string shape_text(const std::vector<int>& shape) {
  if (shape.empty()) return "scalar";
  std::string s;
  for (std::size_t i = 0; i < shape.size(); ++i) s += (i ? " x " : "") + std::to_string(shape[i]);
  return s;
}

/// 1-based multi-index of a flat offset.
std::string index_text(std::size_t flat, const std::vector<int>& shape) {
  std::vector<std::size_t> idx(shape.size());
  for (std::size_t d = shape.size(); d-- > 0;) {
    const auto extent = static_cast<std::size_t>(shape[d]);
    idx[d] = flat % extent;
    flat /= extent;
  }
  std::string s = "(";
  for (std::size_t d = 0; d < idx.size(); ++d) s += (d ? "," : "") + std::to_string(idx[d] + 1);
  return s + ")";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_json(const Report& r) {
  json doc;
  doc["name"] = r.name;
  doc["frame"] = r.frame;
  doc["labels"] = r.labels;
  doc["dim"] = r.dim;
  doc["classification"] = {{"integrable", r.flags.integrable},
                           {"almost_kahler", r.flags.almost_kahler},
                           {"quasi_kahler", r.flags.quasi_kahler},
                           {"nijenhuis_norm", number(r.flags.nijenhuis_norm)},
                           {"domega_norm", number(r.flags.domega_norm)},
                           {"gauduchon_residual", number(r.flags.gauduchon_residual)}};
  json tables = json::object();
  for (const auto& [name, t] : r.tables) tables[name] = table_json(t);
  doc["tables"] = tables;
  json checks = json::object();
  for (const auto& [name, v] : r.checks) checks[name] = number(v);
  doc["checks"] = checks;
  if (r.plurigenus) {
    const PlurigenusBlock& p = *r.plurigenus;
    json per_m = json::object();
    for (const auto& [m, v] : p.per_m) per_m[std::to_string(m)] = v;
    doc["plurigenus"] = {{"t", {number(p.t[0]), number(p.t[1]), number(p.t[2]), number(p.t[3])}},
                         {"zeta", number(p.zeta)},
                         {"m_max", p.m_max},
                         {"mode_bound", p.mode_bound},
                         {"P", per_m},
                         {"kappa", to_string(p.kappa)},
                         {"elliptic", p.elliptic},
                         {"min_symbol_eigenvalue", number(p.min_symbol_eigenvalue)}};
  }
  if (r.verification) {
    json items = json::array();
    for (const auto& it : r.verification->items) {
      items.push_back({{"name", it.name},
                       {"residual", number(it.residual)},
                       {"tolerance", number(it.tolerance)},
                       {"passed", it.passed}});
    }
    doc["verification"] = {{"passed", r.verification->passed()}, {"items", items}};
  }
  return doc.dump(2) + "\n";
}

std::string format_text(const Report& r) {
  std::ostringstream os;
  os << "report " << r.name << "\n";
  os << "frame " << r.frame << " (";
  for (std::size_t i = 0; i < r.labels.size(); ++i) os << (i ? " " : "") << r.labels[i];
  os << "), dim " << r.dim << "\n\n";

  os << "classification\n";
  os << "  integrable      " << yes_no(r.flags.integrable) << "  (|N| = " << fmt(r.flags.nijenhuis_norm) << ")\n";
  os << "  almost Kahler   " << yes_no(r.flags.almost_kahler) << "  (|d omega| = " << fmt(r.flags.domega_norm) << ")\n";
  os << "  quasi Kahler    " << yes_no(r.flags.quasi_kahler) << "  (residual " << fmt(r.flags.gauduchon_residual) << ")\n\n";

  os << "checks\n";
  for (const auto& [name, v] : r.checks) os << "  " << name << "  " << fmt(v) << "\n";
  os << "\n";

  for (const auto& [name, t] : r.tables) {
    os << name << " [" << shape_text(t.shape()) << "]\n";
    if (t.shape().empty()) {
      os << "  " << fmt(t.flat(0)) << "\n\n";
      continue;
    }
    bool any = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Complex v = t.flat(i);
      if (std::abs(v) < kPrintZero) continue;
      os << "  " << index_text(i, t.shape()) << "  " << fmt(v) << "\n";
      any = true;
    }
    if (!any) os << "  (all zero)\n";
    os << "\n";
  }

  if (r.plurigenus) {
    const PlurigenusBlock& p = *r.plurigenus;
    os << "plurigenera (t = " << fmt(p.t[0]) << ", " << fmt(p.t[1]) << ", " << fmt(p.t[2]) << ", "
       << fmt(p.t[3]) << "; zeta = " << fmt(p.zeta) << "; mode bound " << p.mode_bound << ")\n";
    os << "  P_m  ";
    for (const auto& [m, v] : p.per_m) os << " " << m << ":" << v;
    os << "\n  kappa  " << to_string(p.kappa) << "\n";
    os << "  elliptic  " << yes_no(p.elliptic) << "  (min symbol eigenvalue "
       << fmt(p.min_symbol_eigenvalue) << ")\n\n";
  }

  if (r.verification) {
    os << "verification\n";
    for (const auto& it : r.verification->items) {
      os << "  " << (it.passed ? "PASS" : "FAIL") << "  " << it.name << "  residual "
         << fmt(it.residual) << "  tol " << fmt(it.tolerance) << "\n";
    }
    os << "  overall " << (r.verification->passed() ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

std::string format_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::json ? format_json(report) : format_text(report);
}

}  // namespace akgeo
