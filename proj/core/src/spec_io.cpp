#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "akgeo/report.hpp"

namespace akgeo {

namespace {

using nlohmann::json;

class SpecReader {
 public:
  SpecReader(const json& doc, std::string source) : doc_(doc), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& msg) const {
    throw LoadError(source_ + ": field '" + field + "': " + msg);
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "not finite");
    return x;
  }

  int integer(const json& v, const std::string& field) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    return v.get<int>();
  }

  /// `key` at top level or under "parameters".
  const json* parameter(const std::string& key) const {
    if (doc_.contains(key)) return &doc_.at(key);
    if (doc_.contains("parameters")) {
      const json& p = doc_.at("parameters");
      if (!p.is_object()) fail("parameters", "expected an object");
      if (p.contains(key)) return &p.at(key);
    }
    return nullptr;
  }

  /// Nested rows or a flat row-major list of dim * dim numbers.
  RealMatrix matrix(const std::string& field, int dim) const {
    const json& v = doc_.at(field);
    if (!v.is_array()) fail(field, "expected an array");
    RealMatrix m(dim, dim);
    if (!v.empty() && v.front().is_array()) {
      if (static_cast<int>(v.size()) != dim) fail(field, "expected " + std::to_string(dim) + " rows");
      for (int r = 0; r < dim; ++r) {
        const json& row = v[static_cast<std::size_t>(r)];
        const std::string rf = field + "[" + std::to_string(r) + "]";
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
          fail(rf, "expected a row of " + std::to_string(dim) + " numbers");
        }
        for (int c = 0; c < dim; ++c) {
          m(r, c) = number(row[static_cast<std::size_t>(c)], rf + "[" + std::to_string(c) + "]");
        }
      }
      return m;
    }
    if (static_cast<int>(v.size()) != dim * dim) {
      fail(field, "expected " + std::to_string(dim * dim) + " numbers (row-major)");
    }
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const auto idx = static_cast<std::size_t>(r * dim + c);
        m(r, c) = number(v[idx], field + "[" + std::to_string(idx) + "]");
      }
    }
    return m;
  }

  /// 1-based index in [1, dim].
  int index(const json& v, const std::string& field, int dim) const {
    const int i = integer(v, field);
    if (i < 1 || i > dim) fail(field, "index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
    return i - 1;
  }

  std::vector<std::string> labels(const std::string& field, int dim) const {
    std::vector<std::string> out;
    if (!doc_.contains(field)) return out;
    const json& v = doc_.at(field);
    if (!v.is_array() || static_cast<int>(v.size()) != dim) {
      fail(field, "expected " + std::to_string(dim) + " strings");
    }
    for (const auto& s : v) {
      if (!s.is_string()) fail(field, "expected strings");
      out.push_back(s.get<std::string>());
    }
    return out;
  }

  std::string string_or(const std::string& field, const std::string& fallback) const {
    if (!doc_.contains(field)) return fallback;
    const json& v = doc_.at(field);
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

  AlmostHermitianSpec family() const {
    const std::string fam = doc_.at("family").get<std::string>();
    if (fam == "kodaira_thurston") {
      const json* a = parameter("a");
      if (!a) fail("a", "required for family kodaira_thurston");
      return kodaira_thurston_coordinate(number(*a, "a"));
    }
    if (fam == "nakamura") {
      const json* tv = parameter("t");
      if (!tv) fail("t", "required for family nakamura");
      if (!tv->is_array() || tv->size() != 4) fail("t", "expected 4 numbers");
      DeformationParameter t{};
      for (std::size_t i = 0; i < 4; ++i) t[i] = number((*tv)[i], "t[" + std::to_string(i) + "]");
      double zeta = default_zeta();
      if (const json* z = parameter("zeta")) zeta = number(*z, "zeta");
      return nakamura(t, zeta);
    }
    fail("family", "unknown family '" + fam + "' (expected kodaira_thurston or nakamura)");
  }

  AlmostHermitianSpec generic() const {
    for (const char* key : {"dim", "structure", "J"}) {
      if (!doc_.contains(key)) fail(key, "missing");
    }
    const int dim = integer(doc_.at("dim"), "dim");
    if (dim <= 0 || dim % 2 != 0 || dim > 16) fail("dim", "expected an even dimension in 2..16");
    const FrameTag frame(string_or("frame", "e"));

    const json& st = doc_.at("structure");
    if (!st.is_array()) fail("structure", "expected a list of [i, j, k, value]");
    std::vector<StructureConstant> constants;
    for (std::size_t n = 0; n < st.size(); ++n) {
      const std::string f = "structure[" + std::to_string(n) + "]";
      const json& e = st[n];
      if (!e.is_array() || e.size() != 4) fail(f, "expected [i, j, k, value]");
      constants.push_back({index(e[0], f + "[0]", dim), index(e[1], f + "[1]", dim),
                           index(e[2], f + "[2]", dim), number(e[3], f + "[3]")});
      if (constants.back().i == constants.back().j) fail(f, "i and j must differ");
    }
    std::vector<std::string> labels = this->labels("labels", dim);
    InvariantAlgebra alg(dim, constants, frame, labels);
    AlmostComplexStructure j(matrix("J", dim), frame);

    std::optional<MetricData> metric;
    const bool has_g = doc_.contains("metric");
    const bool has_w = doc_.contains("symplectic");
    if (has_g == has_w) fail("metric", "give exactly one of 'metric' and 'symplectic'");
    if (has_g) {
      metric = MetricData::from_metric(matrix("metric", dim), j);
    } else {
      const json& w = doc_.at("symplectic");
      if (!w.is_array()) fail("symplectic", "expected a list of [i, j, value]");
      InvariantForm omega(dim, 2, frame);
      for (std::size_t n = 0; n < w.size(); ++n) {
        const std::string f = "symplectic[" + std::to_string(n) + "]";
        const json& e = w[n];
        if (!e.is_array() || e.size() != 3) fail(f, "expected [i, j, value]");
        const int a = index(e[0], f + "[0]", dim);
        const int b = index(e[1], f + "[1]", dim);
        if (a == b) fail(f, "i and j must differ");
        omega += number(e[2], f + "[2]") * InvariantForm::monomial(dim, {a, b}, frame);
      }
      metric = MetricData::from_symplectic(omega.normalized(), j);
    }

    std::optional<FrameChange> fc;
    std::vector<std::string> onb_labels;
    if (doc_.contains("frame_change")) {
      const FrameTag to(string_or("orthonormal_frame", frame.name + "'"));
      fc = FrameChange(matrix("frame_change", dim), frame, to);
      onb_labels = this->labels("orthonormal_labels", dim);
    }
    std::optional<double> a;
    if (const json* v = parameter("a")) a = number(*v, "a");
    AlmostHermitianSpec spec{string_or("name", "spec"), std::move(alg), std::move(j),
                             std::move(*metric),          fc,           onb_labels,
                             FamilyKind::generic,         a,            std::nullopt};
    return spec;
  }

  AlmostHermitianSpec read() const {
    if (!doc_.is_object()) throw LoadError(source_ + ": expected a JSON object");
    AlmostHermitianSpec spec = [&] {
      if (doc_.contains("family")) {
        if (!doc_.at("family").is_string()) fail("family", "expected a string");
        return family();
      }
      return generic();
    }();
    if (doc_.contains("name") && doc_.at("name").is_string()) {
      spec.name = doc_.at("name").get<std::string>();
    }
    validate_spec(spec);
    return spec;
  }

 private:
  const json& doc_;
  std::string source_;
};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

AlmostHermitianSpec parse_spec(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Keep only the reason from the library message; the location is ours.
    std::string reason = e.what();
    if (const auto at = reason.find(": ", reason.find("parse error")); at != std::string::npos) {
      reason = reason.substr(at + 2);
    }
    throw LoadError(source + ": parse error at " + line_column(text, e.byte) + ": " + reason);
  }
  try {
    return SpecReader(doc, source).read();
  } catch (const LoadError&) {
    throw;
  } catch (const ValidationError& e) {
    std::ostringstream os;
    os << source << ": invalid spec: " << e.what() << " (residual " << e.residual() << ")";
    throw LoadError(os.str(), e.residual());
  } catch (const json::exception& e) {
    throw LoadError(source + ": " + e.what());
  } catch (const Error& e) {
    throw LoadError(source + ": invalid spec: " + e.what());
  }
}

AlmostHermitianSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path.string());
}

}  // namespace akgeo
