#ifndef KNWZNW_JSON_IO_HPP
#define KNWZNW_JSON_IO_HPP

#include "kz.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace knwznw {

using Json = nlohmann::json;

/// Malformed or inconsistent run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Json to_json(const Rat& r) { return r.str(); }

/// Accepts "p/q" strings and JSON integers.
inline Rat rat_from_json(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
  } catch (const DomainError& e) {
    throw ConfigError(field + ": " + e.what());
  }
  throw ConfigError(field + ": expected a rational as \"p/q\" or an integer");
}

inline Rat parse_rat_flag(const std::string& s, const std::string& flag) {
  try {
    return Rat::parse(s);
  } catch (const DomainError& e) {
    throw ConfigError("--" + flag + ": " + e.what());
  }
}

inline int parse_int_flag(const std::string& s, const std::string& flag) {
  const Rat r = parse_rat_flag(s, flag);
  if (!r.is_integer() || !r.num().fits_sint_p()) throw ConfigError("--" + flag + ": expected an integer, got " + s);
  return static_cast<int>(r.num().get_si());
}

inline Json to_json(const Poly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

inline Json to_json(const RationalFunction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

inline Poly poly_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field + ": expected an array of coefficients, constant term first");
  std::vector<Rat> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return Poly(std::move(c));
}

inline RationalFunction rational_function_from_json(const Json& j, const std::string& field) {
  if (!j.is_object() || !j.contains("num")) throw ConfigError(field + ": expected {\"num\": [...], \"den\": [...]}");
  Poly num = poly_from_json(j["num"], field + ".num");
  Poly den = j.contains("den") ? poly_from_json(j["den"], field + ".den") : Poly(Rat(1));
  if (den.is_zero()) throw ConfigError(field + ": zero denominator");
  return RationalFunction(std::move(num), std::move(den));
}

/// Terms as [n, p, "c"], in basis order.
inline Json to_json(const GradedElement& g) {
  Json a = Json::array();
  for (const auto& [k, c] : g.terms()) a.push_back({k.first, k.second, to_json(c)});
  return a;
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Loop part as [label, n, p, "c"] plus the central coefficient.
inline Json to_json(const AffineElement& x, const GaugeAlgebra& g) {
  Json loop = Json::array();
  for (const auto& [k, v] : x.loop_part())
    for (int a = 0; a < g.dim(); ++a)
      if (!v[static_cast<std::size_t>(a)].is_zero())
        loop.push_back({g.labels()[static_cast<std::size_t>(a)], k.first, k.second, to_json(v[static_cast<std::size_t>(a)])});
  return {{"loop", loop}, {"central", to_json(x.central())}};
}

inline Json to_json(const ModuleVector& v, const GaugeAlgebra& g) {
  Json a = Json::array();
  for (const auto& [w, c] : v.terms()) {
    Json modes = Json::array();
    for (const auto& m : w.string) modes.push_back({g.labels()[static_cast<std::size_t>(m.a)], m.n, m.p});
    a.push_back({{"modes", modes}, {"vacuum", w.vacuum}, {"coeff", to_json(c)}});
  }
  return a;
}

/// Everything a subcommand can read from the configuration file.
struct RunConfig {
  std::vector<Rat> points{Rat(0)};
  LieKind lie = LieKind::sl2;
  Rat level{1};
  std::vector<Rat> weights;
  ModuleKind module = ModuleKind::weyl;
  int depth = 4;
  std::optional<int> width;
  DegreeWindow window{-5, 5};
  std::optional<RationalFunction> connection;

  Config config() const { return Config(points); }
  ModuleSpec module_spec() const {
    std::vector<Rat> w = weights;
    if (w.empty()) w.assign(points.size(), Rat(0));
    return {module, w, level, depth, width};
  }
};

inline RunConfig parse_run_config(const Json& j) {
  if (!j.is_object()) throw ConfigError("configuration must be a JSON object");
  static const std::vector<std::string> known{"points", "lie_algebra", "level", "weights", "module", "degree_window",
                                              "depth", "connection_R"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ConfigError("unknown configuration key: " + k);
  RunConfig rc;
  auto int_field = [](const Json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ConfigError(field + ": expected an integer");
    return v.get<int>();
  };
  auto weight_list = [](const Json& v, const std::string& field) {
    if (!v.is_array()) throw ConfigError(field + ": expected an array");
    std::vector<Rat> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rat_from_json(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
  };
  if (j.contains("points")) {
    rc.points = weight_list(j["points"], "points");
    if (rc.points.empty()) throw ConfigError("points: at least one marked point is required");
    for (std::size_t a = 0; a < rc.points.size(); ++a)
      for (std::size_t b = a + 1; b < rc.points.size(); ++b)
        if (rc.points[a] == rc.points[b]) throw ConfigError("points: marked points must be distinct, " + rc.points[a].str() + " repeats");
  }
  try {
    if (j.contains("lie_algebra")) {
      if (!j["lie_algebra"].is_string()) throw ConfigError("lie_algebra: expected a string");
      rc.lie = parse_lie_kind(j["lie_algebra"].get<std::string>());
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("lie_algebra: ") + e.what());
  }
  if (j.contains("level")) rc.level = rat_from_json(j["level"], "level");
  if (j.contains("weights")) rc.weights = weight_list(j["weights"], "weights");
  if (j.contains("depth")) rc.depth = int_field(j["depth"], "depth");
  if (j.contains("module")) {
    const Json& m = j["module"];
    if (!m.is_object()) throw ConfigError("module: expected an object");
    for (const auto& [k, v] : m.items())
      if (k != "kind" && k != "weights" && k != "level" && k != "depth" && k != "width") throw ConfigError("unknown module key: " + k);
    if (m.contains("kind")) {
      if (!m["kind"].is_string()) throw ConfigError("module.kind: expected a string");
      try {
        rc.module = parse_module_kind(m["kind"].get<std::string>());
      } catch (const DomainError& e) {
        throw ConfigError(std::string("module.kind: ") + e.what());
      }
    }
    if (m.contains("weights")) rc.weights = weight_list(m["weights"], "module.weights");
    if (m.contains("level")) rc.level = rat_from_json(m["level"], "module.level");
    if (m.contains("depth")) rc.depth = int_field(m["depth"], "module.depth");
    if (m.contains("width")) rc.width = int_field(m["width"], "module.width");
  } else if (rc.lie == LieKind::abelian1) {
    rc.module = ModuleKind::fock;
  }
  if (rc.depth < 0) throw ConfigError("depth: must be nonnegative");
  if (!rc.weights.empty() && rc.weights.size() != rc.points.size())
    throw ConfigError("weights: need one weight per marked point (" + std::to_string(rc.points.size()) + ")");
  if (j.contains("degree_window")) {
    const Json& w = j["degree_window"];
    if (!w.is_array() || w.size() != 2) throw ConfigError("degree_window: expected [min, max]");
    rc.window = {int_field(w[0], "degree_window[0]"), int_field(w[1], "degree_window[1]")};
    if (rc.window.lo > rc.window.hi) throw ConfigError("degree_window: min exceeds max");
  }
  if (j.contains("connection_R") && !j["connection_R"].is_null())
    rc.connection = rational_function_from_json(j["connection_R"], "connection_R");
  return rc;
}

}  // namespace knwznw

#endif  // KNWZNW_JSON_IO_HPP
