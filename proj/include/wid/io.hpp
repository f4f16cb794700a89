#pragma once

// JSON experiment configs, JSON/CSV verification reports and raw sample
// formatting for the command-line front end.
//
// Config document:
//   {
//     "group": "torus" | "padic" | "solenoid",
//     "p": 3,                        // required unless torus
//     "depth": 3,                    // required unless torus
//     "quadruplet": {
//       "H": "trivial" | "full" | {"kind": "cyclic", "r": 3} | {"kind": "lambda", "r": 1},
//       "a": <element>,              // default: identity
//       "b": 0.5,                    // default: 0
//       "eta": [{"point": <element>, "mass": 0.7}, ...]
//     },
//     "samples": 100000, "seed": 1, "tolerance_c": 4,
//     "characters": "default" | [1, -2, ...] | [[d, l], ...]
//   }
// Elements: torus -> angle; padic -> digit list, least significant first,
// zero-padded to depth+1; solenoid -> angle of the deepest coordinate.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wid/selftest.hpp"
#include "wid/verification.hpp"

namespace wid::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

using AnyQuadruplet = std::variant<TorusQuadruplet, PadicQuadruplet, SolenoidQuadruplet>;
using AnyCharacters =
    std::variant<std::vector<TorusCharacter>, std::vector<PadicCharacter>, std::vector<SolenoidCharacter>>;

struct ExperimentConfig {
  AnyQuadruplet quadruplet;
  AnyCharacters characters;
  SuiteOptions options;
};

/// Command-line values that take precedence over the document.
struct Overrides {
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<double> tolerance_c;
};

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(field, "missing required field");
  return obj.at(key);
}

inline std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<std::int64_t>();
}

inline double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field, "expected a finite number");
  return x;
}

inline TorusPoint parse_element(const TorusGroup&, const json& v, const std::string& field) {
  return torus_from_angle(as_real(v, field));
}

inline PadicInt parse_element(const PadicGroup& g, const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected a digit list");
  if (v.size() > g.digit_count()) {
    throw ConfigError(field, "has " + std::to_string(v.size()) + " digits but depth " + std::to_string(g.depth) +
                                 " keeps only " + std::to_string(g.digit_count()));
  }
  std::vector<int> digits(g.digit_count(), 0);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const std::string f = field + "[" + std::to_string(j) + "]";
    const std::int64_t d = as_int(v[j], f);
    if (d < 0 || d >= g.p.value()) throw ConfigError(f, "digit outside {0,...,p-1}");
    digits[j] = static_cast<int>(d);
  }
  return PadicInt(g.p, std::move(digits));
}

inline SolenoidPoint parse_element(const SolenoidGroup& g, const json& v, const std::string& field) {
  return SolenoidPoint(g.p, g.depth, as_real(v, field));
}

inline std::string subgroup_kind(const json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object()) {
    const json& k = require(v, "kind", field + ".kind");
    if (!k.is_string()) throw ConfigError(field + ".kind", "expected a string");
    return k.get<std::string>();
  }
  throw ConfigError(field, "expected a string or an object with \"kind\"");
}

inline TorusSubgroup parse_subgroup(const TorusGroup&, const json& v, const std::string& field) {
  const std::string kind = subgroup_kind(v, field);
  if (kind == "trivial") return TorusSubgroup::trivial();
  if (kind == "full") return TorusSubgroup::full();
  if (kind == "cyclic") {
    const std::int64_t r = as_int(require(v, "r", field + ".r"), field + ".r");
    if (r < 1) throw ConfigError(field + ".r", "cyclic order must be >= 1");
    return TorusSubgroup::cyclic(r);
  }
  throw ConfigError(field, "torus subgroups are \"trivial\", \"full\" or \"cyclic\"");
}

inline PadicSubgroup parse_subgroup(const PadicGroup&, const json& v, const std::string& field) {
  const std::string kind = subgroup_kind(v, field);
  if (kind == "trivial") return PadicSubgroup::trivial();
  if (kind == "full") return PadicSubgroup::lambda(0);
  if (kind == "lambda") {
    const std::int64_t r = as_int(require(v, "r", field + ".r"), field + ".r");
    if (r < 0 || r > 1000) throw ConfigError(field + ".r", "Lambda_r index must lie in 0..1000");
    return PadicSubgroup::lambda(static_cast<int>(r));
  }
  throw ConfigError(field, "p-adic subgroups are \"trivial\", \"full\" or \"lambda\"");
}

inline SolenoidSubgroup parse_subgroup(const SolenoidGroup&, const json& v, const std::string& field) {
  const std::string kind = subgroup_kind(v, field);
  if (kind == "trivial") return SolenoidSubgroup::trivial();
  if (kind == "full") return SolenoidSubgroup::full();
  throw ConfigError(field, "solenoid subgroups are \"trivial\" or \"full\"");
}

template <class G>
Quadruplet<G> parse_quadruplet(const G& g, const json& v, const std::string& field) {
  if (!v.is_object()) throw ConfigError(field, "expected an object");
  Quadruplet<G> q = Quadruplet<G>::dirac_identity(g);
  if (v.contains("H")) q.H = parse_subgroup(g, v.at("H"), field + ".H");
  if (v.contains("a")) q.a = parse_element(g, v.at("a"), field + ".a");
  if (v.contains("b")) q.b = as_real(v.at("b"), field + ".b");
  if (q.b < 0.0) throw ConfigError(field + ".b", "must be >= 0");
  if (v.contains("eta")) {
    const json& eta = v.at("eta");
    if (!eta.is_array()) throw ConfigError(field + ".eta", "expected a list of atoms");
    std::vector<LevyAtom<G>> atoms;
    for (std::size_t k = 0; k < eta.size(); ++k) {
      const std::string f = field + ".eta[" + std::to_string(k) + "]";
      auto point = parse_element(g, require(eta[k], "point", f + ".point"), f + ".point");
      const double mass = as_real(require(eta[k], "mass", f + ".mass"), f + ".mass");
      if (mass <= 0.0) throw ConfigError(f + ".mass", "must be positive");
      if (g.is_identity(point)) {
        throw ConfigError(f + ".point", "Levy measure must satisfy η({e})=0: atom at the identity");
      }
      atoms.push_back({std::move(point), mass});
    }
    q.eta = LevyMeasure<G>(std::move(atoms));
  }
  try {
    validate_quadruplet(q);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
  return q;
}

inline std::vector<TorusCharacter> parse_characters(const TorusGroup&, const json& v, const std::string& field) {
  std::vector<TorusCharacter> out;
  for (std::size_t k = 0; k < v.size(); ++k) out.push_back({as_int(v[k], field + "[" + std::to_string(k) + "]")});
  return out;
}

inline std::pair<int, std::int64_t> depth_index_pair(const json& v, const std::string& field, int depth) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(field, "expected a [d, l] pair");
  const std::int64_t d = as_int(v[0], field + "[0]");
  if (d < 0 || d > depth) throw ConfigError(field + "[0]", "character depth must lie in 0..depth");
  return {static_cast<int>(d), as_int(v[1], field + "[1]")};
}

inline std::vector<PadicCharacter> parse_characters(const PadicGroup& g, const json& v, const std::string& field) {
  std::vector<PadicCharacter> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    const auto [d, l] = depth_index_pair(v[k], f, g.depth);
    if (l < 0 || l >= checked_pow(g.p.value(), d + 1)) throw ConfigError(f + "[1]", "index must lie in [0, p^{d+1})");
    out.push_back({d, l});
  }
  return out;
}

inline std::vector<SolenoidCharacter> parse_characters(const SolenoidGroup& g, const json& v,
                                                       const std::string& field) {
  std::vector<SolenoidCharacter> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto [d, l] = depth_index_pair(v[k], field + "[" + std::to_string(k) + "]", g.depth);
    out.push_back({d, l});
  }
  return out;
}

template <class G>
void fill(ExperimentConfig& cfg, const G& g, const json& doc) {
  cfg.quadruplet = parse_quadruplet(g, require(doc, "quadruplet", "quadruplet"), "quadruplet");
  if (!doc.contains("characters") || doc.at("characters") == "default") {
    cfg.characters = default_characters(g);
  } else if (doc.at("characters").is_array()) {
    cfg.characters = parse_characters(g, doc.at("characters"), "characters");
  } else {
    throw ConfigError("characters", "expected \"default\" or a list");
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& doc, const Overrides& over = {}) {
  using namespace detail;
  if (!doc.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  const json& group = require(doc, "group", "group");
  if (!group.is_string()) throw ConfigError("group", "expected a string");
  const std::string name = group.get<std::string>();

  ExperimentConfig cfg{TorusQuadruplet::dirac_identity(TorusGroup{}), std::vector<TorusCharacter>{}, {}};
  if (doc.contains("samples")) {
    const std::int64_t n = as_int(doc.at("samples"), "samples");
    if (n < 1) throw ConfigError("samples", "must be >= 1");
    cfg.options.samples = static_cast<std::size_t>(n);
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned() && !(doc.at("seed").is_number_integer() && doc.at("seed") >= 0)) {
      throw ConfigError("seed", "expected a nonnegative integer");
    }
    cfg.options.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("tolerance_c")) cfg.options.tolerance_c = as_real(doc.at("tolerance_c"), "tolerance_c");
  if (over.samples) cfg.options.samples = *over.samples;
  if (over.seed) cfg.options.seed = *over.seed;
  if (over.tolerance_c) cfg.options.tolerance_c = *over.tolerance_c;
  if (cfg.options.samples < 1) throw ConfigError("samples", "must be >= 1");
  if (!(cfg.options.tolerance_c > 0.0)) throw ConfigError("tolerance_c", "must be positive");

  if (name == "torus") {
    fill(cfg, TorusGroup{}, doc);
    return cfg;
  }
  if (name != "padic" && name != "solenoid") {
    throw ConfigError("group", "expected \"torus\", \"padic\" or \"solenoid\", got \"" + name + "\"");
  }
  const std::int64_t pv = as_int(require(doc, "p", "p"), "p");
  std::optional<Prime> p;
  try {
    p.emplace(pv);
  } catch (const Error& e) {
    throw ConfigError("p", e.what());
  }
  std::int64_t depth = 0;
  if (over.depth) {
    depth = *over.depth;
  } else {
    depth = as_int(require(doc, "depth", "depth"), "depth");
  }
  if (depth < 0 || depth > 62) throw ConfigError("depth", "must lie in 0..62");
  try {
    if (name == "padic") {
      checked_pow(*p, static_cast<int>(depth) + 1);
      fill(cfg, PadicGroup{*p, static_cast<int>(depth)}, doc);
    } else {
      checked_pow(*p, static_cast<int>(depth));
      fill(cfg, SolenoidGroup{*p, static_cast<int>(depth)}, doc);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("depth", e.what());
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path, const Overrides& over = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc, over);
}

// ---------------------------------------------------------------------------
// Serialization of quadruplets (same schema as the config)

inline json element_to_json(const TorusPoint& x) { return x.angle; }
inline json element_to_json(const PadicInt& x) { return x.digits(); }
inline json element_to_json(const SolenoidPoint& x) { return x.deep_angle(); }

inline json subgroup_to_json(const TorusSubgroup& H) {
  if (H.kind == TorusSubgroup::Kind::Full) return "full";
  if (H.r == 1) return "trivial";
  return {{"kind", "cyclic"}, {"r", H.r}};
}
inline json subgroup_to_json(const PadicSubgroup& H) {
  if (!H.r) return "trivial";
  return {{"kind", "lambda"}, {"r", *H.r}};
}
inline json subgroup_to_json(const SolenoidSubgroup& H) { return H.is_trivial() ? "trivial" : "full"; }

template <class G>
json quadruplet_to_json(const Quadruplet<G>& q) {
  json eta = json::array();
  for (const auto& a : q.eta.atoms()) eta.push_back({{"point", element_to_json(a.point)}, {"mass", a.mass}});
  return {{"H", subgroup_to_json(q.H)}, {"a", element_to_json(q.a)}, {"b", q.b}, {"eta", eta}};
}

/// Config document equivalent to `cfg` (characters listed explicitly).
inline json config_to_json(const ExperimentConfig& cfg) {
  json doc;
  std::visit(
      [&](const auto& q) {
        using G = std::decay_t<decltype(q.group)>;
        doc["group"] = G::name;
        if constexpr (!std::is_same_v<G, TorusGroup>) {
          doc["p"] = q.group.p.value();
          doc["depth"] = q.group.depth;
        }
        doc["quadruplet"] = quadruplet_to_json(q);
      },
      cfg.quadruplet);
  json chars = json::array();
  std::visit(
      [&](const auto& cs) {
        for (const auto& c : cs) {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, TorusCharacter>) {
            chars.push_back(c.ell);
          } else {
            chars.push_back({c.depth, c.ell});
          }
        }
      },
      cfg.characters);
  doc["characters"] = chars;
  doc["samples"] = cfg.options.samples;
  doc["seed"] = cfg.options.seed;
  doc["tolerance_c"] = cfg.options.tolerance_c;
  return doc;
}

// ---------------------------------------------------------------------------
// Reports

inline json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }
inline Complex complex_from_json(const json& v) { return {v.at("re").get<double>(), v.at("im").get<double>()}; }

inline json report_to_json(const VerificationReport& r, bool include_timing = false) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"character", row.character},
                    {"theory", complex_to_json(row.theory)},
                    {"empirical", complex_to_json(row.empirical)},
                    {"abs_err", row.abs_error},
                    {"tol", row.tolerance},
                    {"pass", row.pass}});
  }
  json out = {{"schema_version", kSchemaVersion},
              {"suite", r.suite},
              {"group", r.group},
              {"p", r.p},
              {"depth", r.depth},
              {"samples", r.samples},
              {"seed", r.seed},
              {"tolerance_c", r.tolerance_c},
              {"rows", rows},
              {"overall_pass", r.overall_pass}};
  if (include_timing) out["wall_time_s"] = r.wall_time_s;
  return out;
}

inline VerificationReport report_from_json(const json& v) {
  if (v.at("schema_version").get<int>() != kSchemaVersion) throw Error("unsupported report schema version");
  VerificationReport r;
  r.suite = v.at("suite").get<std::string>();
  r.group = v.at("group").get<std::string>();
  r.p = v.at("p").get<std::int64_t>();
  r.depth = v.at("depth").get<int>();
  r.samples = v.at("samples").get<std::size_t>();
  r.seed = v.at("seed").get<std::uint64_t>();
  r.tolerance_c = v.at("tolerance_c").get<double>();
  for (const auto& row : v.at("rows")) {
    r.rows.push_back({row.at("character").get<std::string>(), complex_from_json(row.at("theory")),
                      complex_from_json(row.at("empirical")), row.at("abs_err").get<double>(),
                      row.at("tol").get<double>(), row.at("pass").get<bool>()});
  }
  r.overall_pass = v.at("overall_pass").get<bool>();
  if (v.contains("wall_time_s")) r.wall_time_s = v.at("wall_time_s").get<double>();
  return r;
}

inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kCsvHeader = "character,re_theory,im_theory,re_emp,im_emp,abs_err,tol,pass";

/// RFC 4180 CSV; the character column is quoted since "(d,l)" contains a comma.
inline std::string report_to_csv(const VerificationReport& r) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& row : r.rows) {
    out << '"' << row.character << "\"," << format_real(row.theory.real()) << ',' << format_real(row.theory.imag())
        << ',' << format_real(row.empirical.real()) << ',' << format_real(row.empirical.imag()) << ','
        << format_real(row.abs_error) << ',' << format_real(row.tolerance) << ',' << (row.pass ? "true" : "false")
        << "\n";
  }
  return out.str();
}

inline json selftest_to_json(const SelftestResult& r, std::uint64_t seed, std::size_t samples) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json reports = json::array();
  for (const auto& rep : r.reports) reports.push_back(report_to_json(rep));
  return {{"schema_version", kSchemaVersion}, {"suite", "selftest"}, {"seed", seed},   {"samples", samples},
          {"checks", checks},                 {"reports", reports},  {"overall_pass", r.pass()}};
}

// ---------------------------------------------------------------------------
// Raw samples

enum class SampleFormat { Csv, Jsonl };

inline std::string format_sample(const TorusPoint& x, SampleFormat f) {
  if (f == SampleFormat::Csv) return format_real(x.angle);
  return json{{"angle", x.angle}}.dump();
}

/// CSV: digits least significant first, concatenated when p <= 10 and
/// separated by ':' otherwise.
inline std::string format_sample(const PadicInt& x, SampleFormat f) {
  if (f == SampleFormat::Jsonl) return json{{"digits", x.digits()}}.dump();
  std::string s;
  const bool single = x.prime().value() <= 10;
  for (std::size_t j = 0; j < x.digit_count(); ++j) {
    if (!single && j > 0) s += ':';
    s += std::to_string(x.digit(j));
  }
  return s;
}

/// CSV: deep angle, then the angles of coordinates 0..D.
inline std::string format_sample(const SolenoidPoint& x, SampleFormat f) {
  std::vector<double> coords;
  for (int j = 0; j <= x.depth(); ++j) coords.push_back(x.coordinate_angle(j));
  if (f == SampleFormat::Jsonl) return json{{"deep_angle", x.deep_angle()}, {"coordinates", coords}}.dump();
  std::string s = format_real(x.deep_angle());
  for (double c : coords) s += "," + format_real(c);
  return s;
}

}  // namespace wid::io
