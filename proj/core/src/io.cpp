#include "recipro/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "recipro/errors.hpp"

namespace recipro::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

Rational rational_of(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return parse_rational(v.dump());
  if (v.is_number_float()) return rational_from_decimal_double(v.get<double>());
  throw ValidationError("expected a number or a \"num/den\" string, got " + v.dump());
}

double double_of(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw ValidationError("expected a number, got " + v.dump());
}

std::vector<double> doubles_of(const json& v) {
  if (!v.is_array()) throw ValidationError("expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(double_of(e));
  return out;
}

// Infinities and NaN have no JSON number form.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ZeroMeanDiscreteDist dist_of(const json& doc) {
  const json& atoms = require(doc, "atoms");
  if (!atoms.is_array() || atoms.empty()) throw ValidationError("'atoms' must be a nonempty array");
  std::vector<Atom> raw;
  for (const auto& a : atoms) raw.push_back(Atom{rational_of(require(a, "x")), rational_of(require(a, "p"))});
  return center(raw);
}

ZeroMeanDiscreteDist law_of(const json& v, const std::filesystem::path& base_dir) {
  if (v.is_string()) {
    const std::filesystem::path p(v.get<std::string>());
    return parse_dist(read_file(p.is_absolute() ? p : base_dir / p));
  }
  return dist_of(v);
}

VerifyMode mode_of(const std::string& s) {
  if (s == "auto" || s == "automatic") return VerifyMode::automatic;
  if (s == "exact") return VerifyMode::exact;
  if (s == "monte-carlo" || s == "mc") return VerifyMode::monte_carlo;
  throw ValidationError("unknown verification mode '" + s + "'");
}

Grid grid_of(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() != "support") throw ValidationError("grid must be an array or \"support\"");
    return Grid::support_points();
  }
  return Grid::at(doubles_of(v));
}

}  // namespace

std::string_view version() {
#ifdef RECIPRO_VERSION
  return RECIPRO_VERSION;
#else
  return "unknown";
#endif
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ZeroMeanDiscreteDist parse_dist(std::string_view json_text) { return dist_of(parse_json(json_text)); }

std::string dist_to_json(const ZeroMeanDiscreteDist& dist) {
  ordered_json atoms = ordered_json::array();
  for (const auto& a : dist.atoms()) atoms.push_back({{"x", to_string(a.value)}, {"p", to_string(a.weight)}});
  return ordered_json{{"atoms", atoms}}.dump();
}

std::vector<Rational> parse_sample_csv(std::string_view text) {
  std::vector<Rational> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (line.empty()) continue;
    try {
      out.push_back(parse_rational(line));
    } catch (const ValidationError&) {
      if (out.empty() && line_no == 1) continue;  // header
      throw ValidationError("malformed CSV value on line " + std::to_string(line_no) + ": '" + std::string(line) +
                            "'");
    }
  }
  if (out.empty()) throw ValidationError("sample is empty");
  return out;
}

std::string mixture_to_json(const MixtureDecomposition& mix) {
  ordered_json comps = ordered_json::array();
  for (const auto& c : mix.components()) {
    comps.push_back({{"v", to_string(c.v)},
                     {"weight", to_string(c.weight)},
                     {"c", to_string(c.component.c())},
                     {"d", to_string(c.component.d())},
                     {"p_c", to_string(c.component.p_c())},
                     {"p_d", to_string(c.component.p_d())}});
  }
  return ordered_json{{"index", std::string(to_string(mix.index()))}, {"components", comps}}.dump();
}

MixtureDecomposition parse_mixture(std::string_view json_text) {
  json doc = parse_json(json_text);
  // Accept a wrapped CLI output as well as the bare mixture.
  if (doc.is_object() && doc.contains("result")) doc = doc.at("result");
  const std::string index = require(doc, "index").get<std::string>();
  MixtureIndex idx;
  if (index == "W") {
    idx = MixtureIndex::W;
  } else if (index == "Y") {
    idx = MixtureIndex::Y;
  } else {
    throw ValidationError("mixture index must be W or Y");
  }
  std::vector<MixtureComponent> comps;
  for (const auto& c : require(doc, "components")) {
    comps.push_back(MixtureComponent{rational_of(require(c, "v")), rational_of(require(c, "weight")),
                                     TwoPointZeroMeanDist(rational_of(require(c, "c")), rational_of(require(c, "d")))});
  }
  return MixtureDecomposition(idx, std::move(comps));
}

std::string test_result_to_json(const TestResult& r) {
  ordered_json j{{"method", std::string(to_string(r.method))},
                 {"n", r.n},
                 {"theta", number(r.theta)},
                 {"statistic", number(r.statistic)},
                 {"bound", number(r.p_value_bound)},
                 {"alpha", r.alpha},
                 {"decision", r.reject ? "reject" : "retain"},
                 {"out_of_domain", r.out_of_domain},
                 {"seed", r.seed}};
  if (r.method == TestMethod::bernoulli_lc) j["lambda"] = r.lambda;
  return j.dump();
}

std::string interval_to_json(const ConfidenceInterval& ci) {
  return ordered_json{{"method", std::string(to_string(ci.method))},
                      {"alpha", ci.alpha},
                      {"lower", number(ci.lower)},
                      {"upper", number(ci.upper)},
                      {"monotone_verified", ci.monotone_verified},
                      {"seed", ci.seed}}
      .dump();
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const auto& r : reports) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"bound", row.bound},
                      {"point", number(row.point)},
                      {"lhs", number(row.lhs)},
                      {"stderr", number(row.stderr_)},
                      {"rhs", number(row.rhs)},
                      {"margin", number(row.margin)},
                      {"pass", row.pass}});
    }
    list.push_back({{"id", r.id},
                    {"inequality", r.inequality},
                    {"statistic", r.statistic},
                    {"mode", r.mode},
                    {"seed", r.seed},
                    {"N", r.replications},
                    {"pass", r.pass},
                    {"rows", rows}});
    all = all && r.pass;
  }
  return ordered_json{{"pass", all}, {"reports", list}}.dump();
}

std::vector<CheckSpec> parse_verify_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  const json doc = parse_json(json_text);
  const json& checks = require(doc, "checks");
  if (!checks.is_array()) throw ValidationError("'checks' must be an array");
  std::vector<CheckSpec> out;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const json& c = checks[k];
    CheckSpec spec;
    spec.id = c.value("id", "check-" + std::to_string(k));
    const std::string inequality = require(c, "inequality").get<std::string>();
    if (c.contains("N")) spec.replications = c.at("N").get<std::size_t>();
    if (c.contains("mode")) spec.mode = mode_of(c.at("mode").get<std::string>());

    if (inequality != "rademacher") {
      if (c.contains("dists")) {
        for (const auto& d : c.at("dists")) spec.dists.push_back(law_of(d, base_dir));
      } else {
        const ZeroMeanDiscreteDist d = law_of(require(c, "dist"), base_dir);
        const std::size_t n = c.value("n", std::size_t{1});
        if (n == 0) throw ValidationError("'n' must be positive");
        spec.dists.assign(n, d);
      }
      if (spec.dists.empty()) throw ValidationError("check '" + spec.id + "' has no laws");
    }

    if (inequality == "tail") {
      spec.kind = CheckSpec::Kind::tail;
      spec.bound.kind = parse_bound_kind(c.value("bound", std::string("normal-c5")));
      spec.grid = grid_of(require(c, "x_grid"));
      if (spec.bound.kind == BoundKind::bernoulli_lc) {
        spec.kind = CheckSpec::Kind::sy_tail;
        spec.p = double_of(require(c, "p"));
        if (c.contains("lambda")) spec.lambda = double_of(c.at("lambda"));
      }
    } else if (inequality == "moment") {
      spec.kind = CheckSpec::Kind::moment;
      spec.alpha = c.value("alpha", 5);
      spec.grid = Grid::at(doubles_of(require(c, "t_grid")));
    } else if (inequality == "sy-tail") {
      spec.kind = CheckSpec::Kind::sy_tail;
      spec.p = double_of(require(c, "p"));
      if (c.contains("lambda")) spec.lambda = double_of(c.at("lambda"));
      spec.grid = grid_of(require(c, "x_grid"));
    } else if (inequality == "rademacher") {
      spec.kind = CheckSpec::Kind::rademacher;
      if (c.contains("uniform")) {
        const std::size_t n = c.at("uniform").get<std::size_t>();
        if (n == 0) throw ValidationError("'uniform' must be positive");
        spec.coefficients.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
      } else {
        spec.coefficients = doubles_of(require(c, "a"));
      }
      spec.grid = c.contains("x_grid") ? grid_of(c.at("x_grid")) : Grid::support_points();
    } else {
      throw ValidationError("unknown inequality '" + inequality + "'");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::string wrap_output(const RunManifest& manifest, std::string_view result_json) {
  ordered_json flags = ordered_json::object();
  for (const auto& [k, v] : manifest.flags) flags[k] = v;
  ordered_json digests = ordered_json::object();
  for (const auto& [k, v] : manifest.input_digests) digests[k] = v;
  ordered_json m{{"command", manifest.command}, {"flags", flags}};
  if (manifest.seed) {
    m["seed"] = *manifest.seed;
  } else {
    m["seed"] = nullptr;
  }
  m["input_digests"] = digests;
  m["version"] = std::string(version());
  ordered_json out{{"schema_version", kSchemaVersion},
                   {"manifest", m},
                   {"result", ordered_json::parse(result_json)}};
  return out.dump(2) + "\n";
}

}  // namespace recipro::io
