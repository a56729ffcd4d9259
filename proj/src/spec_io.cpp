#include "hybrid_centers/spec_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hybrid_centers/errors.hpp"

namespace hc {

namespace {

using json = nlohmann::json;

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the last key along a dotted path such as "center1.omega"; 0 if not found.
int line_of_field(const std::string& text, const std::string& path) {
  std::size_t pos = 0;
  std::stringstream ss(path);
  std::string key;
  bool found = false;
  while (std::getline(ss, key, '.')) {
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key[0]))) continue;
    const std::size_t at = text.find('"' + key + '"', pos);
    if (at == std::string::npos) break;
    pos = at;
    found = true;
  }
  return found ? line_of_offset(text, pos) : 0;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& why) const {
    const int line = line_of_field(text_, field);
    std::string where = line > 0 ? "line " + std::to_string(line) + ", " : "";
    throw SpecError(where + "field '" + field + "': " + why);
  }

  const json& member(const json& obj, const std::string& path, const std::string& key) const {
    const std::string field = path.empty() ? key : path + "." + key;
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(field, "missing");
    return *it;
  }

  void only_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) const {
    for (const auto& [k, v] : obj.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
        fail(path.empty() ? k : path + "." + k, "unknown field");
    }
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "must be finite");
    return d;
  }

  int integer(const json& v, const std::string& field, int lo) const {
    if (!v.is_number_integer()) fail(field, "expected an integer");
    const auto i = v.get<long long>();
    if (i < lo || i > 1'000'000'000) fail(field, "out of range");
    return static_cast<int>(i);
  }

  LinearCenter center(const json& obj, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    only_keys(obj, path, {"b", "omega", "delta", "c", "d"});
    const double b = number(member(obj, path, "b"), path + ".b");
    const double omega = number(member(obj, path, "omega"), path + ".omega");
    const double delta = number(member(obj, path, "delta"), path + ".delta");
    const double c = number(member(obj, path, "c"), path + ".c");
    const double d = number(member(obj, path, "d"), path + ".d");
    if (omega == 0.0) fail(path + ".omega", "must be nonzero");
    if (delta != 1.0 && delta != -1.0) fail(path + ".delta", "must be +1 or -1");
    return LinearCenter(b, omega, static_cast<int>(delta), c, d);
  }

  ResetPolynomial reset(const json& obj) const {
    if (!obj.is_object()) fail("reset", "expected an object");
    only_keys(obj, "reset", {"coeffs"});
    const json& arr = member(obj, "reset", "coeffs");
    if (!arr.is_array()) fail("reset.coeffs", "expected an array");
    std::vector<double> coeffs;
    for (std::size_t i = 0; i < arr.size(); ++i)
      coeffs.push_back(number(arr[i], "reset.coeffs." + std::to_string(i)));
    if (coeffs.size() < 2) fail("reset.coeffs", "degree must be at least 1");
    if (coeffs.back() == 0.0) fail("reset.coeffs", "leading coefficient must be nonzero");
    return ResetPolynomial(std::move(coeffs));
  }

  AnalysisSettings analysis(const json& obj) const {
    AnalysisSettings a;
    if (!obj.is_object()) fail("analysis", "expected an object");
    only_keys(obj, "analysis", {"tolerance", "max_iter", "max_period", "max_events", "max_time", "samples", "seed"});
    if (obj.contains("tolerance")) {
      a.tolerance = number(obj["tolerance"], "analysis.tolerance");
      if (*a.tolerance <= 0.0) fail("analysis.tolerance", "must be positive");
    }
    if (obj.contains("max_iter")) a.max_iter = integer(obj["max_iter"], "analysis.max_iter", 1);
    if (obj.contains("max_period")) a.max_period = integer(obj["max_period"], "analysis.max_period", 1);
    if (obj.contains("max_events")) a.max_events = integer(obj["max_events"], "analysis.max_events", 1);
    if (obj.contains("max_time")) {
      a.max_time = number(obj["max_time"], "analysis.max_time");
      if (a.max_time <= 0.0) fail("analysis.max_time", "must be positive");
    }
    if (obj.contains("samples")) a.samples = integer(obj["samples"], "analysis.samples", 0);
    if (obj.contains("seed")) {
      if (!obj["seed"].is_number_unsigned()) fail("analysis.seed", "expected a non-negative integer");
      a.seed = obj["seed"].get<std::uint64_t>();
    }
    return a;
  }

 private:
  const std::string& text_;
};

}  // namespace

SystemSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError("line " + std::to_string(line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0)) +
                    ": malformed JSON (" + e.what() + ")");
  }
  const Reader r(text);
  if (!doc.is_object()) r.fail("<root>", "expected an object");
  r.only_keys(doc, "", {"center1", "center2", "reset", "analysis"});
  SystemSpec spec{HybridSystem{r.center(r.member(doc, "", "center1"), "center1"),
                               r.center(r.member(doc, "", "center2"), "center2"), r.reset(r.member(doc, "", "reset"))},
                  {}};
  if (doc.contains("analysis")) spec.analysis = r.analysis(doc["analysis"]);
  return spec;
}

SystemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

nlohmann::ordered_json center_to_json(const LinearCenter& c) {
  return {{"b", c.b()}, {"omega", c.omega()}, {"delta", c.delta()}, {"c", c.c()}, {"d", c.d()}};
}

nlohmann::ordered_json system_to_json(const HybridSystem& system) {
  nlohmann::ordered_json j;
  j["center1"] = center_to_json(system.center1);
  j["center2"] = center_to_json(system.center2);
  j["reset"] = {{"coeffs", system.reset.coeffs()}};
  return j;
}

nlohmann::ordered_json spec_to_json(const SystemSpec& spec) {
  nlohmann::ordered_json j = system_to_json(spec.system);
  const AnalysisSettings& a = spec.analysis;
  nlohmann::ordered_json an;
  if (a.tolerance) an["tolerance"] = *a.tolerance;
  an["max_iter"] = a.max_iter;
  if (a.max_period) an["max_period"] = *a.max_period;
  an["max_events"] = a.max_events;
  an["max_time"] = a.max_time;
  an["samples"] = a.samples;
  an["seed"] = a.seed;
  j["analysis"] = an;
  return j;
}

}  // namespace hc
