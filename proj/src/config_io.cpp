#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include <json.hpp>

#include "learnsim/io.hpp"

namespace learnsim {
namespace {

using json = nlohmann::json;

// Accumulates "path: message" diagnostics while walking the document.
class Reader {
public:
  void fail(const std::string& path, const std::string& message) {
    problems_.push_back(path + ": " + message);
  }
  std::vector<std::string>& problems() { return problems_; }

  void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed);

  std::optional<double> number(const json& obj, const std::string& path, const char* key,
                               std::optional<double> fallback = std::nullopt);
  std::optional<long long> integer(const json& obj, const std::string& path, const char* key,
                                   std::optional<long long> fallback = std::nullopt);
  std::vector<double> numbers(const json& obj, const std::string& path, const char* key);

private:
  std::vector<std::string> problems_;
};

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::optional<std::string> suggest(std::string_view key, std::initializer_list<const char*> allowed) {
  static const std::map<std::string, std::string, std::less<>> aliases{
      {"beta", "b"}, {"p0", "P0"}, {"tau", "gamma"}, {"r_0", "r0"}, {"stride", "record_stride"},
      {"step", "dt"}, {"integrator", "method"}};
  if (auto it = aliases.find(key); it != aliases.end()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return it->second == a; }) != allowed.end()) {
      return it->second;
    }
  }
  std::optional<std::string> best;
  std::size_t best_distance = 3;
  for (const char* candidate : allowed) {
    const std::size_t d = edit_distance(key, candidate);
    if (d < best_distance) {
      best_distance = d;
      best = candidate;
    }
  }
  return best;
}

void Reader::check_keys(const json& obj, const std::string& path,
                        std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    const bool known = std::find_if(allowed.begin(), allowed.end(),
                                    [&](const char* a) { return key == a; }) != allowed.end();
    if (known) continue;
    std::string message = "unknown key '" + key + "'";
    if (auto hint = suggest(key, allowed)) message += " (did you mean '" + *hint + "'?)";
    fail(path.empty() ? key : path + "." + key, message);
  }
}

std::optional<double> Reader::number(const json& obj, const std::string& path, const char* key,
                                     std::optional<double> fallback) {
  const std::string where = path + "." + key;
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) fail(where, "missing required number");
    return fallback;
  }
  if (!it->is_number()) {
    fail(where, "expected a number");
    return std::nullopt;
  }
  return it->get<double>();
}

std::optional<long long> Reader::integer(const json& obj, const std::string& path, const char* key,
                                         std::optional<long long> fallback) {
  const std::string where = path + "." + key;
  const auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) fail(where, "missing required integer");
    return fallback;
  }
  if (!it->is_number_integer()) {
    fail(where, "expected an integer");
    return std::nullopt;
  }
  return it->get<long long>();
}

std::vector<double> Reader::numbers(const json& obj, const std::string& path, const char* key) {
  const std::string where = path + "." + key;
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(where, "missing required array");
    return {};
  }
  if (!it->is_array()) {
    fail(where, "expected an array of numbers");
    return {};
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < it->size(); ++i) {
    const json& v = (*it)[i];
    if (!v.is_number()) {
      fail(where + "[" + std::to_string(i) + "]", "expected a number");
      continue;
    }
    out.push_back(v.get<double>());
  }
  return out;
}

std::string strip_root(const std::string& path) {
  return path.rfind('.', 0) == 0 ? path.substr(1) : path;
}

// Splits "schedule[2].effort.U" into {"schedule", 2, "effort", "U"}.
using PathToken = std::variant<std::string, std::size_t>;

std::vector<PathToken> split_path(std::string_view path) {
  std::vector<PathToken> tokens;
  std::string current;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const char c = path[i];
    if (c == '.' || c == '[') {
      if (!current.empty()) tokens.emplace_back(std::exchange(current, {}));
      if (c == '[') {
        const auto close = path.find(']', i);
        if (close == std::string_view::npos) break;
        std::size_t index = 0;
        std::from_chars(path.data() + i + 1, path.data() + close, index);
        tokens.emplace_back(index);
        i = close;
      }
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.emplace_back(std::move(current));
  return tokens;
}

// Offset of the next `"key"` used as an object key at or after `from`.
std::size_t find_key(std::string_view text, std::string_view key, std::size_t from) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  for (auto pos = text.find(quoted, from); pos != std::string_view::npos;
       pos = text.find(quoted, pos + 1)) {
    auto after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return pos;
  }
  return std::string_view::npos;
}

std::size_t skip_space(std::string_view text, std::size_t pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return pos;
}

// Offset just past the JSON value starting at `pos`.
std::size_t skip_value(std::string_view text, std::size_t pos) {
  int depth = 0;
  bool in_string = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (in_string) {
      if (c == '\\') {
        ++pos;
      } else if (c == '"') {
        in_string = false;
        if (depth == 0) return pos + 1;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (depth == 0) return pos;
      if (--depth == 0) return pos + 1;
    } else if (c == ',' && depth == 0) {
      return pos;
    }
  }
  return pos;
}

// Offset of element `index` of the array whose value follows the key at `key_pos`.
std::size_t find_element(std::string_view text, std::size_t key_pos, std::size_t index) {
  auto pos = text.find('[', key_pos);
  if (pos == std::string_view::npos) return pos;
  pos = skip_space(text, pos + 1);
  for (std::size_t i = 0; i < index; ++i) {
    pos = skip_space(text, skip_value(text, pos));
    if (pos >= text.size() || text[pos] != ',') return std::string_view::npos;
    pos = skip_space(text, pos + 1);
  }
  return pos < text.size() && text[pos] != ']' ? pos : std::string_view::npos;
}

// 1-based source line of the value a diagnostic path names, 0 if unknown.
std::size_t locate(std::string_view text, std::string_view path) {
  std::size_t pos = 0;
  std::size_t found = std::string_view::npos;
  for (const auto& token : split_path(path)) {
    const auto hit = std::holds_alternative<std::string>(token)
                         ? find_key(text, std::get<std::string>(token), pos)
                         : find_element(text, pos, std::get<std::size_t>(token));
    if (hit == std::string_view::npos) break;
    found = pos = hit;
  }
  if (found == std::string_view::npos) return 0;
  const auto prefix = text.substr(0, found);
  return static_cast<std::size_t>(std::count(prefix.begin(), prefix.end(), '\n')) + 1;
}

std::vector<std::string> anchor(std::string_view text, std::vector<std::string> problems) {
  for (auto& p : problems) {
    const auto colon = p.find(": ");
    if (colon == std::string::npos) continue;
    if (const auto line = locate(text, std::string_view(p).substr(0, colon)); line > 0) {
      p = "line " + std::to_string(line) + ": " + p;
    }
  }
  return problems;
}

std::optional<Segment> read_segment(Reader& in, const json& item, const std::string& where) {
  if (!item.is_object()) {
    in.fail(where, "expected an object");
    return std::nullopt;
  }
  const auto kind_it = item.find("kind");
  if (kind_it == item.end() || !kind_it->is_string()) {
    in.fail(where + ".kind", "expected \"lesson\" or \"break\"");
    return std::nullopt;
  }
  const std::string kind = kind_it->get<std::string>();
  if (kind == "break") {
    in.check_keys(item, where, {"kind", "duration"});
    const auto duration = in.number(item, where, "duration");
    if (!duration) return std::nullopt;
    return Segment{Break{}, *duration};
  }
  if (kind != "lesson") {
    in.fail(where + ".kind", "expected \"lesson\" or \"break\", got \"" + kind + "\"");
    return std::nullopt;
  }
  in.check_keys(item, where, {"kind", "duration", "effort", "S"});
  const auto duration = in.number(item, where, "duration");
  const auto S = in.number(item, where, "S", 0.0);

  std::optional<EffortSpec> effort;
  const std::string epath = where + ".effort";
  const auto eit = item.find("effort");
  if (eit == item.end() || !eit->is_object()) {
    in.fail(epath, "expected {\"type\": \"constant\", \"F\": ...} or {\"type\": \"requirement\", \"U\": ...}");
  } else {
    const auto type = eit->value("type", std::string{});
    if (type == "constant") {
      in.check_keys(*eit, epath, {"type", "F"});
      if (auto F = in.number(*eit, epath, "F")) effort = ConstantEffort{*F};
    } else if (type == "requirement") {
      in.check_keys(*eit, epath, {"type", "U"});
      if (auto U = in.number(*eit, epath, "U")) effort = RequirementEffort{*U};
    } else {
      in.fail(epath + ".type", "expected \"constant\" or \"requirement\"");
    }
  }
  if (!duration || !S || !effort) return std::nullopt;
  return Segment{Lesson{*effort, *S}, *duration};
}

}  // namespace

SimConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");

  Reader in;
  SimConfig config;
  in.check_keys(doc, "", {"params", "schedule", "initial", "dt", "method", "record_stride"});

  const auto params_it = doc.find("params");
  if (params_it == doc.end() || !params_it->is_object()) {
    in.fail("params", "missing object");
  } else {
    const json& p = *params_it;
    in.check_keys(p, "params", {"n", "b", "alpha", "gamma", "k1", "P0", "k2", "k3", "k4"});
    ModelParams& mp = config.params;
    if (auto n = in.integer(p, "params", "n")) mp.n = static_cast<int>(*n);
    if (auto v = in.number(p, "params", "b", 0.0)) mp.b = *v;
    mp.alpha = in.numbers(p, "params", "alpha");
    mp.gamma = in.numbers(p, "params", "gamma");
    if (auto v = in.number(p, "params", "k1")) mp.k1 = *v;
    if (auto v = in.number(p, "params", "P0")) mp.P0 = *v;
    if (auto v = in.number(p, "params", "k2")) mp.k2 = *v;
    if (auto v = in.number(p, "params", "k3")) mp.k3 = *v;
    if (auto v = in.number(p, "params", "k4")) mp.k4 = *v;
  }

  const auto sched_it = doc.find("schedule");
  if (sched_it == doc.end() || !sched_it->is_array()) {
    in.fail("schedule", "missing array of segments");
  } else {
    std::vector<Segment> segments;
    for (std::size_t i = 0; i < sched_it->size(); ++i) {
      if (auto seg = read_segment(in, (*sched_it)[i], "schedule[" + std::to_string(i) + "]")) {
        segments.push_back(std::move(*seg));
      }
    }
    config.schedule = Schedule(std::move(segments));
  }

  const auto init_it = doc.find("initial");
  if (init_it == doc.end() || !init_it->is_object()) {
    in.fail("initial", "missing object");
  } else {
    in.check_keys(*init_it, "initial", {"Z", "r0"});
    auto Z = in.numbers(*init_it, "initial", "Z");
    const double r0 = in.number(*init_it, "initial", "r0", 1.0).value_or(1.0);
    config.initial = initial_state(std::move(Z), r0);
  }

  if (auto dt = in.number(doc, "", "dt")) config.dt = *dt;
  const std::string method = doc.value("method", std::string("euler"));
  if (method == "euler") {
    config.method = Method::Euler;
  } else if (method == "rk4") {
    config.method = Method::RK4;
  } else {
    in.fail("method", "expected \"euler\" or \"rk4\"");
  }
  if (auto stride = in.integer(doc, "", "record_stride", 1)) {
    if (*stride < 1) {
      in.fail("record_stride", "must be >= 1");
    } else {
      config.record_stride = static_cast<std::size_t>(*stride);
    }
  }

  auto& problems = in.problems();
  for (auto& p : problems) p = strip_root(p);
  if (problems.empty()) problems = config.validate();
  if (!problems.empty()) throw ValidationError(anchor(text, std::move(problems)));
  return config;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw IoError("cannot read config '" + path.string() + "'");
  return parse_config(buffer.str());
}

std::string serialize_config(const SimConfig& config) {
  const ModelParams& p = config.params;
  json doc;
  doc["params"] = {{"n", p.n},   {"b", p.b},   {"alpha", p.alpha}, {"gamma", p.gamma},
                   {"k1", p.k1}, {"P0", p.P0}, {"k2", p.k2},       {"k3", p.k3},
                   {"k4", p.k4}};
  json segments = json::array();
  for (const auto& seg : config.schedule.segments()) {
    if (!seg.is_lesson()) {
      segments.push_back({{"kind", "break"}, {"duration", seg.duration}});
      continue;
    }
    const Lesson& lesson = seg.lesson();
    json effort;
    if (const auto* c = std::get_if<ConstantEffort>(&lesson.effort)) {
      effort = {{"type", "constant"}, {"F", c->F}};
    } else {
      effort = {{"type", "requirement"}, {"U", std::get<RequirementEffort>(lesson.effort).U}};
    }
    segments.push_back({{"kind", "lesson"}, {"duration", seg.duration}, {"effort", effort}, {"S", lesson.S}});
  }
  doc["schedule"] = std::move(segments);
  doc["initial"] = {{"Z", config.initial.Z}, {"r0", config.initial.r0_base}};
  doc["dt"] = config.dt;
  doc["method"] = config.method == Method::Euler ? "euler" : "rk4";
  doc["record_stride"] = config.record_stride;
  return doc.dump(2) + "\n";
}

}  // namespace learnsim
