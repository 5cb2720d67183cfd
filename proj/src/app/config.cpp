#include "kropina/app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "kropina/errors.hpp"

namespace kropina::app {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, std::size_t column, const std::string& what) {
  throw ConfigError("key '" + key + "' = '" + value + "', column " + std::to_string(column + 1) + ": " + what);
}

// Splits on commas, remembering where each field starts.
std::vector<std::pair<std::string, std::size_t>> fields(const std::string& value) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(value.find(',', pos), value.size());
    out.emplace_back(value.substr(pos, end - pos), pos);
    if (end == value.size()) break;
    pos = end + 1;
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value, const std::string& text, std::size_t column) {
  const std::string t = trim(text);
  const std::size_t lead = text.find_first_not_of(" \t");
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    bad(key, value, column + (lead == std::string::npos ? 0 : lead), "expected a number");
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& value, const std::string& text, std::size_t column) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) bad(key, value, column, "expected an integer");
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value, std::size_t n) {
  const auto parts = fields(value);
  if (parts.size() != n) {
    bad(key, value, parts.size() < n ? value.size() : parts[n].second,
        "expected " + std::to_string(n) + " comma-separated values");
  }
  std::vector<double> out;
  for (const auto& [text, col] : parts) out.push_back(parse_double(key, value, text, col));
  return out;
}

Range parse_range(const std::string& key, const std::string& value) {
  const auto parts = fields(value);
  if (parts.size() != 3) bad(key, value, value.size(), "expected lo,hi,count");
  Range r;
  r.lo = parse_double(key, value, parts[0].first, parts[0].second);
  r.hi = parse_double(key, value, parts[1].first, parts[1].second);
  const long long c = parse_int(key, value, parts[2].first, parts[2].second);
  if (c < 1 || c > 100000) bad(key, value, parts[2].second, "count must be in [1, 100000]");
  r.count = static_cast<int>(c);
  return r;
}

std::string range_text(const Range& r) { return fmt(r.lo) + "," + fmt(r.hi) + "," + std::to_string(r.count); }

struct Entry {
  const char* help;
  std::function<void(RunConfig&, const std::string& key, const std::string& value)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<std::pair<std::string, Entry>>& table() {
  static const std::vector<std::pair<std::string, Entry>> t = {
      {"b", {"1-form constant b (nonzero)",
             [](RunConfig& c, const std::string& k, const std::string& v) { c.b = parse_double(k, v, v, 0); },
             [](const RunConfig& c) { return fmt(c.b); }}},
      {"theta", {"tilt angle in [0, 2 pi) for the tilted 1-form",
                 [](RunConfig& c, const std::string& k, const std::string& v) { c.theta = parse_double(k, v, v, 0); },
                 [](const RunConfig& c) { return fmt(c.theta); }}},
      {"variant", {"1-form: x1, tilted or x3",
                   [](RunConfig& c, const std::string& k, const std::string& v) {
                     const std::string t = trim(v);
                     if (t != "x1" && t != "tilted" && t != "x3") bad(k, v, 0, "expected x1, tilted or x3");
                     c.variant = t;
                   },
                   [](const RunConfig& c) { return c.variant; }}},
      {"profile", {"profile spec: linear:s,c | poly:c0,c1,... | log:a,c | power:a,p,c | cone:c",
                   [](RunConfig& c, const std::string&, const std::string& v) { c.profile = trim(v); },
                   [](const RunConfig& c) { return c.profile; }}},
      {"profile_interval", {"working interval lo,hi of the profile (0 < lo < hi)",
                            [](RunConfig& c, const std::string& k, const std::string& v) {
                              const auto x = parse_list(k, v, 2);
                              c.profile_interval = {x[0], x[1]};
                            },
                            [](const RunConfig& c) {
                              return fmt(c.profile_interval.lo) + "," + fmt(c.profile_interval.hi);
                            }}},
      {"cone_slope", {"generator slope s of the cone metric (p = 1 + s^2, q = s^2)",
                      [](RunConfig& c, const std::string& k, const std::string& v) {
                        c.cone_slope = parse_double(k, v, v, 0);
                      },
                      [](const RunConfig& c) { return fmt(c.cone_slope); }}},
      {"x1", {"grid lo,hi,count for x1", [](RunConfig& c, const std::string& k, const std::string& v) { c.x1 = parse_range(k, v); },
              [](const RunConfig& c) { return range_text(c.x1); }}},
      {"x2", {"grid lo,hi,count for x2", [](RunConfig& c, const std::string& k, const std::string& v) { c.x2 = parse_range(k, v); },
              [](const RunConfig& c) { return range_text(c.x2); }}},
      {"y1", {"grid lo,hi,count for y1", [](RunConfig& c, const std::string& k, const std::string& v) { c.y1 = parse_range(k, v); },
              [](const RunConfig& c) { return range_text(c.y1); }}},
      {"y2", {"grid lo,hi,count for y2", [](RunConfig& c, const std::string& k, const std::string& v) { c.y2 = parse_range(k, v); },
              [](const RunConfig& c) { return range_text(c.y2); }}},
      {"tol", {"relative tolerance for closed-form comparisons",
               [](RunConfig& c, const std::string& k, const std::string& v) { c.tol = parse_double(k, v, v, 0); },
               [](const RunConfig& c) { return fmt(c.tol); }}},
      {"zero_tol", {"absolute tolerance for vanishing residuals",
                    [](RunConfig& c, const std::string& k, const std::string& v) { c.zero_tol = parse_double(k, v, v, 0); },
                    [](const RunConfig& c) { return fmt(c.zero_tol); }}},
      {"start", {"geodesic start point x1,x2",
                 [](RunConfig& c, const std::string& k, const std::string& v) {
                   const auto x = parse_list(k, v, 2);
                   c.start = {x[0], x[1]};
                 },
                 [](const RunConfig& c) { return fmt(c.start[0]) + "," + fmt(c.start[1]); }}},
      {"direction", {"geodesic initial velocity y1,y2",
                     [](RunConfig& c, const std::string& k, const std::string& v) {
                       const auto x = parse_list(k, v, 2);
                       c.direction = {x[0], x[1]};
                     },
                     [](const RunConfig& c) { return fmt(c.direction[0]) + "," + fmt(c.direction[1]); }}},
      {"t_max", {"geodesic time horizon",
                 [](RunConfig& c, const std::string& k, const std::string& v) { c.t_max = parse_double(k, v, v, 0); },
                 [](const RunConfig& c) { return fmt(c.t_max); }}},
      {"dt", {"geodesic step (initial step in adaptive mode)",
              [](RunConfig& c, const std::string& k, const std::string& v) { c.dt = parse_double(k, v, v, 0); },
              [](const RunConfig& c) { return fmt(c.dt); }}},
      {"adaptive", {"adaptive step doubling: true or false",
                    [](RunConfig& c, const std::string& k, const std::string& v) {
                      const std::string t = trim(v);
                      if (t == "true" || t == "1") c.adaptive = true;
                      else if (t == "false" || t == "0") c.adaptive = false;
                      else bad(k, v, 0, "expected true or false");
                    },
                    [](const RunConfig& c) { return std::string(c.adaptive ? "true" : "false"); }}},
      {"seed", {"seed for sampled points",
                [](RunConfig& c, const std::string& k, const std::string& v) {
                  const long long s = parse_int(k, v, v, 0);
                  if (s < 0) bad(k, v, 0, "seed must be non-negative");
                  c.seed = static_cast<unsigned long long>(s);
                },
                [](const RunConfig& c) { return std::to_string(c.seed); }}},
      {"output", {"output path, '-' for standard output",
                  [](RunConfig& c, const std::string& k, const std::string& v) {
                    const std::string t = trim(v);
                    if (t.empty()) bad(k, v, 0, "empty path");
                    c.output = t;
                  },
                  [](const RunConfig& c) { return c.output; }}},
      {"format", {"output format: auto, csv or json",
                  [](RunConfig& c, const std::string& k, const std::string& v) {
                    const std::string t = trim(v);
                    if (t != "auto" && t != "csv" && t != "json") bad(k, v, 0, "expected auto, csv or json");
                    c.format = t;
                  },
                  [](const RunConfig& c) { return c.format; }}},
  };
  return t;
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v;
  if (count == 1) return {lo};
  for (int k = 0; k < count; ++k) v.push_back(lo + (hi - lo) * k / (count - 1));
  return v;
}

OneFormSpec RunConfig::one_form() const { return OneFormSpec::parse(variant, b, theta); }

ProfileFunction RunConfig::profile_function() const { return parse_profile(profile, profile_interval); }

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys = [] {
    std::vector<KeyInfo> k;
    for (const auto& [name, e] : table()) k.push_back({name.c_str(), e.help});
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  for (const auto& [name, e] : table()) {
    if (name == key) {
      e.set(cfg, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    const std::string where = source + ":" + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    try {
      apply_setting(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(cfg, text.str(), path);
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& [name, e] : table()) out += name + " = " + e.get(cfg) + "\n";
  return out;
}

void validate(const RunConfig& cfg) {
  (void)cfg.one_form();
  (void)cfg.profile_function();
  if (!(cfg.cone_slope > 0.0)) throw ConfigError("cone_slope must be positive");
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.t_max >= 0.0)) throw ConfigError("t_max must be non-negative");
  if (!(cfg.tol > 0.0) || !(cfg.zero_tol > 0.0)) throw ConfigError("tolerances must be positive");
  if (!(cfg.theta >= 0.0 && cfg.theta < 2.0 * M_PI)) throw ConfigError("theta must lie in [0, 2 pi)");
  const std::pair<const char*, const Range*> ranges[] = {{"x1", &cfg.x1}, {"x2", &cfg.x2}, {"y1", &cfg.y1}, {"y2", &cfg.y2}};
  for (const auto& [name, r] : ranges) {
    if (r->count < 1) throw ConfigError(std::string(name) + ": count must be at least 1");
    if (!(r->lo <= r->hi)) throw ConfigError(std::string(name) + ": lo must not exceed hi");
  }
  if (cfg.format != "auto" && cfg.format != "csv" && cfg.format != "json") {
    throw ConfigError("format must be auto, csv or json (got '" + cfg.format + "')");
  }
}

}  // namespace kropina::app
