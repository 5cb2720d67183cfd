#pragma once

// Run configuration shared by every subcommand. Values come from defaults,
// then an optional "key = value" file, then command-line flags.

#include <string>
#include <vector>

#include "kropina/ambient.hpp"
#include "kropina/profile.hpp"

namespace kropina::app {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  // count evenly spaced values from lo to hi (lo alone when count == 1).
  std::vector<double> values() const;
  bool operator==(const Range&) const = default;
};

struct RunConfig {
  double b = 1.0;
  double theta = 0.0;
  std::string variant = "x3";  // x1 | tilted | x3
  std::string profile = "cone:0";
  Interval profile_interval{};
  double cone_slope = 1.0;  // cone metric used by curvature-table and geodesic
  Range x1{0.5, 2.5, 5};
  Range x2{0.0, 0.0, 1};
  Range y1{0.5, 2.5, 5};
  Range y2{-1.0, 1.0, 5};
  double tol = 1e-8;
  double zero_tol = 1e-9;
  Vec2<double> start{1.0, 0.0};
  Vec2<double> direction{1.0, 0.0};
  double t_max = 1.0;
  double dt = 1e-3;
  bool adaptive = false;
  unsigned long long seed = 20240611;
  std::string output = "-";
  std::string format = "auto";  // auto | csv | json

  bool operator==(const RunConfig& o) const {
    return b == o.b && theta == o.theta && variant == o.variant && profile == o.profile &&
           profile_interval.lo == o.profile_interval.lo && profile_interval.hi == o.profile_interval.hi &&
           cone_slope == o.cone_slope && x1 == o.x1 && x2 == o.x2 && y1 == o.y1 && y2 == o.y2 && tol == o.tol &&
           zero_tol == o.zero_tol && start == o.start && direction == o.direction && t_max == o.t_max &&
           dt == o.dt && adaptive == o.adaptive && seed == o.seed && output == o.output && format == o.format;
  }

  // Parsed domain objects; throw ConfigError on invalid values.
  OneFormSpec one_form() const;
  ProfileFunction profile_function() const;
};

struct KeyInfo {
  const char* key;
  const char* help;
};
const std::vector<KeyInfo>& config_keys();

// Sets one key from its textual value. Throws ConfigError for unknown keys or
// malformed values (messages name the key and the offending column).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Reads "key = value" lines ('#' starts a comment) on top of cfg. Errors are
// prefixed with source:line.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& source = "<config>");
void apply_config_file(RunConfig& cfg, const std::string& path);

// Every key, one per line, with 17 significant digits; parses back to an equal config.
std::string to_config_text(const RunConfig& cfg);

// Cross-field validation (1-form, profile, ranges, steps).
void validate(const RunConfig& cfg);

}  // namespace kropina::app
