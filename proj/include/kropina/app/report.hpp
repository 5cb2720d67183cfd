#pragma once

// Check records and their JSON / CSV serialization.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "kropina/app/config.hpp"

namespace kropina::app {

enum class Status { kPass, kFail, kInfo };
enum class Comparison { kAbsDiff, kUpperBound, kLowerBound, kInfo };

std::string to_string(Status s);
std::string to_string(Comparison c);

struct Check {
  std::string criterion;  // "1".."8" for acceptance checks, empty otherwise
  std::string name;
  Status status = Status::kFail;
  Comparison comparison = Comparison::kAbsDiff;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// pass iff |observed - expected| <= tolerance
Check within(std::string criterion, std::string name, double observed, double expected, double tolerance,
             std::string detail = {});
// pass iff |observed| <= bound (expected is reported as 0)
Check at_most(std::string criterion, std::string name, double observed, double bound, std::string detail = {});
// pass iff observed > bound
Check at_least(std::string criterion, std::string name, double observed, double bound, std::string detail = {});
// pass iff condition; observed/expected are 1/0 flags
Check holds(std::string criterion, std::string name, bool condition, std::string detail = {});
Check info(std::string criterion, std::string name, double observed, std::string detail = {});

bool all_pass(const std::vector<Check>& checks);

nlohmann::json to_json(const Check& c);
nlohmann::json config_json(const RunConfig& cfg);

// {"meta": {...}, "config": {...}, "checks": [...], "summary": {...}} plus extras.
nlohmann::json report_json(const std::string& command, const RunConfig& cfg, const std::vector<Check>& checks,
                           nlohmann::json extra = nlohmann::json::object());

// 17 significant digits.
std::string format_number(double v);

using Cell = std::variant<double, long long, std::string>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);
  void comment(const std::string& text);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
};

void write_checks_csv(std::ostream& out, const std::vector<Check>& checks);

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace kropina::app
