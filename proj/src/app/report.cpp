#include "kropina/app/report.hpp"

#include <cmath>
#include <cstdio>

#include "kropina/errors.hpp"

namespace kropina::app {

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kInfo: return "info";
  }
  return "fail";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::kAbsDiff: return "abs_diff";
    case Comparison::kUpperBound: return "upper_bound";
    case Comparison::kLowerBound: return "lower_bound";
    case Comparison::kInfo: return "info";
  }
  return "info";
}

namespace {

Status verdict(bool ok) { return ok ? Status::kPass : Status::kFail; }

}  // namespace

Check within(std::string criterion, std::string name, double observed, double expected, double tolerance,
             std::string detail) {
  const bool ok = std::isfinite(observed) && std::abs(observed - expected) <= tolerance;
  return {std::move(criterion), std::move(name), verdict(ok), Comparison::kAbsDiff, observed, expected, tolerance,
          std::move(detail)};
}

Check at_most(std::string criterion, std::string name, double observed, double bound, std::string detail) {
  const bool ok = std::isfinite(observed) && std::abs(observed) <= bound;
  return {std::move(criterion), std::move(name), verdict(ok), Comparison::kUpperBound, observed, 0.0, bound,
          std::move(detail)};
}

Check at_least(std::string criterion, std::string name, double observed, double bound, std::string detail) {
  const bool ok = std::isfinite(observed) && observed > bound;
  return {std::move(criterion), std::move(name), verdict(ok), Comparison::kLowerBound, observed, bound, 0.0,
          std::move(detail)};
}

Check holds(std::string criterion, std::string name, bool condition, std::string detail) {
  return {std::move(criterion), std::move(name), verdict(condition), Comparison::kAbsDiff,
          condition ? 1.0 : 0.0, 1.0, 0.0, std::move(detail)};
}

Check info(std::string criterion, std::string name, double observed, std::string detail) {
  return {std::move(criterion), std::move(name), Status::kInfo, Comparison::kInfo, observed, observed, 0.0,
          std::move(detail)};
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (c.status == Status::kFail) return false;
  return true;
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j;
  j["check"] = c.name;
  j["status"] = to_string(c.status);
  j["observed"] = c.observed;  // non-finite values serialize as null
  j["expected"] = c.expected;
  j["tolerance"] = c.tolerance;
  j["comparison"] = to_string(c.comparison);
  if (!c.criterion.empty()) j["criterion"] = c.criterion;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  const std::string text = to_config_text(cfg);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    const std::size_t eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
    pos = end + 1;
  }
  return j;
}

nlohmann::json report_json(const std::string& command, const RunConfig& cfg, const std::vector<Check>& checks,
                           nlohmann::json extra) {
  nlohmann::json j;
  j["meta"] = {{"tool", "kropina"}, {"version", kToolVersion}, {"command", command}};
  j["config"] = config_json(cfg);
  j["checks"] = nlohmann::json::array();
  int passed = 0, failed = 0, informational = 0;
  for (const auto& c : checks) {
    j["checks"].push_back(to_json(c));
    if (c.status == Status::kPass) ++passed;
    else if (c.status == Status::kFail) ++failed;
    else ++informational;
  }
  j["summary"] = {{"total", checks.size()},
                  {"passed", passed},
                  {"failed", failed},
                  {"info", informational},
                  {"status", failed == 0 ? "pass" : "fail"}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  columns_ = columns.size();
  for (std::size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (columns_ != 0 && cells.size() != columns_) {
    throw DimensionError("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                         std::to_string(columns_));
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    std::visit(
        [this](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, double>) out_ << format_number(v);
          else if constexpr (std::is_same_v<V, long long>) out_ << v;
          else {
            if (v.find_first_of(",\"\n") == std::string::npos) {
              out_ << v;
            } else {
              out_ << '"';
              for (char ch : v) out_ << (ch == '"' ? std::string("\"\"") : std::string(1, ch));
              out_ << '"';
            }
          }
        },
        cells[k]);
  }
  out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << '\n'; }

void write_checks_csv(std::ostream& out, const std::vector<Check>& checks) {
  CsvWriter w(out);
  w.header({"criterion", "check", "status", "comparison", "observed", "expected", "tolerance", "detail"});
  for (const auto& c : checks) {
    w.row({c.criterion, c.name, to_string(c.status), to_string(c.comparison), c.observed, c.expected, c.tolerance,
           c.detail});
  }
}

}  // namespace kropina::app
