// kropina: command-line front end for the verification battery and reports.
//
// Exit codes: 0 all checks pass, 1 a check failed or a computation broke down,
// 2 usage, configuration or I/O error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "kropina/app/commands.hpp"
#include "kropina/app/config.hpp"
#include "kropina/app/report.hpp"
#include "kropina/errors.hpp"

namespace {

struct SubcommandOptions {
  std::string config_path;
  bool print_config = false;
  std::map<std::string, std::optional<std::string>> values;
};

std::string flag_name(const std::string& key) {
  std::string f = key;
  for (char& c : f)
    if (c == '_') c = '-';
  return "--" + f;
}

void add_options(CLI::App* sub, SubcommandOptions& opts) {
  sub->add_option("--config", opts.config_path, "key = value configuration file");
  sub->add_flag("--print-config", opts.print_config, "print the resolved configuration and exit");
  for (const auto& k : kropina::app::config_keys()) {
    sub->add_option(flag_name(k.key), opts.values[k.key], k.help);
  }
}

kropina::app::RunConfig resolve(const SubcommandOptions& opts) {
  kropina::app::RunConfig cfg;
  if (!opts.config_path.empty()) kropina::app::apply_config_file(cfg, opts.config_path);
  for (const auto& [key, value] : opts.values) {
    if (value) kropina::app::apply_setting(cfg, key, *value);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kropina metrics on surfaces of revolution: curvature, volume, geodesics and minimality"};
  app.set_version_flag("--version", kropina::app::kToolVersion);
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands{
      {"verify", "run the acceptance battery plus a minimality check of the configured surface (JSON)"},
      {"curvature-table", "tabulate F, G, K, S of a cone metric against closed forms (CSV)"},
      {"geodesic", "integrate a geodesic of a cone metric (CSV trajectory)"},
      {"volume", "Busemann-Hausdorff volume density of the configured surface (JSON)"},
      {"minimality", "mean curvature and bracket residual of the configured surface (JSON)"},
  };
  std::map<std::string, SubcommandOptions> options;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    subs[name] = app.add_subcommand(name, help);
    add_options(subs[name], options[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) name = n;

  try {
    const kropina::app::RunConfig cfg = resolve(options[name]);
    if (options[name].print_config) {
      std::cout << kropina::app::to_config_text(cfg);
      return 0;
    }
    kropina::app::validate(cfg);
    if (cfg.output == "-") return kropina::app::run_command(name, cfg, std::cout);
    std::ofstream file(cfg.output);
    if (!file) {
      std::cerr << "kropina: cannot open output file '" << cfg.output << "'\n";
      return 2;
    }
    const int code = kropina::app::run_command(name, cfg, file);
    file.close();
    if (!file) {
      std::cerr << "kropina: failed writing '" << cfg.output << "'\n";
      return 2;
    }
    return code;
  } catch (const kropina::ConfigError& e) {
    std::cerr << "kropina: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const kropina::Error& e) {
    std::cerr << "kropina: " << e.what() << '\n';
    return 1;
  }
}
