#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "nscr/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rotating shear flow experiments"};
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::string> config;
  for (const std::string& name : nscr::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config[name], "Config file; the [" + name + "] section applies");
    for (const std::string& key : nscr::experiment_keys(name)) {
      sub->add_option("--" + key, values[name][key]);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nscr::kExitUsage;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    nscr::ParamMap flags;
    for (const std::string& key : nscr::experiment_keys(name)) {
      if (sub->count("--" + key) > 0) flags[key] = values[name][key];
    }
    try {
      const nscr::ExperimentSpec spec = nscr::make_experiment_spec(name, config[name], flags);
      return nscr::run_experiment(spec, std::cout, std::cerr);
    } catch (const std::exception& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return nscr::kExitUsage;
    }
  }
  return nscr::kExitUsage;
}
