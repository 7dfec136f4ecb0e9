#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vex/runner.hpp"

namespace {

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const vex::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const vex::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const vex::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vexlab: variable-exponent sequence-space experiments"};
  app.require_subcommand(1);

  std::string config_path, record_path, plot_kind;

  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", config_path, "experiment config file")->required();

  auto* plot = app.add_subcommand("plot", "emit plot-ready CSV from a result record");
  plot->add_option("record", record_path, "result record (JSON summary, CSV, or grid file)")
      ->required();
  plot->add_option("--kind", plot_kind, "ratio_vs_J | term_decomposition | profile")
      ->required();

  auto* validate = app.add_subcommand("validate", "validate a config without running it");
  validate->add_option("config", config_path, "experiment config file")->required();

  auto* version = app.add_subcommand("version", "print the library version");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return dispatch([&] {
      const vex::RunOutput out = vex::run_and_persist(vex::Config::load(config_path));
      std::cout << out.json;
      if (!out.csv_path.empty()) std::cerr << "wrote " << out.csv_path << "\n";
      if (!out.json_path.empty()) std::cerr << "wrote " << out.json_path << "\n";
      return 0;
    });
  if (plot->parsed())
    return dispatch([&] {
      std::cout << vex::emit_plot_data(record_path, plot_kind);
      return 0;
    });
  if (validate->parsed())
    return dispatch([&] {
      vex::validate_config(vex::Config::load(config_path));
      std::cout << "ok\n";
      return 0;
    });
  if (version->parsed()) {
    std::cout << vex::kVersion << "\n";
    return 0;
  }
  return 1;
}
