// converse-lab: batch front-end over the converselab shared library.
//
//   converse-lab run <config-path>
//   converse-lab validate <config-path>
//   converse-lab list-experiments
//
// Experiment configs are flat "key = value" files; see the README for the
// per-experiment schemas.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "converselab.h"

namespace {

int report_status(clab_status status, const std::string& action) {
  if (status == CLAB_OK) return 0;
  std::fprintf(stderr, "converse-lab: %s failed: %s: %s\n", action.c_str(),
               clab_status_name(status), clab_last_error_message());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"converse-lab: second-order converse bounds and exact oracles"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "execute an experiment config");
  run->add_option("config", run_config, "path to the experiment config")->required();

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "check an experiment config without running it");
  validate->add_option("config", validate_config, "path to the experiment config")->required();

  auto* list = app.add_subcommand("list-experiments", "print the registered experiment names");

  bool version = false;
  app.add_flag("--version", version, "print the library version and exit");

  CLI11_PARSE(app, argc, argv);

  if (version) {
    std::printf("converse-lab %s\n", clab_version());
    return 0;
  }

  if (run->parsed()) {
    const clab_status status = clab_run_experiment_file(run_config.c_str());
    if (status == CLAB_OK) std::printf("ok: wrote results for %s\n", run_config.c_str());
    return report_status(status, "run");
  }
  if (validate->parsed()) {
    const clab_status status = clab_validate_config_file(validate_config.c_str());
    if (status == CLAB_OK) std::printf("ok: %s validates\n", validate_config.c_str());
    return report_status(status, "validate");
  }
  if (list->parsed()) {
    size_t needed = 0;
    clab_list_experiments(nullptr, 0, &needed);
    std::vector<char> buf(needed, '\0');
    const clab_status status = clab_list_experiments(buf.data(), buf.size(), &needed);
    if (status == CLAB_OK) std::fputs(buf.data(), stdout);
    return report_status(status, "list-experiments");
  }
  return 0;
}
