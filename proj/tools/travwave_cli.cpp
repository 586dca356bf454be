// Command-line front end over the C API.

#include "travwave/travwave.h"

#include <CLI11.hpp>

#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Traveling-wave continuation, refinement, evolution and diagnostics"};
  app.set_version_flag("--version", std::string(tw_version()));
  app.require_subcommand(1, 1);

  std::string config, out, guess;
  std::vector<std::string> overrides;
  const char* names[][2] = {
    {"branch", "Compute a bifurcation branch from the first bifurcation point"},
    {"refine", "Refine a stored branch by grid doubling"},
    {"evolve", "Time-evolve a stored profile (or a pair of them)"},
    {"converge", "Solitary-wave error table against the exact KdV solution"},
    {"analyze", "Diagnostics report for a stored branch"},
  };
  for (const auto& entry : names) {
    CLI::App* sub = app.add_subcommand(entry[0], entry[1]);
    sub->add_option("--config", config, "Run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides output.dir)");
    sub->add_option("--guess", guess, "Initial guess: stokes:first or stokes:corrected");
    sub->add_option("--set", overrides, "Override a config key: key=value or section.key=value");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::vector<const char*> raw;
  raw.reserve(overrides.size());
  for (const auto& o : overrides) raw.push_back(o.c_str());

  int exit_code = 1;
  const tw_status status = tw_run_command(command.c_str(), config.empty() ? nullptr : config.c_str(),
                                          out.empty() ? nullptr : out.c_str(), guess.empty() ? nullptr : guess.c_str(),
                                          raw.data(), raw.size(), &exit_code);
  if (status != TW_OK) return 1;
  return exit_code;
}
