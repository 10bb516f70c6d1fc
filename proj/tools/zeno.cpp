// zeno: monitored two-qubit dynamics from the command line.
//
//   zeno simulate|entropy|sweep|target|verify --config PATH --out DIR
//
// Exit codes: 0 ok, 1 other error, 2 config error, 3 integration diverged,
// 4 target infeasible or degenerate, 5 oracle check failed.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "app/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Post-selected quantum Zeno dynamics of two monitored qubits.\n"
               "Times in ns, rabi = 2*omega in 1/ns, entropy in nats."};
  app.set_version_flag("--version", std::string(ZENO_VERSION));
  app.require_subcommand(1);

  zeno::app::CommandOptions opts;
  const struct {
    const char* name;
    const char* help;
  } commands[] = {
      {"simulate", "Integrate the coordinate equations and write trajectory.csv"},
      {"entropy", "Write entropy.csv (time,S) and summary.json with period and saturation"},
      {"sweep", "Run a parameter sweep: one CSV per value plus aggregate.json"},
      {"target", "Design report for target-state engineering (report.json)"},
      {"verify", "Compare the coordinate equations with the Kraus-step oracle per dt"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", opts.config, "Config file or a manifest.json to replay")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output directory")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : zeno::app::kExitConfig;
  }

  if (const char* env = std::getenv("ZENO_WORKERS")) {
    try {
      opts.workers = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "ZENO_WORKERS must be a non-negative integer, got '" << env << "'\n";
      return zeno::app::kExitConfig;
    }
  }
  const std::string name = app.get_subcommands().front()->get_name();
  return zeno::app::run_command(name, opts, std::cout, std::cerr);
}
