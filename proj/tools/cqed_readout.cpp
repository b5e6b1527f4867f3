// cqed-readout: parameter sweeps of the dispersive-readout model.
//
// Exit codes: 0 success, 1 configuration error, 2 a fixed-point solve did not
// converge (tables are still written, with converged = 0 rows), 3 other error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "cqed/commands.hpp"
#include "cqed/config.hpp"
#include "cqed/errors.hpp"
#include "cqed/table.hpp"

namespace {

void write_table(const cqed::Table& table, const cqed::Config& config, std::string_view command,
                 cqed::OutputFormat format, const std::string& out_dir) {
  auto emit = [&](std::ostream& os) {
    if (format == cqed::OutputFormat::csv) cqed::write_csv(os, table, config, command);
    else cqed::write_json(os, table, config, command);
  };
  if (out_dir == "-") {
    emit(std::cout);
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) /
                    (table.name + (format == cqed::OutputFormat::csv ? ".csv" : ".json"));
  std::ofstream file(path, std::ios::binary);
  if (!file) throw cqed::Error("cannot write '" + path.string() + "'");
  emit(file);
  std::cerr << path.string() << ": " << table.rows.size() << " rows\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dispersive readout of a multilevel system coupled to a resonator"};
  app.set_version_flag("--version", std::string(cqed::tool_version()));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  cqed::OutputFormat format = cqed::OutputFormat::csv;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 0;

  app.add_option("--config", config_path, "INI config, or any CSV/JSON output of this tool");
  app.add_option("--out", out_dir, "output directory ('-' for stdout)");
  app.add_option("--format", format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, cqed::OutputFormat>{{"csv", cqed::OutputFormat::csv},
                                                    {"json", cqed::OutputFormat::json}},
          CLI::ignore_case));
  app.add_option("--threads", threads, "worker threads for grid cells")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "accepted and ignored; all computations are deterministic");

  for (auto name : cqed::command_names()) app.add_subcommand(std::string(name));

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const cqed::Config config = config_path.empty() ? cqed::Config::defaults() : cqed::Config::load(config_path);
    const auto result = cqed::run_command(command, config, threads);
    for (const auto& table : result.tables) write_table(table, config, command, format, out_dir);
    if (!result.all_converged) {
      std::cerr << "warning: some fixed-point solves did not converge (converged = 0)\n";
      return 2;
    }
    return 0;
  } catch (const cqed::ConfigError& e) {
    if (e.line() > 0) std::cerr << config_path << ":" << e.line() << ": " << e.what() << '\n';
    else std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const cqed::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const cqed::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
