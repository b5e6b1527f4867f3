#pragma once

// Subcommands of the cqed-readout tool. Each turns a resolved Config into one
// or more tables; grid cells run on a worker pool, tables are filled in a
// fixed order so results do not depend on the thread count.

#include <string_view>
#include <vector>

#include "cqed/config.hpp"
#include "cqed/table.hpp"

namespace cqed {

struct CommandResult {
  std::vector<Table> tables;
  bool all_converged = true;  ///< false if any fixed-point solve failed
};

const std::vector<std::string_view>& command_names();

/// Throws ConfigError for unknown commands or invalid settings.
CommandResult run_command(std::string_view name, const Config& config, unsigned threads = 1);

CommandResult cmd_coeffs(const Config& config, unsigned threads = 1);
CommandResult cmd_snr(const Config& config, unsigned threads = 1);
CommandResult cmd_response(const Config& config, unsigned threads = 1);
CommandResult cmd_map(const Config& config, unsigned threads = 1);
CommandResult cmd_rates(const Config& config, unsigned threads = 1);
CommandResult cmd_oracle(const Config& config, unsigned threads = 1);

}  // namespace cqed
