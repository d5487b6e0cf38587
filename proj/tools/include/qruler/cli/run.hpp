#pragma once

#include <ostream>
#include <string>

#include "qruler/cli/config.hpp"

namespace qruler::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDomain = 3,
  kExitAcceptance = 4,
  kExitIo = 5,
};

/// Hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

/// Executes one command, writes its artifacts plus manifest.json under
/// config.out_dir and prints a short summary on `out`. Library errors
/// propagate as qruler::Error.
int run(const RunConfig& config, std::ostream& out);

}  // namespace qruler::cli
