#pragma once

// Trajectory snapshots on disk. Both layouts are described in docs/formats.md.

#include <string>

#include "dsqg/galerkin.hpp"

namespace dsqg {

enum class CheckpointFormat { Binary, Csv };

/// "binary" or "csv"; throws ConfigError otherwise.
CheckpointFormat parse_checkpoint_format(const std::string& s);

void write_checkpoint(const std::string& path, const SolverState& state, CheckpointFormat format);

/// Reads either layout (detected from the leading bytes). Throws Error on
/// a malformed file.
SolverState read_checkpoint(const std::string& path);

}  // namespace dsqg
