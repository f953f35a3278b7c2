#pragma once

#include "invlag/config.hpp"

namespace invlag {

/// Executes one CLI command: writes the requested table or report to
/// config.out_path (stdout when empty) and summaries to stdout.  Returns
/// the process exit status: 0 on success and all-checks-pass, 1 when a
/// check fails or a flow exits its domain.  Configuration and usage
/// errors are thrown.
int run(const RunConfig& config);

/// 17-significant-digit decimal rendering (lossless double round-trip).
std::string format_double(double value);

} // namespace invlag
