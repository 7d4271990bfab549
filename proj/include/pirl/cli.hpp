#pragma once

namespace pirl::cli {

// Entry point behind the `pirl` binary; exposed for in-process testing.
// Returns the process exit code: 0 on success, 2 for unreadable inputs,
// 1 for any other failure.
int run(int argc, const char* const* argv);

}  // namespace pirl::cli
