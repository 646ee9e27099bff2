#pragma once

namespace confgate::harness {

// Command-line entry point, separated from main() so tests can exercise it
// in-process. Returns the process exit code: 0 on success, 2 for config or
// usage errors, 3 for runtime failures.
int run_cli(int argc, const char* const* argv);

}  // namespace confgate::harness
