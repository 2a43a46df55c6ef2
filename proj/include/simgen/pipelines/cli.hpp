#pragma once

namespace simgen::pipelines {

/// Entry point behind the simgen binary. Exit codes: 0 success, 1 config or
/// usage error, 2 runtime error.
int cli_main(int argc, const char* const* argv);

}  // namespace simgen::pipelines
