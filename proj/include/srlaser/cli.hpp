#pragma once

namespace srl {

// Full command-line entry point (subcommands: derive, steady, spectrum, rf,
// linewidth, mc-validate, figure).  Returns the process exit code.
int run_cli(int argc, const char* const* argv);

} // namespace srl
