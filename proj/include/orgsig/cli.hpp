#pragma once

namespace orgsig {

/// Entry point behind the `orgsig` binary, callable in-process from tests.
/// Subcommands: spectrum, analyze, plus-one, sweep, bounds, validate.
/// Returns 0 on success, 1 on usage/input errors, 2 on numerical failure.
int cli_main(int argc, const char* const* argv);

}  // namespace orgsig
