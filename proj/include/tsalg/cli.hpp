#pragma once

#include <ostream>

namespace tsalg::cli {

/// Runs one command line. Human-readable output goes to `out`, errors to
/// `err`; with --json a single JSON document goes to `out` in both cases.
/// Returns 0 iff no error record was produced.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tsalg::cli
