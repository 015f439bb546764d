#pragma once

#include <iosfwd>

namespace vdmlab {

/// Command-line front end. Returns the process exit code: 0 on success,
/// 2 for invalid input (usage, JSON, schema, arguments), 1 for failures
/// inside a module. Errors are written to `err` as one JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vdmlab
