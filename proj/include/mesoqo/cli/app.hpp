#pragma once

#include <iosfwd>

namespace mesoqo::cli {

/// Exit status: 0 success, 1 failed verification or internal error,
/// 2 invalid config, 3 non-convergent truncation, 4 singular-only output.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mesoqo::cli
