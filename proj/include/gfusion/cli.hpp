#pragma once

#include <ostream>

namespace gfusion::cli {

/// Exit codes: 0 all asserted properties hold, 1 verification failure
/// (report still written), 2 input or parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gfusion::cli
