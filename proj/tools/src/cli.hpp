#pragma once

#include <iosfwd>

namespace giantscope::cli {

/// Entry point of the giantscope tool. Returns 0 on success, 2 on invalid
/// parameters or output location, 1 when an internal cross-check fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace giantscope::cli
