#pragma once

namespace gazeff {

// Full command-line front end. Exit codes: 0 success, 1 usage or config
// error, 2 input parse error, 3 internal invariant breach.
int run_cli(int argc, const char* const* argv);

}  // namespace gazeff
