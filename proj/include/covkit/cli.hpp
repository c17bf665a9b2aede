#pragma once

namespace covkit {

// Entry point shared by the covkit binary and the test suite.
// Exit codes: 0 success, 1 data/validation error, 2 I/O error.
int cli_main(int argc, const char* const* argv);

}  // namespace covkit
