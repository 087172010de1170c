#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace grs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

inline constexpr int kSchemaVersion = 1;

/// Runs one grs-lab command. args excludes the program name. The JSON report
/// goes to out, usage text and error messages to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grs::cli
