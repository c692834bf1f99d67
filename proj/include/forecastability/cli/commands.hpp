#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fcast::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;         // bad flags, parse errors, contract violations
inline constexpr int kExitInsufficient = 3;  // no horizon had enough data

/// "1..5,12,24" -> {1, 2, 3, 4, 5, 12, 24}, sorted and deduplicated.
/// Throws ConfigError on malformed input or a zero horizon.
std::vector<std::size_t> parse_horizons(std::string_view text);

/// Entry point of the fcast tool. `args` excludes the program name. Tables go
/// to --output (stdout by default), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fcast::cli
