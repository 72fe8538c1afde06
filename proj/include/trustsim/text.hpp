#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trustsim {

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

/// Strict inverse of format_double for loaders; nullopt on junk.
bool parse_double(std::string_view s, double& out);
bool parse_u64(std::string_view s, std::uint64_t& out);

std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace trustsim
