#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace weil2 {

class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Limit for brute-force domains. WEIL2_GUARD_MAX raises (never lowers) it.
std::uint64_t guard_limit(std::uint64_t default_max);
void check_guard(std::uint64_t size, std::uint64_t default_max, const std::string& what);

// q^e with saturation at UINT64_MAX
std::uint64_t ipow_sat(std::uint64_t q, int e);

} // namespace weil2
