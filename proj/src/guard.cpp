#include "weil2/guard.hpp"

#include <cstdlib>

namespace weil2 {

std::uint64_t guard_limit(std::uint64_t default_max)
{
    const char* env = std::getenv("WEIL2_GUARD_MAX");
    if (!env)
        return default_max;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env)
        return default_max;
    return v > default_max ? v : default_max;
}

void check_guard(std::uint64_t size, std::uint64_t default_max, const std::string& what)
{
    std::uint64_t lim = guard_limit(default_max);
    if (size > lim)
        throw SizeGuardError(what + ": domain size " + std::to_string(size) + " exceeds guard " +
                             std::to_string(lim) + " (set WEIL2_GUARD_MAX to raise)");
}

std::uint64_t ipow_sat(std::uint64_t q, int e)
{
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (q && r > UINT64_MAX / q)
            return UINT64_MAX;
        r *= q;
    }
    return r;
}

} // namespace weil2
