#include "chainlattice/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace chainlattice {

namespace {

std::string with_position(const std::string& what, std::size_t line, std::size_t column)
{
    if (line == 0) {
        return what;
    }
    return what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")";
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::invalid_argument(with_position(what, line, column)), line_(line), column_(column)
{
}

int max_ground_set()
{
    constexpr int kDefault = 24;
    const char* env = std::getenv("CHAINLATTICE_MAX_N");
    if (env == nullptr || *env == '\0') {
        return kDefault;
    }
    int value = 0;
    const char* end = env + std::strlen(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec != std::errc{} || ptr != end || value < 0 || value > 31) {
        return kDefault;
    }
    return value;
}

void require_envelope(int n, const char* what)
{
    if (n < 0) {
        throw DomainError(std::string(what) + ": ground-set size must be non-negative");
    }
    if (n > max_ground_set()) {
        throw ResourceError(std::string(what) + ": n=" + std::to_string(n) +
                            " exceeds the supported envelope n<=" + std::to_string(max_ground_set()) +
                            " (set CHAINLATTICE_MAX_N to override)");
    }
}

}  // namespace chainlattice
