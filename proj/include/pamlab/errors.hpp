#pragma once

#include <stdexcept>
#include <string>

namespace pamlab {

// Invalid parameters or malformed input.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Request exceeds a documented size or complexity guard.
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what)
{
    if (!ok) throw ConfigError(what);
}

inline void guard(bool ok, const std::string& what)
{
    if (!ok) throw GuardError(what);
}

}  // namespace pamlab
