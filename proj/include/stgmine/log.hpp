#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <string_view>

namespace stgmine {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Level comes from STG_MINER_LOG in {error, info, debug}; default error.
inline LogLevel log_level()
{
    static LogLevel level = [] {
        const char* env = std::getenv("STG_MINER_LOG");
        if (!env)
            return LogLevel::Error;
        std::string_view value(env);
        if (value == "debug")
            return LogLevel::Debug;
        if (value == "info")
            return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

inline void log_error(const std::string& message) { std::cerr << "[error] " << message << '\n'; }

inline void log_info(const std::string& message)
{
    if (log_level() >= LogLevel::Info)
        std::cerr << "[info] " << message << '\n';
}

inline void log_debug(const std::string& message)
{
    if (log_level() >= LogLevel::Debug)
        std::cerr << "[debug] " << message << '\n';
}

} // namespace stgmine
