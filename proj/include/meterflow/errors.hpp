#pragma once

#include <stdexcept>
#include <string>

namespace meterflow {

// Exit codes shared by every tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Bad invocation: unknown flag, malformed argument, missing input file.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The input stream violates what the tool expects of it.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace meterflow
