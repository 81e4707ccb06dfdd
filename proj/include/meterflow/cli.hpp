#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace meterflow {

/// Runs a tool body under the shared exit-code contract: 0 on success,
/// 1 on UsageError (usage text printed), 2 on DataError or any other failure.
/// Diagnostics go to standard error prefixed with the tool name.
int run_tool(std::string_view name, std::string_view usage, int argc, char** argv,
             const std::function<void(const std::vector<std::string>& args)>& body);

// Splits "key=value"; returns false when `arg` does not start with `key=`.
bool match_key_value(std::string_view arg, std::string_view key, std::string& value);

// Prints "<tool>: warning: <msg>" on standard error.
void warn(std::string_view tool, std::string_view message);

}  // namespace meterflow
