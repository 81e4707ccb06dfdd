#include "meterflow/cli.hpp"

#include <cstdio>
#include <exception>
#include <iostream>

#include "meterflow/errors.hpp"

namespace meterflow {

int run_tool(std::string_view name, std::string_view usage, int argc, char** argv,
             const std::function<void(const std::vector<std::string>& args)>& body) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (!args.empty() && (args[0] == "-h" || args[0] == "--help")) {
            std::cout << "usage: " << usage << '\n';
            return kExitOk;
        }
        body(args);
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << name << ": " << e.what() << "\nusage: " << usage << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << name << ": " << e.what() << '\n';
        return kExitData;
    }
}

bool match_key_value(std::string_view arg, std::string_view key, std::string& value) {
    if (arg.size() <= key.size() || !arg.starts_with(key) || arg[key.size()] != '=') return false;
    value.assign(arg.substr(key.size() + 1));
    return true;
}

void warn(std::string_view tool, std::string_view message) {
    std::cerr << tool << ": warning: " << message << '\n';
}

}  // namespace meterflow
