#pragma once

// Exit-code mapping for the CLI11-based multi-command tools.

#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "meterflow/errors.hpp"

namespace meterflow::tools {

inline int run_app(CLI::App& app, int argc, char** argv, const std::function<void()>& dispatch) {
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        dispatch();
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << app.get_name() << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << app.get_name() << ": " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace meterflow::tools
