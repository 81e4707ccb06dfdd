#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/tabular.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("filter-tags", "filter-tags [--allow a,b,...] [file|-]", argc, argv, [](const auto& args) {
        std::set<std::string, std::less<>> allowed = default_reading_tags();
        std::vector<std::string> rest;
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string list;
            if (args[i] == "--allow") {
                if (i + 1 == args.size()) throw UsageError("--allow needs a value");
                list = args[++i];
            } else if (!match_key_value(args[i], "--allow", list)) {
                rest.push_back(args[i]);
                continue;
            }
            allowed.clear();
            std::size_t start = 0;
            while (start <= list.size()) {
                std::size_t comma = list.find(',', start);
                if (comma == std::string::npos) comma = list.size();
                if (comma > start) allowed.emplace(list.substr(start, comma - start));
                start = comma + 1;
            }
        }
        LineReader in = tools::open_input(rest);
        LineWriter out = tools::stdout_writer();
        filter_tags(allowed, in, out);
        out.flush();
    });
}
