#include <charconv>
#include <optional>

#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/sort_agg.hpp"
#include "tool_args.hpp"

namespace {

// Plain byte count with an optional K/M/G suffix.
std::size_t parse_bytes(const std::string& text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data()) throw meterflow::UsageError("invalid byte count '" + text + "'");
    std::string_view suffix(ptr, static_cast<std::size_t>(text.data() + text.size() - ptr));
    if (suffix == "K") value <<= 10;
    else if (suffix == "M") value <<= 20;
    else if (suffix == "G") value <<= 30;
    else if (!suffix.empty()) throw meterflow::UsageError("invalid byte count '" + text + "'");
    if (value == 0) throw meterflow::UsageError("memory budget must be positive");
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("msort", "msort key=<spec> [--mem <bytes>] [file|-]", argc, argv, [](const auto& args) {
        std::optional<FieldSpec> key;
        SortOptions options;
        std::vector<std::string> rest;
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string value;
            if (args[i] == "--mem") {
                if (i + 1 == args.size()) throw UsageError("--mem needs a value");
                options.memory_budget = parse_bytes(args[++i]);
            } else if (match_key_value(args[i], "--mem", value)) {
                options.memory_budget = parse_bytes(value);
            } else if (match_key_value(args[i], "key", value)) {
                key = FieldSpec::parse(value);
            } else {
                rest.push_back(args[i]);
            }
        }
        if (!key) throw UsageError("key=<spec> is required");
        LineReader in = tools::open_input(rest);
        LineWriter out = tools::stdout_writer();
        msort(*key, in, out, options);
        out.flush();
    });
}
