#include <charconv>

#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/tabular.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("map", "map num=<k> [file|-]", argc, argv, [](const auto& args) {
        std::string num;
        if (args.empty() || !match_key_value(args[0], "num", num)) throw UsageError("expected num=<k>");
        PivotOptions options;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), options.key_fields);
        if (ec != std::errc() || ptr != num.data() + num.size()) throw UsageError("invalid num=" + num);
        if (options.key_fields != 1) throw UsageError("only num=1 is supported");
        LineReader in = tools::open_input({args.begin() + 1, args.end()});
        LineWriter out = tools::stdout_writer();
        map_pivot(in, out, options);
        out.flush();
    });
}
