#include <charconv>

#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/sort_agg.hpp"
#include "tool_args.hpp"

namespace {

std::size_t parse_column(const std::string& text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw meterflow::UsageError("invalid column '" + text + "'");
    }
    return value;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("sm2", "sm2 <k_from> <k_to> <v_from> <v_to> [file|-]", argc, argv, [](const auto& args) {
        if (args.size() < 4) throw UsageError("expected four column numbers");
        SumColumns columns{parse_column(args[0]), parse_column(args[1]), parse_column(args[2]), parse_column(args[3])};
        columns.validate();
        LineReader in = tools::open_input({args.begin() + 4, args.end()});
        LineWriter out = tools::stdout_writer();
        sm2(columns, in, out);
        out.flush();
    });
}
