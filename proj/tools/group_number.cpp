#include "meterflow/cli.hpp"
#include "meterflow/tabular.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("group-number", "group-number [file|-]", argc, argv, [](const auto& args) {
        LineReader in = tools::open_input(args);
        LineWriter out = tools::stdout_writer();
        group_number(in, out);
        out.flush();
    });
}
