#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/tabular.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("delr", "delr <spec> <literal> [file|-]", argc, argv, [](const auto& args) {
        if (args.size() < 2) throw UsageError("expected a field spec and a literal");
        const FieldSpec spec = FieldSpec::parse(args[0]);
        LineReader in = tools::open_input({args.begin() + 2, args.end()});
        LineWriter out = tools::stdout_writer();
        delete_rows(spec, args[1], in, out);
        out.flush();
    });
}
