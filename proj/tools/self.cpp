#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/tabular.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("self", "self <spec>... [file|-]   (spec: N, NF or NF-k)", argc, argv, [](const auto& args) {
        std::vector<FieldSpec> specs;
        std::vector<std::string> rest;
        for (std::size_t i = 0; i < args.size(); ++i) {
            // The last argument names the input unless it is itself a spec.
            if (i + 1 == args.size() && !tools::looks_like_field_spec(args[i])) {
                rest.push_back(args[i]);
            } else {
                specs.push_back(FieldSpec::parse(args[i]));
            }
        }
        if (specs.empty()) throw UsageError("at least one field spec is required");
        LineReader in = tools::open_input(rest);
        LineWriter out = tools::stdout_writer();
        select_fields(specs, in, out);
        out.flush();
    });
}
