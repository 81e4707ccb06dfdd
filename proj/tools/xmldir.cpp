#include <fcntl.h>
#include <unistd.h>

#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/xml_flatten.hpp"
#include "tool_args.hpp"

int main(int argc, char** argv) {
    using namespace meterflow;
    return run_tool("xmldir", "xmldir <absolute-element-path> [file|-]", argc, argv, [](const auto& args) {
        if (args.empty() || args.size() > 2) throw UsageError("expected an element path and at most one input");
        const ElementPath path = ElementPath::parse(args[0]);
        int fd = 0;
        if (args.size() == 2 && args[1] != "-") {
            fd = ::open(args[1].c_str(), O_RDONLY | O_CLOEXEC);
            if (fd < 0) throw UsageError("cannot open '" + args[1] + "'");
        }
        LineWriter out = tools::stdout_writer();
        flatten_xml(path, fd, out);
        out.flush();
        if (fd != 0) ::close(fd);
    });
}
