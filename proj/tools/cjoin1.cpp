#include <fcntl.h>
#include <unistd.h>

#include <charconv>
#include <optional>

#include "meterflow/cli.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/join.hpp"
#include "tool_args.hpp"

namespace {

int parse_fd(std::string_view text) {
    int fd = -1;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), fd);
    if (ec != std::errc() || ptr != text.data() + text.size() || fd < 0) {
        throw meterflow::UsageError("invalid file descriptor '" + std::string(text) + "'");
    }
    if (::fcntl(fd, F_GETFD) < 0) throw meterflow::UsageError("file descriptor " + std::to_string(fd) + " is not open");
    return fd;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace meterflow;
    constexpr const char* usage = "cjoin1 [--reject <path|&N>] [+ng<N>] key=<spec> <masterfile> [txnfile|-]";
    return run_tool("cjoin1", usage, argc, argv, [](const auto& args) {
        std::optional<std::string> reject;
        std::optional<FieldSpec> key;
        std::vector<std::string> positional;
        for (std::size_t i = 0; i < args.size(); ++i) {
            const std::string& a = args[i];
            std::string value;
            if (a == "--reject") {
                if (i + 1 == args.size()) throw UsageError("--reject needs a target");
                reject = args[++i];
            } else if (match_key_value(a, "--reject", value)) {
                reject = value;
            } else if (a.starts_with("+ng")) {
                reject = "&" + a.substr(3);
            } else if (match_key_value(a, "key", value)) {
                key = FieldSpec::parse(value);
            } else {
                positional.push_back(a);
            }
        }
        if (!key) throw UsageError("key=<spec> is required");
        if (positional.empty() || positional.size() > 2) throw UsageError("expected a master file and at most one input");

        const MasterIndex master = MasterIndex::load_file(positional[0]);
        LineReader txn = tools::open_input({positional.begin() + 1, positional.end()});
        LineWriter matched = tools::stdout_writer();
        LineWriter rejects = LineWriter::discard();
        if (reject) {
            if (reject->starts_with("&")) {
                rejects = LineWriter::to_fd(parse_fd(std::string_view(*reject).substr(1)));
            } else {
                rejects = LineWriter::create(*reject);
            }
        }
        const JoinCounts counts = cjoin1(*key, master, txn, matched, rejects);
        matched.flush();
        rejects.flush();
        if (!reject && counts.unmatched > 0) {
            warn("cjoin1", std::to_string(counts.unmatched) + " unmatched rows discarded (use --reject to keep them)");
        }
    });
}
