#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace meterflow {

struct Command {
    std::string program;  // absolute path, or a bare name resolved through PATH
    std::vector<std::string> args;
    // Extra descriptors opened for writing on given paths in the child ("3> file").
    std::vector<std::pair<int, std::filesystem::path>> output_fds;
};

/// Commands joined stdin-to-stdout by pipes, like a shell `a | b | c`.
struct ProcessPipeline {
    std::vector<Command> commands;
    // Runs in a forked child and writes the first command's standard input.
    std::function<void(int fd)> feeder;
    std::optional<std::filesystem::path> stdin_path;
    // Standard output of the last command; inherited when unset.
    std::optional<std::filesystem::path> stdout_path;
};

/// Runs the pipeline to completion. Throws DataError naming the first command
/// that failed (ignoring upstream commands killed by SIGPIPE).
void run_pipeline(const ProcessPipeline& pipeline);

// Directory holding the suite's executables: $METERFLOW_TOOLS_DIR when set,
// otherwise the directory of the running executable.
std::filesystem::path tools_directory();

// Shell-like rendering for diagnostics.
std::string describe(const ProcessPipeline& pipeline);

}  // namespace meterflow
