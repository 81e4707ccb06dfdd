#include "meterflow/process.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "meterflow/errors.hpp"

namespace meterflow {

namespace {

std::string sys_error(const std::string& what) { return what + ": " + std::strerror(errno); }

int open_for_write(const std::filesystem::path& path) {
    return ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
}

[[noreturn]] void exec_command(const Command& cmd) {
    for (const auto& [fd, path] : cmd.output_fds) {
        int f = open_for_write(path);
        if (f < 0 || ::dup2(f, fd) < 0) _exit(126);
        if (f != fd) ::close(f);
    }
    std::vector<char*> argv;
    std::string name = std::filesystem::path(cmd.program).filename().string();
    argv.push_back(name.data());
    std::vector<std::string> args = cmd.args;
    for (auto& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    if (cmd.program.find('/') != std::string::npos) {
        ::execv(cmd.program.c_str(), argv.data());
    } else {
        ::execvp(cmd.program.c_str(), argv.data());
    }
    _exit(127);
}

}  // namespace

std::string describe(const ProcessPipeline& pipeline) {
    std::string s;
    if (pipeline.feeder) s += "<feeder> | ";
    for (std::size_t i = 0; i < pipeline.commands.size(); ++i) {
        if (i) s += " | ";
        s += std::filesystem::path(pipeline.commands[i].program).filename().string();
        for (const auto& a : pipeline.commands[i].args) s += " " + a;
    }
    return s;
}

void run_pipeline(const ProcessPipeline& pipeline) {
    if (pipeline.commands.empty()) throw std::invalid_argument("empty pipeline");
    const std::size_t n = pipeline.commands.size();

    std::vector<int> to_close;
    auto close_all = [&] {
        for (int fd : to_close) ::close(fd);
        to_close.clear();
    };

    int first_in = -1;
    if (pipeline.stdin_path) {
        first_in = ::open(pipeline.stdin_path->c_str(), O_RDONLY | O_CLOEXEC);
        if (first_in < 0) throw UsageError(sys_error("cannot open " + pipeline.stdin_path->string()));
        to_close.push_back(first_in);
    }
    int last_out = -1;
    if (pipeline.stdout_path) {
        last_out = open_for_write(*pipeline.stdout_path);
        if (last_out < 0) {
            close_all();
            throw UsageError(sys_error("cannot create " + pipeline.stdout_path->string()));
        }
        to_close.push_back(last_out);
    }

    // pipes[i] feeds command i; pipes[0] exists only with a feeder.
    std::vector<std::array<int, 2>> pipes(n, {-1, -1});
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && !pipeline.feeder) continue;
        int p[2];
        if (::pipe2(p, O_CLOEXEC) < 0) {
            close_all();
            throw std::runtime_error(sys_error("pipe"));
        }
        pipes[i] = {p[0], p[1]};
        to_close.push_back(p[0]);
        to_close.push_back(p[1]);
    }

    std::vector<pid_t> pids;
    pid_t feeder_pid = -1;
    if (pipeline.feeder) {
        feeder_pid = ::fork();
        if (feeder_pid < 0) {
            close_all();
            throw std::runtime_error(sys_error("fork"));
        }
        if (feeder_pid == 0) {
            const int out = pipes[0][1];
            for (int fd : to_close) {
                if (fd != out) ::close(fd);
            }
            int code = 0;
            try {
                pipeline.feeder(out);
            } catch (const std::exception& e) {
                std::fprintf(stderr, "feeder: %s\n", e.what());
                code = 2;
            }
            ::close(out);
            _exit(code);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        pid_t pid = ::fork();
        if (pid < 0) {
            close_all();
            for (pid_t p : pids) ::waitpid(p, nullptr, 0);
            throw std::runtime_error(sys_error("fork"));
        }
        if (pid == 0) {
            ::signal(SIGPIPE, SIG_DFL);
            int in = pipes[i][0] >= 0 ? pipes[i][0] : (i == 0 ? first_in : -1);
            int out = i + 1 < n ? pipes[i + 1][1] : last_out;
            if (in >= 0 && ::dup2(in, 0) < 0) _exit(126);
            if (out >= 0 && ::dup2(out, 1) < 0) _exit(126);
            exec_command(pipeline.commands[i]);
        }
        pids.push_back(pid);
    }
    close_all();

    std::string failure;
    auto record = [&](int status, const std::string& who) {
        if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return;
        std::string what;
        if (WIFEXITED(status)) {
            int code = WEXITSTATUS(status);
            what = code == 127 ? "could not be executed" : "exited with status " + std::to_string(code);
        } else if (WIFSIGNALED(status)) {
            if (WTERMSIG(status) == SIGPIPE) return;  // downstream closed early; reported there
            what = "killed by signal " + std::to_string(WTERMSIG(status));
        }
        if (failure.empty()) failure = who + " " + what;
    };

    std::vector<int> statuses(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        while (::waitpid(pids[i], &statuses[i], 0) < 0 && errno == EINTR) {
        }
    }
    int feeder_status = 0;
    if (feeder_pid > 0) {
        while (::waitpid(feeder_pid, &feeder_status, 0) < 0 && errno == EINTR) {
        }
    }
    // Upstream first: a truncated stream can make downstream tools fail too.
    if (feeder_pid > 0) record(feeder_status, "input feeder");
    for (std::size_t i = 0; i < n; ++i) {
        record(statuses[i], "'" + std::filesystem::path(pipeline.commands[i].program).filename().string() + "'");
    }
    if (!failure.empty()) throw DataError("pipeline failed: " + failure + " [" + describe(pipeline) + "]");
}

std::filesystem::path tools_directory() {
    if (const char* dir = std::getenv("METERFLOW_TOOLS_DIR"); dir && *dir) return dir;
    std::error_code ec;
    auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (ec) return std::filesystem::current_path();
    return exe.parent_path();
}

}  // namespace meterflow
