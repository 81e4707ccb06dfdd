#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "meterflow/line_io.hpp"
#include "meterflow/process.hpp"

namespace testing {

namespace fs = std::filesystem;

class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag = "t") {
        static std::atomic<int> n{0};
        path_ = fs::temp_directory_path() /
                ("meterflow-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
    const fs::path& path() const { return path_; }
    fs::path operator/(const std::string& leaf) const { return path_ / leaf; }

private:
    fs::path path_;
};

inline void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Runs `op(reader, writer)` over an in-memory input and returns what it wrote.
inline std::string run_filter(const std::string& input,
                              const std::function<void(meterflow::LineReader&, meterflow::LineWriter&)>& op) {
    std::string out;
    auto in = meterflow::LineReader::from_string(input);
    auto w = meterflow::LineWriter::to_string(out);
    op(in, w);
    w.flush();
    return out;
}

inline std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) {
        if (c == '\'') q += "'\\''";
        else q.push_back(c);
    }
    return q + "'";
}

struct ToolResult {
    int status = -1;
    std::string out;
    std::string err;
};

// Runs a suite executable through /bin/sh. `redirects` is appended verbatim.
inline ToolResult run_tool(const std::string& tool, const std::vector<std::string>& args, const std::string& stdin_text = "",
                           const std::string& redirects = "") {
    ScratchDir dir("tool");
    write_text(dir / "in", stdin_text);
    std::string cmd = "cd " + shell_quote(dir.path().string()) + " && " +
                      shell_quote((meterflow::tools_directory() / tool).string());
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " <in >out 2>err " + redirects;
    const int raw = std::system(cmd.c_str());
    ToolResult r;
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(dir / "out");
    r.err = slurp(dir / "err");
    return r;
}

inline std::vector<std::string> sorted(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace testing
