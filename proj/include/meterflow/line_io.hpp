#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace meterflow {

/// Buffered LF-framed line source over a file descriptor or an in-memory string.
///
/// Each line is returned without its terminator; a trailing CR is stripped.
/// A final line lacking a newline is still returned. Views are valid until the
/// next call to next().
class LineReader {
public:
    static LineReader from_fd(int fd, bool owns_fd = false);
    // "-" means standard input. Throws UsageError when the file cannot be opened.
    static LineReader open(const std::string& path);
    static LineReader from_string(std::string text);

    LineReader(LineReader&& other) noexcept;
    LineReader& operator=(LineReader&& other) noexcept;
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;
    ~LineReader();

    bool next(std::string_view& line);
    // Number of the line most recently returned by next() (1-based).
    std::uint64_t line_number() const noexcept { return line_number_; }
    const std::string& name() const noexcept { return name_; }

private:
    LineReader() = default;
    bool fill();

    int fd_ = -1;
    bool owns_fd_ = false;
    bool eof_ = false;
    std::vector<char> buf_;
    std::size_t begin_ = 0;
    std::size_t end_ = 0;
    std::uint64_t line_number_ = 0;
    std::string name_;
};

/// Buffered line sink to a file descriptor or an in-memory string.
class LineWriter {
public:
    static LineWriter to_fd(int fd, bool owns_fd = false);
    // Truncating create. Throws UsageError on failure.
    static LineWriter create(const std::filesystem::path& path);
    static LineWriter to_string(std::string& target);
    static LineWriter discard();

    LineWriter(LineWriter&& other) noexcept;
    LineWriter& operator=(LineWriter&& other) noexcept;
    LineWriter(const LineWriter&) = delete;
    LineWriter& operator=(const LineWriter&) = delete;
    ~LineWriter();

    void write(std::string_view bytes) {
        buf_.append(bytes);
        if (buf_.size() >= kFlushThreshold) flush_buffer();
    }
    void put(char c) { buf_.push_back(c); }
    void line(std::string_view text) {
        buf_.append(text);
        buf_.push_back('\n');
        if (buf_.size() >= kFlushThreshold) flush_buffer();
    }
    void end_line() {
        buf_.push_back('\n');
        if (buf_.size() >= kFlushThreshold) flush_buffer();
    }
    // Writes `fields` joined by single spaces, then a newline.
    template <typename Range>
    void fields(const Range& range) {
        bool first = true;
        for (const auto& f : range) {
            if (!first) buf_.push_back(' ');
            first = false;
            buf_.append(f);
        }
        end_line();
    }

    // Pushes buffered bytes to the sink. Throws std::runtime_error on write failure.
    void flush();

private:
    static constexpr std::size_t kFlushThreshold = 1 << 16;
    enum class Sink { fd, string, null };

    LineWriter() = default;
    void flush_buffer();

    Sink sink_ = Sink::null;
    int fd_ = -1;
    bool owns_fd_ = false;
    std::string* target_ = nullptr;
    std::string buf_;
};

// Reads a whole file; throws UsageError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace meterflow
