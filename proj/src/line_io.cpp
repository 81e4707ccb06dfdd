#include "meterflow/line_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "meterflow/errors.hpp"

namespace meterflow {

namespace {

constexpr std::size_t kReadChunk = 1 << 17;

std::string errno_text() { return std::strerror(errno); }

}  // namespace

LineReader LineReader::from_fd(int fd, bool owns_fd) {
    LineReader r;
    r.fd_ = fd;
    r.owns_fd_ = owns_fd;
    r.buf_.resize(kReadChunk);
    r.name_ = fd == 0 ? "-" : "fd " + std::to_string(fd);
    return r;
}

LineReader LineReader::open(const std::string& path) {
    if (path == "-") return from_fd(0);
    int fd = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) throw UsageError("cannot open '" + path + "': " + errno_text());
    LineReader r = from_fd(fd, true);
    r.name_ = path;
    return r;
}

LineReader LineReader::from_string(std::string text) {
    LineReader r;
    r.buf_.assign(text.begin(), text.end());
    r.end_ = r.buf_.size();
    r.eof_ = true;
    r.name_ = "<memory>";
    return r;
}

LineReader::LineReader(LineReader&& other) noexcept { *this = std::move(other); }

LineReader& LineReader::operator=(LineReader&& other) noexcept {
    if (this != &other) {
        if (owns_fd_ && fd_ >= 0) ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
        owns_fd_ = std::exchange(other.owns_fd_, false);
        eof_ = other.eof_;
        buf_ = std::move(other.buf_);
        begin_ = other.begin_;
        end_ = other.end_;
        line_number_ = other.line_number_;
        name_ = std::move(other.name_);
    }
    return *this;
}

LineReader::~LineReader() {
    if (owns_fd_ && fd_ >= 0) ::close(fd_);
}

bool LineReader::fill() {
    if (eof_) return false;
    if (begin_ > 0) {
        std::memmove(buf_.data(), buf_.data() + begin_, end_ - begin_);
        end_ -= begin_;
        begin_ = 0;
    }
    if (buf_.size() - end_ < kReadChunk / 2) buf_.resize(buf_.size() * 2);
    for (;;) {
        ssize_t n = ::read(fd_, buf_.data() + end_, buf_.size() - end_);
        if (n > 0) {
            end_ += static_cast<std::size_t>(n);
            return true;
        }
        if (n == 0) {
            eof_ = true;
            return false;
        }
        if (errno == EINTR) continue;
        throw std::runtime_error("read error on " + name_ + ": " + errno_text());
    }
}

bool LineReader::next(std::string_view& line) {
    std::size_t scan = begin_;
    for (;;) {
        const void* nl = std::memchr(buf_.data() + scan, '\n', end_ - scan);
        if (nl) {
            std::size_t pos = static_cast<const char*>(nl) - buf_.data();
            std::size_t len = pos - begin_;
            if (len > 0 && buf_[pos - 1] == '\r') --len;
            line = std::string_view(buf_.data() + begin_, len);
            begin_ = pos + 1;
            ++line_number_;
            return true;
        }
        std::size_t scanned = end_ - begin_;
        if (!fill()) break;
        scan = begin_ + scanned;
    }
    if (begin_ == end_) return false;
    std::size_t len = end_ - begin_;
    if (buf_[end_ - 1] == '\r') --len;
    line = std::string_view(buf_.data() + begin_, len);
    begin_ = end_;
    ++line_number_;
    return true;
}

LineWriter LineWriter::to_fd(int fd, bool owns_fd) {
    LineWriter w;
    w.sink_ = Sink::fd;
    w.fd_ = fd;
    w.owns_fd_ = owns_fd;
    w.buf_.reserve(kFlushThreshold * 2);
    return w;
}

LineWriter LineWriter::create(const std::filesystem::path& path) {
    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw UsageError("cannot create '" + path.string() + "': " + errno_text());
    return to_fd(fd, true);
}

LineWriter LineWriter::to_string(std::string& target) {
    LineWriter w;
    w.sink_ = Sink::string;
    w.target_ = &target;
    return w;
}

LineWriter LineWriter::discard() { return LineWriter(); }

LineWriter::LineWriter(LineWriter&& other) noexcept { *this = std::move(other); }

LineWriter& LineWriter::operator=(LineWriter&& other) noexcept {
    if (this != &other) {
        try {
            flush();
        } catch (...) {
        }
        if (owns_fd_ && fd_ >= 0) ::close(fd_);
        sink_ = std::exchange(other.sink_, Sink::null);
        fd_ = std::exchange(other.fd_, -1);
        owns_fd_ = std::exchange(other.owns_fd_, false);
        target_ = std::exchange(other.target_, nullptr);
        buf_ = std::move(other.buf_);
        other.buf_.clear();
    }
    return *this;
}

LineWriter::~LineWriter() {
    try {
        flush();
    } catch (...) {
    }
    if (owns_fd_ && fd_ >= 0) ::close(fd_);
}

void LineWriter::flush_buffer() {
    switch (sink_) {
        case Sink::null:
            break;
        case Sink::string:
            target_->append(buf_);
            break;
        case Sink::fd: {
            const char* p = buf_.data();
            std::size_t left = buf_.size();
            while (left > 0) {
                ssize_t n = ::write(fd_, p, left);
                if (n < 0) {
                    if (errno == EINTR) continue;
                    buf_.clear();
                    throw std::runtime_error("write error: " + errno_text());
                }
                p += n;
                left -= static_cast<std::size_t>(n);
            }
            break;
        }
    }
    buf_.clear();
}

void LineWriter::flush() {
    if (!buf_.empty()) flush_buffer();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

}  // namespace meterflow
