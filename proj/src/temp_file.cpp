#include "meterflow/temp_file.hpp"

#include <fcntl.h>
#include <stdlib.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace meterflow {

std::filesystem::path spill_directory() {
    if (const char* dir = std::getenv("METERFLOW_TMPDIR"); dir && *dir) return dir;
    return std::filesystem::temp_directory_path();
}

TempFile::TempFile(const std::filesystem::path& dir) {
    std::string templ = (dir / "meterflow-spill-XXXXXX").string();
    fd_ = ::mkostemp(templ.data(), O_CLOEXEC);
    if (fd_ < 0) throw std::runtime_error("cannot create temporary file in " + dir.string() + ": " + std::strerror(errno));
    ::unlink(templ.c_str());
}

TempFile::TempFile(TempFile&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

TempFile& TempFile::operator=(TempFile&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

TempFile::~TempFile() {
    if (fd_ >= 0) ::close(fd_);
}

LineWriter TempFile::writer() { return LineWriter::to_fd(fd_, false); }

LineReader TempFile::reader() const {
    // A fresh open file description gives the reader its own offset.
    std::string proc = "/proc/self/fd/" + std::to_string(fd_);
    int fd = ::open(proc.c_str(), O_RDONLY | O_CLOEXEC);
    if (fd < 0) throw std::runtime_error(std::string("cannot reopen temporary file: ") + std::strerror(errno));
    return LineReader::from_fd(fd, true);
}

SpillBuffer::SpillBuffer(std::size_t memory_limit) : limit_(memory_limit) {}

void SpillBuffer::append_line(std::string_view line) {
    if (file_writer_) {
        file_writer_->line(line);
        return;
    }
    memory_.append(line);
    memory_.push_back('\n');
    if (memory_.size() > limit_) {
        file_ = std::make_unique<TempFile>();
        file_writer_ = std::make_unique<LineWriter>(file_->writer());
        file_writer_->write(memory_);
        std::string().swap(memory_);
    }
}

LineReader SpillBuffer::replay() {
    if (file_writer_) {
        file_writer_->flush();
        return file_->reader();
    }
    return LineReader::from_string(std::move(memory_));
}

}  // namespace meterflow
