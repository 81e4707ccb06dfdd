#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "meterflow/line_io.hpp"

namespace meterflow {

// Spill directory: $METERFLOW_TMPDIR if set, else the system temp directory.
std::filesystem::path spill_directory();

/// Anonymous scratch file, unlinked on creation and closed on destruction.
class TempFile {
public:
    explicit TempFile(const std::filesystem::path& dir = spill_directory());
    TempFile(TempFile&& other) noexcept;
    TempFile& operator=(TempFile&& other) noexcept;
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
    ~TempFile();

    // Writer sharing the file descriptor; flush it before reading back.
    LineWriter writer();
    // Independent reader starting at offset 0.
    LineReader reader() const;

private:
    int fd_ = -1;
};

/// Append-only line store that keeps data in memory up to `memory_limit`
/// bytes and moves everything to a TempFile beyond that.
class SpillBuffer {
public:
    explicit SpillBuffer(std::size_t memory_limit);

    void append_line(std::string_view line);
    // Reader over everything appended so far. Call once, after the last append.
    LineReader replay();

private:
    std::size_t limit_;
    std::string memory_;
    std::unique_ptr<TempFile> file_;
    std::unique_ptr<LineWriter> file_writer_;
};

}  // namespace meterflow
