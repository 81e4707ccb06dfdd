#include "meterflow/pipeline.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <set>

#include "meterflow/errors.hpp"
#include "meterflow/join.hpp"
#include "meterflow/line_io.hpp"
#include "meterflow/process.hpp"

namespace fs = std::filesystem;

namespace meterflow {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw UsageError("invalid boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        std::size_t comma = v.find(',', start);
        if (comma == std::string::npos) comma = v.size();
        std::string item = trim(std::string_view(v).substr(start, comma - start));
        if (!item.empty()) out.push_back(item);
        start = comma + 1;
    }
    return out;
}

// Temporary sibling that is renamed over `target` on commit and removed otherwise.
class AtomicOutput {
public:
    explicit AtomicOutput(fs::path target) : target_(std::move(target)) {
        fs::create_directories(target_.parent_path());
        temp_ = target_;
        temp_ += ".tmp." + std::to_string(::getpid());
    }
    AtomicOutput(const AtomicOutput&) = delete;
    AtomicOutput& operator=(const AtomicOutput&) = delete;
    ~AtomicOutput() {
        if (!committed_) {
            std::error_code ec;
            fs::remove(temp_, ec);
        }
    }

    const fs::path& temp() const noexcept { return temp_; }
    void commit() {
        fs::rename(temp_, target_);
        committed_ = true;
    }

private:
    fs::path target_;
    fs::path temp_;
    bool committed_ = false;
};

Command tool(const fs::path& tools, const char* name, std::vector<std::string> args) {
    return Command{(tools / name).string(), std::move(args), {}};
}

void require_file(const fs::path& p, const char* what) {
    if (!fs::is_regular_file(p)) throw UsageError(std::string(what) + " '" + p.string() + "' does not exist");
}

// Streams files back to back into `fd`, like `find ... -exec cat {} +`.
void concatenate_into(int fd, const std::vector<fs::path>& files) {
    std::vector<char> buf(1 << 16);
    for (const auto& f : files) {
        int in = ::open(f.c_str(), O_RDONLY | O_CLOEXEC);
        if (in < 0) throw std::runtime_error("cannot open " + f.string() + ": " + std::strerror(errno));
        for (;;) {
            ssize_t n = ::read(in, buf.data(), buf.size());
            if (n < 0 && errno == EINTR) continue;
            if (n < 0) {
                ::close(in);
                throw std::runtime_error("read error on " + f.string());
            }
            if (n == 0) break;
            const char* p = buf.data();
            while (n > 0) {
                ssize_t w = ::write(fd, p, static_cast<std::size_t>(n));
                if (w < 0 && errno == EINTR) continue;
                if (w < 0) {
                    ::close(in);
                    throw std::runtime_error(std::string("write error: ") + std::strerror(errno));
                }
                p += w;
                n -= w;
            }
        }
        ::close(in);
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

PipelineConfig PipelineConfig::parse(std::string_view text) {
    PipelineConfig c;
    LineReader in = LineReader::from_string(std::string(text));
    std::string_view raw;
    while (in.next(raw)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(in.line_number()) + ": expected key=value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "readings_dir") c.readings_dir = value;
        else if (key == "parsed_dir") c.parsed_dir = value;
        else if (key == "valid_dir") c.valid_dir = value;
        else if (key == "corrected_dir") c.corrected_dir = value;
        else if (key == "master" || key == "master_path") c.master_path = value;
        else if (key == "batch_dirs") c.batch_dirs = split_list(value);
        else if (key == "keep_intermediates") c.keep_intermediates = parse_bool(key, value);
        else if (key == "tools_dir") c.tools_dir = value;
        else throw UsageError("config line " + std::to_string(in.line_number()) + ": unknown key '" + key + "'");
    }
    return c;
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
    PipelineConfig c = parse(read_file(path));
    // Relative paths are taken relative to the config file.
    const fs::path base = path.parent_path();
    for (fs::path* p : {&c.readings_dir, &c.parsed_dir, &c.valid_dir, &c.corrected_dir, &c.master_path, &c.tools_dir}) {
        if (!p->empty() && p->is_relative()) *p = base / *p;
    }
    return c;
}

void PipelineConfig::validate() const {
    const std::pair<const char*, const fs::path*> required[] = {
        {"readings_dir", &readings_dir}, {"parsed_dir", &parsed_dir},     {"valid_dir", &valid_dir},
        {"corrected_dir", &corrected_dir}, {"master", &master_path},
    };
    std::set<fs::path> seen;
    for (const auto& [key, p] : required) {
        if (p->empty()) throw UsageError(std::string("config is missing ") + key);
        if (!seen.insert(fs::weakly_canonical(*p)).second) throw UsageError(std::string("config path for ") + key + " is not distinct");
    }
    if (!fs::is_directory(readings_dir)) throw UsageError("readings_dir '" + readings_dir.string() + "' is not a directory");
    require_file(master_path, "master file");
    MasterIndex::load_file(master_path.string());
}

fs::path PipelineConfig::tools() const { return tools_dir.empty() ? tools_directory() : tools_dir; }

std::vector<std::string> PipelineConfig::resolved_batches() const {
    if (batch_dirs.size() == 1 && batch_dirs[0] == "auto") {
        std::vector<std::string> out;
        for (const auto& e : fs::directory_iterator(readings_dir)) {
            if (e.is_directory()) out.push_back(e.path().filename().string());
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    return batch_dirs;
}

StagePaths single_run_paths(const PipelineConfig& c) {
    return {c.readings_dir,
            c.master_path,
            c.parsed_dir / kParsedFile,
            c.valid_dir / kValidFile,
            c.valid_dir / kInvalidFile,
            c.corrected_dir / kAggregateFile};
}

StagePaths batch_paths(const PipelineConfig& c, const std::string& batch) {
    return {c.readings_dir / batch,
            c.master_path,
            c.parsed_dir / batch / kParsedFile,
            c.valid_dir / batch / kValidFile,
            c.valid_dir / batch / kInvalidFile,
            c.corrected_dir / batch / kAggregateFile};
}

std::vector<fs::path> find_xml_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.path().extension() == ".xml" && e.is_regular_file()) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) { return a.native() < b.native(); });
    return files;
}

void stage_parse(const StagePaths& paths, const fs::path& tools) {
    if (!fs::is_directory(paths.readings_dir)) throw UsageError("'" + paths.readings_dir.string() + "' is not a directory");
    auto files = find_xml_files(paths.readings_dir);
    if (files.empty()) throw DataError("no *.xml files under '" + paths.readings_dir.string() + "'");

    AtomicOutput out(paths.parsed_file);
    ProcessPipeline p;
    p.feeder = [&files](int fd) { concatenate_into(fd, files); };
    p.commands = {
        tool(tools, "xmldir", {"/MeterReadings/MeterReading", "-"}),
        tool(tools, "self", {"NF-1", "NF"}),
        tool(tools, "filter-tags", {}),
        tool(tools, "delr", {"2", "MeterID"}),
        tool(tools, "group-number", {}),
        tool(tools, "map", {"num=1"}),
        tool(tools, "delf", {"1"}),
        tool(tools, "delr", {"3", "0"}),
    };
    p.stdout_path = out.temp();
    run_pipeline(p);
    out.commit();
}

void stage_validate(const StagePaths& paths, const fs::path& tools) {
    require_file(paths.master, "master file");
    require_file(paths.parsed_file, "parsed file");
    AtomicOutput valid(paths.valid_file);
    AtomicOutput invalid(paths.invalid_file);
    Command join = tool(tools, "cjoin1", {"+ng3", "key=2", paths.master.string(), paths.parsed_file.string()});
    join.output_fds.emplace_back(3, invalid.temp());
    ProcessPipeline p;
    p.commands = {std::move(join)};
    p.stdout_path = valid.temp();
    run_pipeline(p);
    valid.commit();
    invalid.commit();
}

void stage_aggregate(const StagePaths& paths, const fs::path& tools) {
    require_file(paths.valid_file, "valid readings file");
    AtomicOutput out(paths.aggregate_file);
    ProcessPipeline p;
    p.commands = {
        tool(tools, "self", {"3", "5", paths.valid_file.string()}),
        tool(tools, "msort", {"key=1"}),
        tool(tools, "sm2", {"1", "1", "2", "2"}),
    };
    p.stdout_path = out.temp();
    run_pipeline(p);
    out.commit();
}

void stage_parse(const PipelineConfig& config) { stage_parse(single_run_paths(config), config.tools()); }
void stage_validate(const PipelineConfig& config) { stage_validate(single_run_paths(config), config.tools()); }
void stage_aggregate(const PipelineConfig& config) { stage_aggregate(single_run_paths(config), config.tools()); }

double RunSummary::total_s() const noexcept {
    double t = 0;
    for (const auto& b : batches) t += b.total_s();
    return t;
}

RunSummary run_batches(const PipelineConfig& config, std::ostream* progress) {
    config.validate();
    const fs::path tools = config.tools();
    RunSummary summary;

    auto run_one = [&](const std::string& name, const StagePaths& paths) {
        BatchTiming t;
        t.name = name;
        auto start = std::chrono::steady_clock::now();
        stage_parse(paths, tools);
        t.parse_s = seconds_since(start);
        start = std::chrono::steady_clock::now();
        stage_validate(paths, tools);
        t.validate_s = seconds_since(start);
        if (!config.keep_intermediates) fs::remove(paths.parsed_file);
        start = std::chrono::steady_clock::now();
        stage_aggregate(paths, tools);
        t.aggregate_s = seconds_since(start);
        if (progress) {
            *progress << "batch " << t.name << " done in " << t.total_s() << " s\n";
            progress->flush();
        }
        summary.batches.push_back(t);
    };

    const auto batches = config.resolved_batches();
    if (batches.empty()) {
        run_one(".", single_run_paths(config));
        summary.totals_file = single_run_paths(config).aggregate_file;
        return summary;
    }

    std::vector<fs::path> aggregates;
    for (const auto& b : batches) {
        const StagePaths paths = batch_paths(config, b);
        run_one(b, paths);
        aggregates.push_back(paths.aggregate_file);
    }

    // Exact sums make re-aggregating per-batch totals equal to one big run.
    summary.totals_file = config.corrected_dir / kAggregateFile;
    AtomicOutput out(summary.totals_file);
    ProcessPipeline p;
    p.feeder = [&aggregates](int fd) { concatenate_into(fd, aggregates); };
    p.commands = {tool(tools, "msort", {"key=1"}), tool(tools, "sm2", {"1", "1", "2", "2"})};
    p.stdout_path = out.temp();
    run_pipeline(p);
    out.commit();
    return summary;
}

double projected_run_seconds(std::uint64_t batches, double seconds_per_batch) {
    return static_cast<double>(batches) * seconds_per_batch;
}

void write_summary(const RunSummary& summary, std::ostream& out) {
    char buf[256];
    for (const auto& b : summary.batches) {
        std::snprintf(buf, sizeof buf, "batch %s parse=%.3fs validate=%.3fs aggregate=%.3fs total=%.3fs\n",
                      b.name.c_str(), b.parse_s, b.validate_s, b.aggregate_s, b.total_s());
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "total batches=%zu time=%.3fs\n", summary.batches.size(), summary.total_s());
    out << buf;
    out << "totals " << summary.totals_file.string() << '\n';
}

}  // namespace meterflow
