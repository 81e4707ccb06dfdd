#include "meterflow/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <unistd.h>

#include "meterflow/errors.hpp"
#include "meterflow/generator.hpp"
#include "meterflow/line_io.hpp"
#include "meterflow/pipeline.hpp"
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

template <typename T>
T parse_number(std::string_view text, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError(std::string("invalid ") + what + ": '" + std::string(text) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::uint64_t file_size_or_zero(const fs::path& p) {
    std::error_code ec;
    auto n = fs::file_size(p, ec);
    return ec ? 0 : n;
}

std::uint64_t tree_bytes(const fs::path& dir) {
    std::uint64_t total = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) total += e.file_size();
    }
    return total;
}

double time_once(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

BenchConfig BenchConfig::parse(std::string_view text) {
    BenchConfig c;
    LineReader in = LineReader::from_string(std::string(text));
    std::string_view raw;
    while (in.next(raw)) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(in.line_number()) + ": expected key=value");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key == "file_counts") {
            c.file_counts.clear();
            std::size_t start = 0;
            while (start <= value.size()) {
                std::size_t comma = value.find(',', start);
                if (comma == std::string::npos) comma = value.size();
                std::string item = trim(std::string_view(value).substr(start, comma - start));
                if (!item.empty()) c.file_counts.push_back(parse_number<std::uint64_t>(item, "file count"));
                start = comma + 1;
            }
        } else if (key == "repetitions") {
            c.repetitions = parse_number<std::uint32_t>(value, "repetitions");
        } else if (key == "warmups") {
            c.warmups = parse_number<std::uint32_t>(value, "warmups");
        } else if (key == "corpus_seed") {
            c.corpus_seed = parse_number<std::uint64_t>(value, "corpus_seed");
        } else if (key == "invalid_ratio") {
            c.invalid_ratio = parse_number<double>(value, "invalid_ratio");
        } else if (key == "work_dir") {
            c.work_dir = value;
        } else if (key == "tools_dir") {
            c.tools_dir = value;
        } else {
            throw UsageError("config line " + std::to_string(in.line_number()) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

BenchConfig BenchConfig::load(const fs::path& path) { return parse(read_file(path)); }

void BenchConfig::validate() const {
    if (repetitions < 1) throw UsageError("repetitions must be >= 1");
    if (file_counts.empty()) throw UsageError("file_counts must not be empty");
    for (std::size_t i = 0; i < file_counts.size(); ++i) {
        if (file_counts[i] == 0) throw UsageError("file counts must be positive");
        if (i && file_counts[i] <= file_counts[i - 1]) throw UsageError("file_counts must be strictly increasing");
    }
    if (!(invalid_ratio >= 0 && invalid_ratio <= 1)) throw UsageError("invalid_ratio must be within [0, 1]");
}

TimingStats summarize(std::span<const double> samples) {
    TimingStats s;
    if (samples.empty()) return s;
    s.min = *std::min_element(samples.begin(), samples.end());
    s.max = *std::max_element(samples.begin(), samples.end());
    double sum = 0;
    for (double x : samples) sum += x;
    s.mean = std::clamp(sum / static_cast<double>(samples.size()), s.min, s.max);
    double sq = 0;
    for (double x : samples) sq += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(samples.size()));
    return s;
}

std::string csv_row(const StageRow& r) {
    return std::to_string(r.file_count) + "," + r.stage + "," + format_double(r.time.mean) + "," +
           format_double(r.time.stddev) + "," + format_double(r.time.min) + "," + format_double(r.time.max) + "," +
           std::to_string(r.bytes_in) + "," + std::to_string(r.bytes_out);
}

std::string BatchReport::to_csv() const {
    std::string s = std::string(kHeader) + "\n";
    for (const auto& r : rows) s += csv_row(r) + "\n";
    if (aborted) s += "# ABORTED: " + abort_reason + "\n";
    return s;
}

BatchReport BatchReport::parse_csv(std::string_view text) {
    BatchReport report;
    LineReader in = LineReader::from_string(std::string(text));
    std::string_view line;
    bool header_seen = false;
    while (in.next(line)) {
        if (line.empty()) continue;
        if (line.starts_with("# ABORTED: ")) {
            report.aborted = true;
            report.abort_reason = std::string(line.substr(11));
            continue;
        }
        if (line.starts_with("#")) continue;
        if (!header_seen) {
            if (line != kHeader) throw DataError("unexpected CSV header");
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> cells;
        std::size_t start = 0;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) comma = line.size();
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (cells.size() != 8) throw DataError("CSV line " + std::to_string(in.line_number()) + ": expected 8 columns");
        StageRow r;
        r.file_count = parse_number<std::uint64_t>(cells[0], "file_count");
        r.stage = std::string(cells[1]);
        r.time.mean = parse_number<double>(cells[2], "mean_s");
        r.time.stddev = parse_number<double>(cells[3], "std_s");
        r.time.min = parse_number<double>(cells[4], "min_s");
        r.time.max = parse_number<double>(cells[5], "max_s");
        r.bytes_in = parse_number<std::uint64_t>(cells[6], "bytes_in");
        r.bytes_out = parse_number<std::uint64_t>(cells[7], "bytes_out");
        report.rows.push_back(std::move(r));
    }
    return report;
}

const StageRow* BatchReport::find(std::uint64_t file_count, std::string_view stage) const {
    for (const auto& r : rows) {
        if (r.file_count == file_count && r.stage == stage) return &r;
    }
    return nullptr;
}

BatchReport run_bench(const BenchConfig& config, const fs::path& csv_path, std::ostream* progress) {
    config.validate();
    const fs::path tools = config.tools_dir.empty() ? tools_directory() : config.tools_dir;
    const fs::path work = config.work_dir.empty()
                              ? fs::temp_directory_path() / ("meterflow-bench-" + std::to_string(::getpid()))
                              : config.work_dir;
    fs::create_directories(work);
    if (csv_path.has_parent_path()) fs::create_directories(csv_path.parent_path());

    BatchReport report;
    std::ofstream csv(csv_path, std::ios::trunc);
    if (!csv) throw UsageError("cannot create '" + csv_path.string() + "'");
    csv << BatchReport::kHeader << '\n' << std::flush;

    try {
        const fs::path master = work / "READING_TYPE_CONVERTER";
        {
            std::ofstream m(master, std::ios::trunc);
            m << master_file_text();
        }
        for (const std::uint64_t count : config.file_counts) {
            const fs::path corpus = work / ("corpus-" + std::to_string(count));
            const fs::path outputs = work / ("out-" + std::to_string(count));
            const fs::path copy_dest = work / ("copy-" + std::to_string(count));
            fs::remove_all(corpus);
            fs::remove_all(outputs);
            fs::remove_all(copy_dest);

            GeneratorConfig gen;
            gen.file_count = count;
            gen.meters = count;
            gen.invalid_ratio = config.invalid_ratio;
            gen.seed = config.corpus_seed;
            generate_corpus(gen, corpus);

            StagePaths paths{corpus,
                             master,
                             outputs / "parsed" / kParsedFile,
                             outputs / "valid" / kValidFile,
                             outputs / "valid" / kInvalidFile,
                             outputs / "corrected" / kAggregateFile};
            ProcessPipeline copy;
            copy.commands = {Command{"cp", {"-r", corpus.string(), copy_dest.string()}, {}}};

            std::vector<double> samples[4];
            auto round = [&](bool timed) {
                const double t_parse = time_once([&] { stage_parse(paths, tools); });
                const double t_valid = time_once([&] { stage_validate(paths, tools); });
                const double t_agg = time_once([&] { stage_aggregate(paths, tools); });
                const double t_copy = time_once([&] { run_pipeline(copy); });
                fs::remove_all(copy_dest);
                if (timed) {
                    samples[0].push_back(t_parse);
                    samples[1].push_back(t_valid);
                    samples[2].push_back(t_agg);
                    samples[3].push_back(t_copy);
                }
            };
            for (std::uint32_t w = 0; w < config.warmups; ++w) round(false);
            for (std::uint32_t r = 0; r < config.repetitions; ++r) round(true);

            const std::uint64_t xml = xml_bytes_under(corpus);
            const std::uint64_t parsed = file_size_or_zero(paths.parsed_file);
            const std::uint64_t valid = file_size_or_zero(paths.valid_file);
            const std::uint64_t invalid = file_size_or_zero(paths.invalid_file);
            const std::uint64_t aggregate = file_size_or_zero(paths.aggregate_file);
            const std::uint64_t corpus_bytes = tree_bytes(corpus);
            const StageRow rows[] = {
                {count, kStageParse, summarize(samples[0]), xml, parsed},
                {count, kStageValidate, summarize(samples[1]), parsed, valid + invalid},
                {count, kStageAggregate, summarize(samples[2]), valid, aggregate},
                {count, kStageCopy, summarize(samples[3]), corpus_bytes, corpus_bytes},
            };
            for (const auto& r : rows) {
                csv << csv_row(r) << '\n';
                report.rows.push_back(r);
                if (progress) *progress << csv_row(r) << '\n';
            }
            csv.flush();
            if (progress) progress->flush();
            fs::remove_all(outputs);
            fs::remove_all(corpus);
        }
    } catch (const std::exception& e) {
        report.aborted = true;
        report.abort_reason = e.what();
        csv << "# ABORTED: " << e.what() << '\n' << std::flush;
        throw;
    }
    if (config.work_dir.empty()) fs::remove_all(work);
    return report;
}

std::uint64_t xml_bytes_under(const fs::path& dir) {
    std::uint64_t total = 0;
    for (const auto& f : find_xml_files(dir)) total += fs::file_size(f);
    return total;
}

double size_reduction(const fs::path& xml_dir, const fs::path& parsed_file) {
    if (!fs::is_directory(xml_dir)) throw UsageError("'" + xml_dir.string() + "' is not a directory");
    if (!fs::is_regular_file(parsed_file)) throw UsageError("'" + parsed_file.string() + "' does not exist");
    const std::uint64_t xml = xml_bytes_under(xml_dir);
    if (xml == 0) throw UsageError("no XML data under '" + xml_dir.string() + "'");
    const double ratio = static_cast<double>(fs::file_size(parsed_file)) / static_cast<double>(xml);
    return std::clamp(1.0 - ratio, 0.0, 1.0);
}

Decimal storage_cost(const Decimal& monthly_gb, const Decimal& price_per_gb_month, std::uint32_t months) {
    if (months < 1) throw UsageError("months must be >= 1");
    // m(m+1) is even, so the halving stays in the integers.
    const std::uint64_t m = months;
    const Decimal factor = Decimal::from_integer(static_cast<std::int64_t>(m * (m + 1) / 2));
    return monthly_gb * price_per_gb_month * factor;
}

std::vector<Decimal> storage_cost_table(const Decimal& monthly_gb, const Decimal& price_per_gb_month,
                                        std::uint32_t months) {
    std::vector<Decimal> out;
    out.reserve(months);
    for (std::uint32_t m = 1; m <= months; ++m) out.push_back(storage_cost(monthly_gb, price_per_gb_month, m));
    return out;
}

std::uint64_t daily_volume_bytes(std::uint64_t meters, std::uint64_t readings_per_day, std::uint64_t bytes_per_reading) {
    const unsigned __int128 v = static_cast<unsigned __int128>(meters) * readings_per_day * bytes_per_reading;
    if (v > std::numeric_limits<std::uint64_t>::max()) throw UsageError("daily volume overflows 64 bits");
    return static_cast<std::uint64_t>(v);
}

std::string format_si_bytes(std::uint64_t bytes) {
    static constexpr const char* units[] = {"B", "kB", "MB", "GB", "TB", "PB", "EB"};
    std::size_t u = 0;
    std::uint64_t unit = 1;
    while (u + 1 < std::size(units) && bytes / unit >= 1000) {
        unit *= 1000;
        ++u;
    }
    // Round half up to one decimal in integer arithmetic.
    const unsigned __int128 tenths = (static_cast<unsigned __int128>(bytes) * 10 + unit / 2) / unit;
    const auto whole = static_cast<std::uint64_t>(tenths / 10);
    const auto frac = static_cast<unsigned>(tenths % 10);
    std::string s = std::to_string(whole);
    if (frac) s += "." + std::to_string(frac);
    return s + " " + units[u];
}

}  // namespace meterflow
