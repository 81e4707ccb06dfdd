#include "meterflow/generator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <unordered_set>

#include "meterflow/errors.hpp"
#include "meterflow/line_io.hpp"
#include "meterflow/record.hpp"

namespace meterflow {

namespace {

// Uniform integer in [0, bound) by rejection; independent of library distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

// Uniform double in [0, 1) from the top 53 bits.
double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct CivilDate {
    int year, month, day;
};

CivilDate parse_date(const std::string& text) {
    CivilDate d{};
    char tail = 0;
    if (text.size() != 10 || std::sscanf(text.c_str(), "%4d-%2d-%2d%c", &d.year, &d.month, &d.day, &tail) != 3 ||
        d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) {
        throw UsageError("invalid date '" + text + "' (expected YYYY-MM-DD)");
    }
    return d;
}

std::string invalid_code_for(const std::string& code, std::mt19937_64& rng, const std::set<std::string>& valid) {
    // Same shape as a real code with one component perturbed.
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        std::size_t dot = code.find('.', start);
        parts.push_back(code.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
    }
    for (;;) {
        const std::size_t slot = 16 % parts.size();
        std::vector<std::string> altered = parts;
        altered[slot] = std::to_string(uniform_below(rng, 100));
        std::string candidate;
        for (std::size_t i = 0; i < altered.size(); ++i) {
            if (i) candidate.push_back('.');
            candidate += altered[i];
        }
        if (!valid.contains(candidate)) return candidate;
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    LineWriter w = LineWriter::create(path);
    w.write(text);
    w.flush();
}

}  // namespace

const std::vector<ReadingType>& reading_types() {
    static const std::vector<ReadingType> types{
        {"0.0.0.0.0.0.46.0.0.0.0.0.0.0.0.0.23.0", "TYPE01"},
        {"0.0.0.12.1.1.37.0.0.0.0.0.0.0.0.3.38.0", "TYPE02"},
        {"0.0.0.4.1.1.12.0.0.0.0.0.0.0.0.3.72.0", "TYPE03"},
    };
    return types;
}

std::string master_file_text() {
    std::string s;
    for (const auto& t : reading_types()) s += t.code + " " + t.name + "\n";
    return s;
}

void GeneratorConfig::validate() const {
    if (file_count == 0) throw UsageError("file count must be >= 1");
    if (meters == 0) throw UsageError("meter count must be >= 1");
    if (meters > 999'999'999) throw UsageError("meter count must fit in 9 digits");
    if (readings_per_file == 0) throw UsageError("readings per file must be >= 1");
    if (!(invalid_ratio >= 0.0 && invalid_ratio <= 1.0)) throw UsageError("invalid ratio must be within [0, 1]");
    if (batches > 100) throw UsageError("at most 100 batches");
    if (batches > file_count) throw UsageError("more batches than files");
    parse_date(date);
}

std::string GroundTruth::sidecar_text() const {
    std::string s;
    for (const auto& [name, sum] : sums) s += name + " " + sum.to_string() + "\n";
    s += "INVALID " + std::to_string(invalid) + "\n";
    return s;
}

GroundTruth GroundTruth::parse_sidecar(std::string_view text) {
    GroundTruth g;
    LineReader in = LineReader::from_string(std::string(text));
    std::string_view line;
    while (in.next(line)) {
        Record r = split_record(line);
        if (r.empty()) continue;
        if (r.size() != 2) throw DataError("malformed sidecar line " + std::to_string(in.line_number()));
        if (r.fields[0] == "INVALID") {
            g.invalid = std::stoull(r.fields[1]);
        } else {
            g.sums[r.fields[0]] = Decimal::parse(r.fields[1]);
        }
    }
    return g;
}

std::string render_readings_document(std::string_view meter_id, std::string_view timestamp,
                                     const std::vector<MeterReading>& readings) {
    std::string s;
    s.reserve(1100);
    s += "<MeterReadings>\n";
    s += "    <MeterReading>\n";
    s += "        <Meter>\n";
    s += "            <Names>\n";
    s += "                <name>";
    s += meter_id;
    s += "</name>\n";
    s += "                <NameType>\n";
    s += "                    <description>This is a meter identification number.</description>\n";
    s += "                    <name>MeterID</name>\n";
    s += "                </NameType>\n";
    s += "            </Names>\n";
    s += "        </Meter>\n";
    for (const auto& r : readings) {
        s += "        <Readings>\n";
        s += "            <timeStamp>";
        s += timestamp;
        s += "</timeStamp>\n";
        s += "            <value>" + r.value + "</value>\n";
        s += "            <ReadingType ref=\"" + r.ref + "\"/>\n";
        s += "        </Readings>\n";
    }
    s += "    </MeterReading>\n";
    s += "</MeterReadings>\n";
    return s;
}

GroundTruth generate_corpus(const GeneratorConfig& config, const std::filesystem::path& out_dir) {
    config.validate();
    const CivilDate date = parse_date(config.date);
    std::filesystem::create_directories(out_dir);

    std::set<std::string> valid_codes;
    for (const auto& t : reading_types()) valid_codes.insert(t.code);
    // Reading order within a file follows the sample document: TYPE03, TYPE02, TYPE01.
    std::vector<const ReadingType*> order;
    for (auto it = reading_types().rbegin(); it != reading_types().rend(); ++it) order.push_back(&*it);

    std::mt19937_64 rng(config.seed);
    GroundTruth truth;
    std::unordered_set<std::string> used_names;
    std::vector<MeterReading> readings(config.readings_per_file);
    char buf[64];

    for (std::uint64_t i = 0; i < config.file_count; ++i) {
        std::snprintf(buf, sizeof buf, "SM%09lluVG", static_cast<unsigned long long>(i % config.meters + 1));
        const std::string meter_id = buf;

        std::string file_name;
        std::string timestamp;
        do {
            const auto second = uniform_below(rng, 86400);
            const int hh = static_cast<int>(second / 3600), mm = static_cast<int>(second / 60 % 60),
                      ss = static_cast<int>(second % 60);
            std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", date.year, date.month, date.day, hh, mm, ss);
            timestamp = buf;
            std::snprintf(buf, sizeof buf, "%04d%02d%02d%02d%02d%02d", date.year, date.month, date.day, hh, mm, ss);
            file_name = "READINGS-" + meter_id + "_" + buf + ".xml";
        } while (!used_names.insert(file_name).second);

        for (std::uint32_t r = 0; r < config.readings_per_file; ++r) {
            const ReadingType& type = *order[r % order.size()];
            const auto units = uniform_below(rng, 200000);  // [0, 20) at 4 decimals
            std::snprintf(buf, sizeof buf, "%llu.%04llu", static_cast<unsigned long long>(units / 10000),
                          static_cast<unsigned long long>(units % 10000));
            readings[r].value = buf;
            if (unit_interval(rng) < config.invalid_ratio) {
                readings[r].ref = invalid_code_for(type.code, rng, valid_codes);
                ++truth.invalid;
            } else {
                readings[r].ref = type.code;
                truth.sums[type.name] += Decimal::parse(readings[r].value);
            }
            ++truth.readings;
        }

        std::filesystem::path dir = out_dir;
        if (config.batches > 0) {
            std::snprintf(buf, sizeof buf, "batch-%02llu",
                          static_cast<unsigned long long>(i * config.batches / config.file_count));
            dir /= buf;
            if (i == 0 || (i * config.batches / config.file_count) != ((i - 1) * config.batches / config.file_count)) {
                std::filesystem::create_directories(dir);
            }
        }
        const std::string doc = render_readings_document(meter_id, timestamp, readings);
        write_text(dir / file_name, doc);
        truth.xml_bytes += doc.size();
        ++truth.files;
    }

    write_text(out_dir / kSidecarName, truth.sidecar_text());
    return truth;
}

}  // namespace meterflow
