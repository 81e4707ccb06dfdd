#include "meterflow/tabular.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "meterflow/errors.hpp"
#include "meterflow/temp_file.hpp"

namespace meterflow {

void select_fields(std::span<const FieldSpec> specs, LineReader& in, LineWriter& out) {
    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        bool first = true;
        for (const auto& spec : specs) {
            const std::size_t pos = spec.resolve(fields.size(), in.line_number());
            if (!first) out.put(' ');
            first = false;
            out.write(fields[pos - 1]);
        }
        out.end_line();
    }
}

void delete_fields(std::span<const FieldSpec> specs, LineReader& in, LineWriter& out) {
    std::string_view line;
    std::vector<std::string_view> fields;
    std::vector<char> drop;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        drop.assign(fields.size(), 0);
        for (const auto& spec : specs) drop[spec.resolve(fields.size(), in.line_number()) - 1] = 1;
        bool first = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (drop[i]) continue;
            if (!first) out.put(' ');
            first = false;
            out.write(fields[i]);
        }
        out.end_line();
    }
}

void delete_rows(const FieldSpec& spec, std::string_view literal, LineReader& in, LineWriter& out) {
    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (auto pos = spec.try_resolve(fields.size()); pos && fields[*pos - 1] == literal) continue;
        out.line(line);
    }
}

const std::set<std::string, std::less<>>& default_reading_tags() {
    static const std::set<std::string, std::less<>> tags{"name", "timeStamp", "value", "ref"};
    return tags;
}

void filter_tags(const std::set<std::string, std::less<>>& allowed, LineReader& in, LineWriter& out) {
    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (!fields.empty() && allowed.contains(fields[0])) out.line(line);
    }
}

void group_number(LineReader& in, LineWriter& out) {
    std::string_view line;
    std::vector<std::string_view> fields;
    std::optional<std::string> meter_row;
    std::uint64_t counter = 0;
    std::string prefix;
    auto emit = [&](std::string_view row_fields_joined) {
        out.write(prefix);
        out.put(' ');
        out.line(row_fields_joined);
    };
    std::string joined;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        joined.clear();
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) joined.push_back(' ');
            joined.append(fields[i]);
        }
        if (fields[0] == "name") {
            meter_row = joined;
            prefix = std::to_string(++counter);
            emit(joined);
        } else if (fields[0] == "timeStamp") {
            if (!meter_row) {
                throw DataError("line " + std::to_string(in.line_number()) +
                                ": timeStamp row before any name row (orphan reading)");
            }
            prefix = std::to_string(++counter);
            emit(*meter_row);
            emit(joined);
        } else {
            if (counter == 0) {
                throw DataError("line " + std::to_string(in.line_number()) + ": '" + std::string(fields[0]) +
                                "' row before any name row (orphan reading)");
            }
            emit(joined);
        }
    }
}

namespace {

// Cells sorted into one wide row per key run.
class PivotBuilder {
public:
    PivotBuilder(std::vector<std::string> labels, LineWriter& out) : labels_(std::move(labels)), out_(out) {
        for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
        cells_.resize(labels_.size());
    }

    void add(std::string_view key, std::string_view label, std::string_view value, std::uint64_t line_no) {
        if (!open_ || key != key_) {
            finish();
            key_.assign(key);
            open_ = true;
        }
        auto it = index_.find(std::string(label));
        auto& cell = cells_[it->second];
        if (cell) {
            throw DataError("line " + std::to_string(line_no) + ": duplicate cell for key '" + key_ + "' label '" +
                            std::string(label) + "'");
        }
        cell.emplace(value);
    }

    void finish() {
        if (!open_) return;
        out_.write(key_);
        for (auto& cell : cells_) {
            out_.put(' ');
            out_.write(cell ? std::string_view(*cell) : std::string_view("0"));
            cell.reset();
        }
        out_.end_line();
        open_ = false;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::optional<std::string>> cells_;
    LineWriter& out_;
    std::string key_;
    bool open_ = false;
};

}  // namespace

void map_pivot(LineReader& in, LineWriter& out, const PivotOptions& options) {
    if (options.key_fields != 1) throw UsageError("map supports num=1 only");
    SpillBuffer buffer(options.memory_limit);
    std::set<std::string, std::less<>> labels;
    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        if (fields.size() < 3) {
            throw DataError("line " + std::to_string(in.line_number()) + ": expected key, label and value");
        }
        if (!labels.contains(fields[1])) labels.emplace(fields[1]);
        buffer.append_line(line);
    }

    PivotBuilder pivot(std::vector<std::string>(labels.begin(), labels.end()), out);
    LineReader replay = buffer.replay();
    std::string value;
    while (replay.next(line)) {
        split_fields(line, fields);
        value.clear();
        for (std::size_t i = 2; i < fields.size(); ++i) {
            if (i > 2) value.push_back(' ');
            value.append(fields[i]);
        }
        pivot.add(fields[0], fields[1], value, replay.line_number());
    }
    pivot.finish();
}

}  // namespace meterflow
