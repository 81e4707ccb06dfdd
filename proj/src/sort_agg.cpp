#include "meterflow/sort_agg.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "meterflow/decimal.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/temp_file.hpp"

namespace meterflow {

namespace {

std::string_view key_of(const FieldSpec& key, std::string_view line, std::vector<std::string_view>& scratch,
                        std::uint64_t line_no) {
    split_fields(line, scratch);
    return scratch[key.resolve(scratch.size(), line_no) - 1];
}

// One in-memory run: lines packed into an arena, sorted by (key, arrival).
class Run {
public:
    void add(std::string_view line, std::string_view key) {
        const auto line_off = static_cast<std::uint32_t>(arena_.size());
        const auto key_off = static_cast<std::uint32_t>(key.data() - line.data()) + line_off;
        arena_.append(line);
        entries_.push_back({line_off, static_cast<std::uint32_t>(line.size()), key_off,
                            static_cast<std::uint32_t>(key.size())});
    }

    std::size_t footprint() const noexcept { return arena_.size() + entries_.size() * sizeof(Entry); }
    bool empty() const noexcept { return entries_.empty(); }
    // Arena offsets are 32-bit.
    bool near_offset_limit() const noexcept { return arena_.size() > (std::size_t{1} << 31); }

    void sort() {
        std::stable_sort(entries_.begin(), entries_.end(),
                         [this](const Entry& a, const Entry& b) { return key(a) < key(b); });
    }

    void write(LineWriter& out) const {
        for (const auto& e : entries_) out.line(std::string_view(arena_).substr(e.line_off, e.line_len));
    }

    void clear() {
        arena_.clear();
        entries_.clear();
    }

private:
    struct Entry {
        std::uint32_t line_off, line_len, key_off, key_len;
    };
    std::string_view key(const Entry& e) const { return std::string_view(arena_).substr(e.key_off, e.key_len); }

    std::string arena_;
    std::vector<Entry> entries_;
};

// k-way merge; ties go to the lower run index, which holds earlier input.
void merge_runs(const FieldSpec& key, std::vector<std::unique_ptr<TempFile>>::iterator first,
                std::vector<std::unique_ptr<TempFile>>::iterator last, LineWriter& out) {
    struct Head {
        std::string line;
        std::size_t key_off = 0;
        std::size_t key_len = 0;
        std::size_t run = 0;
        std::string_view key() const { return std::string_view(line).substr(key_off, key_len); }
    };
    std::vector<LineReader> readers;
    for (auto it = first; it != last; ++it) readers.push_back((*it)->reader());

    std::vector<std::string_view> scratch;
    auto load = [&](std::size_t run, Head& head) {
        std::string_view line;
        if (!readers[run].next(line)) return false;
        head.line.assign(line);
        std::string_view k = key_of(key, head.line, scratch, readers[run].line_number());
        head.key_off = static_cast<std::size_t>(k.data() - head.line.data());
        head.key_len = k.size();
        head.run = run;
        return true;
    };
    auto later = [](const Head& a, const Head& b) {
        int c = a.key().compare(b.key());
        return c != 0 ? c > 0 : a.run > b.run;
    };
    std::priority_queue<Head, std::vector<Head>, decltype(later)> heap(later);
    for (std::size_t r = 0; r < readers.size(); ++r) {
        Head h;
        if (load(r, h)) heap.push(std::move(h));
    }
    while (!heap.empty()) {
        Head h = std::move(const_cast<Head&>(heap.top()));
        heap.pop();
        out.line(h.line);
        if (load(h.run, h)) heap.push(std::move(h));
    }
}

}  // namespace

SortStats msort(const FieldSpec& key, LineReader& in, LineWriter& out, const SortOptions& options) {
    const auto spill_dir = options.spill_dir.empty() ? spill_directory() : options.spill_dir;
    const std::size_t fan_in = std::max<std::size_t>(options.max_fan_in, 2);
    SortStats stats;
    Run run;
    std::vector<std::unique_ptr<TempFile>> runs;
    auto spill = [&] {
        run.sort();
        auto file = std::make_unique<TempFile>(spill_dir);
        LineWriter w = file->writer();
        run.write(w);
        w.flush();
        runs.push_back(std::move(file));
        run.clear();
    };

    std::string_view line;
    std::vector<std::string_view> scratch;
    while (in.next(line)) {
        split_fields(line, scratch);
        if (scratch.empty()) continue;
        std::string_view k = scratch[key.resolve(scratch.size(), in.line_number()) - 1];
        run.add(line, k);
        ++stats.rows;
        if (run.footprint() >= options.memory_budget || run.near_offset_limit()) spill();
    }

    if (runs.empty()) {
        run.sort();
        run.write(out);
        return stats;
    }
    if (!run.empty()) spill();
    stats.spilled_runs = runs.size();

    // Merge adjacent groups until one pass can finish; adjacency keeps stability.
    while (runs.size() > fan_in) {
        std::vector<std::unique_ptr<TempFile>> next;
        for (std::size_t i = 0; i < runs.size(); i += fan_in) {
            auto last = runs.begin() + static_cast<std::ptrdiff_t>(std::min(runs.size(), i + fan_in));
            auto merged = std::make_unique<TempFile>(spill_dir);
            LineWriter w = merged->writer();
            merge_runs(key, runs.begin() + static_cast<std::ptrdiff_t>(i), last, w);
            w.flush();
            next.push_back(std::move(merged));
        }
        runs = std::move(next);
    }
    merge_runs(key, runs.begin(), runs.end(), out);
    return stats;
}

void SumColumns::validate() const {
    if (!(key_from >= 1 && key_from <= key_to && key_to < value_from && value_from <= value_to)) {
        throw UsageError("sm2 columns must satisfy 1 <= k_from <= k_to < v_from <= v_to");
    }
}

std::uint64_t sm2(const SumColumns& columns, LineReader& in, LineWriter& out) {
    columns.validate();
    const std::size_t key_count = columns.key_to - columns.key_from + 1;
    const std::size_t value_count = columns.value_to - columns.value_from + 1;

    std::vector<std::string> keys;
    std::vector<Decimal> sums(value_count);
    bool open = false;
    std::uint64_t groups = 0;

    auto flush_group = [&] {
        if (!open) return;
        bool first = true;
        for (const auto& k : keys) {
            if (!first) out.put(' ');
            first = false;
            out.write(k);
        }
        for (const auto& s : sums) {
            out.put(' ');
            out.write(s.to_string());
        }
        out.end_line();
        ++groups;
        open = false;
    };

    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        if (fields.size() < columns.value_to) {
            throw DataError("line " + std::to_string(in.line_number()) + ": expected at least " +
                            std::to_string(columns.value_to) + " fields, got " + std::to_string(fields.size()));
        }
        bool same = open;
        for (std::size_t i = 0; same && i < key_count; ++i) same = keys[i] == fields[columns.key_from - 1 + i];
        if (!same) {
            flush_group();
            keys.assign(fields.begin() + static_cast<std::ptrdiff_t>(columns.key_from - 1),
                        fields.begin() + static_cast<std::ptrdiff_t>(columns.key_to));
            std::fill(sums.begin(), sums.end(), Decimal());
            open = true;
        }
        for (std::size_t i = 0; i < value_count; ++i) {
            std::string_view token = fields[columns.value_from - 1 + i];
            auto value = Decimal::try_parse(token);
            if (!value) {
                throw DataError("line " + std::to_string(in.line_number()) + ": malformed decimal '" +
                                std::string(token) + "'");
            }
            sums[i] += *value;
        }
    }
    flush_group();
    return groups;
}

}  // namespace meterflow
