#include "meterflow/join.hpp"

#include "meterflow/errors.hpp"

namespace meterflow {

MasterIndex MasterIndex::load(LineReader& in) {
    MasterIndex index;
    std::string_view line;
    std::vector<std::string_view> fields;
    while (in.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        const std::string where = in.name() + " line " + std::to_string(in.line_number());
        if (fields.size() < 2) throw DataError(where + ": master row needs a key and a payload");
        const std::size_t width = fields.size() - 1;
        if (index.entries_.empty()) {
            index.width_ = width;
        } else if (width != index.width_) {
            throw DataError(where + ": payload width " + std::to_string(width) + " differs from " +
                            std::to_string(index.width_));
        }
        std::string payload;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            if (i > 1) payload.push_back(' ');
            payload.append(fields[i]);
        }
        if (!index.entries_.emplace(std::string(fields[0]), std::move(payload)).second) {
            throw DataError(where + ": duplicate master key '" + std::string(fields[0]) + "'");
        }
    }
    return index;
}

MasterIndex MasterIndex::load_file(const std::string& path) {
    LineReader in = LineReader::open(path);
    return load(in);
}

const std::string* MasterIndex::find(std::string_view key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

JoinCounts cjoin1(const FieldSpec& key, const MasterIndex& master, LineReader& txn, LineWriter& matched,
                  LineWriter& rejects) {
    JoinCounts counts;
    std::string_view line;
    std::vector<std::string_view> fields;
    while (txn.next(line)) {
        split_fields(line, fields);
        if (fields.empty()) continue;
        const std::size_t pos = key.resolve(fields.size(), txn.line_number());
        const std::string* payload = master.find(fields[pos - 1]);
        if (!payload) {
            rejects.line(line);
            ++counts.unmatched;
            continue;
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) matched.put(' ');
            matched.write(fields[i]);
            if (i + 1 == pos) {
                matched.put(' ');
                matched.write(*payload);
            }
        }
        matched.end_line();
        ++counts.matched;
    }
    return counts;
}

}  // namespace meterflow
