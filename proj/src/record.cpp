#include "meterflow/record.hpp"

#include <charconv>

#include "meterflow/errors.hpp"

namespace meterflow {

std::string Record::normalized() const {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(' ');
        out += fields[i];
    }
    return out;
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && is_field_separator(*p)) ++p;
        if (p == end) break;
        const char* start = p;
        while (p < end && !is_field_separator(*p)) ++p;
        out.emplace_back(start, static_cast<std::size_t>(p - start));
    }
}

Record split_record(std::string_view line) {
    Record r;
    r.raw_line.assign(line);
    std::vector<std::string_view> views;
    split_fields(line, views);
    r.fields.reserve(views.size());
    for (auto v : views) r.fields.emplace_back(v);
    return r;
}

FieldSpec FieldSpec::absolute(std::size_t position) {
    if (position == 0) throw UsageError("field position must be >= 1");
    return FieldSpec(Kind::absolute, position);
}

FieldSpec FieldSpec::end_relative(std::size_t offset) { return FieldSpec(Kind::end_relative, offset); }

namespace {

std::optional<std::size_t> parse_count(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

FieldSpec FieldSpec::parse(std::string_view text) {
    if (text == "NF") return end_relative(0);
    if (text.starts_with("NF-")) {
        if (auto k = parse_count(text.substr(3))) return end_relative(*k);
    } else if (auto n = parse_count(text); n && *n >= 1) {
        return absolute(*n);
    }
    throw UsageError("invalid field spec '" + std::string(text) + "' (expected N, NF or NF-k)");
}

std::optional<std::size_t> FieldSpec::try_resolve(std::size_t field_count) const noexcept {
    if (kind_ == Kind::absolute) {
        if (index_ >= 1 && index_ <= field_count) return index_;
        return std::nullopt;
    }
    if (index_ < field_count) return field_count - index_;
    return std::nullopt;
}

std::size_t FieldSpec::resolve(std::size_t field_count, std::uint64_t line_number) const {
    if (auto pos = try_resolve(field_count)) return *pos;
    throw DataError("line " + std::to_string(line_number) + ": field " + to_string() + " out of range (" +
                    std::to_string(field_count) + " fields)");
}

std::string FieldSpec::to_string() const {
    if (kind_ == Kind::absolute) return std::to_string(index_);
    if (index_ == 0) return "NF";
    return "NF-" + std::to_string(index_);
}

std::size_t resolve_field(const FieldSpec& spec, const Record& record, std::uint64_t line_number) {
    return spec.resolve(record.size(), line_number);
}

}  // namespace meterflow
