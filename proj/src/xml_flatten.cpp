#include "meterflow/xml_flatten.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

#include "meterflow/errors.hpp"

namespace meterflow {

namespace {

bool is_name_start(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_xml_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_valid_name(std::string_view s) {
    if (s.empty() || !is_name_start(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!is_name_char(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Chunked byte source with absolute offset tracking.
class ByteStream {
public:
    explicit ByteStream(int fd) : fd_(fd), buf_(1 << 17) {}
    explicit ByteStream(std::string_view text) : view_(text), fd_(-1) {
        data_ = view_.data();
        end_ = view_.size();
        eof_ = true;
    }

    int peek() {
        if (pos_ == end_ && !refill()) return -1;
        return static_cast<unsigned char>(data_[pos_]);
    }
    int get() {
        if (pos_ == end_ && !refill()) return -1;
        ++consumed_;
        return static_cast<unsigned char>(data_[pos_++]);
    }
    std::uint64_t offset() const noexcept { return consumed_; }

    // Appends bytes up to (not including) the next '<' or '&' to `out` when
    // non-null; returns the stopping byte or -1 at end of input.
    int scan_text(std::string* out) {
        for (;;) {
            if (pos_ == end_ && !refill()) return -1;
            const char* start = data_ + pos_;
            const char* stop = start;
            const char* limit = data_ + end_;
            while (stop < limit && *stop != '<' && *stop != '&') ++stop;
            std::size_t n = static_cast<std::size_t>(stop - start);
            if (out) out->append(start, n);
            pos_ += n;
            consumed_ += n;
            if (stop < limit) return static_cast<unsigned char>(*stop);
        }
    }

    // Consumes bytes through the first occurrence of `terminator`, appending
    // everything before it to `out` when non-null. Returns false at end of input.
    bool read_until(std::string_view terminator, std::string* out) {
        std::string scratch;
        std::string& acc = out ? *out : scratch;
        const std::size_t base = acc.size();
        const std::size_t n = terminator.size();
        for (;;) {
            int c = get();
            if (c < 0) return false;
            acc.push_back(static_cast<char>(c));
            if (acc.size() - base >= n && acc.compare(acc.size() - n, n, terminator) == 0) {
                acc.resize(acc.size() - n);
                return true;
            }
            if (!out && acc.size() > 4096) acc.erase(0, acc.size() - n);
        }
    }

private:
    bool refill() {
        if (eof_) return false;
        for (;;) {
            ssize_t n = ::read(fd_, buf_.data(), buf_.size());
            if (n > 0) {
                data_ = buf_.data();
                pos_ = 0;
                end_ = static_cast<std::size_t>(n);
                return true;
            }
            if (n == 0) {
                eof_ = true;
                return false;
            }
            if (errno != EINTR) throw std::runtime_error(std::string("read error: ") + std::strerror(errno));
        }
    }

    std::string_view view_;
    int fd_;
    std::vector<char> buf_;
    const char* data_ = nullptr;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
    bool eof_ = false;
    std::uint64_t consumed_ = 0;
};

struct OpenElement {
    std::string name;
    std::string text;
    bool has_child = false;
    bool prefix_ok = false;  // ancestors so far agree with the requested path
    bool matched = false;    // at or beneath a path instance
};

class Flattener {
public:
    Flattener(const ElementPath& path, ByteStream& in, LineWriter& out)
        : path_(path.components()), in_(in), out_(out) {}

    FlattenStats run() {
        for (;;) {
            if (depth_ == 0) {
                if (!between_documents()) break;
            } else {
                inside_element();
            }
        }
        return stats_;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw DataError("malformed XML at byte offset " + std::to_string(in_.offset()) + ": " + what);
    }

    OpenElement& top() { return stack_[depth_ - 1]; }

    // Depth 0: whitespace, prolog markup, or the next root. False at clean EOF.
    bool between_documents() {
        for (;;) {
            int c = in_.peek();
            if (c < 0) return false;
            if (is_xml_space(c)) {
                in_.get();
                continue;
            }
            if (c == 0xEF) {  // UTF-8 byte order mark at a document start
                in_.get();
                if (in_.get() != 0xBB || in_.get() != 0xBF) fail("unexpected byte outside root element");
                continue;
            }
            if (c != '<') fail("text outside root element");
            in_.get();
            int d = in_.peek();
            if (d == '?') {
                in_.get();
                skip_processing_instruction();
            } else if (d == '!') {
                in_.get();
                skip_bang_markup(true);
            } else {
                ++stats_.documents;
                start_element();
                return true;
            }
        }
    }

    void inside_element() {
        OpenElement& el = top();
        const bool keep = el.matched && !el.has_child;
        int c = in_.scan_text(keep ? &el.text : nullptr);
        if (c < 0) fail("unexpected end of input inside <" + el.name + ">");
        if (c == '&') {
            in_.get();
            if (keep) {
                decode_entity(el.text);
            } else {
                std::string sink;
                decode_entity(sink);
            }
            return;
        }
        in_.get();  // '<'
        int d = in_.peek();
        if (d == '/') {
            in_.get();
            end_element();
        } else if (d == '?') {
            in_.get();
            skip_processing_instruction();
        } else if (d == '!') {
            in_.get();
            skip_bang_markup(false);
        } else {
            start_element();
        }
    }

    std::string read_name() {
        std::string name;
        int c = in_.peek();
        if (c < 0 || !is_name_start(static_cast<unsigned char>(c))) fail("expected a name");
        while ((c = in_.peek()) >= 0 && is_name_char(static_cast<unsigned char>(c))) {
            name.push_back(static_cast<char>(c));
            in_.get();
        }
        return name;
    }

    void skip_spaces() {
        while (is_xml_space(in_.peek())) in_.get();
    }

    void decode_entity(std::string& out) {
        std::string ref;
        for (;;) {
            int c = in_.get();
            if (c < 0) fail("unterminated entity reference");
            if (c == ';') break;
            ref.push_back(static_cast<char>(c));
            if (ref.size() > 16) fail("unterminated entity reference");
        }
        if (ref == "lt") out.push_back('<');
        else if (ref == "gt") out.push_back('>');
        else if (ref == "amp") out.push_back('&');
        else if (ref == "quot") out.push_back('"');
        else if (ref == "apos") out.push_back('\'');
        else if (ref.size() > 1 && ref[0] == '#') {
            const bool hex = ref[1] == 'x';
            std::string_view digits = std::string_view(ref).substr(hex ? 2 : 1);
            if (digits.empty()) fail("bad character reference");
            std::uint32_t cp = 0;
            for (char ch : digits) {
                int v;
                if (ch >= '0' && ch <= '9') v = ch - '0';
                else if (hex && ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
                else if (hex && ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
                else fail("bad character reference");
                cp = cp * (hex ? 16 : 10) + static_cast<std::uint32_t>(v);
                if (cp > 0x10FFFF) fail("character reference out of range");
            }
            append_utf8(out, cp);
        } else {
            fail("unknown entity '&" + ref + ";'");
        }
    }

    void skip_processing_instruction() {
        if (!in_.read_until("?>", nullptr)) fail("unterminated processing instruction");
    }

    // After "<!": comment, CDATA section, or DOCTYPE.
    void skip_bang_markup(bool at_top_level) {
        if (in_.peek() == '-') {
            in_.get();
            if (in_.get() != '-') fail("malformed comment");
            if (!in_.read_until("-->", nullptr)) fail("unterminated comment");
            return;
        }
        if (in_.peek() == '[') {
            if (at_top_level) fail("CDATA outside root element");
            const char* expect = "[CDATA[";
            for (const char* p = expect; *p; ++p) {
                if (in_.get() != *p) fail("malformed CDATA section");
            }
            OpenElement& el = top();
            const bool keep = el.matched && !el.has_child;
            if (!in_.read_until("]]>", keep ? &el.text : nullptr)) fail("unterminated CDATA section");
            return;
        }
        if (!at_top_level) fail("markup declaration inside element");
        // DOCTYPE: skip to the closing '>' outside any internal subset.
        int bracket = 0;
        for (;;) {
            int c = in_.get();
            if (c < 0) fail("unterminated DOCTYPE");
            if (c == '[') ++bracket;
            else if (c == ']') --bracket;
            else if (c == '>' && bracket <= 0) return;
        }
    }

    void push(std::string name) {
        const std::size_t level = depth_;  // 0-based level of the new element
        if (level > 0) top().has_child = true;
        if (stack_.size() <= level) stack_.emplace_back();
        OpenElement& el = stack_[level];
        const bool parent_ok = level == 0 ? true : stack_[level - 1].prefix_ok;
        el.prefix_ok = parent_ok && (level >= path_.size() || name == path_[level]);
        el.matched = el.prefix_ok && level + 1 >= path_.size();
        el.name = std::move(name);
        el.text.clear();
        el.has_child = false;
        ++depth_;
    }

    void write_ancestry() {
        for (std::size_t i = 0; i < depth_; ++i) {
            if (i) out_.put(' ');
            out_.write(stack_[i].name);
        }
    }

    void write_value(const std::string& value) {
        out_.put(' ');
        std::string cleaned;
        if (value.find_first_of("\r\n") != std::string::npos) {
            cleaned = value;
            for (char& ch : cleaned) {
                if (ch == '\r' || ch == '\n') ch = ' ';
            }
            out_.write(cleaned);
        } else {
            out_.write(value);
        }
        out_.end_line();
        ++stats_.rows;
    }

    void start_element() {
        push(read_name());
        std::string attr_name;
        std::string attr_value;
        for (;;) {
            const bool had_space = is_xml_space(in_.peek());
            skip_spaces();
            int c = in_.peek();
            if (c < 0) fail("unexpected end of input in start tag");
            if (c == '/') {
                in_.get();
                if (in_.get() != '>') fail("expected '>' after '/'");
                pop();
                return;
            }
            if (c == '>') {
                in_.get();
                return;
            }
            if (!had_space) fail("expected whitespace before attribute");
            attr_name = read_name();
            skip_spaces();
            if (in_.get() != '=') fail("expected '=' after attribute name");
            skip_spaces();
            int quote = in_.get();
            if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
            attr_value.clear();
            for (;;) {
                int v = in_.get();
                if (v < 0) fail("unterminated attribute value");
                if (v == quote) break;
                if (v == '<') fail("'<' in attribute value");
                if (v == '&') {
                    decode_entity(attr_value);
                } else {
                    attr_value.push_back(static_cast<char>(v));
                }
            }
            if (top().matched) {
                write_ancestry();
                out_.put(' ');
                out_.write(attr_name);
                write_value(attr_value);
            }
        }
    }

    void end_element() {
        std::string name = read_name();
        if (name != top().name) fail("end tag </" + name + "> does not match <" + top().name + ">");
        skip_spaces();
        if (in_.get() != '>') fail("expected '>' in end tag");
        pop();
    }

    void pop() {
        OpenElement& el = top();
        if (el.matched && !el.has_child &&
            el.text.find_first_not_of(" \t\r\n") != std::string::npos) {
            write_ancestry();
            write_value(el.text);
        }
        --depth_;
    }

    const std::vector<std::string>& path_;
    ByteStream& in_;
    LineWriter& out_;
    std::vector<OpenElement> stack_;
    std::size_t depth_ = 0;
    FlattenStats stats_;
};

}  // namespace

ElementPath ElementPath::parse(std::string_view text) {
    if (text.empty() || text[0] != '/') throw UsageError("element path must be absolute: '" + std::string(text) + "'");
    ElementPath p;
    std::size_t start = 1;
    while (start <= text.size()) {
        std::size_t slash = text.find('/', start);
        if (slash == std::string_view::npos) slash = text.size();
        std::string_view part = text.substr(start, slash - start);
        if (!is_valid_name(part)) throw UsageError("invalid element name '" + std::string(part) + "' in path");
        p.components_.emplace_back(part);
        start = slash + 1;
    }
    return p;
}

std::string ElementPath::to_string() const {
    std::string s;
    for (const auto& c : components_) s += "/" + c;
    return s;
}

FlattenStats flatten_xml(const ElementPath& path, int fd, LineWriter& out) {
    ByteStream in(fd);
    return Flattener(path, in, out).run();
}

FlattenStats flatten_xml(const ElementPath& path, std::string_view text, LineWriter& out) {
    ByteStream in(text);
    return Flattener(path, in, out).run();
}

}  // namespace meterflow
