#include <doctest.h>

#include <fcntl.h>
#include <unistd.h>

#include <random>

#include "fixtures.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/generator.hpp"
#include "meterflow/xml_flatten.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace meterflow;

namespace {

const std::vector<std::string> kReadingPath = {"MeterReadings", "MeterReading"};

std::vector<std::string> flatten(std::string_view xml, const std::string& path = "/MeterReadings/MeterReading",
                                 FlattenStats* stats = nullptr) {
    std::string out;
    auto w = LineWriter::to_string(out);
    auto s = flatten_xml(ElementPath::parse(path), xml, w);
    w.flush();
    if (stats) *stats = s;
    return oracle::lines_of(out);
}

std::vector<std::string> normalized(const std::vector<std::string>& rows) {
    std::vector<std::string> out;
    for (const auto& r : rows) out.push_back(oracle::join(oracle::split_ws(r)));
    return out;
}

// Random small document: nested elements, attributes, entities, CDATA, comments.
std::string random_document(std::mt19937_64& rng) {
    const std::vector<std::string> names = {"a", "b", "c", "Readings", "value", "x-y", "ns:z"};
    const std::vector<std::string> texts = {"plain", "17.8280", "a &amp; b", "&lt;tag&gt;", "&#65;&#x42;", "two words",
                                            "<![CDATA[x < y]]>", "q&quot;t"};
    std::string doc;
    if (rng() % 2) doc += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    doc += "<MeterReadings>";
    auto element = [&](auto&& self, int depth) -> void {
        const auto& name = names[rng() % names.size()];
        doc += "<" + name;
        const auto attrs = rng() % 3;
        for (std::size_t i = 0; i < attrs; ++i) {
            doc += " k" + std::to_string(i) + "=\"" + (rng() % 2 ? "v&amp;" : "0.0.1") + std::to_string(i) + "\"";
        }
        const auto kind = depth > 3 ? rng() % 3 : rng() % 5;
        if (kind == 0) {
            doc += "/>";
            return;
        }
        doc += ">";
        if (rng() % 4 == 0) doc += "<!-- note -->";
        if (kind == 1 || kind == 2) {
            doc += texts[rng() % texts.size()];
        } else {
            const auto kids = 1 + rng() % 3;
            for (std::size_t i = 0; i < kids; ++i) {
                doc += "\n  ";
                self(self, depth + 1);
            }
            doc += "\n";
        }
        doc += "</" + name + ">";
    };
    const auto readings = 1 + rng() % 3;
    for (std::size_t r = 0; r < readings; ++r) {
        doc += "\n <MeterReading>";
        const auto kids = rng() % 4;
        for (std::size_t i = 0; i < kids; ++i) element(element, 0);
        doc += "</MeterReading>";
        if (rng() % 3 == 0) doc += "<Other><value>skip</value></Other>";
    }
    doc += "\n</MeterReadings>\n";
    return doc;
}

}  // namespace

TEST_CASE("sample document flattens to the twelve expected rows") {
    FlattenStats stats;
    const auto rows = flatten(fixtures::kSampleDocument, "/MeterReadings/MeterReading", &stats);
    CHECK(rows == fixtures::kSampleFlattened);
    CHECK(stats.documents == 1);
    CHECK(stats.rows == 12);
}

TEST_CASE("generated document with the known values reproduces the known xmldir output") {
    const auto& types = reading_types();
    const auto doc = render_readings_document("SM000000001VG", "2021-01-01T05:13:08Z",
                                              {{"7.7190", types[2].code}, {"0.6193", types[1].code}, {"18.1170", types[0].code}});
    CHECK(flatten(doc) == fixtures::kFlattenedSample);
}

TEST_CASE("generated layout matches the sample file byte for byte") {
    const auto& types = reading_types();
    const auto doc = render_readings_document("SM000999VG", "2021-03-08T22:22:18Z",
                                              {{"17.8280", types[2].code}, {"17.9735", types[1].code}, {"16.3959", types[0].code}});
    CHECK(doc == fixtures::kSampleDocument);
}

TEST_CASE("root mismatch yields no rows") {
    CHECK(flatten(fixtures::kSampleDocument, "/Other/MeterReading").empty());
    CHECK(flatten(fixtures::kSampleDocument, "/MeterReadings/Missing").empty());
}

TEST_CASE("concatenated documents match a DOM parser run per document") {
    const std::string two = fixtures::kSampleDocument + fixtures::kSampleDocument;
    FlattenStats stats;
    const auto rows = flatten(two, "/MeterReadings/MeterReading", &stats);
    const auto one = oracle::dom_flatten(fixtures::kSampleDocument, kReadingPath);
    auto expect = one;
    expect.insert(expect.end(), one.begin(), one.end());
    CHECK(normalized(rows) == normalized(expect));
    CHECK(stats.documents == 2);
    CHECK(rows.size() == 24);
}

TEST_CASE("property: random documents agree with the DOM oracle") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<std::string> docs;
        std::string stream;
        const auto n = 1 + rng() % 3;
        for (std::size_t i = 0; i < n; ++i) {
            docs.push_back(random_document(rng));
            stream += docs.back();
        }
        std::vector<std::string> expect;
        for (const auto& d : docs) {
            auto part = oracle::dom_flatten(d, kReadingPath);
            expect.insert(expect.end(), part.begin(), part.end());
        }
        CAPTURE(stream);
        CHECK(normalized(flatten(stream)) == normalized(expect));
    }
}

TEST_CASE("entities, CDATA, empty and mixed content") {
    const std::string doc =
        "<?xml version=\"1.0\"?><!DOCTYPE r><r><m>"
        "<a>x &amp; y &lt;&gt; &apos;&quot; &#65;&#x3b1;</a>"
        "<b><![CDATA[<raw> & stuff]]></b>"
        "<c></c><d/><e>   </e>"
        "<f>text<g>inner</g>tail</f>"
        "<h k=\"1 &amp; 2\"/>"
        "<?pi ignored?><!-- c --></m></r>";
    const auto rows = flatten(doc, "/r/m");
    CHECK(rows == std::vector<std::string>{"r m a x & y <> '\" A\xce\xb1", "r m b <raw> & stuff", "r m f g inner",
                                           "r m h k 1 & 2"});
}

TEST_CASE("byte order mark and line breaks inside values") {
    const std::string doc = "\xEF\xBB\xBF<r><m><a>one\r\ntwo</a></m></r>";
    CHECK(flatten(doc, "/r/m") == std::vector<std::string>{"r m a one  two"});
}

TEST_CASE("whitespace between elements does not change the rows") {
    std::string compact;
    for (std::size_t i = 0; i < fixtures::kSampleDocument.size(); ++i) {
        const char c = fixtures::kSampleDocument[i];
        if (c == '\n') {
            while (i + 1 < fixtures::kSampleDocument.size() && fixtures::kSampleDocument[i + 1] == ' ') ++i;
            continue;
        }
        compact.push_back(c);
    }
    CHECK(flatten(compact) == fixtures::kSampleFlattened);
}

TEST_CASE("malformed input is a data error naming a byte offset") {
    for (const char* bad : {"<r><m></x></r>", "<r><m>", "<r a=1/>", "<r>&bogus;</r>", "<r><!-- open", "text", "<r></r>junk<"}) {
        CAPTURE(bad);
        try {
            flatten(bad, "/r/m");
            FAIL("expected DataError");
        } catch (const DataError& e) {
            CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
        }
    }
}

TEST_CASE("element path validation") {
    CHECK(ElementPath::parse("/MeterReadings/MeterReading").components() == kReadingPath);
    CHECK(ElementPath::parse("/a").to_string() == "/a");
    for (const char* bad : {"MeterReadings/MeterReading", "", "/", "/a//b", "/1a"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(ElementPath::parse(bad), UsageError);
    }
}

TEST_CASE("flattening from a descriptor matches flattening a string") {
    testing::ScratchDir dir("xml");
    std::string big;
    for (int i = 0; i < 400; ++i) big += fixtures::kSampleDocument;
    testing::write_text(dir / "f.xml", big);
    const int fd = ::open((dir / "f.xml").c_str(), O_RDONLY);
    REQUIRE(fd >= 0);
    std::string out;
    auto w = LineWriter::to_string(out);
    const auto stats = flatten_xml(ElementPath::parse("/MeterReadings/MeterReading"), fd, w);
    w.flush();
    ::close(fd);
    CHECK(stats.documents == 400);
    CHECK(oracle::lines_of(out) == flatten(big));
}

TEST_CASE("property: generated corpus documents are losslessly flattened") {
    testing::ScratchDir dir("xmlgen");
    GeneratorConfig cfg;
    cfg.file_count = 40;
    cfg.meters = 10;
    cfg.invalid_ratio = 0.3;
    cfg.seed = 5;
    generate_corpus(cfg, dir.path());
    for (const auto& entry : std::filesystem::directory_iterator(dir.path())) {
        if (entry.path().extension() != ".xml") continue;
        const auto text = testing::slurp(entry.path());
        const auto rows = flatten(text);
        CHECK(normalized(rows) == normalized(oracle::dom_flatten(text, kReadingPath)));
        // name, description, NameType name, and three rows per reading
        CHECK(rows.size() == 3 + 3 * cfg.readings_per_file);
        for (const auto& reading : oracle::dom_readings(text)) {
            CHECK(std::find(rows.begin(), rows.end(), "MeterReadings MeterReading Readings value " + reading.value) !=
                  rows.end());
        }
    }
}
