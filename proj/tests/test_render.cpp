#include <catch2/catch_amalgamated.hpp>

#include <cctype>
#include <string>
#include <vector>

#include <boxfence/analyze.hpp>
#include <boxfence/render.hpp>

using namespace boxfence;

namespace {

BoxplotStats spiky_stats() {
    std::vector<double> v;
    for (int i = 1; i <= 9; ++i) v.push_back(i);
    v.push_back(100.0);
    return analyze(Sample(v), MethodSpec::tukey());
}

// Minimal XML shape checker: tags balance, self-closing tags allowed,
// attribute quotes pair up. Enough to catch malformed output without an
// XML library.
bool well_formed_xml(const std::string& doc) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < doc.size()) {
        if (doc[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t close = doc.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = doc.substr(i + 1, close - i - 1);
        // Quotes inside the tag must pair.
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
        if (!tag.empty() && tag.front() == '/') {
            if (stack.empty()) return false;
            if (stack.back() != tag.substr(1)) return false;
            stack.pop_back();
        } else if (!tag.empty() && tag.back() != '/') {
            const std::size_t sp = tag.find_first_of(" \t\n");
            stack.push_back(sp == std::string::npos ? tag : tag.substr(0, sp));
        }
        i = close + 1;
    }
    return stack.empty();
}

} // namespace

TEST_CASE("render_ascii draws every structural glyph once") {
    const BoxplotStats st = spiky_stats();
    const std::string line = render_ascii(st, {.width = 60});
    REQUIRE(line.size() == 60);

    const auto b1 = line.find('[');
    const auto med = line.find('+');
    const auto b3 = line.find(']');
    const auto out = line.find('o');
    REQUIRE(b1 != std::string::npos);
    REQUIRE(med != std::string::npos);
    REQUIRE(b3 != std::string::npos);
    REQUIRE(out != std::string::npos);
    CHECK(b1 < med);
    CHECK(med < b3);
    CHECK(b3 < out);
    CHECK(std::count(line.begin(), line.end(), 'o') == 1);
    CHECK(std::count(line.begin(), line.end(), '|') == 2);
    CHECK(std::count(line.begin(), line.end(), ':') == 2);

    // Fence markers can be hidden.
    const std::string bare = render_ascii(st, {.width = 60, .show_fences = false});
    CHECK(std::count(bare.begin(), bare.end(), ':') == 0);

    // Width is honored exactly and bytes are reproducible.
    CHECK(render_ascii(st, {.width = 100}).size() == 100);
    CHECK(render_ascii(st, {.width = 60}) == line);
}

TEST_CASE("render_ascii stacks coincident outliers with a count") {
    std::vector<double> v;
    for (int i = 1; i <= 12; ++i) v.push_back(i);
    v.insert(v.end(), {500.0, 500.0, 500.0});
    const BoxplotStats st = analyze(Sample(v), MethodSpec::tukey());
    REQUIRE(st.outliers.values.size() == 3);
    const std::string line = render_ascii(st, {.width = 64});
    CHECK(line.find("ox3") != std::string::npos);
}

TEST_CASE("render_ascii edge cases") {
    CHECK_THROWS_AS(render_ascii(spiky_stats(), {.width = 10}), std::invalid_argument);
    CHECK_NOTHROW(render_ascii(spiky_stats(), {.width = 20}));

    // Constant sample: zero span gets padded, no crash, no outliers drawn.
    const BoxplotStats flat = analyze(Sample(std::vector<double>(6, 2.0)), MethodSpec::tukey());
    const std::string line = render_ascii(flat, {.width = 40});
    CHECK(line.size() == 40);
    CHECK(line.find('o') == std::string::npos);
}

TEST_CASE("render_svg emits well-formed panels") {
    std::vector<std::pair<std::string, BoxplotStats>> panels;
    panels.emplace_back("first & best", spiky_stats());
    panels.emplace_back("second <run>", analyze(Sample({1.0, 2.0, 3.0, 4.0, 5.0}),
                                                MethodSpec::chauvenet()));
    const std::string doc = render_svg(panels, {.width = 800});

    CHECK(doc.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
    CHECK(doc.find("</svg>") != std::string::npos);
    CHECK(well_formed_xml(doc));

    // Labels are escaped.
    CHECK(doc.find("first &amp; best") != std::string::npos);
    CHECK(doc.find("second &lt;run&gt;") != std::string::npos);
    CHECK(doc.find("first & best") == std::string::npos);

    // One outlier circle total; dashed fences for both panels.
    CHECK(std::count(doc.begin(), doc.end(), 'c') >= 1);
    std::size_t circles = 0, dashes = 0, pos = 0;
    while ((pos = doc.find("<circle", pos)) != std::string::npos) {
        ++circles;
        pos += 7;
    }
    pos = 0;
    while ((pos = doc.find("stroke-dasharray", pos)) != std::string::npos) {
        ++dashes;
        pos += 16;
    }
    CHECK(circles == 1);
    CHECK(dashes == 4);

    // No stray non-finite numbers and reproducible bytes.
    CHECK(doc.find("nan") == std::string::npos);
    CHECK(doc.find("inf") == std::string::npos);
    CHECK(doc == render_svg(panels, {.width = 800}));

    // Hiding fences removes the dashed lines.
    const std::string bare = render_svg(panels, {.width = 800, .show_fences = false});
    CHECK(bare.find("stroke-dasharray") == std::string::npos);
}

TEST_CASE("render_svg grid dimensions follow ceil-sqrt layout") {
    std::vector<std::pair<std::string, BoxplotStats>> panels;
    for (int i = 0; i < 16; ++i)
        panels.emplace_back("p" + std::to_string(i), spiky_stats());
    const std::string doc = render_svg(panels, {.width = 1280});
    // 16 panels: 4 columns of 320px, 4 rows of 240px.
    CHECK(doc.find("width=\"1280.00\" height=\"960.00\"") != std::string::npos);

    // 5 panels: 3 columns, 2 rows.
    std::vector<std::pair<std::string, BoxplotStats>> five(panels.begin(), panels.begin() + 5);
    const std::string doc5 = render_svg(five, {.width = 900});
    CHECK(doc5.find("width=\"900.00\" height=\"450.00\"") != std::string::npos);

    CHECK_THROWS_AS(render_svg({}, {}), std::invalid_argument);
}

TEST_CASE("render_svg orientation flips the layout") {
    std::vector<std::pair<std::string, BoxplotStats>> panels;
    panels.emplace_back("x", spiky_stats());
    const std::string v = render_svg(panels, {.width = 400});
    const std::string h =
        render_svg(panels, {.width = 400, .orientation = Orientation::Horizontal});
    CHECK(v != h);
    CHECK(well_formed_xml(h));
}
