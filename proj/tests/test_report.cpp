#include <catch2/catch_amalgamated.hpp>

#include "bredon/report.hpp"

using namespace bredon;

namespace {

HomologyReport sample_report() {
  return e2_page(builtin_profile("Z"), ArtinParameters::for_index(3), 0, 1);
}

}  // namespace

TEST_CASE("text rendering") {
  std::string text = render_text(sample_report());
  CHECK(text.find("ring = Z") != std::string::npos);
  CHECK(text.find("[q = 0]") != std::string::npos);
  CHECK(text.find("H_3 = (+)_{w} Z\n") != std::string::npos);
  CHECK(text.find("H_0 = (+)_{w} Z (+) Z/2") != std::string::npos);
  CHECK(text.find("trail:") != std::string::npos);
  CHECK(text.find("notes:") != std::string::npos);
}

TEST_CASE("grid rendering has no trailing spaces and stays deterministic") {
  HomologyReport r = sample_report();
  std::string grid = render_grid(r);
  CHECK(grid == render_grid(r));
  std::istringstream in(grid);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    CHECK(line.back() != ' ');
  }
  CHECK(grid.find("q=1") != std::string::npos);
  CHECK(grid.find("p=3") != std::string::npos);
}

TEST_CASE("records round-trip") {
  HomologyReport r = sample_report();
  std::string records = render_records(r);
  HomologyReport back = parse_records(records);
  CHECK(back.ring == r.ring);
  CHECK(back.n == r.n);
  CHECK(back.notes == r.notes);
  CHECK(back.warnings == r.warnings);
  REQUIRE(back.cells.size() == r.cells.size());
  for (const auto& [key, cell] : r.cells) {
    const ReportCell* b = back.cell(key.second, key.first);
    REQUIRE(b != nullptr);
    CHECK(b->error == cell.error);
    CHECK(b->trail == cell.trail);
    if (cell.value) CHECK(*b->value == *cell.value);
  }
  // Re-rendering the parsed report reproduces the text table byte for byte.
  CHECK(render_text(back) == render_text(r));
  CHECK(render_records(back) == records);
}

TEST_CASE("records carry bounded cells and errors") {
  std::string doc =
      "[meta]\nname = NilDemo\nregular = false\nq_range = -1..1\n"
      "[K]\n-1 = 0\n0 = 0\n1 = 0\n"
      "[NK]\n-1 = 0\n0 = 0\n1 = Z/9\n";
  HomologyReport r =
      e2_page(load_profile(doc), ArtinParameters::for_index(3), 1, 2);
  CHECK(r.has_bounded());
  CHECK(r.has_errors());
  HomologyReport back = parse_records(render_records(r));
  CHECK(render_records(back) == render_records(r));
  CHECK(back.has_bounded());
  CHECK(back.has_errors());
}

TEST_CASE("records parser rejects malformed input") {
  CHECK_THROWS_AS(parse_records("0\t0\tZ\texact\t"), parse_error);  // no header
  CHECK_THROWS_AS(parse_records("#bredon-records\tring=Z\tn=3\nbad line"),
                  parse_error);
  CHECK_THROWS_AS(
      parse_records("#bredon-records\tring=Z\tn=3\n0\t0\tZ\tmaybe\t"),
      parse_error);
  CHECK_THROWS_AS(
      parse_records("#bredon-records\tring=Z\tn=3\n0\t0\tZ\tbounded\t"),
      parse_error);
}

TEST_CASE("publication markup") {
  std::string markup = render_table_markup(sample_report());
  CHECK(markup.find("\\begin{tabular}") != std::string::npos);
  CHECK(markup.find("\\bigoplus_{\\aleph_0} \\mathbb{Z}") != std::string::npos);
  CHECK(markup.find("\\mathbb{Z}/2") != std::string::npos);
  CHECK(markup.find("\\end{tabular}") != std::string::npos);

  CHECK(to_latex(parse_group("Z^2 (+) Z/4")) ==
        "\\mathbb{Z}^{2} \\oplus \\mathbb{Z}/4");
  CHECK(to_latex(parse_group("(+)_{w} Z/2")) ==
        "\\bigoplus_{\\aleph_0} \\mathbb{Z}/2");
  CHECK(to_latex(parse_group_value("bounded[0 .. Z/2]")) ==
        "0 \\leq \\cdot \\leq \\mathbb{Z}/2");
}
