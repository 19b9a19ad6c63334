#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "wblsense/experiments.hpp"
#include "wblsense/svg.hpp"

using namespace wblsense;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

TrajectoryRecord make_record(int n, std::vector<int> ks) {
  TrajectoryRecord rec;
  rec.n_qubits = n;
  rec.k_series = std::move(ks);
  return rec;
}

}  // namespace

TEST_CASE("every trajectory renders as one polyline") {
  const std::vector<TrajectoryRecord> records = {
      make_record(8, {1, 2, 3}), make_record(8, {1, 1, 2}), make_record(16, {1, 4, 7})};
  const std::string svg = render_k_series_svg(records);

  REQUIRE(count_occurrences(svg, "<polyline") == 3);
  REQUIRE(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  REQUIRE(svg.find("</svg>") != std::string::npos);
  REQUIRE(svg.find("damage spreading") != std::string::npos);

  // legend: one entry per distinct N, not per trajectory
  REQUIRE(count_occurrences(svg, ">N=8<") == 1);
  REQUIRE(count_occurrences(svg, ">N=16<") == 1);
}

TEST_CASE("colors are assigned to sizes in ascending order of N") {
  // insertion order deliberately scrambled: color rank must follow N
  const std::vector<TrajectoryRecord> records = {
      make_record(32, {1, 2}), make_record(8, {1, 2}), make_record(16, {1, 2})};
  const std::string svg = render_k_series_svg(records);

  // ascending N -> palette order: 8 blue, 16 orange, 32 green
  const std::size_t first_poly = svg.find("<polyline");
  REQUIRE(first_poly != std::string::npos);
  const std::string first_line = svg.substr(first_poly, svg.find('\n', first_poly) - first_poly);
  REQUIRE(first_line.find("#2ca02c") != std::string::npos);  // record order: N=32 first, green
  REQUIRE(count_occurrences(svg, "#1f77b4") == 2);           // N=8 line + legend swatch
  REQUIRE(count_occurrences(svg, "#ff7f0e") == 2);           // N=16
  REQUIRE(count_occurrences(svg, "#2ca02c") == 2);           // N=32

  // more sizes than palette entries wrap around
  std::vector<TrajectoryRecord> many;
  for (int i = 0; i < 7; ++i) many.push_back(make_record(4 + 2 * i, {1, 2}));
  const std::string wrapped = render_k_series_svg(many);
  REQUIRE(count_occurrences(wrapped, "#1f77b4") >= 3);  // sizes 0 and 5 share the first color
}

TEST_CASE("rendering is deterministic and title is configurable") {
  std::vector<TrajectoryRecord> records = {make_record(8, {1, 2, 3, 5})};
  const std::string once = render_k_series_svg(records, "spread chart");
  const std::string twice = render_k_series_svg(records, "spread chart");
  REQUIRE(once == twice);
  REQUIRE(once.find("spread chart") != std::string::npos);

  const SvgLayout layout{600.0, 400.0, 50.0, 20.0, 30.0, 40.0};
  const std::string sized = render_k_series_svg(records, "t", layout);
  REQUIRE(sized.find("width=\"600.00\" height=\"400.00\"") != std::string::npos);
}

TEST_CASE("degenerate inputs are rejected") {
  REQUIRE_THROWS_AS(render_k_series_svg({}), std::invalid_argument);
  REQUIRE_THROWS_AS(render_k_series_svg({make_record(8, {})}), std::invalid_argument);
}

TEST_CASE("single-point series do not divide by zero") {
  const std::string svg = render_k_series_svg({make_record(4, {1})});
  REQUIRE(svg.find("nan") == std::string::npos);
  REQUIRE(svg.find("inf") == std::string::npos);
  REQUIRE(count_occurrences(svg, "<polyline") == 1);
}
