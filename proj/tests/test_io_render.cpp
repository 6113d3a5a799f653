#include "gasketpile/io.hpp"
#include "gasketpile/render.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace gasketpile;

namespace {

struct Ppm {
  int width = 0, height = 0;
  std::string pixels;
  Rgb at(int x, int y) const {
    const auto i = static_cast<std::size_t>(3 * (y * width + x));
    return {static_cast<std::uint8_t>(pixels[i]), static_cast<std::uint8_t>(pixels[i + 1]),
            static_cast<std::uint8_t>(pixels[i + 2])};
  }
};

Ppm parse_ppm(const std::string& bytes) {
  std::istringstream is(bytes);
  std::string magic;
  int maxval = 0;
  Ppm p;
  is >> magic >> p.width >> p.height >> maxval;
  REQUIRE(magic == "P6");
  REQUIRE(maxval == 255);
  is.get();
  p.pixels.assign(std::istreambuf_iterator<char>(is), {});
  REQUIRE(p.pixels.size() == static_cast<std::size_t>(3 * p.width * p.height));
  return p;
}

/// Pixel centre of vertex v, same placement the renderer documents.
std::pair<int, int> centre(const GasketGraph& g, Index v, const Ppm& p, int scale) {
  const auto c = g.coord(v);
  const double x = (static_cast<double>(c.a) + static_cast<double>(c.b) / 2) * scale;
  const double y = static_cast<double>(c.b) * std::sqrt(3.0) / 2 * scale;
  const double margin_x = (p.width - static_cast<double>(g.side()) * scale) / 2;
  const double margin_y = (p.height - static_cast<double>(g.side()) * std::sqrt(3.0) / 2 * scale) / 2;
  return {static_cast<int>(std::lround(x + margin_x)), static_cast<int>(std::lround(p.height - 1 - (y + margin_y)))};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("configuration JSON and text round trips") {
  for (const auto& bc : {BoundaryCondition::normal(), BoundaryCondition::corner_sink(Corner::Top)}) {
    const GasketGraph g = build_gasket(2, bc);
    const Configuration c = random_recurrent(g, 5);
    const Configuration j = config_from_json(Json::parse(config_to_json(c).dump()));
    CHECK(j.chips == c.chips);
    CHECK(j.boundary == c.boundary);
    const Configuration t = config_from_text(config_to_text(c));
    CHECK(t.chips == c.chips);
    CHECK(t.level == 2);
    CHECK(parse_config(config_to_json(c).dump(2)).chips == c.chips);
    CHECK(parse_config("  " + config_to_text(c)).chips == c.chips);
  }
}

TEST_CASE("malformed configurations are rejected") {
  CHECK_THROWS_AS(parse_config(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("1 normal 1 2 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("0 normal 1 -2 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("0 normal 1 x 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("0 nowhere 1 2 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{\"level\": 0}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{\"level\": 0, \"chips\": [1, 2"), std::invalid_argument);
  CHECK(parse_config("{\"level\": 0, \"chips\": [1, 2, 3]}").boundary == BoundaryCondition::normal());
}

TEST_CASE("graph JSON") {
  const GasketGraph g = build_gasket(1);
  const Json j = graph_to_json(g);
  CHECK(j["level"] == 1);
  CHECK(j["boundary"] == "normal");
  CHECK(j["vertices"].size() == 6);
  CHECK(j["edges"].size() == 9);
  CHECK(j["vertices"][1] == Json::array({1, 0}));
  const auto beta = j["beta"].get<std::vector<int>>();
  CHECK(std::count(beta.begin(), beta.end(), 2) == 3);
  const GasketGraph s = build_gasket(1, BoundaryCondition::corner_sink(Corner::LowerLeft));
  CHECK(graph_to_json(s)["vertices"].size() == 5);
}

TEST_CASE("invariant factor JSON keeps big numbers exact") {
  InvariantFactors f;
  f.factors = {BigInt(2), BigInt("123456789012345678901234567890")};
  const Json j = invariants_to_json(f);
  CHECK(j["invariant_factors"][1] == "123456789012345678901234567890");
  CHECK(j["order"] == "246913578024691357802469135780");
}

}  // TEST_SUITE

TEST_SUITE("render") {

TEST_CASE("disc colours follow the chip counts") {
  const int scale = 20;
  for (int n = 1; n <= 3; ++n) {
    const GasketGraph g = build_gasket(n);
    const Configuration e = identity(g);
    RenderSpec spec;
    spec.scale = scale;
    const Ppm p = parse_ppm(render(g, e, spec));
    std::set<std::tuple<int, int, int>> disc_colours;
    for (Index v = 0; v < g.size(); ++v) {
      const auto [x, y] = centre(g, v, p, scale);
      const Rgb c = p.at(x, y);
      CHECK(c == spec.color(e[v]));
      disc_colours.insert({c.r, c.g, c.b});
    }
    CHECK(disc_colours.size() <= 2);
  }
  const GasketGraph g = build_gasket(2);
  RenderSpec spec;
  spec.scale = scale;
  const Ppm p = parse_ppm(render(g, Configuration::max_stable(g), spec));
  for (Index v = 0; v < g.size(); ++v) {
    const auto [x, y] = centre(g, v, p, scale);
    CHECK(p.at(x, y) == spec.palette[3]);
  }
  CHECK(p.at(0, 0) == spec.background);
}

TEST_CASE("output is deterministic") {
  const GasketGraph g = build_gasket(3);
  const Configuration e = identity(g);
  CHECK(render(g, e) == render(g, e));
  RenderSpec svg;
  svg.format = ImageFormat::Svg;
  const std::string s = render(g, e, svg);
  CHECK(s == render(g, e, svg));
  CHECK(s.rfind("<svg", 0) == 0);
  std::size_t circles = 0;
  for (std::size_t pos = s.find("<circle"); pos != std::string::npos; pos = s.find("<circle", pos + 1)) ++circles;
  CHECK(circles == static_cast<std::size_t>(g.size()));
}

TEST_CASE("format parsing and file output") {
  CHECK(parse_image_format("svg") == ImageFormat::Svg);
  CHECK(parse_image_format("ppm") == ImageFormat::Ppm);
  CHECK_THROWS_AS(parse_image_format("png"), std::invalid_argument);
  const auto path = std::filesystem::temp_directory_path() / "gasketpile_render_test.ppm";
  const GasketGraph g = build_gasket(1);
  const std::string bytes = render(g, identity(g));
  write_file(path.string(), bytes);
  std::ifstream f(path, std::ios::binary);
  const std::string back{std::istreambuf_iterator<char>(f), {}};
  CHECK(back == bytes);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x.ppm", bytes), std::runtime_error);
}

}  // TEST_SUITE
