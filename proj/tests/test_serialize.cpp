#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "chromatic/rng.hpp"
#include "chromatic/serialize.hpp"
#include "fixtures.hpp"

using namespace chromatic;

TEST_CASE("coloring survives a json round trip byte-for-byte") {
  const auto& c = fixtures::hex_build().coloring;
  const nlohmann::json j = io::coloring_to_json(c);
  CHECK(j.at("schema").get<int>() == 1);
  CHECK(j.at("color_count").get<int>() == c.colors);

  const color::Coloring back = io::coloring_from_json(j);
  CHECK(back.colors == c.colors);
  CHECK(back.nu == c.nu);
  CHECK(back.scale == c.scale);
  CHECK(back.mode == c.mode);
  CHECK(io::dump_stable(io::coloring_to_json(back)) == io::dump_stable(j));

  // The reloaded coloring classifies points exactly like the original.
  Rng rng(61);
  for (int t = 0; t < 300; ++t) {
    const Vec p{rng.uniform(-5.0, 5.0), rng.uniform(-5.0, 5.0)};
    CHECK(color::color_of(back, p) == color::color_of(c, p));
  }
}

TEST_CASE("stable dump is canonical") {
  nlohmann::json j;
  j["zeta"] = 1;
  j["alpha"] = {1.5, 0.1};
  j["mid"] = {{"y", 2}, {"x", 3}};
  const std::string s = io::dump_stable(j);
  CHECK(s.back() == '\n');
  CHECK(s.find("\"alpha\"") < s.find("\"mid\""));
  CHECK(s.find("\"mid\"") < s.find("\"zeta\""));
  CHECK(s.find("\"x\"") < s.find("\"y\""));
  CHECK(s.find("0.1") != std::string::npos);  // shortest round-trip double
  CHECK(nlohmann::json::parse(s) == j);
  // Equal inputs give equal bytes.
  CHECK(io::dump_stable(nlohmann::json::parse(s)) == s);
}

TEST_CASE("pipeline configuration from json") {
  const auto cfg = io::config_from_json(nlohmann::json::parse(
      R"({"construction": "ball", "n": 3, "delta": 0.55, "seed": 42})"));
  CHECK(cfg.construction == color::Construction::BallGeneric);
  CHECK(cfg.n == 3);
  CHECK(cfg.delta == 0.55);
  CHECK(cfg.seed == 42);

  const auto hex = io::config_from_json(nlohmann::json::parse("{}"));
  CHECK(hex.construction == color::Construction::Hexagonal);
  CHECK(hex.n == 2);
  CHECK(hex.delta == 0.0);  // resolved later to the documented default

  CHECK(fixtures::raises(
      [] { io::config_from_json(nlohmann::json::parse(R"({"construction": "pent"})")); },
      Errc::InvalidInput));
}

TEST_CASE("report json carries every section") {
  const auto& out = fixtures::hex_build();
  const nlohmann::json j = io::report_to_json(out.verification, out.bounds);
  CHECK(j.at("schema").get<int>() == 1);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.contains("structural"));
  CHECK(j.contains("sampled"));
  CHECK(j.contains("cover"));
  CHECK(j.contains("bounds"));
  CHECK(j.at("bounds").at("tau_exact").get<bool>());
  CHECK(j.at("cover").at("ground_size").get<int>() == 101);
}

TEST_CASE("file io round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "chromatic_serialize_test";
  fs::create_directories(dir);
  const std::string path = (dir / "blob.json").string();
  const std::string payload = "{\"a\": 1}\n";
  io::write_file(path, payload);
  CHECK(io::read_file(path) == payload);
  std::remove(path.c_str());
  CHECK_THROWS(io::read_file(path));
}
