#include <doctest.h>

#include <random>

#include "swarmcongest/error.hpp"
#include "swarmcongest/world.hpp"
#include "test_support.hpp"

using namespace swarmcongest;

namespace {

World one_building() {
  return World("one", std::nullopt, Rect{{0, 0}, {100, 100}},
               Polygon::from_rect({{0, 0}, {10, 10}}),
               {Building{"b", Rect{{40, 40}, {50, 50}}, 10.0}});
}

}  // namespace

TEST_CASE("empty map loads") {
  const World w = load_world(testing::fixture("empty_map.json"));
  CHECK(w.buildings().empty());
  CHECK(w.bounds().width() == 100.0);
  CHECK(w.launch_zone().bounding_box().area() == doctest::Approx(400.0));
}

TEST_CASE("cassidy-like map carries every building of the 12-building set") {
  const World w = load_world(testing::data("maps/cassidy_like.json"));
  for (const char* id : {"4c", "7", "9", "12", "16", "21", "24", "28", "31", "34", "37b", "43"}) {
    CHECK_MESSAGE(w.find_building(id) != nullptr, id);
  }
  const Rect zone = w.launch_zone().bounding_box();
  CHECK(zone.width() * zone.height() == doctest::Approx(37.0 * 41.0));
}

TEST_CASE("leschi-like map has a roadway launch zone") {
  const World w = load_world(testing::data("maps/leschi_like.json"));
  const Rect zone = w.launch_zone().bounding_box();
  CHECK(zone.width() == doctest::Approx(170.0));
  CHECK(zone.height() == doctest::Approx(7.5));
  CHECK(w.anchor().has_value());
}

TEST_CASE("invalid worlds are rejected") {
  CHECK_THROWS_AS(load_world(testing::fixture("duplicate_id_map.json")), InvariantError);
  CHECK_THROWS_AS(load_world(testing::fixture("does_not_exist.json")), ParseError);
  const Rect bounds{{0, 0}, {100, 100}};
  const Polygon zone = Polygon::from_rect({{0, 0}, {10, 10}});
  CHECK_THROWS_AS(World("w", std::nullopt, bounds, zone, {Building{"a", {{1, 1}, {2, 2}}, 0.0}}),
                  InvariantError);
  CHECK_THROWS_AS(World("w", std::nullopt, bounds, zone, {Building{"a", {{1, 1}, {1, 2}}, 3.0}}),
                  InvariantError);
  CHECK_THROWS_AS(
      World("w", std::nullopt, bounds, zone, {Building{"a", {{95, 95}, {105, 99}}, 3.0}}),
      InvariantError);
  CHECK_THROWS_AS(World("w", std::nullopt, bounds, Polygon{{{0, 0}, {4, 4}, {4, 0}, {0, 4}}}, {}),
                  InvariantError);
  CHECK_THROWS_AS(world_from_json(nlohmann::json::parse(R"({"name":"x"})")), ParseError);
}

TEST_CASE("is_occupied") {
  const World w = one_building();
  CHECK(w.is_occupied({45, 45, 5}));
  CHECK_FALSE(w.is_occupied({45, 45, 10.5}));
  CHECK_FALSE(w.is_occupied({20, 20, 1}));
  CHECK_THROWS_AS(w.is_occupied({150, 45, 5}), PreconditionError);
}

TEST_CASE("is_occupied matches a brute-force containment oracle") {
  const World w = load_world(testing::data("maps/cassidy_like.json"));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(0.0, 285.0), uy(0.0, 350.0), uz(0.0, 35.0);
  int hits = 0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p{ux(rng), uy(rng), uz(rng)};
    bool oracle = false;
    for (const auto& b : w.buildings()) {
      oracle = oracle || (p.x >= b.footprint.min.x && p.x <= b.footprint.max.x &&
                          p.y >= b.footprint.min.y && p.y <= b.footprint.max.y && p.z >= 0.0 &&
                          p.z <= b.height);
    }
    hits += oracle;
    CHECK(w.is_occupied(p) == oracle);
  }
  CHECK(hits > 0);
}

TEST_CASE("occupancy is monotone down a column") {
  const World w = load_world(testing::data("maps/cassidy_like.json"));
  std::mt19937_64 rng(5);
  for (const auto& b : w.buildings()) {
    std::uniform_real_distribution<double> ux(b.footprint.min.x, b.footprint.max.x);
    std::uniform_real_distribution<double> uy(b.footprint.min.y, b.footprint.max.y);
    const Vec2 p{ux(rng), uy(rng)};
    for (double z = 0.25; z <= b.height; z += 0.25) CHECK(w.is_occupied({p.x, p.y, z}));
  }
}

TEST_CASE("world JSON round trip") {
  const World w = load_world(testing::data("maps/leschi_like.json"));
  const auto dir = testing::scratch("world_roundtrip");
  save_world(w, dir / "w.json");
  const World back = load_world(dir / "w.json");
  REQUIRE(back.buildings().size() == w.buildings().size());
  for (std::size_t i = 0; i < w.buildings().size(); ++i) {
    CHECK(back.buildings()[i].id == w.buildings()[i].id);
    CHECK(back.buildings()[i].footprint == w.buildings()[i].footprint);
    CHECK(back.buildings()[i].height == w.buildings()[i].height);
  }
  CHECK(back.bounds() == w.bounds());
  CHECK(back.launch_zone().vertices == w.launch_zone().vertices);
  CHECK(back.anchor()->lat_deg == w.anchor()->lat_deg);
}

TEST_CASE("geodetic conversion needs an anchor") {
  CHECK_THROWS_AS(one_building().to_geodetic({1, 1}), PreconditionError);
  const World w = load_world(testing::data("maps/leschi_like.json"));
  const auto origin = w.to_geodetic({0, 0});
  CHECK(origin.lat_deg == doctest::Approx(47.6));
  const auto north = w.to_geodetic({0, 1000});
  CHECK(north.lat_deg - origin.lat_deg == doctest::Approx(1000.0 / 111'320.0).epsilon(0.01));
}

TEST_CASE("max height at a point") {
  const World w = one_building();
  CHECK(w.max_height_at({45, 45}) == 10.0);
  CHECK(w.max_height_at({39.5, 45}) == 0.0);
  CHECK(w.max_height_at({39.5, 45}, 1.0) == 10.0);
}
