#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "swarmcongest/error.hpp"
#include "swarmcongest/mission.hpp"
#include "test_support.hpp"

using namespace swarmcongest;

namespace {

const std::vector<std::string> kCassidySet{"4c", "7",  "9",  "12", "16",  "21",
                                           "24", "28", "31", "34", "37b", "43"};

std::vector<const Building*> pointers(const std::vector<Building>& bs) {
  std::vector<const Building*> out;
  for (const auto& b : bs) out.push_back(&b);
  return out;
}

Building at(const std::string& id, Vec2 c) { return {id, {{c.x - 1, c.y - 1}, {c.x + 1, c.y + 1}}, 5.0}; }

}  // namespace

TEST_CASE("bearing is clockwise from north") {
  CHECK(bearing({0, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK(bearing({0, 0}, {1, 0}) == doctest::Approx(std::numbers::pi / 2));
  CHECK(bearing({0, 0}, {0, -1}) == doctest::Approx(std::numbers::pi));
  CHECK(bearing({0, 0}, {-1, 0}) == doctest::Approx(3 * std::numbers::pi / 2));
}

TEST_CASE("regions") {
  std::vector<Building> bs;
  for (int i = 0; i < 12; ++i) {
    const double a = i * std::numbers::pi / 6 + 0.1;
    bs.push_back(at("b" + std::to_string(i), {100 * std::sin(a), 100 * std::cos(a)}));
  }
  const auto ptrs = pointers(bs);
  CHECK(create_regions(ptrs, {0, 0}, 2).size() == 2);
  for (const auto& r : create_regions(ptrs, {0, 0}, 2)) CHECK(r.size() == 6);
  CHECK(create_regions(ptrs, {0, 0}, 12).size() == 12);
  CHECK_THROWS_AS(create_regions(ptrs, {0, 0}, 5), PreconditionError);
  CHECK_THROWS_AS(create_regions(ptrs, {0, 0}, 0), PreconditionError);
}

TEST_CASE("45-degree ring cut into 4 regions keeps adjacent pairs together") {
  std::vector<Building> bs;
  for (int i = 0; i < 8; ++i) {
    const double a = i * std::numbers::pi / 4 + 0.2;
    bs.push_back(at(std::to_string(i), {50 * std::sin(a), 50 * std::cos(a)}));
  }
  const auto regions = create_regions(pointers(bs), {0, 0}, 4);
  REQUIRE(regions.size() == 4);
  for (const auto& r : regions) {
    REQUIRE(r.size() == 2);
    const int a = std::stoi(r[0]->id);
    const int b = std::stoi(r[1]->id);
    CHECK((std::abs(a - b) == 1 || std::abs(a - b) == 7));
  }
}

TEST_CASE("farthest-first waves") {
  std::vector<Building> bs{at("A1", {0, 100}), at("A2", {0, 20}), at("B1", {0, -100}),
                           at("B2", {0, -20})};
  const std::vector<Region> regions{{&bs[1], &bs[0]}, {&bs[3], &bs[2]}};
  const auto waves = assign_waves(regions, {0, 0}, 2);
  REQUIRE(waves.size() == 2);
  CHECK(waves[0][0]->id == "A1");
  CHECK(waves[0][1]->id == "B1");
  CHECK(waves[1][0]->id == "A2");
  CHECK(waves[1][1]->id == "B2");
  CHECK_THROWS_AS(assign_waves(regions, {0, 0}, 3), PreconditionError);
}

TEST_CASE("distance ties go to the smaller id") {
  std::vector<Building> bs{at("z", {0, 50}), at("a", {50, 0})};
  const auto waves = assign_waves({{&bs[0], &bs[1]}}, {0, 0}, 2);
  CHECK(waves[0][0]->id == "a");
}

TEST_CASE("cassidy-like plans") {
  const World w = load_world(testing::data("maps/cassidy_like.json"));
  const auto one = build_mission_plan(w, kCassidySet, 1);
  REQUIRE(one.waves.size() == 1);
  CHECK(one.waves[0].size() == 12);
  std::size_t fwd = 0, down = 0;
  for (const auto& t : one.waves[0]) fwd += t.required_forward(), down += t.required_downward();
  CHECK(fwd == 48);
  CHECK(down == 12);

  const auto six = build_mission_plan(w, kCassidySet, 6, 90.0);
  CHECK(six.num_regions == 2);
  for (std::size_t k = 0; k < 6; ++k) CHECK(six.wave_start(k) == 90.0 * k);
  auto ids = [&](std::size_t k) {
    std::set<std::string> s;
    for (const auto& t : six.waves[k]) s.insert(t.target);
    return s;
  };
  CHECK(ids(0) == std::set<std::string>{"12", "21"});
  CHECK(ids(1) == std::set<std::string>{"34", "4c"});
  CHECK(ids(5) == std::set<std::string>{"28", "43"});

  CHECK_THROWS_AS(build_mission_plan(w, kCassidySet, 5), PreconditionError);
  CHECK_THROWS_AS(build_mission_plan(w, {"4c", "nope"}, 1), PreconditionError);
}

TEST_CASE("partition and ordering invariants on random building sets") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-200.0, 200.0);
  const std::vector<std::size_t> counts{12, 6, 4, 3, 2};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Building> bs;
    for (int i = 0; i < 12; ++i) bs.push_back(at("b" + std::to_string(i), {u(rng), u(rng)}));
    const World w("r", std::nullopt, {{-300, -300}, {300, 300}},
                  Polygon::from_rect({{-5, -5}, {5, 5}}), bs);
    std::vector<std::string> ids;
    for (const auto& b : bs) ids.push_back(b.id);
    const Vec2 origin = w.launch_zone().centroid();
    for (std::size_t n_waves : counts) {
      const auto plan = build_mission_plan(w, ids, n_waves);
      const std::size_t regions = 12 / n_waves;
      CHECK(plan.num_regions == regions);
      std::multiset<std::string> seen;
      for (const auto& wave : plan.waves) {
        CHECK(wave.size() == regions);
        for (const auto& t : wave) seen.insert(t.target);
      }
      CHECK(seen == std::multiset<std::string>(ids.begin(), ids.end()));

      // Oracle: sort each region's members by distance independently.
      std::vector<const Building*> ptrs;
      for (const auto& b : w.buildings()) ptrs.push_back(&b);
      const auto rs = create_regions(ptrs, origin, regions);
      for (std::size_t r = 0; r < rs.size(); ++r) {
        auto sorted = rs[r];
        std::sort(sorted.begin(), sorted.end(), [&](const Building* a, const Building* b) {
          const double da = distance(a->footprint.center(), origin);
          const double db = distance(b->footprint.center(), origin);
          return da != db ? da > db : a->id < b->id;
        });
        for (std::size_t k = 0; k < n_waves; ++k) CHECK(plan.waves[k][r].target == sorted[k]->id);
      }
    }
  }
}

TEST_CASE("mission plan file round trip") {
  const World w = load_world(testing::data("maps/cassidy_like.json"));
  const auto plan = build_mission_plan(w, kCassidySet, 3, 60.0, "cassidy");
  const auto back = mission_plan_from_json(mission_plan_to_json(plan));
  CHECK(back.waves.size() == 3);
  CHECK(back.inter_wave_delay == 60.0);
  CHECK(back.building_set == "cassidy");
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < plan.waves[k].size(); ++i) {
      CHECK(back.waves[k][i].target == plan.waves[k][i].target);
    }
  }
  CHECK(split_ids("a, b,c") == std::vector<std::string>{"a", "b", "c"});
}
