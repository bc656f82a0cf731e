#include <doctest.h>

#include <cmath>
#include <random>

#include "swarmcongest/error.hpp"
#include "swarmcongest/planner.hpp"
#include "test_support.hpp"

using namespace swarmcongest;

namespace {

World open_field() {
  return World("field", std::nullopt, {{0, 0}, {200, 200}}, Polygon::from_rect({{0, 0}, {20, 20}}),
               {});
}

// Independent dense-sampling check of a returned path.
bool path_is_clear(const Path& path, const World& world, const std::vector<Neighbor>& nbrs,
                   double margin) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Vec3 a = path[i - 1];
    const Vec3 b = path[i];
    const double len = norm(b - a);
    const int n = std::max(1, static_cast<int>(std::ceil(len / 0.25)));
    for (int k = 0; k <= n; ++k) {
      const Vec3 p = a + (b - a) * (static_cast<double>(k) / n);
      if (!world.bounds().contains(p.xy())) return false;
      for (const auto& bld : world.buildings()) {
        const Rect r = bld.footprint.inflated(margin);
        if (p.z <= bld.height + margin && p.x > r.min.x && p.x < r.max.x && p.y > r.min.y &&
            p.y < r.max.y) {
          return false;
        }
      }
      for (const auto& nb : nbrs) {
        if (std::abs(nb.position.z - p.z) < kVerticalBand &&
            distance(nb.position.xy(), p.xy()) < nb.clearance - 1e-6) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("empty map gives a straight line") {
  const World w = open_field();
  std::mt19937_64 rng(1);
  const auto path = plan_path({10, 10, 30}, {150, 120, 30}, w, {}, rng);
  REQUIRE(path.has_value());
  CHECK(path->size() == 2);
  CHECK(path->back() == Vec3{150, 120, 30});
}

TEST_CASE("a final descent segment is appended") {
  const World w = open_field();
  std::mt19937_64 rng(1);
  const auto path = plan_path({10, 10, 30}, {50, 10, 5}, w, {}, rng);
  REQUIRE(path.has_value());
  CHECK(path->size() == 3);
  CHECK((*path)[1] == Vec3{50, 10, 30});
  CHECK(path->back() == Vec3{50, 10, 5});
}

TEST_CASE("ringed agent is blocked") {
  const World w = open_field();
  std::vector<Neighbor> ring;
  for (int i = 0; i < 8; ++i) {
    const double a = i * std::numbers::pi / 4;
    ring.push_back({{100 + 1.5 * std::cos(a), 100 + 1.5 * std::sin(a), 30}, 2.0});
  }
  std::mt19937_64 rng(1);
  CHECK_FALSE(plan_path({100, 100, 30}, {180, 180, 30}, w, ring, rng).has_value());
  // The same ring outside the altitude band does not matter.
  for (auto& n : ring) n.position.z = 40;
  CHECK(plan_path({100, 100, 30}, {180, 180, 30}, w, ring, rng).has_value());
}

TEST_CASE("goal outside the world") {
  const World w = open_field();
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(plan_path({10, 10, 30}, {250, 10, 30}, w, {}, rng), PreconditionError);
}

TEST_CASE("routes around a tall building") {
  const World w("b", std::nullopt, {{0, 0}, {200, 200}}, Polygon::from_rect({{0, 0}, {20, 20}}),
                {Building{"tall", {{90, 88}, {110, 112}}, 60.0}});
  std::mt19937_64 rng(4);
  const auto path = plan_path({50, 100, 30}, {150, 100, 30}, w, {}, rng);
  REQUIRE(path.has_value());
  CHECK(path->size() > 2);
  CHECK(path_is_clear(*path, w, {}, 1.0));
}

TEST_CASE("100 random scenes pass the dense-sampling oracle") {
  std::mt19937_64 scene(99);
  std::uniform_real_distribution<double> u(10.0, 190.0);
  std::uniform_real_distribution<double> size(5.0, 25.0);
  std::uniform_real_distribution<double> z(25.0, 50.0);
  int found = 0;
  for (int s = 0; s < 100; ++s) {
    std::vector<Building> bs;
    for (int i = 0; i < 6; ++i) {
      const Vec2 c{u(scene), u(scene)};
      const double hw = size(scene) / 2, hh = size(scene) / 2;
      bs.push_back({"b" + std::to_string(i),
                    {{std::max(0.5, c.x - hw), std::max(0.5, c.y - hh)},
                     {std::min(199.5, c.x + hw), std::min(199.5, c.y + hh)}},
                    z(scene) - 10.0});
    }
    const World w("s", std::nullopt, {{0, 0}, {200, 200}}, Polygon::from_rect({{0, 0}, {5, 5}}), bs);
    const double alt = z(scene);
    auto free_point = [&] {
      for (;;) {
        const Vec3 p{u(scene), u(scene), alt};
        bool ok = true;
        for (const auto& b : bs) {
          ok = ok && !(p.z <= b.height + 1.0 && b.footprint.inflated(1.5).contains(p.xy()));
        }
        if (ok) return p;
      }
    };
    const Vec3 start = free_point();
    const Vec3 goal = free_point();
    std::vector<Neighbor> nbrs;
    for (int i = 0; i < 15; ++i) {
      Vec3 p{u(scene), u(scene), alt + (u(scene) - 100.0) / 20.0};
      if (distance(p.xy(), start.xy()) < 3.0 || distance(p.xy(), goal.xy()) < 3.0) continue;
      nbrs.push_back({p, 2.0});
    }
    std::mt19937_64 rng(s);
    const auto path = plan_path(start, goal, w, nbrs, rng);
    if (!path) continue;
    ++found;
    CHECK(path->front() == start);
    CHECK(path->back().x == goal.x);
    CHECK(path_is_clear(*path, w, nbrs, 1.0));
  }
  CHECK(found > 50);
}

TEST_CASE("checker rejects diagonal segments") {
  const World w = open_field();
  const ClearanceChecker c(w, {}, PlannerConfig{});
  CHECK_THROWS_AS(c.segment_free({0, 0, 0}, {1, 1, 1}), PreconditionError);
  CHECK(c.segment_free({5, 5, 0}, {5, 5, 30}));
}
