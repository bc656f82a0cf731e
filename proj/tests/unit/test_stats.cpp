#include <doctest.h>

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "swarmcongest/error.hpp"
#include "swarmcongest/stats.hpp"
#include "test_support.hpp"

using namespace swarmcongest;

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& name) {
  std::ifstream in(testing::fixture(name));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    rows.push_back(f);
  }
  return rows;
}

std::vector<Observation> anova_fixture() {
  std::vector<Observation> obs;
  for (const auto& r : read_csv("anova_2x2.csv")) obs.push_back({{r[0], r[1]}, std::stod(r[2])});
  return obs;
}

}  // namespace

// Reference values below come from scipy / statsmodels.
TEST_CASE("studentized range distribution") {
  CHECK(ptukey(3.5, 3, 12) == doctest::Approx(0.9300045147248164).epsilon(1e-6));
  CHECK(ptukey(2, 4, 30) == doctest::Approx(0.4993933171468553).epsilon(1e-6));
  CHECK(qtukey(0.95, 3, 12) == doctest::Approx(3.772928965726967).epsilon(1e-6));
  CHECK(qtukey(0.99, 5, 20) == doctest::Approx(5.2932525192394335).epsilon(1e-6));
  CHECK(ptukey(0.0, 3, 12) == 0.0);
  double prev = 0.0;
  for (double q = 0.5; q < 8.0; q += 0.5) {
    const double p = ptukey(q, 4, 20);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("two-factor ANOVA") {
  const auto r = anova_between_groups(anova_fixture(), {"a", "b"});
  CHECK(r.row("a").sum_of_squares == doctest::Approx(5.9405));
  CHECK(r.row("a").f == doctest::Approx(14.6769610871));
  CHECK(r.row("a").p == doctest::Approx(0.00147301786947).epsilon(1e-6));
  CHECK(r.row("b").sum_of_squares == doctest::Approx(26.2205));
  CHECK(r.row("b").f == doctest::Approx(64.7819641754));
  CHECK(r.row("b").p == doctest::Approx(5.12489644381e-07).epsilon(1e-6));
  CHECK(r.ss_within == doctest::Approx(6.476));
  CHECK(r.df_within == 16.0);
  CHECK(r.ss_total == doctest::Approx(r.ss_between + r.ss_within));
  CHECK_THROWS_AS(r.row("c"), PreconditionError);
}

TEST_CASE("ANOVA edge cases") {
  std::vector<Observation> flat;
  for (const char* a : {"x", "y"})
    for (const char* b : {"p", "q"})
      for (int i = 0; i < 3; ++i) flat.push_back({{a, b}, 2.5});
  const auto r = anova_between_groups(flat, {"a", "b"});
  CHECK(r.row("a").f == 0.0);
  CHECK(r.row("b").p == 1.0);

  auto obs = anova_fixture();
  CHECK_THROWS_AS(anova_between_groups(obs, {"a"}), PreconditionError);
  CHECK_THROWS_AS(anova_between_groups({}, {"a", "b"}), PreconditionError);
  obs.pop_back();
  CHECK_THROWS_AS(anova_between_groups(obs, {"a", "b"}), PreconditionError);
  std::vector<Observation> one_level{{{"x", "p"}, 1}, {{"x", "p"}, 2}};
  CHECK_THROWS_AS(anova_between_groups(one_level, {"a", "b"}), PreconditionError);
}

TEST_CASE("three-factor ANOVA decomposes the sum of squares") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Observation> obs;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 2; ++c)
        for (int i = 0; i < 4; ++i)
          obs.push_back({{std::to_string(a), std::to_string(b), std::to_string(c)},
                         2.0 * a + 0.5 * b + noise(rng)});
  const auto r = anova_between_groups(obs, {"a", "b", "c"});
  CHECK(r.ss_total == doctest::Approx(r.ss_between + r.ss_within));
  double mains = 0.0;
  for (const auto& row : r.rows) mains += row.sum_of_squares;
  CHECK(mains <= r.ss_between + 1e-9);
  CHECK(r.df_within == 48 - 12);
  CHECK(r.row("b").df_effect == 2.0);
  CHECK(r.row("a").p < 0.001);
}

TEST_CASE("Tukey HSD") {
  std::map<std::string, std::vector<double>> by;
  for (const auto& r : read_csv("tukey_3groups.csv")) by[r[0]].push_back(std::stod(r[1]));
  const std::vector<NamedGroup> groups{{"g0", by["g0"]}, {"g01", by["g01"]}, {"g10", by["g10"]}};
  const auto t = tukey_hsd(groups);
  CHECK(t.rows.size() == 3);
  CHECK(t.q_critical == doctest::Approx(3.772928965726967).epsilon(1e-6));
  CHECK(t.df_error == 12.0);
  CHECK(t.pair("g0", "g01").p == doctest::Approx(0.85223575).epsilon(1e-5));
  CHECK_FALSE(t.pair("g0", "g01").significant);
  CHECK(t.pair("g10", "g0").significant);
  CHECK(t.pair("g01", "g10").significant);
  CHECK(t.pair("g0", "g10").p < 1e-6);

  // Larger separation never lowers q.
  double prev_q = 0.0;
  for (double shift : {0.0, 0.5, 1.0, 2.0}) {
    auto shifted = groups;
    for (double& v : shifted[1].second) v += shift;
    const double q = tukey_hsd(shifted).pair("g0", "g01").q;
    CHECK(q >= prev_q - 1e-12);
    prev_q = q;
  }
  CHECK_THROWS_AS(tukey_hsd({groups[0]}), PreconditionError);
  CHECK_THROWS_AS(tukey_hsd(groups, 1.5), PreconditionError);
  CHECK_THROWS_AS(tukey_hsd({groups[0], {"solo", {1.0}}}), PreconditionError);
}

TEST_CASE("Pearson correlation") {
  std::vector<double> real, sim;
  for (const auto& r : read_csv("pearson_61.csv")) {
    real.push_back(std::stod(r[1]));
    sim.push_back(std::stod(r[2]));
  }
  REQUIRE(real.size() == 61);
  const auto p = pearson(real, sim);
  CHECK(p.r == doctest::Approx(0.8409938517808351).epsilon(1e-10));
  CHECK(p.p == doctest::Approx(2.227078754459971e-17).epsilon(1e-4));
  CHECK(p.n == 61);

  CHECK(pearson(sim, real).r == doctest::Approx(p.r).epsilon(1e-12));
  std::vector<double> affine;
  for (double v : sim) affine.push_back(3.0 * v - 7.0);
  CHECK(pearson(real, affine).r == doctest::Approx(p.r).epsilon(1e-12));
  for (double& v : affine) v = -v;
  CHECK(pearson(real, affine).r == doctest::Approx(-p.r).epsilon(1e-12));
  CHECK(pearson(real, real).r == 1.0);

  CHECK_THROWS_AS(pearson({1, 2, 3}, {1, 2}), PreconditionError);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2}), PreconditionError);
  CHECK_THROWS_AS(pearson({1, 2, 3}, {4, 4, 4}), PreconditionError);
}

TEST_CASE("median") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(median({}), PreconditionError);
}
