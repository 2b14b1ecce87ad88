#include "hsm/model.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace hsm;

namespace {

std::vector<std::vector<double>> raw(const std::vector<Point>& pts) {
  std::vector<std::vector<double>> out;
  for (const Point& p : pts) out.emplace_back(p.coords().begin(), p.coords().end());
  return out;
}

}  // namespace

TEST_CASE("regions") {
  SUBCASE("ball of volume n") {
    const Region b = Region::ball_volume(30.0, 2);
    CHECK(b.volume() == 30.0);
    CHECK(b.bounding_ball().radius ==
          doctest::Approx(std::sqrt(30.0) * unit_ball_radius(2)));
    CHECK(ball_volume(b.bounding_ball().radius, 2) == doctest::Approx(30.0));
    CHECK(b.contains(Point{0.0, 0.0}));
    CHECK_FALSE(b.contains(Point{4.0, 0.0}));
  }
  SUBCASE("interval") {
    const Region iv = Region::interval(10.0);
    CHECK(iv.dim() == 1);
    CHECK(iv.volume() == 10.0);
    CHECK(iv.contains(Point{0.0}));
    CHECK(iv.contains(Point{10.0}));
    CHECK_FALSE(iv.contains(Point{10.01}));
    CHECK(iv.interval_bounds()->second == 10.0);
  }
  SUBCASE("d = 1 ball is an interval") {
    const Region b = Region::ball_volume(20.0, 1);
    const auto iv = b.interval_bounds();
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(-10.0));
    CHECK(iv->second == doctest::Approx(10.0));
  }
  SUBCASE("members lie in the bounding ball") {
    CounterRng rng(3);
    const Region half = Region::custom(
        RegionKind::kCustom, 2, [](const Point& p) { return p[0] > 0; },
        BallSpec{Point{0.0, 0.0}, 1.0});
    for (int i = 0; i < 1000; ++i) {
      const Point p = half.sample_uniform(rng);
      CHECK(half.contains(p));
      CHECK(norm(p) <= 1.0);
    }
    CHECK_FALSE(half.has_exact_volume());
    CHECK_THROWS_AS(half.volume(), std::logic_error);
  }
  CHECK_THROWS(Region::interval(0.0));
  CHECK_THROWS(Region::ball_volume(-1.0, 2));
}

TEST_CASE("is_packing basics") {
  const BallSpec dom{Point{0.0, 0.0}, 10.0};
  const double two_r = 2 * unit_ball_radius(2);
  Configuration c(2, dom);
  CHECK(is_packing(c).result);
  c.add(Point{0.0, 0.0});
  CHECK(is_packing(c).result);
  SUBCASE("distance exactly 2 r_d violates the strict inequality") {
    c.add(Point{two_r, 0.0});
    const PackingEvent ev = is_packing(c);
    CHECK_FALSE(ev.result);
    REQUIRE(ev.witness);
    CHECK(ev.witness->first == 0);
    CHECK(ev.witness->second == 1);
  }
  SUBCASE("just beyond 2 r_d is fine") {
    c.add(Point{two_r * (1 + 1e-12), 0.0});
    const PackingEvent ev = is_packing(c);
    CHECK(ev.result);
    CHECK_FALSE(ev.witness);
  }
}

TEST_CASE("insertion_allowed") {
  const BallSpec dom{Point{0.0}, 5.0};
  Configuration c(1, dom);
  CHECK(insertion_allowed(c, Point{1.0}));
  c.add(Point{1.0});
  CHECK_FALSE(insertion_allowed(c, Point{1.0}));
  CHECK_FALSE(insertion_allowed(c, Point{2.0}));  // distance exactly 1 = 2 r_1
  CHECK(insertion_allowed(c, Point{2.0 + 1e-9}));
}

TEST_CASE("cell list agrees with brute force on random configurations") {
  CounterRng rng(17);
  int disagreements = 0;
  int trials = 0;
  for (int d = 1; d <= 4; ++d) {
    const double two_r = 2 * unit_ball_radius(d);
    for (int t = 0; t < 2500; ++t) {
      // Vary the domain so both dense and sparse grids are exercised.
      const double n = 2.0 + 60.0 * rng.uniform();
      const Region s = Region::ball_volume(n, d);
      Configuration c(d, s.bounding_ball());
      const int k = 1 + static_cast<int>(rng.below(100));
      const int k_eff = std::min(k, static_cast<int>(n));
      std::vector<Point> pts;
      for (int i = 0; i < k_eff; ++i) {
        Point p = s.sample_uniform(rng);
        pts.push_back(p);
        c.add(p);
      }
      ++trials;
      if (is_packing(c).result != oracle::brute_force_packing(raw(pts), two_r)) {
        ++disagreements;
      }
      REQUIRE(c.index_consistent());
    }
  }
  CHECK(trials == 10000);
  CHECK(disagreements == 0);
}

TEST_CASE("insertion_allowed equals is_packing of the augmented configuration") {
  CounterRng rng(18);
  const Region s = Region::ball_volume(40.0, 2);
  Configuration c(2, s.bounding_ball());
  for (int trial = 0; trial < 10000; ++trial) {
    // Grow a packing to a random size, then test a fresh point.
    if (trial % 200 == 0) c.clear();
    const Point p = s.sample_uniform(rng);
    const bool allowed = c.insertion_allowed(p);
    Configuration aug = c;
    aug.add(p);
    REQUIRE(allowed == is_packing(aug).result);
    if (allowed) c.add(p);
  }
}

TEST_CASE("remove and move keep the index in sync") {
  CounterRng rng(19);
  const Region s = Region::ball_volume(50.0, 3);
  Configuration c(3, s.bounding_ball());
  for (int i = 0; i < 60; ++i) c.add(s.sample_uniform(rng));
  for (int step = 0; step < 500; ++step) {
    const std::size_t i = rng.below(c.size());
    if (step % 3 == 0) {
      c.remove(i);
      c.add(s.sample_uniform(rng));
    } else {
      c.move(i, s.sample_uniform(rng));
    }
    REQUIRE(c.index_consistent());
  }
}

TEST_CASE("high dimension falls back to a linear scan") {
  const Region s = Region::ball_volume(1e6, 24);
  Configuration c(24, s.bounding_ball());
  CHECK_FALSE(c.uses_grid());
  CounterRng rng(20);
  std::vector<Point> pts;
  for (int i = 0; i < 30; ++i) {
    pts.push_back(s.sample_uniform(rng));
    c.add(pts.back());
  }
  CHECK(is_packing(c).result ==
        oracle::brute_force_packing(raw(pts), 2 * unit_ball_radius(24)));
}

TEST_CASE("spheres may protrude outside the region") {
  const Region s = Region::interval(3.0);
  Configuration c(1, s.bounding_ball());
  c.add(Point{0.0});
  c.add(Point{3.0});
  c.add(Point{1.5});
  CHECK(s.contains(Point{0.0}));
  CHECK(is_packing(c).result);
}

TEST_CASE("within and count_within use closed balls") {
  const Region s = Region::interval(10.0);
  Configuration c(1, s.bounding_ball());
  for (double x : {1.0, 2.0, 3.0, 7.0}) c.add(Point{x});
  CHECK(c.count_within(Point{2.0}, 1.0) == 3);
  CHECK(c.within(Point{5.0}, 2.0) == std::vector<std::size_t>{2, 3});
}

TEST_CASE("region_volume_mc") {
  CounterRng rng(21);
  SUBCASE("a region equal to its bounding ball is hit every time") {
    const Region b = Region::ball(BallSpec{Point{1.0, 1.0, 1.0}, 0.9});
    const Estimate e = region_volume_mc(b, 1000, rng);
    CHECK(e.mean == doctest::Approx(ball_volume(0.9, 3)));
    CHECK(e.std_error == 0.0);
  }
  SUBCASE("interval of length 10 inside a bounding interval of length 12") {
    const Region iv = Region::custom(
        RegionKind::kInterval, 1,
        [](const Point& p) { return p[0] >= 0.0 && p[0] <= 10.0; },
        BallSpec{Point{5.0}, 6.0});
    const Estimate e = region_volume_mc(iv, 100000, rng);
    CHECK(std::abs(e.mean - 10.0) <= 3 * e.std_error);
  }
  SUBCASE("zero volume region") {
    const Region empty = Region::custom(
        RegionKind::kCustom, 2, [](const Point&) { return false; },
        BallSpec{Point{0.0, 0.0}, 1.0});
    const Estimate e = region_volume_mc(empty, 1000, rng);
    CHECK(e.mean == 0.0);
  }
  SUBCASE("ball of volume n within four standard errors, 100 repetitions") {
    const Region b = Region::ball_volume(7.0, 3);
    const Region as_oracle = Region::custom(
        RegionKind::kCustom, 3,
        [&](const Point& p) { return b.contains(p); },
        BallSpec{Point(3), b.bounding_ball().radius * 1.3});
    int outside = 0;
    for (int rep = 0; rep < 100; ++rep) {
      const Estimate e = region_volume_mc(as_oracle, 5000, rng);
      if (std::abs(e.mean - 7.0) > 4 * e.std_error) ++outside;
    }
    CHECK(outside == 0);
  }
  CHECK_THROWS(region_volume_mc(Region::interval(1.0), 0, rng));
}

TEST_CASE("configuration snapshot CSV") {
  const Region s = Region::ball_volume(10.0, 2);
  Configuration c(2, s.bounding_ball());
  c.add(Point{0.25, -1.0});
  c.add(Point{1.0 / 3.0, 1.5});
  std::ostringstream out;
  write_config_csv(out, c);
  const std::string text = out.str();
  CHECK(text.rfind("dim,k\n2,2\n", 0) == 0);
  std::istringstream in(text);
  const std::vector<Point> back = read_config_csv(in);
  REQUIRE(back.size() == 2);
  CHECK(back[1] == c.center(1));

  std::istringstream bad("k,dim\n");
  CHECK_THROWS(read_config_csv(bad));
}
