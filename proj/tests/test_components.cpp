#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "support.hpp"

using namespace torext;
using fixtures::poly;

TEST_CASE("F1 pair splits into two components") {
  Polyhedron plus = fixtures::delta(1, 0).translate(ivec({0, 1})), minus = fixtures::delta(0, 2);
  ComponentDecomposition d = components(minus, plus);
  REQUIRE(d.count() == 2);
  CHECK(!d.truncation);
  CHECK(nabla_of(d, 0) == fixtures::delta(0, 1).translate(ivec({0, 1})));
  CHECK(nabla_of(d, 1) == fixtures::delta(1, 1));
  CHECK(component_volume(d, 0) == Rat(1, 2));
  CHECK(component_volume(d, 1) == Rat(3, 2));
}

TEST_CASE("Cremona difference has three components with the expected unions") {
  Fan f = fixtures::cremona_fan();
  ComponentDecomposition d = components(fixtures::cremona_minus(), fixtures::cremona_a());
  REQUIRE(d.count() == 3);
  auto order = fixtures::cremona_rays();
  CHECK(divisor_of(nabla_of(d, 0), f) == fixtures::divisor_in_order(f, order, {1, 1, 1, 1, 0, 0}));
  CHECK(divisor_of(nabla_of(d, 1), f) == fixtures::divisor_in_order(f, order, {0, 1, 2, 1, 0, 0}));
  CHECK(divisor_of(nabla_of(d, 2), f) == fixtures::divisor_in_order(f, order, {0, 1, 1, 1, 1, 0}));
  Rat total = 0;
  for (std::size_t i = 0; i < 3; ++i) total += component_volume(d, i);
  CHECK(total == volume(fixtures::cremona_minus()) - volume(fixtures::cremona_a()));
}

TEST_CASE("general position pair has two components around a half-integral core") {
  ComponentDecomposition d = components(fixtures::gp_minus(), fixtures::gp_plus());
  REQUIRE(d.count() == 2);
  CHECK(d.core.vertices() == std::vector<Vec>{ivec({0, 0}), Vec{Rat(1, 2), Rat(0)}});
  CHECK(nabla_of(d, 0).vertices() == std::vector<Vec>{ivec({0, 0}), ivec({0, 1}), Vec{Rat(1, 2), Rat(0)}});
  CHECK(nabla_of(d, 1).vertices() ==
        std::vector<Vec>{ivec({0, -1}), ivec({0, 0}), Vec{Rat(1, 2), Rat(0)}, ivec({1, -1})});
}

TEST_CASE("degenerate differences") {
  Polyhedron d02 = fixtures::delta(0, 2);
  CHECK(components(d02, d02).count() == 0);
  CHECK(components(d02, poly({{-5, -5}, {5, -5}, {0, 5}})).count() == 0);
  CHECK(components(d02, poly({{7, 7}})).count() == 1);
  CHECK(components(poly({{0, 0}, {2, 0}}), poly({{1, 0}})).count() == 2);
  CHECK(components(d02, poly({{0, 0}, {2, 0}})).count() == 1);
}

TEST_CASE("unbounded inputs are truncated") {
  Cone quadrant = Cone::from_generators(2, {ivec({1, 0}), ivec({0, 1})});
  Polyhedron minus = minkowski_sum(Polyhedron::point(ivec({0, 0})), quadrant);
  Polyhedron plus = minkowski_sum(poly({{2, 0}, {0, 2}}), quadrant);
  ComponentDecomposition d = components(minus, plus);
  CHECK(d.truncation.has_value());
  CHECK(d.count() == 1);
  Polyhedron corner = minkowski_sum(Polyhedron::point(ivec({1, 1})), quadrant);
  CHECK(components(minus, corner).count() == 1);
  Polyhedron other = minkowski_sum(Polyhedron::point(ivec({0, 0})), Cone::from_generators(2, {ivec({1, 0})}));
  CHECK_THROWS_AS(components(minus, other), ValidationError);
  CHECK_THROWS_AS(truncate(minus, Halfspace{ivec({1, 0}), 3}), ValidationError);
}

TEST_CASE("component counts match the flood-fill oracle on random pairs") {
  std::mt19937 rng(53);
  for (int t = 0; t < 120; ++t) {
    Polyhedron minus = gen::polytope(rng, 2, -4, 4, 5);
    Polyhedron plus = gen::polygon_any(rng, -4, 4);
    INFO("minus " << to_string(minus.vertices()[0]) << " plus " << plus.vertices().size());
    CHECK(components(minus, plus).count() == oracle::flood_fill_components(minus, plus));
  }
}

TEST_CASE("component volumes add up to the difference") {
  std::mt19937 rng(59);
  for (int t = 0; t < 40; ++t) {
    Polyhedron minus = gen::polytope(rng, 2, -4, 4, 5);
    Polyhedron plus = gen::polytope(rng, 2, -4, 4, 4);
    ComponentDecomposition d = components(minus, plus);
    Rat total = 0;
    for (std::size_t i = 0; i < d.count(); ++i) total += component_volume(d, i);
    Polyhedron core = intersect(minus, plus);
    CHECK(total == volume(minus) - (core.is_full_dim() ? volume(core) : Rat(0)));
  }
}

TEST_CASE("component unions are lattice-refined polyhedra for compatible pairs") {
  std::mt19937 rng(61);
  for (int t = 0; t < 30; ++t) {
    Polyhedron minus = gen::polytope(rng, 2, -3, 3, 5);
    Polyhedron plus = gen::polytope(rng, 2, -3, 3, 4);
    ComponentDecomposition d = components(minus, plus);
    Fan f = common_refinement(normal_fan(minus), normal_fan(plus));
    for (std::size_t i = 0; i < d.count(); ++i) {
      Polyhedron n = nabla_of(d, i);
      CHECK(n.contains(d.core));
      if (minus.contains(plus)) CHECK((minus.contains(n) && n.contains(plus)));
      CHECK(volume(n) == component_volume(d, i) + (d.core.is_full_dim() ? volume(d.core) : Rat(0)));
      CHECK(is_compatible(n, refine_for(f, n)));
    }
  }
}
