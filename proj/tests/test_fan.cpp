#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace torext;
using fixtures::poly;

TEST_CASE("normal fan of the hexagon") {
  Fan f = fixtures::cremona_fan();
  CHECK(f.dim() == 2);
  CHECK(f.rays().size() == 6);
  CHECK(f.maximal_cones().size() == 6);
  for (const Vec& r : fixtures::cremona_rays()) CHECK(f.ray_index(r) != Fan::npos);
  CHECK(f.all_cones().size() == 13);
}

TEST_CASE("normal fans need full-dimensional polytopes") {
  CHECK_THROWS_AS(normal_fan(poly({{0, 0}, {1, 0}})), ValidationError);
  CHECK(is_compatible(poly({{0, 0}, {1, 0}}), fixtures::gp_fan()));
}

TEST_CASE("fan validation rejects malformed input") {
  auto bad = [](std::vector<Vec> rays, std::vector<RaySet> cones) {
    CHECK_THROWS_AS(Fan::make(rays, cones), ValidationError);
  };
  // overlapping cones
  bad({ivec({1, 0}), ivec({0, 1}), ivec({1, 1})}, {{0, 1}, {0, 2}});
  // a ray no cone uses
  bad({ivec({1, 0}), ivec({0, 1}), ivec({-1, 0})}, {{0, 1}});
  // a cone that is not pointed
  bad({ivec({1, 0}), ivec({-1, 0})}, {{0, 1}});
  // a generator that is not extreme
  bad({ivec({1, 0}), ivec({1, 1}), ivec({0, 1})}, {{0, 1, 2}});
  // an index out of range
  bad({ivec({1, 0}), ivec({0, 1})}, {{0, 5}});
}

TEST_CASE("common refinement of summand fans is the sum's fan") {
  Fan a = normal_fan(fixtures::cremona_a()), b = normal_fan(fixtures::cremona_b());
  Fan r = common_refinement(a, b);
  CHECK(r == fixtures::cremona_fan());
  CHECK(refines(r, a));
  CHECK(refines(r, b));
  CHECK(!refines(a, r));
  CHECK(refines(r, r));
}

TEST_CASE("common refinement property on random polygons") {
  std::mt19937 rng(43);
  for (int t = 0; t < 25; ++t) {
    Polyhedron p = gen::polytope(rng, 2, -3, 3, 5), q = gen::polytope(rng, 2, -3, 3, 5);
    Fan r = common_refinement(normal_fan(p), normal_fan(q));
    CHECK(r == normal_fan(minkowski_sum(p, q)));
    CHECK(is_compatible(p, r));
    CHECK(is_compatible(q, r));
  }
}

TEST_CASE("compatibility by minimizing vertices") {
  Fan f1 = fixtures::f1_fan();
  CHECK(is_compatible(fixtures::delta(1, 0), f1));
  CHECK(is_compatible(fixtures::delta(0, 2), f1));
  CHECK(!is_compatible(fixtures::cremona_h(), f1));
  CHECK_THROWS_AS(require_compatible(fixtures::cremona_h(), f1), ValidationError);
  Fan refined = refine_for(f1, fixtures::cremona_h());
  CHECK(is_compatible(fixtures::cremona_h(), refined));
  CHECK(refines(refined, f1));
  CHECK(normal_cone(fixtures::cremona_h(), ivec({1, 1})).rays() ==
        std::vector<Vec>{ivec({-1, 0}), ivec({0, -1})});
}

TEST_CASE("divisors of the Cremona polytopes") {
  Fan f = fixtures::cremona_fan();
  auto order = fixtures::cremona_rays();
  CHECK(divisor_of(fixtures::cremona_a(), f) == fixtures::divisor_in_order(f, order, {0, 1, 1, 1, 0, 0}));
  CHECK(divisor_of(fixtures::cremona_b(), f) == fixtures::divisor_in_order(f, order, {1, 0, 0, 0, 1, 1}));
  CHECK(divisor_of(fixtures::cremona_minus(), f) == fixtures::divisor_in_order(f, order, {1, 1, 2, 1, 1, 0}));
  CHECK(is_ample(fixtures::cremona_h(), f));
  CHECK(!is_ample(fixtures::cremona_a(), f));
}

// Cartier data m_sigma must reproduce the divisor on every ray of sigma.
TEST_CASE("Cartier data agree with the divisor on every cone") {
  std::mt19937 rng(47);
  for (int t = 0; t < 20; ++t) {
    Fan f = gen::random_refinement(rng, fixtures::f1_fan());
    Polyhedron p = gen::polytope(rng, 2, -3, 3, 4);
    if (!is_compatible(p, f)) f = refine_for(f, p);
    ToricDivisor d = divisor_of(p, f);
    CartierData c = cartier_data(p, f);
    for (std::size_t k = 0; k < f.maximal_cones().size(); ++k) {
      CHECK(p.contains(c.m[k]));
      for (std::size_t r : f.maximal_cones()[k]) CHECK(dot(c.m[k], f.ray_generator(r)) == -d.coefficients[r]);
    }
  }
}

TEST_CASE("Picard coordinates on F1") {
  Fan f = fixtures::f1_fan();
  std::vector<ToricDivisor> basis = {divisor_of(fixtures::delta(1, 0), f), divisor_of(fixtures::delta(0, 1), f)};
  for (long a = 0; a <= 2; ++a)
    for (long b = 0; b <= 2; ++b) {
      auto c = picard_coordinates(divisor_of(fixtures::delta(a, b), f), basis, f);
      REQUIRE(c.has_value());
      CHECK(*c == ivec({a, b}));
    }
  auto shifted = picard_coordinates(divisor_of(fixtures::delta(1, 0).translate(ivec({0, 1})), f), basis, f);
  CHECK(*shifted == ivec({1, 0}));
}

TEST_CASE("divisors on a refined lattice") {
  Lattice m = lattice_join(Lattice::standard(2), {Vec{Rat(1, 2), Rat(0)}});
  Fan f = fixtures::gp_fan();
  Fan cover = Fan::make(f.rays(), f.maximal_cones(), m.dual());
  std::vector<Vec> gens;
  for (const Vec& r : fixtures::gp_rays()) gens.push_back(cover.ray_generator(cover.ray_index(r)));
  CHECK(gens == std::vector<Vec>{ivec({2, 0}), ivec({0, 1}), ivec({-2, 0}), ivec({-2, -1}), ivec({-2, -2}),
                                 ivec({0, -1})});
  ToricDivisor d = divisor_of(fixtures::gp_plus(), f), dt = divisor_of(fixtures::gp_plus(), cover);
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    long k = to_ll(order_in_quotient(f.ray_generator(i), m.dual(), Lattice::standard(2)));
    CHECK(dt.coefficients[i] == Rat(k) * d.coefficients[i]);
  }
}
