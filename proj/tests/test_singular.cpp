// Singular rays, Q_v dimensions, t invariant, degree bounds, frame reduction.

#include <doctest.h>

#include <map>

#include "flatframe/catalog.hpp"
#include "flatframe/singular.hpp"

using namespace flatframe;
using catalog::lookup;
using namespace flatframe::singular;

TEST_CASE("ray q_dim sequences on worked spaces") {
  auto rays = maximally_singular_rays(lookup("Sp(6,R)"));
  REQUIRE(rays.size() == 3);
  CHECK(rays[0].q_dim == 5);
  CHECK(rays[1].q_dim == 7);
  CHECK(rays[2].q_dim == 6);

  rays = maximally_singular_rays(lookup("SL(6,R)"));
  REQUIRE(rays.size() == 5);
  Vec got;
  for (const auto& r : rays) got.push_back(r.q_dim);
  CHECK(got == Vec{5, 8, 9, 8, 5});  // palindrome i(n+1-i)

  rays = maximally_singular_rays(lookup("SO(5,4)"));
  CHECK(rays[0].q_dim == 7);
}

TEST_CASE("rays carry their vanishing structure") {
  for (const char* id : {"SL(5,R)", "SU(3,2)", "Sp(6,R)", "G2(2)", "F4(4)"}) {
    auto d = lookup(id);
    auto rays = maximally_singular_rays(d);
    REQUIRE(int(rays.size()) == d->rank);
    for (int i = 0; i < d->rank; ++i) {
      CHECK(rays[i].simple_index == i);
      CHECK(int(rays[i].vanishing_simple.size()) == d->rank - 1);
      CHECK(rays[i].vector == primitive(rays[i].vector));
      // q_dim recounts as total multiplicity over the nonvanishing roots
      Int q = 0;
      for (int ri : rays[i].nonvanishing_roots) q += d->roots.positives[ri].mult;
      CHECK(q == rays[i].q_dim);
      CHECK(q == q_dim(d, rays[i].vector));
      // every nonvanishing root really does not vanish
      for (int ri : rays[i].nonvanishing_roots)
        CHECK(dot(d->roots.positives[ri].coords, rays[i].vector) != 0);
    }
  }
}

TEST_CASE("q intersection dims agree with row overlap counting") {
  auto d = lookup("Sp(4,R)");
  Vec v{1, 0}, w{1, 1};
  CHECK(q_dim(d, v) == 3);
  CHECK(q_dim(d, w) == 3);
  CHECK(q_intersection_dim(d, v, w) == 2);
  CHECK(q_intersection_dim(d, v, v) == q_dim(d, v));
}

TEST_CASE("the t invariant on rank-2 spaces") {
  const std::map<std::string, Int> expected = {
      {"SL(3,R)", 3},  {"Sp(4,R)", 3},  {"G2(2)", 3},   {"SO(4,2)", 4},
      {"SL(3,C)", 4},  {"Sp(4,C)", 4},  {"G2(C)", 4},   {"SU(3,2)", 5},
      {"SO(5,2)", 5},  {"SL(3,H)", 6},  {"Sp(2,2)", 6}, {"SO*(10)", 7},
      {"SU(4,2)", 7},  {"SU(5,2)", 9},  {"Sp(3,2)", 9}, {"E6(-26)", 10},
      {"E6(-14)", 11}, {"SO(6,2)", 6},  {"SO(7,2)", 7}, {"SO(8,2)", 8}};
  for (const auto& [id, t] : expected) {
    CAPTURE(id);
    CHECK(t_invariant(lookup(id)) == t);
  }
}

TEST_CASE("degree bounds flag exactly the three low-dimensional spaces") {
  auto db = degree_bound(lookup("SL(3,R)"));
  CHECK(db.bound == 6);
  CHECK(db.exceptional);
  db = degree_bound(lookup("Sp(4,R)"));
  CHECK(db.bound == 6);
  CHECK(db.exceptional);
  db = degree_bound(lookup("G2(2)"));
  CHECK(db.bound == 6);
  CHECK(db.exceptional);
  db = degree_bound(lookup("SL(3,C)"));
  CHECK(db.bound == 6);       // max(6, 4+2) = 6 = t+2
  CHECK(!db.exceptional);     // not exceptional: the bound equals t+2
  db = degree_bound(lookup("SU(5,2)"));
  CHECK(db.bound == 11);
  CHECK(!db.exceptional);
  CHECK_THROWS_AS(degree_bound(lookup("Sp(6,R)")), Error);
}

TEST_CASE("frame validation") {
  auto d = lookup("SL(3,R)");
  CHECK(in_flat(d, {1, 0, -1}));
  CHECK(!in_flat(d, {1, 1, 1}));
  CHECK_NOTHROW(check_frame(d, {{1, 0, -1}, {0, 1, -1}}));
  CHECK_THROWS_AS(check_frame(d, {{1, 0, -1}}), Error);                  // too few
  CHECK_THROWS_AS(check_frame(d, {{1, 0, -1}, {2, 0, -2}}), Error);      // dependent
  CHECK_THROWS_AS(check_frame(d, {{1, 0, -1}, {1, 1, 1}}), Error);       // off the flat
  CHECK_THROWS_AS(check_frame(d, {{1, 0, -1}, {0, 0, 0}}), Error);       // zero
}

TEST_CASE("singularize pulls vectors to the closest admissible singular lines") {
  auto d = lookup("SL(3,R)");
  // (10,1,-11) is regular; the candidate lines (1,1,-2) and (2,-1,-1) are
  // admissible and the first wins on the squared cosine 1089/1332 vs 900/1332.
  auto res = singularize_frame(d, {{10, 1, -11}, {1, -2, 1}});
  REQUIRE(res.frame.size() == 2);
  CHECK(res.frame[0] == Vec{1, 1, -2});
  CHECK(res.frame[1] == Vec{1, -2, 1});
  CHECK(res.steps[0].cos2_num * 1332 == BigInt(1089) * res.steps[0].cos2_den);
  CHECK(res.steps[0].cos2_num < res.steps[0].cos2_den);  // regular input: angle > 0
  CHECK(res.steps[0].containment);
  CHECK(res.steps[1].containment);
  CHECK(res.steps[1].cos2_num == res.steps[1].cos2_den);  // already singular
  // the result is a genuine frame
  CHECK_NOTHROW(check_frame(d, res.frame));
}

TEST_CASE("singularize is the identity on maximally singular frames") {
  for (const char* id : {"Sp(6,R)", "SO(4,3)", "G2(2)"}) {
    auto d = lookup(id);
    Frame f;
    for (const auto& r : maximally_singular_rays(d)) f.push_back(r.vector);
    auto res = singularize_frame(d, f);
    CHECK(res.frame == f);
    for (const auto& s : res.steps) {
      CHECK(s.containment);
      CHECK(s.cos2_num == s.cos2_den);
    }
  }
}
