// Root systems: counts, chamber rays, orbits, line sets, group actions.

#include <doctest.h>

#include <algorithm>
#include <set>

#include "flatframe/root_system.hpp"

using namespace flatframe;

namespace {

RestrictedRootSystem make(Kind k, int n, std::map<RootTag, int> mult) {
  return build_system({k, n}, mult);
}

const std::map<RootTag, int> kOnes = {{RootTag::Short, 1},
                                      {RootTag::Middle, 1},
                                      {RootTag::Long, 1},
                                      {RootTag::Doubled, 1}};

}  // namespace

TEST_CASE("positive root counts match the classical closed forms") {
  for (int n = 1; n <= 8; ++n)
    CHECK(make(Kind::A, n, kOnes).positives.size() == size_t(n * (n + 1) / 2));
  for (int n = 2; n <= 6; ++n) {
    CHECK(make(Kind::B, n, kOnes).positives.size() == size_t(n * n));
    CHECK(make(Kind::C, n, kOnes).positives.size() == size_t(n * n));
    CHECK(make(Kind::BC, n, kOnes).positives.size() == size_t(n * n + n));
  }
  for (int n = 3; n <= 6; ++n)
    CHECK(make(Kind::D, n, kOnes).positives.size() == size_t(n * (n - 1)));
  CHECK(make(Kind::G2, 0, kOnes).positives.size() == 6);
  CHECK(make(Kind::F4, 0, kOnes).positives.size() == 24);
  CHECK(make(Kind::E6, 0, kOnes).positives.size() == 36);
  CHECK(make(Kind::E7, 0, kOnes).positives.size() == 63);
  CHECK(make(Kind::E8, 0, kOnes).positives.size() == 120);
}

TEST_CASE("simple roots, heights and coefficient vectors are consistent") {
  for (auto spec : {std::pair{Kind::A, 4}, {Kind::B, 3}, {Kind::C, 3}, {Kind::BC, 2},
                    {Kind::D, 4}, {Kind::G2, 2}, {Kind::F4, 4}, {Kind::E6, 6}}) {
    auto s = make(spec.first, spec.second, kOnes);
    CHECK(int(s.simple.size()) == s.rank);
    CHECK(int(s.simple_indices.size()) == s.rank);
    Int prev_height = 0;
    for (const auto& r : s.positives) {
      Int h = 0;
      for (size_t i = 0; i < r.coeffs.size(); ++i) {
        CHECK(r.coeffs[i] >= 0);
        h += r.coeffs[i];
      }
      CHECK(h >= prev_height);  // canonical order: height ascending
      prev_height = h;
      // coords reconstruct from the coefficients over the simple roots
      Vec rec(s.ambient, 0);
      for (int i = 0; i < s.rank; ++i)
        for (int c = 0; c < s.ambient; ++c) rec[c] += r.coeffs[i] * s.simple[i][c];
      CHECK(rec == r.coords);
    }
    for (int i = 0; i < s.rank; ++i) {
      const auto& sr = s.positives[s.simple_indices[i]];
      CHECK(sr.coords == s.simple[i]);
      Int h = 0;
      for (Int c : sr.coeffs) h += c;
      CHECK(h == 1);
    }
  }
}

TEST_CASE("chamber rays pair against simple roots like chamber vertices") {
  for (auto spec : {std::pair{Kind::A, 5}, {Kind::B, 4}, {Kind::C, 3}, {Kind::BC, 2},
                    {Kind::D, 5}, {Kind::G2, 2}, {Kind::F4, 4}}) {
    auto s = make(spec.first, spec.second, kOnes);
    auto rays = chamber_rays(s);
    REQUIRE(int(rays.size()) == s.rank);
    for (int i = 0; i < s.rank; ++i) {
      for (int j = 0; j < s.rank; ++j) {
        Int d = dot(rays[i], s.simple[j]);
        if (i == j) CHECK(d > 0);
        else CHECK(d == 0);
      }
    }
  }
}

TEST_CASE("C3 chamber rays are the nested all-ones prefixes") {
  auto s = make(Kind::C, 3, kOnes);
  auto rays = chamber_rays(s);
  CHECK(rays[0] == Vec{1, 0, 0});
  CHECK(rays[1] == Vec{1, 1, 0});
  CHECK(rays[2] == Vec{1, 1, 1});
}

TEST_CASE("maximally singular line counts") {
  CHECK(singular_lines(make(Kind::A, 2, kOnes)).size() == 3);
  CHECK(singular_lines(make(Kind::A, 3, kOnes)).size() == 7);
  CHECK(singular_lines(make(Kind::A, 4, kOnes)).size() == 15);
  CHECK(singular_lines(make(Kind::A, 5, kOnes)).size() == 31);
  CHECK(singular_lines(make(Kind::B, 3, kOnes)).size() == 13);
  CHECK(singular_lines(make(Kind::C, 3, kOnes)).size() == 13);
  CHECK(singular_lines(make(Kind::B, 4, kOnes)).size() == 40);
  CHECK(singular_lines(make(Kind::C, 2, kOnes)).size() == 4);
  CHECK(singular_lines(make(Kind::D, 4, kOnes)).size() == 24);
  CHECK(singular_lines(make(Kind::D, 5, kOnes)).size() == 81);
  CHECK(singular_lines(make(Kind::G2, 2, kOnes)).size() == 6);
  CHECK(singular_lines(make(Kind::F4, 4, kOnes)).size() == 120);
}

TEST_CASE("line sets are sorted, primitive, and closed under reflections") {
  for (auto spec : {std::pair{Kind::A, 3}, {Kind::C, 3}, {Kind::G2, 2}}) {
    auto s = make(spec.first, spec.second, kOnes);
    auto lines = singular_lines(s);
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    for (const auto& l : lines) {
      CHECK(l == primitive(l));
      for (const auto& r : s.positives) {
        Vec img = reflect_line(l, r.coords);
        CHECK(std::binary_search(lines.begin(), lines.end(), img));
      }
    }
  }
}

TEST_CASE("reflection is an involution on lines") {
  auto s = make(Kind::F4, 4, kOnes);
  auto lines = singular_lines(s);
  for (size_t i = 0; i < lines.size(); i += 7) {
    for (const auto& r : s.positives) {
      Vec once = reflect_line(lines[i], r.coords);
      CHECK(reflect_line(once, r.coords) == lines[i]);
    }
  }
}

TEST_CASE("vector orbits saturate") {
  auto c2 = make(Kind::C, 2, kOnes);
  auto orbit = vector_orbit(c2, ratvec_of({1, 0}), 1000);
  CHECK(orbit.size() == 4);  // hyperoctahedral images of a coordinate axis
  auto a2 = make(Kind::A, 2, kOnes);
  CHECK(vector_orbit(a2, ratvec_of({1, 1, -2}), 1000).size() == 3);
  CHECK_THROWS_AS(vector_orbit(c2, ratvec_of({1, 2}), 3), Error);
}

TEST_CASE("line permutation groups have the Weyl group order") {
  auto a2 = make(Kind::A, 2, kOnes);
  auto la = singular_lines(a2);
  auto ga = line_permutation_group(a2, la, 100000);
  CHECK(ga.complete);
  // S_3 permutes the three singular lines faithfully.
  CHECK(ga.perms[0] == std::vector<uint16_t>({0, 1, 2}));
  CHECK(ga.perms.size() == 6);

  auto c2 = make(Kind::C, 2, kOnes);
  auto lc = singular_lines(c2);
  auto gc = line_permutation_group(c2, lc, 100000);
  CHECK(gc.complete);
  // B2 Weyl group modulo -1 acts as the dihedral group of the square's
  // diagonal pairs: 4 line permutations.
  CHECK(gc.perms.size() == 4);
  for (const auto& p : gc.perms) {
    std::set<uint16_t> seen(p.begin(), p.end());
    CHECK(seen.size() == lc.size());  // genuine permutations
  }
}

TEST_CASE("products combine blocks, roots and simples") {
  auto a1 = make(Kind::A, 1, kOnes);
  auto c2 = make(Kind::C, 2, kOnes);
  auto prod = combine_systems(a1, c2);
  CHECK(prod.rank == 3);
  CHECK(prod.ambient == a1.ambient + c2.ambient);
  CHECK(prod.positives.size() == a1.positives.size() + c2.positives.size());
  CHECK(prod.blocks.size() == 2);
  CHECK(prod.blocks[0].first == 0);
  CHECK(prod.blocks[1].first == a1.ambient);
  CHECK(prod.simple.size() == 3);
  // factor-block supports never overlap
  for (const auto& r : prod.positives) {
    bool in_first = false, in_second = false;
    for (int c = 0; c < a1.ambient; ++c) in_first |= r.coords[c] != 0;
    for (int c = a1.ambient; c < prod.ambient; ++c) in_second |= r.coords[c] != 0;
    CHECK(in_first != in_second);
  }
  CHECK(prod.sum_mult() == a1.sum_mult() + c2.sum_mult());
}

TEST_CASE("multiplicities ride along and sum correctly") {
  auto bc2 = make(Kind::BC, 2, {{RootTag::Middle, 2}, {RootTag::Short, 2},
                                {RootTag::Doubled, 1}});
  CHECK(bc2.sum_mult() == 2 * 2 + 2 * 2 + 1 * 2);  // SU(3,2) data
  for (const auto& r : bc2.positives) {
    if (r.tag == RootTag::Doubled) CHECK(r.mult == 1);
    if (r.tag == RootTag::Middle) CHECK(r.mult == 2);
    if (r.tag == RootTag::Short) CHECK(r.mult == 2);
  }
}
