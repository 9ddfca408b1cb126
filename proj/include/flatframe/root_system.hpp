#pragma once

// Restricted root systems with multiplicities.
//
// Classical types are generated by reflection closure from explicit simple
// roots in integer coordinates (the non-reduced BC type is B plus the doubled
// short roots, which reflection closure alone cannot reach). Exceptional
// types use fixed simple-root matrices; F4 and E8 coordinates are doubled so
// the usual half-integer roots clear to integers. Positive roots are kept in
// a canonical order: height (sum of simple-root coefficients) ascending, then
// lexicographic on the coefficient vector.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flatframe/common.hpp"

namespace flatframe {

enum class RootTag { Short, Middle, Long, Doubled };
const char* tag_name(RootTag t);

struct RestrictedRoot {
  Vec coords;   // ambient integer coordinates
  Vec coeffs;   // coefficients over the simple roots (all >= 0)
  int mult = 1;
  RootTag tag = RootTag::Middle;
};

enum class Kind { A, B, C, D, BC, G2, F4, E6, E7, E8 };

struct TypeSpec {
  Kind kind;
  int n = 0;  // rank for classical kinds; fixed for exceptional ones
};

struct RestrictedRootSystem {
  std::string label;  // "A5", "BC2", "E7", "C3+C3" for products
  int rank = 0;
  int ambient = 0;
  std::vector<RestrictedRoot> positives;  // canonical order
  std::vector<int> simple_indices;        // into positives, simple order
  std::vector<Vec> simple;                // the simple roots themselves
  // ambient (offset,length) of each irreducible block; one entry unless a product
  std::vector<std::pair<int, int>> blocks;

  Int sum_mult() const;  // total multiplicity of the positive roots
};

// mult: multiplicity per tag; must cover every tag that occurs in the type.
RestrictedRootSystem build_system(TypeSpec type, const std::map<RootTag, int>& mult);
RestrictedRootSystem combine_systems(const RestrictedRootSystem& a,
                                     const RestrictedRootSystem& b);

// Reflection s_alpha applied to a line (scale-free): returns the primitive
// representative of alpha-reflected v.
Vec reflect_line(const Vec& v, const Vec& alpha);
RatVec reflect_vector(const RatVec& v, const Vec& alpha);

// The rank-many chamber rays: ray i is the primitive integer vector in the
// span of the roots on which every simple root but the i-th vanishes, signed
// so the i-th is positive. These are exactly the maximally singular
// directions of the closed chamber.
std::vector<Vec> chamber_rays(const RestrictedRootSystem& s);

// Full Weyl orbit of a line (primitive representative set), sorted.
std::vector<Vec> line_orbit(const RestrictedRootSystem& s, const Vec& seed);

// Full Weyl orbit of a vector (not a line: no sign identification), sorted.
// Throws OrbitBudgetExceeded if the orbit grows past `budget` elements.
std::vector<RatVec> vector_orbit(const RestrictedRootSystem& s, const RatVec& seed,
                                 size_t budget);

// All maximally singular lines: union of the line orbits of the chamber
// rays, deduplicated and sorted. (Orbits of distinct rays may coincide.)
std::vector<Vec> singular_lines(const RestrictedRootSystem& s);

// The Weyl group as permutations of a fixed sorted line set. The identity is
// perms[0]. `complete` is false when the closure hit `cap` (callers must not
// use an incomplete group for canonicalization).
struct LineGroup {
  std::vector<std::vector<uint16_t>> perms;
  bool complete = true;
};
LineGroup line_permutation_group(const RestrictedRootSystem& s,
                                 const std::vector<Vec>& lines, size_t cap);

}  // namespace flatframe
