#pragma once

// Maximally singular rays, Q_v dimensions, the invariant t_X, the rank-2
// degree bound, and reduction of arbitrary frames to maximally singular ones.

#include <optional>
#include <vector>

#include "flatframe/catalog.hpp"
#include "flatframe/common.hpp"

namespace flatframe::singular {

struct SingularRay {
  Vec vector;                        // primitive, first nonzero coordinate > 0
  int simple_index = 0;              // the unique simple root not vanishing
  std::vector<int> vanishing_simple; // the other rank-1 simple indices
  std::vector<int> nonvanishing_roots;  // positive-root indices with α(v) != 0
  Int q_dim = 0;                     // total multiplicity over nonvanishing_roots
};

// One ray per 1-dimensional face of the closed positive chamber, in simple
// order. The full set of maximally singular lines is the union of the Weyl
// orbits of these.
std::vector<SingularRay> maximally_singular_rays(const catalog::DescPtr& d);

// dim Q_v = sum of multiplicities over positive roots not vanishing on v.
Int q_dim(const catalog::DescPtr& d, const Vec& v);
// dim(Q_v ∩ Q_w) = sum over roots vanishing on neither.
Int q_intersection_dim(const catalog::DescPtr& d, const Vec& v, const Vec& w);

// t_X = dim_x minus the minimum of q_dim over maximally singular rays.
Int t_invariant(const catalog::DescPtr& d);

struct DegreeBound {
  Int bound = 0;        // max(6, t_X + 2)
  bool exceptional = false;  // true iff bound != t_X + 2
};
DegreeBound degree_bound(const catalog::DescPtr& d);  // NotRankTwo unless rank 2

// A frame: rank-many linearly independent vectors spanning the flat.
// Vectors are scale-free and stored as primitive integer tuples.
using Frame = std::vector<Vec>;

// Validates dimensions, nonzeroness, span membership and independence.
void check_frame(const catalog::DescPtr& d, const Frame& f);
// True iff v lies in the span of the roots (the flat).
bool in_flat(const catalog::DescPtr& d, const Vec& v);

struct SingularizeStep {
  Vec input;        // the original vector, primitive
  Vec chosen;       // the maximally singular line selected for it
  bool containment; // nonvanishing(chosen) ⊆ nonvanishing(input)
  BigInt cos2_num;  // exact squared cosine of the angle between them,
  BigInt cos2_den;  //   as a reduced fraction
};
struct SingularizeResult {
  Frame frame;
  std::vector<SingularizeStep> steps;
};

// Greedy reduction: for each input vector in order, choose among the
// maximally singular lines independent of the lines already chosen, keeping
// only those whose nonvanishing root set is contained in the input's
// (NoAdmissibleRay if none), then maximize the exact squared cosine to the
// input, breaking ties by canonical line order.
SingularizeResult singularize_frame(const catalog::DescPtr& d, const Frame& f);

}  // namespace flatframe::singular
