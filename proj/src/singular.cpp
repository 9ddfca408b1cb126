#include "flatframe/singular.hpp"

#include <algorithm>

namespace flatframe::singular {

namespace {

void check_vector(const catalog::DescPtr& d, const Vec& v) {
  if (v.size() != size_t(d->roots.ambient))
    fail(Errc::DimensionMismatch,
         "vector has " + std::to_string(v.size()) + " coordinates, ambient is " +
             std::to_string(d->roots.ambient));
  if (is_zero(v)) fail(Errc::ZeroVector, "zero vector");
}

std::vector<int> nonvanishing(const catalog::DescPtr& d, const Vec& v) {
  std::vector<int> out;
  const auto& pos = d->roots.positives;
  for (size_t i = 0; i < pos.size(); ++i)
    if (dot128(pos[i].coords, v) != 0) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

bool in_flat(const catalog::DescPtr& d, const Vec& v) {
  std::vector<Vec> rows = d->roots.simple;
  int base = exact_rank(rows);
  rows.push_back(v);
  return exact_rank(rows) == base;
}

std::vector<SingularRay> maximally_singular_rays(const catalog::DescPtr& d) {
  std::vector<SingularRay> out;
  auto rays = chamber_rays(d->roots);
  for (int i = 0; i < d->rank; ++i) {
    SingularRay r;
    r.vector = primitive(rays[i]);
    r.simple_index = i;
    for (int j = 0; j < d->rank; ++j)
      if (j != i) r.vanishing_simple.push_back(j);
    r.nonvanishing_roots = nonvanishing(d, r.vector);
    r.q_dim = 0;
    for (int k : r.nonvanishing_roots) r.q_dim += d->roots.positives[k].mult;
    out.push_back(std::move(r));
  }
  return out;
}

Int q_dim(const catalog::DescPtr& d, const Vec& v) {
  check_vector(d, v);
  if (!in_flat(d, v)) fail(Errc::InputError, "vector outside the flat");
  Int q = 0;
  for (const auto& r : d->roots.positives)
    if (dot128(r.coords, v) != 0) q += r.mult;
  return q;
}

Int q_intersection_dim(const catalog::DescPtr& d, const Vec& v, const Vec& w) {
  check_vector(d, v);
  check_vector(d, w);
  Int q = 0;
  for (const auto& r : d->roots.positives)
    if (dot128(r.coords, v) != 0 && dot128(r.coords, w) != 0) q += r.mult;
  return q;
}

Int t_invariant(const catalog::DescPtr& d) {
  Int mn = -1;
  for (const auto& r : maximally_singular_rays(d))
    if (mn < 0 || r.q_dim < mn) mn = r.q_dim;
  return d->dim_x - mn;
}

DegreeBound degree_bound(const catalog::DescPtr& d) {
  if (d->rank != 2)
    fail(Errc::NotRankTwo, d->id + " has rank " + std::to_string(d->rank));
  Int t = t_invariant(d);
  DegreeBound b;
  b.bound = std::max<Int>(6, t + 2);
  b.exceptional = b.bound != t + 2;
  return b;
}

void check_frame(const catalog::DescPtr& d, const Frame& f) {
  if (f.size() != size_t(d->rank))
    fail(Errc::NotAFrame, "expected " + std::to_string(d->rank) + " vectors, got " +
                              std::to_string(f.size()));
  for (const Vec& v : f) check_vector(d, v);
  for (const Vec& v : f)
    if (!in_flat(d, v)) fail(Errc::NotAFrame, "vector " + vec_str(v) + " outside the flat");
  if (exact_rank(f) != d->rank) fail(Errc::NotAFrame, "vectors are linearly dependent");
}

SingularizeResult singularize_frame(const catalog::DescPtr& d, const Frame& f) {
  check_frame(d, f);
  std::vector<Vec> lines = singular_lines(d->roots);

  // nonvanishing sets of every line, as sorted index vectors
  std::vector<std::vector<int>> line_nv;
  line_nv.reserve(lines.size());
  for (const Vec& l : lines) line_nv.push_back(nonvanishing(d, l));

  SingularizeResult res;
  for (const Vec& raw : f) {
    Vec v = primitive(raw);
    std::vector<int> v_nv = nonvanishing(d, v);

    int best = -1;
    BigInt best_num = 0, best_den = 1;  // best cos^2 so far
    for (size_t li = 0; li < lines.size(); ++li) {
      // containment: nonvanishing(line) ⊆ nonvanishing(v)
      if (!std::includes(v_nv.begin(), v_nv.end(), line_nv[li].begin(),
                         line_nv[li].end()))
        continue;
      // independence with already-chosen lines
      std::vector<Vec> test = res.frame;
      test.push_back(lines[li]);
      if (exact_rank(test) != static_cast<int>(test.size())) continue;

      BigInt dvl = BigInt(checked_narrow(dot128(v, lines[li])));
      BigInt num = dvl * dvl;
      BigInt den = BigInt(dot(v, v)) * BigInt(dot(lines[li], lines[li]));
      // strict exact comparison num/den > best_num/best_den; on ties the
      // earlier line wins, which is canonical order since `lines` is sorted
      if (best < 0 || num * best_den > best_num * den) {
        best = static_cast<int>(li);
        best_num = num;
        best_den = den;
      }
    }
    if (best < 0)
      fail(Errc::NoAdmissibleRay,
           "no independent maximally singular line has nonvanishing set contained in "
           "that of " +
               vec_str(v));

    SingularizeStep step;
    step.input = v;
    step.chosen = lines[best];
    step.containment = true;  // guaranteed by the selection rule
    BigInt g = boost::multiprecision::gcd(best_num, best_den);
    step.cos2_num = best_num / g;
    step.cos2_den = best_den / g;
    res.frame.push_back(lines[best]);
    res.steps.push_back(std::move(step));
  }
  check(exact_rank(res.frame) == d->rank, "singularized set is not a frame");
  return res;
}

}  // namespace flatframe::singular
