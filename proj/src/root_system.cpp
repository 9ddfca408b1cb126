#include "flatframe/root_system.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace flatframe {

const char* tag_name(RootTag t) {
  switch (t) {
    case RootTag::Short: return "short";
    case RootTag::Middle: return "middle";
    case RootTag::Long: return "long";
    case RootTag::Doubled: return "doubled";
  }
  return "middle";
}

Int RestrictedRootSystem::sum_mult() const {
  Int s = 0;
  for (const auto& r : positives) s += r.mult;
  return s;
}

namespace {

struct TypeInfo {
  std::string label;
  int ambient;
  std::vector<Vec> simple;
  size_t expected_positives;
};

Vec unit(int dim, int i, Int v = 1) {
  Vec e(dim, 0);
  e[i] = v;
  return e;
}

TypeInfo type_info(TypeSpec t) {
  TypeInfo ti;
  const int n = t.n;
  auto span_simple = [&](int ambient) {
    for (int i = 0; i + 1 < n; ++i) {
      Vec v(ambient, 0);
      v[i] = 1;
      v[i + 1] = -1;
      ti.simple.push_back(v);
    }
  };
  switch (t.kind) {
    case Kind::A:
      check(n >= 1, "A_n needs n >= 1");
      ti.label = "A" + std::to_string(n);
      ti.ambient = n + 1;
      for (int i = 0; i < n; ++i) {
        Vec v(n + 1, 0);
        v[i] = 1;
        v[i + 1] = -1;
        ti.simple.push_back(v);
      }
      ti.expected_positives = size_t(n) * (n + 1) / 2;
      break;
    case Kind::B:
    case Kind::BC:
      check(n >= 1, "B_n needs n >= 1");
      ti.label = (t.kind == Kind::B ? "B" : "BC") + std::to_string(n);
      ti.ambient = n;
      span_simple(n);
      ti.simple.push_back(unit(n, n - 1));
      ti.expected_positives = size_t(n) * n;  // BC adds n doubled roots afterwards
      break;
    case Kind::C:
      check(n >= 1, "C_n needs n >= 1");
      ti.label = "C" + std::to_string(n);
      ti.ambient = n;
      span_simple(n);
      ti.simple.push_back(unit(n, n - 1, 2));
      ti.expected_positives = size_t(n) * n;
      break;
    case Kind::D:
      check(n >= 2, "D_n needs n >= 2");
      ti.label = "D" + std::to_string(n);
      ti.ambient = n;
      span_simple(n);
      {
        Vec v(n, 0);
        v[n - 2] = 1;
        v[n - 1] = 1;
        ti.simple.push_back(v);
      }
      ti.expected_positives = size_t(n) * (n - 1);
      break;
    case Kind::G2:
      ti.label = "G2";
      ti.ambient = 3;
      ti.simple = {{1, -1, 0}, {-1, 2, -1}};
      ti.expected_positives = 6;
      break;
    case Kind::F4:
      // doubled coordinates: short roots have squared length 4, long 8
      ti.label = "F4";
      ti.ambient = 4;
      ti.simple = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
      ti.expected_positives = 24;
      break;
    case Kind::E6:
    case Kind::E7:
    case Kind::E8: {
      // doubled coordinates throughout; E6/E7 are the leading simple roots
      // of E8 and span a 6-/7-dimensional subspace of the same ambient R^8
      std::vector<Vec> e8 = {
          {1, -1, -1, -1, -1, -1, -1, 1},
          {2, 2, 0, 0, 0, 0, 0, 0},
          {-2, 2, 0, 0, 0, 0, 0, 0},
          {0, -2, 2, 0, 0, 0, 0, 0},
          {0, 0, -2, 2, 0, 0, 0, 0},
          {0, 0, 0, -2, 2, 0, 0, 0},
          {0, 0, 0, 0, -2, 2, 0, 0},
          {0, 0, 0, 0, 0, -2, 2, 0},
      };
      int r = t.kind == Kind::E6 ? 6 : t.kind == Kind::E7 ? 7 : 8;
      ti.label = "E" + std::to_string(r);
      ti.ambient = 8;
      ti.simple.assign(e8.begin(), e8.begin() + r);
      ti.expected_positives = r == 6 ? 36 : r == 7 ? 63 : 120;
      break;
    }
  }
  return ti;
}

// Reflection closure from the simple roots; returns coords -> simple-basis
// coefficients for the full (positive and negative) root set.
std::map<Vec, Vec> reflection_closure(const std::vector<Vec>& simple) {
  const int r = static_cast<int>(simple.size());
  std::vector<Int> norms(r);
  for (int k = 0; k < r; ++k) norms[k] = dot(simple[k], simple[k]);

  std::map<Vec, Vec> roots;
  std::deque<Vec> queue;
  for (int k = 0; k < r; ++k) {
    Vec c(r, 0);
    c[k] = 1;
    roots.emplace(simple[k], c);
    queue.push_back(simple[k]);
  }
  while (!queue.empty()) {
    Vec v = queue.front();
    queue.pop_front();
    Vec coeff = roots.at(v);
    for (int k = 0; k < r; ++k) {
      I128 num = 2 * dot128(v, simple[k]);
      check(num % norms[k] == 0, "non-integral Cartan number in closure");
      Int cart = checked_narrow(num / norms[k]);
      if (cart == 0) continue;
      Vec w = sub(v, scaled(simple[k], cart));
      Vec cw = coeff;
      cw[k] -= cart;
      if (roots.emplace(w, cw).second) queue.push_back(w);
      check(roots.size() <= 4096, "reflection closure runaway");
    }
  }
  return roots;
}

RootTag classify(Kind kind, const Vec& coords, const std::set<Vec>& all, Int min_norm,
                 Int max_norm) {
  Int nn = dot(coords, coords);
  switch (kind) {
    case Kind::A:
    case Kind::D:
    case Kind::E6:
    case Kind::E7:
    case Kind::E8:
      return RootTag::Middle;
    case Kind::B:
      return nn == min_norm && min_norm != max_norm ? RootTag::Short : RootTag::Middle;
    case Kind::C:
      return nn == max_norm && min_norm != max_norm ? RootTag::Long : RootTag::Middle;
    case Kind::BC: {
      Vec half = coords;
      bool even = true;
      for (Int& x : half) {
        if (x % 2) even = false;
        x /= 2;
      }
      if (even && all.count(half)) return RootTag::Doubled;
      if (all.count(scaled(coords, 2))) return RootTag::Short;
      return RootTag::Middle;
    }
    case Kind::G2:
    case Kind::F4:
      return nn == min_norm ? RootTag::Short : RootTag::Long;
  }
  return RootTag::Middle;
}

bool canonical_less(const RestrictedRoot& a, const RestrictedRoot& b) {
  Int ha = 0, hb = 0;
  for (Int x : a.coeffs) ha += x;
  for (Int x : b.coeffs) hb += x;
  if (ha != hb) return ha < hb;
  return a.coeffs < b.coeffs;
}

}  // namespace

RestrictedRootSystem build_system(TypeSpec type, const std::map<RootTag, int>& mult) {
  TypeInfo ti = type_info(type);
  auto closure = reflection_closure(ti.simple);

  std::vector<RestrictedRoot> pos;
  for (const auto& [coords, coeffs] : closure) {
    bool nonneg = true, nonpos = true;
    for (Int c : coeffs) {
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    check(nonneg || nonpos, "root with mixed-sign coefficients");
    if (nonneg) pos.push_back({coords, coeffs, 1, RootTag::Middle});
  }
  check(pos.size() == ti.expected_positives, "positive root count mismatch");

  if (type.kind == Kind::BC) {
    // append the doubled short roots, unreachable by reflections;
    // in B_n the short roots are exactly the unit vectors
    std::vector<RestrictedRoot> doubled;
    for (const auto& r : pos)
      if (dot(r.coords, r.coords) == 1)
        doubled.push_back({scaled(r.coords, 2), scaled(r.coeffs, 2), 1, RootTag::Doubled});
    check(doubled.size() == size_t(type.n), "BC doubled root count mismatch");
    pos.insert(pos.end(), doubled.begin(), doubled.end());
  }

  std::set<Vec> all;
  for (const auto& r : pos) {
    all.insert(r.coords);
    all.insert(scaled(r.coords, -1));
  }
  Int min_norm = 0, max_norm = 0;
  for (const auto& r : pos) {
    Int nn = dot(r.coords, r.coords);
    if (min_norm == 0 || nn < min_norm) min_norm = nn;
    if (nn > max_norm) max_norm = nn;
  }
  for (auto& r : pos) {
    r.tag = classify(type.kind, r.coords, all, min_norm, max_norm);
    auto it = mult.find(r.tag);
    if (it == mult.end())
      fail(Errc::InconsistentCatalog,
           "no multiplicity assigned to " + std::string(tag_name(r.tag)) + " roots of " +
               ti.label);
    r.mult = it->second;
    check(r.mult >= 1, "multiplicity must be positive");
  }

  std::sort(pos.begin(), pos.end(), canonical_less);

  RestrictedRootSystem s;
  s.label = ti.label;
  s.rank = static_cast<int>(ti.simple.size());
  s.ambient = ti.ambient;
  s.positives = std::move(pos);
  s.simple = ti.simple;
  s.blocks = {{0, ti.ambient}};
  for (int k = 0; k < s.rank; ++k) {
    Vec want(s.rank, 0);
    want[k] = 1;
    int found = -1;
    for (size_t i = 0; i < s.positives.size(); ++i)
      if (s.positives[i].coeffs == want) found = static_cast<int>(i);
    check(found >= 0, "simple root missing from positives");
    s.simple_indices.push_back(found);
  }
  return s;
}

RestrictedRootSystem combine_systems(const RestrictedRootSystem& a,
                                     const RestrictedRootSystem& b) {
  RestrictedRootSystem s;
  s.label = a.label + "+" + b.label;
  s.rank = a.rank + b.rank;
  s.ambient = a.ambient + b.ambient;
  auto lift = [&](const RestrictedRoot& r, bool right) {
    RestrictedRoot out;
    out.coords.assign(s.ambient, 0);
    out.coeffs.assign(s.rank, 0);
    int co = right ? a.ambient : 0, ko = right ? a.rank : 0;
    for (size_t i = 0; i < r.coords.size(); ++i) out.coords[co + i] = r.coords[i];
    for (size_t i = 0; i < r.coeffs.size(); ++i) out.coeffs[ko + i] = r.coeffs[i];
    out.mult = r.mult;
    out.tag = r.tag;
    return out;
  };
  for (const auto& r : a.positives) s.positives.push_back(lift(r, false));
  for (const auto& r : b.positives) s.positives.push_back(lift(r, true));
  std::sort(s.positives.begin(), s.positives.end(), canonical_less);
  for (const auto& v : a.simple) {
    Vec w(s.ambient, 0);
    std::copy(v.begin(), v.end(), w.begin());
    s.simple.push_back(w);
  }
  for (const auto& v : b.simple) {
    Vec w(s.ambient, 0);
    std::copy(v.begin(), v.end(), w.begin() + a.ambient);
    s.simple.push_back(w);
  }
  for (int k = 0; k < s.rank; ++k) {
    Vec want(s.rank, 0);
    want[k] = 1;
    int found = -1;
    for (size_t i = 0; i < s.positives.size(); ++i)
      if (s.positives[i].coeffs == want) found = static_cast<int>(i);
    check(found >= 0, "simple root missing from combined positives");
    s.simple_indices.push_back(found);
  }
  s.blocks = a.blocks;
  for (auto [off, len] : b.blocks) s.blocks.emplace_back(off + a.ambient, len);
  return s;
}

Vec reflect_line(const Vec& v, const Vec& alpha) {
  Int nn = dot(alpha, alpha);
  Vec w = sub(scaled(v, nn), scaled(alpha, 2 * dot(v, alpha)));
  make_primitive(w);
  return w;
}

RatVec reflect_vector(const RatVec& v, const Vec& alpha) {
  check(v.num.size() == alpha.size(), "reflect: dimension mismatch");
  BigInt nn = 0, va = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    nn += BigInt(alpha[i]) * alpha[i];
    va += v.num[i] * alpha[i];
  }
  RatVec out;
  out.num.resize(v.num.size());
  for (size_t i = 0; i < v.num.size(); ++i)
    out.num[i] = v.num[i] * nn - 2 * va * alpha[i];
  out.den = v.den * nn;
  out.normalize();
  return out;
}

std::vector<Vec> chamber_rays(const RestrictedRootSystem& s) {
  const int r = s.rank;
  std::vector<Vec> gram(r, Vec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) gram[i][j] = dot(s.simple[i], s.simple[j]);
  BigInt D = exact_det(gram);
  check(D != 0, "singular Gram matrix");

  std::vector<Vec> rays;
  for (int i = 0; i < r; ++i) {
    // Cramer solve of  G x = e_i ;  ray = sum_j x_j * simple_j, cleared.
    std::vector<BigInt> w(s.ambient, 0);
    for (int j = 0; j < r; ++j) {
      std::vector<Vec> gj = gram;
      for (int k = 0; k < r; ++k) gj[k][j] = (k == i) ? 1 : 0;
      BigInt dj = exact_det(gj);
      for (int c = 0; c < s.ambient; ++c) w[c] += dj * s.simple[j][c];
    }
    BigInt g = 0;
    for (const auto& x : w) g = boost::multiprecision::gcd(g, x < 0 ? BigInt(-x) : x);
    check(g != 0, "zero chamber ray");
    Vec ray(s.ambient);
    for (int c = 0; c < s.ambient; ++c) {
      BigInt q = w[c] / g;
      check(q >= INT64_MIN && q <= INT64_MAX, "chamber ray coordinate overflow");
      ray[c] = q.convert_to<Int>();
    }
    if (dot(ray, s.simple[i]) < 0) ray = scaled(ray, -1);
    for (int j = 0; j < r; ++j)
      check(dot(ray, s.simple[j]) == (j == i ? dot(ray, s.simple[i]) : 0) &&
                (j != i || dot(ray, s.simple[i]) > 0),
            "chamber ray fails defining equations");
    rays.push_back(std::move(ray));
  }
  return rays;
}

std::vector<Vec> line_orbit(const RestrictedRootSystem& s, const Vec& seed) {
  check(!is_zero(seed), "line orbit of zero vector");
  std::set<Vec> seen;
  std::deque<Vec> queue;
  Vec start = primitive(seed);
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    Vec v = queue.front();
    queue.pop_front();
    for (const Vec& a : s.simple) {
      Vec w = reflect_line(v, a);
      if (seen.insert(w).second) queue.push_back(w);
      check(seen.size() <= 1u << 20, "line orbit runaway");
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<RatVec> vector_orbit(const RestrictedRootSystem& s, const RatVec& seed,
                                 size_t budget) {
  std::set<RatVec> seen;
  std::deque<RatVec> queue;
  RatVec start = seed;
  start.normalize();
  seen.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    RatVec v = queue.front();
    queue.pop_front();
    for (const Vec& a : s.simple) {
      RatVec w = reflect_vector(v, a);
      if (seen.insert(w).second) {
        if (seen.size() > budget)
          fail(Errc::OrbitBudgetExceeded,
               "orbit exceeds budget of " + std::to_string(budget));
        queue.push_back(w);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Vec> singular_lines(const RestrictedRootSystem& s) {
  std::set<Vec> out;
  for (const Vec& ray : chamber_rays(s)) {
    auto orb = line_orbit(s, ray);
    out.insert(orb.begin(), orb.end());
  }
  return {out.begin(), out.end()};
}

LineGroup line_permutation_group(const RestrictedRootSystem& s,
                                 const std::vector<Vec>& lines, size_t cap) {
  LineGroup g;
  const size_t n = lines.size();
  check(n < (1u << 16), "line set too large for permutation group");
  std::map<Vec, uint16_t> index;
  for (size_t i = 0; i < n; ++i) index[lines[i]] = static_cast<uint16_t>(i);

  std::vector<std::vector<uint16_t>> gens;
  for (const Vec& a : s.simple) {
    std::vector<uint16_t> p(n);
    for (size_t i = 0; i < n; ++i) {
      auto it = index.find(reflect_line(lines[i], a));
      check(it != index.end(), "line set not reflection-closed");
      p[i] = it->second;
    }
    gens.push_back(std::move(p));
  }

  std::vector<uint16_t> id(n);
  for (size_t i = 0; i < n; ++i) id[i] = static_cast<uint16_t>(i);
  std::set<std::vector<uint16_t>> seen{id};
  std::deque<std::vector<uint16_t>> queue{id};
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      std::vector<uint16_t> q(n);
      for (size_t i = 0; i < n; ++i) q[i] = gen[p[i]];
      if (seen.insert(q).second) {
        if (seen.size() > cap) {
          g.complete = false;
          g.perms.assign(seen.begin(), seen.end());
          return g;
        }
        queue.push_back(std::move(q));
      }
    }
  }
  g.perms.assign(seen.begin(), seen.end());
  g.complete = true;
  return g;
}

}  // namespace flatframe
