#include "flatframe/incidence.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace flatframe::incidence {

namespace {

int first_nonzero(const Vec& v) {
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) return static_cast<int>(i);
  return -1;
}

// Fraction-free row echelon over the integers; rows stay gcd-reduced so
// entries remain small for the vectors that arise from root systems.
struct Echelon {
  std::vector<Vec> rows;  // kept sorted by leading position
  std::vector<int> leads;

  // Reduces v against the stored rows; false iff v is in their span.
  bool reduce(Vec& v) const {
    for (size_t k = 0; k < rows.size(); ++k) {
      Int c = v[leads[k]];
      if (c == 0) continue;
      Int p = rows[k][leads[k]];
      for (size_t j = 0; j < v.size(); ++j)
        v[j] = checked_narrow(static_cast<I128>(p) * v[j] -
                              static_cast<I128>(c) * rows[k][j]);
      reduce_keep_sign(v);
    }
    return !is_zero(v);
  }

  void insert(Vec v) {
    int l = first_nonzero(v);
    check(l >= 0, "cannot insert a dependent row");
    size_t at = 0;
    while (at < leads.size() && leads[at] < l) ++at;
    rows.insert(rows.begin() + at, std::move(v));
    leads.insert(leads.begin() + at, l);
  }
};

int parity_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

BigInt block_minor(const std::vector<Vec>& m, const std::vector<int>& rows,
                   int col0, int ncols) {
  if (rows.empty()) return 1;
  std::vector<Vec> sub;
  sub.reserve(rows.size());
  for (int r : rows) sub.emplace_back(m[r].begin() + col0, m[r].begin() + col0 + ncols);
  return exact_det(sub);
}

// Advances `comb` to the next n1-subset of {0..n-1} in lex order.
bool next_combination(std::vector<int>& comb, int n) {
  int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> complement_of(const std::vector<int>& s, int n) {
  std::vector<int> out;
  out.reserve(n - s.size());
  size_t at = 0;
  for (int i = 0; i < n; ++i) {
    if (at < s.size() && s[at] == i)
      ++at;
    else
      out.push_back(i);
  }
  return out;
}

}  // namespace

int popcount(const BitRow& r) {
  int c = 0;
  for (std::uint64_t w : r) c += std::popcount(w);
  return c;
}

bool get_bit(const BitRow& r, int j) {
  return (r[static_cast<size_t>(j) >> 6] >> (j & 63)) & 1u;
}

void set_bit(BitRow& r, int j) { r[static_cast<size_t>(j) >> 6] |= std::uint64_t{1} << (j & 63); }

int and_popcount(const BitRow& a, const BitRow& b) {
  int c = 0;
  for (size_t w = 0; w < a.size(); ++w) c += std::popcount(a[w] & b[w]);
  return c;
}

BitRow row_vector(const catalog::DescPtr& d, const Vec& v) {
  if (static_cast<int>(v.size()) != d->roots.ambient)
    fail(Errc::DimensionMismatch, "vector size does not match the space");
  if (is_zero(v)) fail(Errc::ZeroVector, "zero vector has no incidence row");
  if (!singular::in_flat(d, v)) fail(Errc::InputError, "vector outside the flat");
  int n_cols = static_cast<int>(d->dim_x) - d->rank;
  BitRow row((static_cast<size_t>(n_cols) + 63) / 64, 0);
  int col = 0;
  for (const auto& r : d->roots.positives) {
    bool on = dot(r.coords, v) != 0;
    for (Int c = 0; c < r.mult; ++c, ++col)
      if (on) set_bit(row, col);
  }
  check(col == n_cols, "column count mismatch");
  return row;
}

IncidenceMatrix incidence_matrix(const catalog::DescPtr& d, const singular::Frame& f,
                                 int demand) {
  singular::check_frame(d, f);
  if (demand < 0) fail(Errc::InputError, "negative demand");
  IncidenceMatrix a;
  a.space_id = d->id;
  a.frame = f;
  a.n_rows = static_cast<int>(f.size());
  a.n_cols = static_cast<int>(d->dim_x) - d->rank;
  a.demands.assign(a.n_rows, demand);
  for (const auto& v : f) a.rows.push_back(row_vector(d, v));
  int col = 0;
  for (size_t ri = 0; ri < d->roots.positives.size(); ++ri)
    for (Int c = 0; c < d->roots.positives[ri].mult; ++c)
      a.columns.push_back({static_cast<int>(ri), static_cast<int>(c)});
  col = static_cast<int>(a.columns.size());
  check(col == a.n_cols, "column labels mismatch");
  // No column can vanish on a whole frame: that would put a nonzero
  // functional's kernel over the span of the frame, i.e. the whole flat.
  for (int j = 0; j < a.n_cols; ++j) {
    bool any = false;
    for (int i = 0; i < a.n_rows && !any; ++i) any = a.get(i, j);
    check(any, "identically zero column in a frame matrix");
  }
  for (int i = 0; i < a.n_rows; ++i) {
    check(a.row_popcount(i) == singular::q_dim(d, f[i]),
          "row popcount disagrees with dim Q_v");
    for (int j = i + 1; j < a.n_rows; ++j)
      check(and_popcount(a.rows[i], a.rows[j]) ==
                singular::q_intersection_dim(d, f[i], f[j]),
            "row intersection disagrees with dim(Q_v ∩ Q_w)");
  }
  return a;
}

// ---------------------------------------------------------------------------

EnumStats enumerate_singular_frames(const catalog::DescPtr& d,
                                    const std::vector<Vec>& lines,
                                    const std::function<bool(const std::vector<int>&)>& emit,
                                    const EnumOptions& opt) {
  if (d->rank > 8) fail(Errc::UnsupportedParams, "frame enumeration supports rank <= 8");
  const int n_lines = static_cast<int>(lines.size());
  const int k = opt.subset_size < 0 ? d->rank : opt.subset_size;
  if (k < 1 || k > d->rank)
    fail(Errc::InputError, "subset size must be between 1 and the rank");

  EnumStats stats;
  stats.line_count = lines.size();

  LineGroup own_group;
  const LineGroup* group = opt.group;
  if (opt.up_to_weyl && !group) {
    own_group = line_permutation_group(d->roots, lines, opt.group_cap);
    group = &own_group;
  }
  std::vector<int> orbit_min;
  if (opt.up_to_weyl && group->complete) {
    stats.weyl_reduced = true;
    orbit_min.assign(lines.size(), n_lines);
    for (const auto& g : group->perms)
      for (int l = 0; l < n_lines; ++l)
        orbit_min[l] = std::min(orbit_min[l], static_cast<int>(g[l]));
  }

  std::vector<int> chosen;
  chosen.reserve(k);
  bool stopped = false;

  auto is_canonical = [&](const std::vector<int>& s) {
    std::array<int, 8> img{};
    for (const auto& g : group->perms) {
      int m = n_lines;
      for (int x : s) m = std::min(m, static_cast<int>(g[x]));
      if (m > s[0]) continue;
      if (m < s[0]) return false;
      for (int i = 0; i < k; ++i) img[i] = g[s[i]];
      std::sort(img.begin(), img.begin() + k);
      for (int i = 0; i < k; ++i) {
        if (img[i] < s[i]) return false;
        if (img[i] > s[i]) break;
      }
    }
    return true;
  };

  // Depth-first combinations in ascending index order with incremental
  // independence pruning; canonical-minimum pruning applies only when the
  // Weyl quotient is on.
  auto descend = [&](auto&& self, const Echelon& ech, int start) -> void {
    if (stopped) return;
    if (static_cast<int>(chosen.size()) == k) {
      if (!stats.weyl_reduced || is_canonical(chosen)) {
        // The budget caps frames examined, not search-tree nodes.
        if (opt.budget && stats.emitted >= opt.budget) {
          stopped = true;
          stats.complete = false;
          return;
        }
        ++stats.emitted;
        if (!emit(chosen)) {
          stopped = true;
          stats.complete = false;
        }
      }
      return;
    }
    int need = k - static_cast<int>(chosen.size());
    for (int c = start; c <= n_lines - need; ++c) {
      if (stopped) return;
      if (chosen.empty() && opt.first_line >= 0 && c != opt.first_line) continue;
      if (stats.weyl_reduced) {
        if (chosen.empty()) {
          if (orbit_min[c] != c) continue;  // first index must be orbit-least
        } else if (orbit_min[c] < chosen[0]) {
          continue;  // some image would start below the current minimum
        }
      }
      ++stats.nodes;
      Vec v = lines[c];
      if (!ech.reduce(v)) continue;  // dependent on the chosen lines
      Echelon next = ech;
      next.insert(std::move(v));
      chosen.push_back(c);
      self(self, next, c + 1);
      chosen.pop_back();
    }
  };

  descend(descend, Echelon{}, 0);
  return stats;
}

// ---------------------------------------------------------------------------

DetExpansion det_expansion(const std::vector<Vec>& m, int n1, int n2) {
  const int n = static_cast<int>(m.size());
  if (n == 0) fail(Errc::DimensionMismatch, "empty matrix");
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != n) fail(Errc::DimensionMismatch, "matrix not square");
  if (n1 < 0 || n2 < 0 || n1 + n2 != n)
    fail(Errc::DimensionMismatch, "block sizes must be nonnegative and sum to the order");
  if (n > 10) fail(Errc::InputError, "ordered expansion limited to order 10");

  // Minors are computed once per row subset; each ordered sequence then
  // contributes its subset minor adjusted by the parity of its order.
  std::vector<std::vector<int>> subsets;
  std::vector<BigInt> minor1, minor2;
  if (n1 == 0) {
    subsets.push_back({});
  } else {
    std::vector<int> comb(n1);
    std::iota(comb.begin(), comb.end(), 0);
    do {
      subsets.push_back(comb);
    } while (next_combination(comb, n));
  }
  minor1.reserve(subsets.size());
  minor2.reserve(subsets.size());
  std::vector<int> subset_index(1 << n, -1);
  for (size_t s = 0; s < subsets.size(); ++s) {
    int mask = 0;
    for (int r : subsets[s]) mask |= 1 << r;
    subset_index[mask] = static_cast<int>(s);
    minor1.push_back(block_minor(m, subsets[s], 0, n1));
    minor2.push_back(block_minor(m, complement_of(subsets[s], n), n1, n2));
  }

  // The literal sum over all ordered splits (every permutation of the rows,
  // first n1 entries forming the leading block).
  BigInt ordered_sum = 0;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> head(n1), tail(n2);
  do {
    std::copy(perm.begin(), perm.begin() + n1, head.begin());
    std::copy(perm.begin() + n1, perm.end(), tail.begin());
    int mask = 0;
    for (int r : head) mask |= 1 << r;
    int s = subset_index[mask];
    BigInt term = minor1[s] * minor2[s];
    int sign = parity_sign(perm) * parity_sign(head) * parity_sign(tail);
    ordered_sum += sign > 0 ? term : -term;
  } while (std::next_permutation(perm.begin(), perm.end()));

  BigInt fact = 1;
  for (int i = 2; i <= n1; ++i) fact *= i;
  for (int i = 2; i <= n2; ++i) fact *= i;
  check(ordered_sum % fact == 0, "ordered split sum not divisible by the normalizer");

  DetExpansion out;
  out.value = ordered_sum / fact;
  for (size_t s = 0; s < subsets.size(); ++s) {
    DetTerm t;
    t.rows_first = subsets[s];
    std::vector<int> arranged = subsets[s];
    auto rest = complement_of(subsets[s], n);
    arranged.insert(arranged.end(), rest.begin(), rest.end());
    t.sign = parity_sign(arranged);
    t.minor_first = minor1[s];
    t.minor_second = minor2[s];
    out.terms.push_back(std::move(t));
  }
  BigInt recheck = 0;
  for (const auto& t : out.terms) {
    BigInt prod = t.minor_first * t.minor_second;
    recheck += t.sign > 0 ? prod : -prod;
  }
  check(recheck == out.value, "subset terms disagree with the normalized sum");
  return out;
}

SplitAssignment split_product_frame(const std::vector<Vec>& m, int n1) {
  const int n = static_cast<int>(m.size());
  if (n == 0) fail(Errc::DimensionMismatch, "empty matrix");
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != n) fail(Errc::DimensionMismatch, "matrix not square");
  if (n1 < 1 || n1 >= n) fail(Errc::DimensionMismatch, "block size out of range");

  std::vector<int> comb(n1);
  std::iota(comb.begin(), comb.end(), 0);
  do {
    BigInt m1 = block_minor(m, comb, 0, n1);
    if (m1 == 0) continue;
    auto rest = complement_of(comb, n);
    BigInt m2 = block_minor(m, rest, n1, n - n1);
    if (m2 == 0) continue;
    SplitAssignment out;
    out.rows_first = comb;
    out.rows_second = rest;
    out.minor_first = std::move(m1);
    out.minor_second = std::move(m2);
    return out;
  } while (next_combination(comb, n));
  fail(Errc::NotAFrame, "no row split with invertible blocks");
}

SplitAssignment split_product_frame(const catalog::DescPtr& d, const singular::Frame& f) {
  if (!d->is_product()) fail(Errc::InputError, "splitting requires a product space");
  singular::check_frame(d, f);
  const auto& sys = d->roots;
  std::vector<Vec> m(f.size(), Vec(sys.rank, 0));
  for (size_t r = 0; r < f.size(); ++r)
    for (int j = 0; j < sys.rank; ++j) m[r][j] = dot(f[r], sys.simple[j]);
  return split_product_frame(m, d->factors[0]->rank);
}

}  // namespace flatframe::incidence
