#include "flatframe/matcher.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <map>
#include <numeric>
#include <set>

namespace flatframe::matcher {

using incidence::BitRow;

const char* mode_name(MatchMode m) {
  switch (m) {
    case MatchMode::Faithful: return "faithful";
    case MatchMode::Repair: return "repair";
    case MatchMode::Augmenting: return "augmenting";
  }
  return "?";
}

namespace {

constexpr int kRepairDonors = 2;  // starving row + two donors = 3 rows changed

std::vector<int> bits_of(const BitRow& r, int n_cols) {
  std::vector<int> out;
  for (int j = 0; j < n_cols; ++j)
    if (incidence::get_bit(r, j)) out.push_back(j);
  return out;
}

BitRow and_rows(const BitRow& a, const BitRow& b) {
  BitRow out(a.size());
  for (size_t w = 0; w < a.size(); ++w) out[w] = a[w] & b[w];
  return out;
}

// Runs the staged selection over (subsets of) the rows of one matrix,
// keeping cross-phase state: consumed columns, per-row pools, owners.
class StageEngine {
 public:
  StageEngine(const incidence::IncidenceMatrix& a, MatchMode mode) : a_(a), mode_(mode) {
    if (a.n_rows <= 0 || static_cast<int>(a.rows.size()) != a.n_rows)
      fail(Errc::MalformedMatrix, "matrix has no rows");
    if (static_cast<int>(a.demands.size()) != a.n_rows)
      fail(Errc::MalformedMatrix, "demand count differs from row count");
    words_ = (static_cast<size_t>(std::max(a.n_cols, 1)) + 63) / 64;
    for (const auto& r : a.rows)
      if (r.size() != words_) fail(Errc::MalformedMatrix, "row length mismatch");
    for (int d : a.demands)
      if (d <= 0) fail(Errc::MalformedMatrix, "demands must be positive");
    used_.assign(words_, 0);
    col_owner_.assign(a.n_cols, -1);
    assign_.resize(a.n_rows);
    done_.assign(a.n_rows, 0);
    pools_ = a.rows;
  }

  // Restricts the column pool of one row (kept intersected with its support).
  void restrict_pool(int row, const BitRow& mask) {
    pools_[row] = and_rows(a_.rows[row], mask);
  }

  // Stages over `subset` until each of its rows is filled; false on terminal
  // starvation (failure_ describes the starved stage).
  bool run(const std::vector<int>& subset) {
    for (;;) {
      int pick = -1, best = INT_MAX;
      for (int i : subset) {
        if (done_[i]) continue;
        int f = free_count(i);
        if (f < best) best = f, pick = i;
      }
      if (pick < 0) return true;
      ++stage_;
      if (!assign_row(pick, best)) return false;
    }
  }

  MatchResult result(bool ok) const {
    MatchResult r;
    r.status = ok ? "matched" : "failed";
    r.assignment = assign_;
    for (auto& row : r.assignment) std::sort(row.begin(), row.end());
    r.trace = trace_;
    r.failure = failure_;
    if (ok) {
      std::set<int> seen;
      for (int i = 0; i < a_.n_rows; ++i) {
        check(static_cast<int>(r.assignment[i].size()) == a_.demands[i],
              "matched result misses a demand");
        for (int c : r.assignment[i]) {
          check(a_.get(i, c), "assigned column outside the row support");
          check(seen.insert(c).second, "column assigned twice");
        }
      }
    }
    return r;
  }

 private:
  int free_count(int i) const {
    int c = 0;
    for (size_t w = 0; w < words_; ++w) c += std::popcount(pools_[i][w] & ~used_[w]);
    return c;
  }

  // Coverage of a column among the unassigned rows other than `self`.
  int coverage(int col, int self) const {
    int c = 0;
    for (int j = 0; j < a_.n_rows; ++j)
      if (j != self && !done_[j] && a_.get(j, col)) ++c;
    return c;
  }

  void take(int row, int col) {
    incidence::set_bit(used_, col);
    col_owner_[col] = row;
    assign_[row].push_back(col);
  }

  bool assign_row(int i, int n_free) {
    const int d = a_.demands[i];
    auto free = bits_of(and_not_used(pools_[i]), a_.n_cols);
    // private columns first, then scarce ones; ties to the lower index
    std::stable_sort(free.begin(), free.end(),
                     [&](int x, int y) { return coverage(x, i) < coverage(y, i); });
    int grab = std::min<int>(d, static_cast<int>(free.size()));
    for (int k = 0; k < grab; ++k) take(i, free[k]);
    bool ok = true;
    if (grab < d) {
      if (mode_ == MatchMode::Faithful) {
        ok = false;
      } else {
        int donors = mode_ == MatchMode::Repair ? kRepairDonors : INT_MAX;
        for (int k = grab; k < d && ok; ++k) {
          BitRow vis_cols(words_, 0);
          std::vector<char> vis_rows(a_.n_rows, 0);
          ok = chain(i, donors, vis_cols, vis_rows);
        }
      }
    }
    if (!ok) {
      failure_ = MatchFailure{stage_, i, n_free};
      return false;
    }
    done_[i] = 1;
    StageTrace t;
    t.stage = stage_;
    t.row = i;
    t.cols = assign_[i];
    std::sort(t.cols.begin(), t.cols.end());
    for (int j = 0; j < a_.n_rows; ++j)
      if (!done_[j]) t.remaining_popcounts.push_back(remaining_popcount(j));
    std::sort(t.remaining_popcounts.begin(), t.remaining_popcounts.end());
    trace_.push_back(std::move(t));
    return true;
  }

  // Remaining 1s of the full row (pools restrict choices, not accounting).
  int remaining_popcount(int j) const {
    int c = 0;
    for (size_t w = 0; w < words_; ++w) c += std::popcount(a_.rows[j][w] & ~used_[w]);
    return c;
  }

  BitRow and_not_used(const BitRow& r) const {
    BitRow out(words_);
    for (size_t w = 0; w < words_; ++w) out[w] = r[w] & ~used_[w];
    return out;
  }

  // Alternating exchange: give `row` one more column, displacing at most
  // `donors` earlier owners, each of which must re-cover from its own pool.
  bool chain(int row, int donors, BitRow& vis_cols, std::vector<char>& vis_rows) {
    vis_rows[row] = 1;
    for (int c : bits_of(pools_[row], a_.n_cols)) {
      if (incidence::get_bit(vis_cols, c) || incidence::get_bit(used_, c)) continue;
      take(row, c);
      return true;
    }
    if (donors <= 0) return false;
    for (int c : bits_of(pools_[row], a_.n_cols)) {
      if (incidence::get_bit(vis_cols, c)) continue;
      int owner = col_owner_[c];
      if (owner < 0 || owner == row || vis_rows[owner]) continue;
      incidence::set_bit(vis_cols, c);
      if (chain(owner, donors - 1, vis_cols, vis_rows)) {
        auto& oa = assign_[owner];
        oa.erase(std::find(oa.begin(), oa.end(), c));
        col_owner_[c] = row;
        assign_[row].push_back(c);
        return true;
      }
    }
    return false;
  }

  const incidence::IncidenceMatrix& a_;
  MatchMode mode_;
  size_t words_ = 0;
  BitRow used_;
  std::vector<int> col_owner_;
  std::vector<std::vector<int>> assign_;
  std::vector<char> done_;
  std::vector<BitRow> pools_;
  std::vector<StageTrace> trace_;
  std::optional<MatchFailure> failure_;
  int stage_ = 0;
};

}  // namespace

MatchResult staged_greedy(const incidence::IncidenceMatrix& a, MatchMode mode) {
  StageEngine e(a, mode);
  std::vector<int> all(a.n_rows);
  std::iota(all.begin(), all.end(), 0);
  return e.result(e.run(all));
}

// ---------------------------------------------------------------------------

std::vector<Vec> z_rays(const catalog::DescPtr& d) {
  if (d->family != "SLR") fail(Errc::UnsupportedParams, "z rays exist for SL(k,R) only");
  int k = d->rank + 1;
  std::vector<Vec> z;
  for (int i = 1; i <= k; ++i) {
    Vec v(k, 1);
    v[k - i] = 1 - k;  // position k+1-i, 1-based
    z.push_back(std::move(v));
  }
  return z;
}

ZDecomposition z_decompose(const catalog::DescPtr& d, const singular::Frame& f) {
  auto z = z_rays(d);  // validates the family
  const int k = d->rank + 1;
  const int p = static_cast<int>(f.size());
  if (p == 0) fail(Errc::NotAFrame, "empty vector family");
  for (const auto& v : f) {
    if (static_cast<int>(v.size()) != k)
      fail(Errc::DimensionMismatch, "vector size does not match the space");
    if (is_zero(v)) fail(Errc::ZeroVector, "zero vector in the family");
    if (!singular::in_flat(d, v)) fail(Errc::InputError, "vector outside the flat");
  }
  if (exact_rank(f) != p) fail(Errc::NotAFrame, "vectors are dependent");

  std::map<Vec, int> z_index;
  for (int i = 0; i < k; ++i) z_index[primitive(z[i])] = i;
  std::map<Vec, std::pair<int, int>> zz_index;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) zz_index[primitive(add(z[i], z[j]))] = {i, j};

  ZDecomposition out;
  out.z = z;
  std::vector<Vec> coord;  // rows over the z rays: e_i or e_i + e_j
  for (const auto& v : f) {
    Vec pv = primitive(v);
    ZRowClass row;
    if (auto it = z_index.find(pv); it != z_index.end()) {
      row.pair = false;
      row.i = it->second;
    } else if (auto it2 = zz_index.find(pv); it2 != zz_index.end()) {
      row.pair = true;
      row.i = it2->second.first;
      row.j = it2->second.second;
    } else {
      fail(Errc::NotZExpressible,
           "vector " + vec_str(v) + " is neither a z ray nor a sum of two z rays");
    }
    Vec c(k, 0);
    c[row.i] = 1;
    if (row.pair) c[row.j] = 1;
    coord.push_back(std::move(c));
    out.rows.push_back(row);
  }

  // Lexicographically first p columns with a nonsingular square minor.
  std::vector<int> comb(p);
  std::iota(comb.begin(), comb.end(), 0);
  std::vector<int> minor_cols;
  for (;;) {
    std::vector<Vec> sub;
    for (int r = 0; r < p; ++r) {
      Vec s(p);
      for (int c = 0; c < p; ++c) s[c] = coord[r][comb[c]];
      sub.push_back(std::move(s));
    }
    if (exact_det(sub) != 0) {
      minor_cols = comb;
      break;
    }
    int i = p - 1;
    while (i >= 0 && comb[i] == k - p + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
  }
  check(!minor_cols.empty(), "no nonsingular square minor over the z rays");
  out.minor_columns = minor_cols;

  // Perfect matching row -> column inside the minor gives the representatives.
  std::vector<int> col_of_row(p, -1), row_of_col(p, -1);
  auto augment = [&](auto&& self, int r, std::vector<char>& vis) -> bool {
    for (int c = 0; c < p; ++c) {
      if (vis[c] || coord[r][minor_cols[c]] == 0) continue;
      vis[c] = 1;
      if (row_of_col[c] < 0 || self(self, row_of_col[c], vis)) {
        row_of_col[c] = r;
        col_of_row[r] = c;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < p; ++r) {
    std::vector<char> vis(p, 0);
    check(augment(augment, r, vis), "representative matching must exist");
  }
  for (int r = 0; r < p; ++r) {
    out.rows[r].rep = minor_cols[col_of_row[r]];
    if (!out.rows[r].pair)
      check(out.rows[r].rep == out.rows[r].i, "single row must represent its own ray");
  }
  return out;
}

MatchResult sl_two_phase(const catalog::DescPtr& d, const singular::Frame& f) {
  if (d->family != "SLR")
    fail(Errc::UnsupportedParams, "two-phase matching is defined for SL(k,R)");
  const int n = d->rank;
  if (n < 5) fail(Errc::UnsupportedParams, "two-phase matching needs rank >= 5");
  auto a = incidence::incidence_matrix(d, f);

  std::set<Vec> singular_set;
  for (const auto& l : singular_lines(d->roots)) singular_set.insert(l);
  auto z = z_rays(d);
  std::set<Vec> z_set, zz_set;
  for (const auto& v : z) z_set.insert(primitive(v));
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) zz_set.insert(primitive(add(z[i], z[j])));

  std::vector<int> phase1, phase2, phase3;
  for (int r = 0; r < a.n_rows; ++r) {
    Vec pv = primitive(f[r]);
    if (z_set.count(pv)) {
      phase1.push_back(r);
    } else if (zz_set.count(pv)) {
      phase2.push_back(r);
    } else if (singular_set.count(pv)) {
      phase3.push_back(r);
    } else {
      auto res = staged_greedy(a, MatchMode::Augmenting);
      res.notes.push_back("hypothesis failed: vector " + vec_str(f[r]) +
                          " is not maximally singular; matched by exhaustive search");
      return res;
    }
  }

  singular::Frame zf;
  std::vector<int> z_rows = phase1;
  z_rows.insert(z_rows.end(), phase2.begin(), phase2.end());
  std::sort(z_rows.begin(), z_rows.end());
  for (int r : z_rows) zf.push_back(f[r]);

  StageEngine eng(a, MatchMode::Repair);
  std::vector<std::string> notes;
  if (!zf.empty()) {
    ZDecomposition zd;
    try {
      zd = z_decompose(d, zf);
    } catch (const Error& e) {
      if (e.code() != Errc::NotZExpressible) throw;
      auto res = staged_greedy(a, MatchMode::Augmenting);
      res.notes.push_back(std::string("hypothesis failed: ") + e.what() +
                          "; matched by exhaustive search");
      return res;
    }
    for (size_t t = 0; t < z_rows.size(); ++t) {
      if (!zd.rows[t].pair) continue;
      // A z+z row draws its columns from the block of its representative ray.
      eng.restrict_pool(z_rows[t], incidence::row_vector(d, zd.rows[t].rep >= 0
                                                                ? z[zd.rows[t].rep]
                                                                : z[zd.rows[t].i]));
      notes.push_back("row " + std::to_string(z_rows[t]) + " restricted to the block of z" +
                      std::to_string(zd.rows[t].rep + 1));
    }
  }

  bool ok = eng.run(phase1) && eng.run(phase2) && eng.run(phase3);
  auto res = eng.result(ok);
  res.notes.insert(res.notes.end(), notes.begin(), notes.end());
  res.notes.push_back("phases: " + std::to_string(phase1.size()) + " ray rows, " +
                      std::to_string(phase2.size()) + " pair rows, " +
                      std::to_string(phase3.size()) + " remaining rows");
  return res;
}

}  // namespace flatframe::matcher
