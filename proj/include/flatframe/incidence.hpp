#pragma once

// Incidence matrices of frames: one row per frame vector, one 0/1 column per
// multiplicity copy of a positive root, bit set iff the root does not vanish
// on the vector. Also: enumeration of maximally singular frames (optionally
// up to Weyl symmetry), splitting of product frames, and the two-block
// determinant expansion backing the splitting construction.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatframe/catalog.hpp"
#include "flatframe/common.hpp"
#include "flatframe/singular.hpp"

namespace flatframe::incidence {

// Column j corresponds to copy `copy_index` of positive root `root_index`;
// columns are grouped by root in canonical root order.
struct ColumnLabel {
  int root_index = 0;
  int copy_index = 0;
};

using BitRow = std::vector<std::uint64_t>;

int popcount(const BitRow& r);
bool get_bit(const BitRow& r, int j);
void set_bit(BitRow& r, int j);
int and_popcount(const BitRow& a, const BitRow& b);

struct IncidenceMatrix {
  std::string space_id;
  singular::Frame frame;           // row i is the incidence row of frame[i]
  int n_rows = 0;
  int n_cols = 0;                  // dim_x - rank of the space
  std::vector<int> demands;        // per-row demand, 3 unless overridden
  std::vector<BitRow> rows;        // n_rows bitsets of n_cols bits
  std::vector<ColumnLabel> columns;

  int row_popcount(int i) const { return popcount(rows[i]); }
  bool get(int i, int j) const { return get_bit(rows[i], j); }
};

// The incidence row of a single vector (must lie in the flat): block-constant
// over each root's multiplicity copies; its popcount equals dim Q_v.
BitRow row_vector(const catalog::DescPtr& d, const Vec& v);

// Builds the matrix for a frame; validates the frame, checks that no column
// is identically zero and that pairwise row intersections agree with
// dim(Q_v ∩ Q_w). `demand` fills `demands` uniformly.
IncidenceMatrix incidence_matrix(const catalog::DescPtr& d, const singular::Frame& f,
                                 int demand = 3);

// ---------------------------------------------------------------------------
// Frame enumeration.

struct EnumOptions {
  int subset_size = -1;      // -1: full frames (rank-many lines)
  bool up_to_weyl = true;    // emit one representative per Weyl orbit
  std::uint64_t budget = 0;  // 0: unlimited; max subsets emitted (frames examined)
  std::size_t group_cap = 200000;  // Weyl-closure cap for the line action
  int first_line = -1;       // restrict the least chosen line (worker split)
  const LineGroup* group = nullptr;  // reuse a precomputed line action
};

struct EnumStats {
  std::uint64_t nodes = 0;     // search-tree nodes visited
  std::uint64_t emitted = 0;   // subsets handed to the callback
  bool complete = true;        // false iff the budget stopped the search
  bool weyl_reduced = false;   // quotient actually applied
  std::size_t line_count = 0;
};

// Streams every independent `subset_size`-subset of the maximally singular
// lines (as sorted indices into `lines`, the sorted line list) through
// `emit`; emit returning false aborts the search (complete stays true only
// for an exhausted search). With up_to_weyl, exactly one representative per
// orbit is emitted: the lexicographically least sorted index tuple. Falls
// back to the full enumeration if the Weyl closure exceeds group_cap.
EnumStats enumerate_singular_frames(const catalog::DescPtr& d,
                                    const std::vector<Vec>& lines,
                                    const std::function<bool(const std::vector<int>&)>& emit,
                                    const EnumOptions& opt = {});

// ---------------------------------------------------------------------------
// Two-block determinant expansion and product-frame splitting.

struct DetTerm {
  std::vector<int> rows_first;   // ascending row indices of the first block
  int sign = 1;                  // sign of the induced row permutation
  BigInt minor_first;            // det of rows_first on columns [0, n1)
  BigInt minor_second;           // det of the complement on columns [n1, n)
};

struct DetExpansion {
  BigInt value;                 // equals the exact determinant
  std::vector<DetTerm> terms;   // one per n1-subset, subsets in lex order
};

// det(M) as the normalized sum over ordered row splits of signed products of
// the two block minors; the raw ordered sum is divided by n1!*n2! (exactly).
// DimensionMismatch unless M is square with n1 + n2 rows.
DetExpansion det_expansion(const std::vector<Vec>& m, int n1, int n2);

struct SplitAssignment {
  std::vector<int> rows_first;   // ascending; |rows_first| == n1
  std::vector<int> rows_second;  // the complement, ascending
  BigInt minor_first;            // nonzero by construction
  BigInt minor_second;
};

// First n1-subset of rows (lex order) whose leading block minor and whose
// complementary trailing block minor are both nonzero. Such a split exists
// for every invertible matrix. NotAFrame if none exists.
SplitAssignment split_product_frame(const std::vector<Vec>& m, int n1);

// Splits a frame of a two-or-more-factor product space by pairing frame
// vectors against the simple roots (factor blocks of columns); rows_first
// carries the frame indices assigned to the first factor.
SplitAssignment split_product_frame(const catalog::DescPtr& d, const singular::Frame& f);

}  // namespace flatframe::incidence
