#pragma once

// The staged greedy matching algorithm with its three completion modes, and
// the specialized two-phase algorithm for the SL(k,R) spaces built on the
// z-ray decomposition of frames.

#include <optional>
#include <string>
#include <vector>

#include "flatframe/catalog.hpp"
#include "flatframe/incidence.hpp"
#include "flatframe/singular.hpp"

namespace flatframe::matcher {

enum class MatchMode {
  Faithful,    // report the first starved stage and stop
  Repair,      // bounded exchange chains (at most 3 rows changed)
  Augmenting,  // unbounded alternating search; complete for feasibility
};
const char* mode_name(MatchMode m);

struct StageTrace {
  int stage = 0;                        // 1-based
  int row = 0;                          // row assigned at this stage
  std::vector<int> cols;                // columns it received, ascending
  std::vector<int> remaining_popcounts; // post-stage free popcounts of the
                                        // still-unassigned rows, ascending
};

struct MatchFailure {
  int stage = 0;
  int row = 0;
  int remaining = 0;  // free columns the starved row had left
};

struct MatchResult {
  std::string status;  // "matched" | "failed"
  std::vector<std::vector<int>> assignment;  // per row, ascending columns
  std::vector<StageTrace> trace;
  std::optional<MatchFailure> failure;
  std::vector<std::string> notes;

  bool matched() const { return status == "matched"; }
};

// One row per stage: the row with the fewest free columns (ties to the lower
// index) receives demand-many columns, scarcest-coverage first (ties to the
// lower column index). Starvation is handled per the mode.
// MalformedMatrix on inconsistent row widths or demands.
MatchResult staged_greedy(const incidence::IncidenceMatrix& a, MatchMode mode);

// ---------------------------------------------------------------------------
// z-ray decomposition for SL(k,R).

struct ZRowClass {
  bool pair = false;  // false: the row is a z ray; true: a z+z line
  int i = -1;         // z index (the lone index for singles)
  int j = -1;         // second z index for pairs
  int rep = -1;       // representative z index; distinct across all rows
};

struct ZDecomposition {
  std::vector<Vec> z;              // the k base rays, index order
  std::vector<ZRowClass> rows;     // one per frame vector
  std::vector<int> minor_columns;  // z indices of the nonsingular minor used
};

// The k = rank+1 base rays z_1..z_k of SL(k,R): all ones except a single
// entry 1-k, placed last for z_1 and first for z_k.
std::vector<Vec> z_rays(const catalog::DescPtr& d);

// Writes each vector of an independent family (not necessarily a full frame)
// as a z ray or a z+z line up to sign and scale; NotZExpressible if any
// vector is neither. Representatives come from a perfect matching inside the
// lexicographically first nonsingular square minor of the 0/1 coordinate
// matrix over the z rays; they are automatically pairwise distinct.
ZDecomposition z_decompose(const catalog::DescPtr& d, const singular::Frame& f);

// The two-phase algorithm for SL(n+1,R), n >= 5: phase 1 matches the z rows
// by the staged greedy rule, phase 2 matches each z+z row inside the column
// block of its representative z, phase 3 finishes the remaining rows with
// repair-mode staged greedy. Rows that are neither z nor z+z go to phase 3;
// if the frame has no z-expressible row at all the whole matrix falls back
// to augmenting search and the result is annotated.
MatchResult sl_two_phase(const catalog::DescPtr& d, const singular::Frame& f);

}  // namespace flatframe::matcher
