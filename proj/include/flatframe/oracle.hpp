#pragma once

// Exact feasibility via maximum flow with verifiable Hall certificates,
// match verification, and per-space certification of the three-per-row
// distinct-column property over all maximally singular frames.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatframe/catalog.hpp"
#include "flatframe/incidence.hpp"
#include "flatframe/matcher.hpp"
#include "flatframe/singular.hpp"

namespace flatframe::oracle {

struct InfeasibilityCertificate {
  std::vector<int> row_subset;    // Hall violator S, ascending
  std::vector<int> neighborhood;  // N(S): columns with a 1 in some row of S
  Int demand_sum = 0;             // Σ demands over S; strictly exceeds |N(S)|
};

struct FlowResult {
  bool feasible = false;
  matcher::MatchResult match;  // status "matched" when feasible
  std::optional<InfeasibilityCertificate> certificate;
};

// Maximum-flow decision: rows demand d_i distinct columns from their
// supports, columns serve once. Complete; returns either an assignment or a
// Hall violator extracted from the minimum cut. MalformedMatrix on
// structural defects.
FlowResult feasible_matching(const incidence::IncidenceMatrix& a);

// True iff the assignment's columns are globally distinct, lie in their
// rows' supports and meet every demand exactly.
bool verify_match(const incidence::IncidenceMatrix& a, const matcher::MatchResult& r);

// True iff the certificate recounts against the matrix: the recorded
// neighborhood is exactly the union support of the rows and is smaller than
// the demand sum.
bool verify_certificate(const incidence::IncidenceMatrix& a,
                        const InfeasibilityCertificate& c);

struct GreedyAgreement {
  std::uint64_t feasible_frames = 0;    // flow-feasible frames examined
  std::uint64_t repair_matched = 0;     // matched by repair-mode greedy
  std::uint64_t augmenting_matched = 0; // repair shortfalls recovered exactly
  double fraction() const {
    return feasible_frames == 0
               ? 1.0
               : static_cast<double>(repair_matched) / static_cast<double>(feasible_frames);
  }
};

struct Counterexample {
  singular::Frame frame;
  std::vector<int> line_indices;  // into the sorted singular-line list, if any
  InfeasibilityCertificate certificate;
};

struct CertificationReport {
  std::string space_id;
  std::string status;  // "certified" | "refuted" | "budget_exhausted"
  std::string method;  // "counting" | "rank_one" | "exhaustive" | "product" |
                       // "weak_triples" | "all_regular"
  std::uint64_t frames_examined = 0;
  bool up_to_weyl = false;
  std::optional<Counterexample> counterexample;  // present whenever refuted
  GreedyAgreement greedy;
  std::vector<CertificationReport> factors;  // product certification only
  std::vector<std::string> notes;
};

struct CertifyOptions {
  std::uint64_t budget = 0;  // max frames examined (0: unlimited)
  bool up_to_weyl = true;
  int workers = 1;
  bool greedy_stats = true;  // run repair greedy on every feasible frame
  bool force_exhaustive = false;  // skip the counting/rank-one fast paths
};

// Certifies or refutes the property that every maximally singular frame's
// matrix admits 3 ones per row in pairwise distinct columns. Fast paths:
// counting refutation when dim_x < 4*rank; rank-1 spaces certified iff
// dim_x >= 4; products certified factor-wise with the split recorded.
// Otherwise exhaustive enumeration (rank <= 6) up to Weyl symmetry, stopping
// at the first infeasible frame.
CertificationReport certify_property_e(const catalog::DescPtr& d,
                                       const CertifyOptions& opt = {});

enum class WeakProfile {
  OneRegularRestThree,  // one regular row at demand 2, the rest at demand 3
  AllRegular,           // every row regular at demand 2
};

// Weak matching. For SL(5,R) with the one-regular profile: sweeps every
// independent triple of maximally singular lines, requiring a 3-per-row
// matching on at least 9 nonzero columns; dimension-count side conditions
// for the regular row are reported in the notes. All-regular profiles
// reduce to the column count m >= Σ demands. UnsupportedProfile otherwise.
CertificationReport certify_weak_matching(const catalog::DescPtr& d, WeakProfile profile,
                                          const CertifyOptions& opt = {});

}  // namespace flatframe::oracle
