#pragma once

// The space catalog: symmetric spaces of noncompact type, addressed by a
// small id grammar, each carrying its restricted root system with
// multiplicities and a recorded minimal singular dimension that is
// revalidated against the root data on construction.
//
// Id grammar:   FAMILY(arg,...)  joined by '×' (ASCII 'x' accepted) for
// products; "H^n" names real hyperbolic space. Isogenous low-rank
// coincidences resolve to one canonical entry (e.g. SO(3,3) -> SL(4,R)),
// so every space has exactly one descriptor.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "flatframe/common.hpp"
#include "flatframe/root_system.hpp"

namespace flatframe::catalog {

struct SpaceDescriptor;
using DescPtr = std::shared_ptr<const SpaceDescriptor>;

struct SpaceDescriptor {
  std::string id;       // canonical id, e.g. "SU(3,2)"
  std::string family;   // "SLR","SLC","SLH","SU","SO","SOC","SOstar","SpR","SpC","SpH","G2","F4","E6","E7","E8"
  std::vector<Int> params;
  int rank = 0;
  Int dim_x = 0;                // rank + total root multiplicity
  Int recorded_min_qdim = 0;    // validated against the root system on build
  RestrictedRootSystem roots;
  std::vector<std::string> aliases;  // other ids resolving to this entry
  std::vector<DescPtr> factors;      // nonempty exactly for products

  bool is_product() const { return !factors.empty(); }
};

// Resolve an id to its canonical descriptor (cached). Errors:
//   UnknownSpace       - unparseable id or unknown family name
//   UnsupportedParams  - params outside the supported range, or a space
//                        that is not of noncompact type (compact/abelian)
//   InconsistentCatalog- recorded data contradicts the root system
DescPtr lookup(const std::string& id);

// Every canonical non-product entry, in curated order.
std::vector<DescPtr> all_entries();

// Positive roots with their multiplicities, canonical order.
const std::vector<RestrictedRoot>& positive_roots(const DescPtr& d);

// tag -> (number of positive roots, multiplicity each)
std::map<RootTag, std::pair<int, int>> multiplicity_table(const DescPtr& d);

// Weyl orbit of an arbitrary vector (no sign identification).
std::vector<RatVec> weyl_orbit(const DescPtr& d, const RatVec& v, size_t budget);

}  // namespace flatframe::catalog
