#pragma once

// JSON and CSV serialization: space descriptors, incidence matrices, match
// results, certification reports, and the rank-2 invariant table. All
// emitters are deterministic (ordered keys, fixed field order) so identical
// inputs produce identical bytes.

#include <string>

#include <json.hpp>

#include "flatframe/catalog.hpp"
#include "flatframe/common.hpp"
#include "flatframe/incidence.hpp"
#include "flatframe/matcher.hpp"
#include "flatframe/oracle.hpp"
#include "flatframe/singular.hpp"

namespace flatframe::jsonio {

using json = nlohmann::ordered_json;

// 2-space indent plus trailing newline; the canonical on-disk form.
std::string dump(const json& j);

// InputError on malformed JSON / unreadable file.
json parse_text(const std::string& text);
json parse_file(const std::string& path);

json vec_json(const Vec& v);
Vec vec_from_json(const json& j);

// {id, family, params, rank, dim_x, min_qdim, roots:[{coords, mult}],
//  simple_root_indices, aliases, factors}
json descriptor_json(const catalog::DescPtr& d);

// {vector, simple_index, q_dim}
json ray_json(const singular::SingularRay& r);

// {space, frame, rows, demands}; rows are 0/1 arrays.
json matrix_json(const incidence::IncidenceMatrix& a);

// Inverse of matrix_json. When "rows" is present they are taken literally
// (space/frame ride along as metadata); otherwise "space" and "frame" are
// required and the matrix is rebuilt from the catalog. InputError on any
// structural defect.
incidence::IncidenceMatrix matrix_from_json(const json& j);

// {status, assignment, trace, failure, notes}
json match_json(const matcher::MatchResult& r);

// {row_subset, neighborhood, neighborhood_size, demand_sum}
json certificate_json(const oracle::InfeasibilityCertificate& c);

// {space, status, method, frames_examined, up_to_weyl, greedy,
//  counterexample, factors, notes}; factors recurse.
json certification_json(const oracle::CertificationReport& r);

// {rows_first, rows_second, minor_first, minor_second}; minors in decimal.
json split_json(const incidence::SplitAssignment& s);

// Rank-2 invariant table, one row per rank-2 catalog entry, sorted by
// (family, params): space, family, dim_x, min_qdim, t_x, degree_bound,
// exceptional.
json txtable_json();
std::string txtable_csv();

// Catalog summary table sorted by (family, params):
// id, family, params, rank, dim_x, m, min_qdim.
json catalog_json();
std::string catalog_csv();

}  // namespace flatframe::jsonio
