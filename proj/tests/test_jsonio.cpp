// Serialization: deterministic bytes, faithful round trips, input validation.

#include <doctest.h>

#include <functional>
#include <string>

#include "flatframe/catalog.hpp"
#include "flatframe/incidence.hpp"
#include "flatframe/jsonio.hpp"
#include "flatframe/matcher.hpp"
#include "flatframe/oracle.hpp"
#include "flatframe/singular.hpp"

using namespace flatframe;
using namespace flatframe::jsonio;
using catalog::lookup;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Internal;
}

}  // namespace

TEST_CASE("dump is 2-space indented with a trailing newline") {
  json j = {{"a", 1}};
  std::string s = dump(j);
  CHECK(s == "{\n  \"a\": 1\n}\n");
  CHECK(parse_text(s) == j);
  CHECK(code_of([] { parse_text("{not json"); }) == Errc::InputError);
  CHECK(code_of([] { parse_file("/no/such/file.json"); }) == Errc::InputError);
}

TEST_CASE("vectors round-trip") {
  Vec v{3, -1, 0, -2};
  CHECK(vec_from_json(vec_json(v)) == v);
  CHECK(code_of([] { vec_from_json(json::array({1, "x"})); }) == Errc::InputError);
  CHECK(code_of([] { vec_from_json(json::object()); }) == Errc::InputError);
}

TEST_CASE("descriptor serialization carries the catalog fields") {
  auto j = descriptor_json(lookup("SU(3,2)"));
  CHECK(j["id"] == "SU(3,2)");
  CHECK(j["family"] == "SU");
  CHECK(j["params"] == json::array({3, 2}));
  CHECK(j["rank"] == 2);
  CHECK(j["dim_x"] == 12);
  CHECK(j["min_qdim"] == 7);
  CHECK(j["roots"].is_array());
  CHECK(j["roots"].size() == 6);  // BC2: two short, two middle, two doubled
  for (const auto& r : j["roots"]) {
    CHECK(r.contains("coords"));
    CHECK(r.contains("mult"));
  }
  CHECK(j["simple_root_indices"].is_array());
  CHECK(j["factors"].is_array());
  CHECK(j["factors"].empty());

  auto p = descriptor_json(lookup("SO(2,2)"));
  CHECK(p["factors"].size() == 2);
  CHECK(p["factors"][0] == "SL(2,R)");
}

TEST_CASE("matrix JSON bytes are stable under a round trip") {
  auto d = lookup("Sp(6,R)");
  singular::Frame f;
  for (const auto& r : singular::maximally_singular_rays(d)) f.push_back(r.vector);
  auto a = incidence::incidence_matrix(d, f);
  auto j = matrix_json(a);
  std::string s1 = dump(j);
  auto b = matrix_from_json(parse_text(s1));
  std::string s2 = dump(matrix_json(b));
  CHECK(s1 == s2);
  CHECK(b.n_rows == a.n_rows);
  CHECK(b.n_cols == a.n_cols);
  CHECK(b.demands == a.demands);
  for (int i = 0; i < a.n_rows; ++i)
    for (int c = 0; c < a.n_cols; ++c) CHECK(a.get(i, c) == b.get(i, c));
}

TEST_CASE("matrix JSON without literal rows rebuilds from the catalog") {
  auto d = lookup("SL(3,C)");
  singular::Frame f;
  for (const auto& r : singular::maximally_singular_rays(d)) f.push_back(r.vector);
  auto direct = incidence::incidence_matrix(d, f, 3);

  json j;
  j["space"] = "SL(3,C)";
  j["frame"] = json::array();
  for (const auto& v : f) j["frame"].push_back(vec_json(v));
  auto rebuilt = matrix_from_json(j);
  CHECK(rebuilt.n_rows == direct.n_rows);
  CHECK(rebuilt.n_cols == direct.n_cols);
  for (int i = 0; i < direct.n_rows; ++i)
    for (int c = 0; c < direct.n_cols; ++c) CHECK(rebuilt.get(i, c) == direct.get(i, c));
}

TEST_CASE("matrix JSON validation") {
  auto check_code = [](const char* text, Errc want) {
    CHECK(code_of([&] { matrix_from_json(parse_text(text)); }) == want);
  };
  check_code(R"({"rows": [[0, 2, 1]]})", Errc::InputError);        // entries not 0/1
  check_code(R"({"rows": [[0, 1], [1]]})", Errc::InputError);       // ragged
  check_code(R"({"rows": []})", Errc::InputError);                  // no rows
  check_code(R"({"rows": [[1, 1, 1]], "demands": [0]})", Errc::InputError);
  check_code(R"({"rows": [[1, 1, 1]], "demands": [3, 3]})", Errc::InputError);
  check_code(R"({"frame": [[1, 0]]})", Errc::InputError);           // space missing
  check_code(R"x({"space": "Sp(4,R)"})x", Errc::InputError);        // frame missing

  // defaulted demands are 3 per row
  auto a = matrix_from_json(parse_text(R"({"rows": [[1, 1, 1, 1]]})"));
  CHECK(a.demands == std::vector<int>{3});
}

TEST_CASE("match serialization keeps the trace and failure") {
  auto d = lookup("Sp(4,R)");
  auto a = incidence::incidence_matrix(d, {{1, 0}, {1, 1}});
  auto res = matcher::staged_greedy(a, matcher::MatchMode::Faithful);
  auto j = match_json(res);
  CHECK(j["status"] == "failed");
  CHECK(j["trace"].size() == 1);
  CHECK(j["trace"][0]["stage"] == 1);
  CHECK(j["trace"][0]["row"] == 0);
  CHECK(j["failure"]["stage"] == 2);
  CHECK(j["failure"]["row"] == 1);
  CHECK(j["failure"]["remaining"] == 1);

  auto ok = matcher::staged_greedy(incidence::incidence_matrix(lookup("Sp(6,R)"), {
                                       {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}),
                                   matcher::MatchMode::Repair);
  auto jo = match_json(ok);
  CHECK(jo["status"] == "matched");
  CHECK(jo["failure"].is_null());
  CHECK(jo["assignment"].size() == 3);
}

TEST_CASE("certification serialization recurses through factors") {
  auto rep = oracle::certify_property_e(lookup("SO(2,2)"));
  auto j = certification_json(rep);
  CHECK(j["space"] == "SL(2,R)×SL(2,R)");  // the alias resolves to the product
  CHECK(j["status"] == "refuted");
  CHECK(j["method"] == "product");
  CHECK(j["factors"].size() == 2);
  CHECK(j["factors"][0]["status"] == "refuted");
  CHECK(j["counterexample"]["certificate"]["demand_sum"] == 3);
  CHECK(j["greedy"].contains("fraction"));

  auto cert = oracle::certify_property_e(lookup("G2(2)"));
  auto jc = certification_json(cert);
  CHECK(jc["status"] == "certified");
  CHECK(jc["counterexample"].is_null());
  CHECK(jc["frames_examined"] == 4);
}

TEST_CASE("split serialization uses decimal strings for the minors") {
  auto s = incidence::split_product_frame(
      {{1, 2, 0, 0}, {3, 4, 0, 0}, {0, 0, 1, 2}, {0, 0, 3, 5}}, 2);
  auto j = split_json(s);
  CHECK(j["rows_first"] == json::array({0, 1}));
  CHECK(j["rows_second"] == json::array({2, 3}));
  CHECK(j["minor_first"] == "-2");
  CHECK(j["minor_second"] == "-1");
}

TEST_CASE("the invariant table lists every rank-two space once") {
  auto j = txtable_json();
  REQUIRE(j.is_array());
  int g2 = 0;
  for (const auto& row : j) {
    CHECK(lookup(row["space"].get<std::string>())->rank == 2);
    if (row["space"] == "G2(2)") {
      ++g2;
      CHECK(row["t_x"] == 3);
      CHECK(row["degree_bound"] == 6);
      CHECK(row["exceptional"] == true);
    }
  }
  CHECK(g2 == 1);

  auto csv = txtable_csv();
  CHECK(csv.rfind("space,family,dim_x,min_qdim,t_x,degree_bound,exceptional\n", 0) == 0);
  CHECK(csv.find("G2(2),G2,8,5,3,6,true") != std::string::npos);
  CHECK(csv.find("SL(3,R),SLR,5,2,3,6,true") != std::string::npos);
  CHECK(csv.find("SU(5,2),SU,20,11,9,11,false") != std::string::npos);
}

TEST_CASE("the catalog table is sorted and complete") {
  auto j = catalog_json();
  REQUIRE(j.is_array());
  CHECK(j.size() == catalog::all_entries().size());
  for (const auto& row : j) {
    auto d = lookup(row["id"].get<std::string>());
    CHECK(row["rank"] == d->rank);
    CHECK(row["dim_x"] == d->dim_x);
    CHECK(row["m"] == d->dim_x - d->rank);
    CHECK(row["min_qdim"] == d->recorded_min_qdim);
  }
  auto csv = catalog_csv();
  CHECK(csv.rfind("id,family,params,rank,dim_x,m,min_qdim\n", 0) == 0);
  CHECK(csv.find("G2(2),G2,2,2,8,6,5") != std::string::npos);
}
