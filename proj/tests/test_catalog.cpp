// The space catalog: ids, aliases, multiplicities, consistency, orbits.

#include <doctest.h>

#include <set>

#include "flatframe/catalog.hpp"
#include "flatframe/singular.hpp"

using namespace flatframe;
using catalog::lookup;

namespace {

Errc code_of(const std::string& id) {
  try {
    lookup(id);
    return Errc::Internal;  // unexpected success marker
  } catch (const Error& e) {
    return e.code();
  }
}

}  // namespace

TEST_CASE("canonical entries expose their own ids") {
  for (const char* id : {"SL(6,R)", "SL(3,C)", "SL(3,H)", "SU(3,2)", "SO(5,4)",
                         "SO*(12)", "Sp(6,R)", "Sp(4,C)", "Sp(2,2)", "G2(2)",
                         "F4(-20)", "E6(-26)", "E7(7)", "E8(C)"}) {
    auto d = lookup(id);
    CHECK(d->id == id);
    CHECK(!d->is_product());
  }
}

TEST_CASE("isogenous low-rank coincidences resolve to one canonical entry") {
  CHECK(lookup("SU(1,1)")->id == "SL(2,R)");
  CHECK(lookup("SO(2,1)")->id == "SL(2,R)");
  CHECK(lookup("Sp(2,R)")->id == "SL(2,R)");
  CHECK(lookup("H^2")->id == "SL(2,R)");
  CHECK(lookup("SO(3,1)")->id == "SL(2,C)");
  CHECK(lookup("Sp(2,C)")->id == "SL(2,C)");
  CHECK(lookup("SO(3,C)")->id == "SL(2,C)");
  CHECK(lookup("H^3")->id == "SL(2,C)");
  CHECK(lookup("SO(5,1)")->id == "SL(2,H)");
  CHECK(lookup("H^5")->id == "SL(2,H)");
  CHECK(lookup("H^7")->id == "SO(7,1)");
  CHECK(lookup("SO(3,2)")->id == "Sp(4,R)");
  CHECK(lookup("SO(3,3)")->id == "SL(4,R)");
  CHECK(lookup("SU(2,2)")->id == "SO(4,2)");
  CHECK(lookup("Sp(1,1)")->id == "SO(4,1)");
  CHECK(lookup("SO(5,C)")->id == "Sp(4,C)");
  CHECK(lookup("SO(6,C)")->id == "SL(4,C)");
  CHECK(lookup("SO*(6)")->id == "SU(3,1)");
  CHECK(lookup("SO*(8)")->id == "SO(6,2)");
  // alias lists record the resolution
  auto d = lookup("SL(2,R)");
  std::set<std::string> al(d->aliases.begin(), d->aliases.end());
  CHECK(al.count("SU(1,1)"));
  CHECK(al.count("Sp(2,R)"));
}

TEST_CASE("products split on the top-level cross") {
  auto d = lookup("SO(4,1)×SO(4,1)");
  REQUIRE(d->is_product());
  CHECK(d->factors.size() == 2);
  CHECK(d->factors[0]->id == "SO(4,1)");
  CHECK(d->rank == 2);
  CHECK(d->dim_x == 8);
  // ASCII x works too
  CHECK(lookup("SO(4,1)xSO(4,1)")->id == d->id);
  // SO(2,2) is isogenous to a product
  auto s = lookup("SO(2,2)");
  REQUIRE(s->is_product());
  CHECK(s->factors[0]->id == "SL(2,R)");
  CHECK(s->factors[1]->id == "SL(2,R)");
}

TEST_CASE("unsupported and unknown ids fail with the right codes") {
  CHECK(code_of("nonsense") == Errc::UnknownSpace);
  CHECK(code_of("QQ(3)") == Errc::UnknownSpace);
  CHECK(code_of("SL(1,R)") == Errc::UnsupportedParams);
  CHECK(code_of("SO(1,1)") == Errc::UnsupportedParams);
  CHECK(code_of("SO*(4)") == Errc::UnsupportedParams);
  CHECK(code_of("SU(2,3)") == Errc::UnsupportedParams);  // m >= n convention
  CHECK(code_of("E6(99)") == Errc::UnsupportedParams);
}

TEST_CASE("lookup caches") {
  CHECK(lookup("F4(4)").get() == lookup("F4(4)").get());
}

TEST_CASE("every catalog entry is internally consistent") {
  auto entries = catalog::all_entries();
  CHECK(entries.size() >= 80);
  std::set<std::string> ids;
  for (const auto& d : entries) {
    CAPTURE(d->id);
    CHECK(ids.insert(d->id).second);  // no duplicates
    CHECK(d->rank == d->roots.rank);
    CHECK(d->rank + d->roots.sum_mult() == d->dim_x);
    // recorded minimum re-derives from the rays
    Int mn = -1;
    for (const auto& r : singular::maximally_singular_rays(d))
      if (mn < 0 || r.q_dim < mn) mn = r.q_dim;
    CHECK(mn == d->recorded_min_qdim);
    // multiplicity constant on tags
    (void)catalog::multiplicity_table(d);
  }
}

TEST_CASE("multiplicity tables match the classical patterns") {
  auto t = catalog::multiplicity_table(lookup("SU(3,2)"));
  CHECK(t[RootTag::Middle] == std::pair{2, 2});
  CHECK(t[RootTag::Short] == std::pair{2, 2});
  CHECK(t[RootTag::Doubled] == std::pair{2, 1});

  t = catalog::multiplicity_table(lookup("SL(4,C)"));
  CHECK(t[RootTag::Middle] == std::pair{6, 2});  // uniform multiplicity 2

  t = catalog::multiplicity_table(lookup("G2(2)"));
  for (auto& [tag, cm] : t) CHECK(cm.second == 1);

  t = catalog::multiplicity_table(lookup("Sp(3,2)"));
  CHECK(t[RootTag::Middle] == std::pair{2, 4});
  CHECK(t[RootTag::Short] == std::pair{2, 4});
  CHECK(t[RootTag::Doubled] == std::pair{2, 3});

  t = catalog::multiplicity_table(lookup("F4(-20)"));
  CHECK(t[RootTag::Short] == std::pair{1, 8});
  CHECK(t[RootTag::Doubled] == std::pair{1, 7});

  t = catalog::multiplicity_table(lookup("E7(-25)"));
  CHECK(t[RootTag::Middle] == std::pair{6, 8});
  CHECK(t[RootTag::Long] == std::pair{3, 1});
}

TEST_CASE("headline dimensions") {
  CHECK(lookup("SL(6,R)")->dim_x == 20);
  CHECK(lookup("SL(3,C)")->dim_x == 8);
  CHECK(lookup("SL(3,H)")->dim_x == 14);
  CHECK(lookup("SU(3,2)")->dim_x == 12);
  CHECK(lookup("Sp(6,R)")->dim_x == 12);
  CHECK(lookup("SO(5,4)")->dim_x == 20);
  CHECK(lookup("G2(2)")->dim_x == 8);
  CHECK(lookup("F4(4)")->dim_x == 28);
  CHECK(lookup("E6(6)")->dim_x == 42);
  CHECK(lookup("E7(7)")->dim_x == 70);
  CHECK(lookup("E8(8)")->dim_x == 128);
  CHECK(lookup("E8(C)")->dim_x == 248);
  CHECK(lookup("Sp(2,2)")->dim_x == 16);
  CHECK(lookup("SO*(12)")->dim_x == 30);
}

TEST_CASE("weyl orbits of vectors") {
  auto c2 = lookup("Sp(4,R)");
  auto orb = catalog::weyl_orbit(c2, ratvec_of({1, 0}), 100);
  CHECK(orb.size() == 4);
  CHECK_THROWS_AS(catalog::weyl_orbit(c2, ratvec_of({0, 0}), 100), Error);
  auto a2 = lookup("SL(3,R)");
  CHECK(catalog::weyl_orbit(a2, ratvec_of({1, 1, -2}), 100).size() == 3);
  CHECK(catalog::weyl_orbit(a2, ratvec_of({1, 2, -3}), 100).size() == 6);
}
