// Exact-arithmetic primitives.

#include <doctest.h>

#include <random>

#include "flatframe/common.hpp"

using namespace flatframe;

namespace {

// Cofactor-expansion determinant as an independent cross-check.
BigInt brute_det(const std::vector<Vec>& m) {
  const size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt acc = 0;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<Vec> minor;
    for (size_t i = 1; i < n; ++i) {
      Vec row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(std::move(row));
    }
    BigInt term = BigInt(m[0][j]) * brute_det(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("primitive normal form") {
  CHECK(primitive({2, -4, 6}) == Vec{1, -2, 3});
  CHECK(primitive({-2, 4}) == Vec{1, -2});
  CHECK(primitive({0, -3, 9}) == Vec{0, 1, -3});
  CHECK(primitive({0, 0}) == Vec{0, 0});
  Vec v{-6, -9};
  reduce_keep_sign(v);
  CHECK(v == Vec{-2, -3});
}

TEST_CASE("gcd, dot and arithmetic helpers") {
  CHECK(vec_gcd({4, -6, 8}) == 2);
  CHECK(vec_gcd({0, 0}) == 0);
  CHECK(dot({1, 2, 3}, {4, -5, 6}) == 12);
  CHECK(is_zero({0, 0, 0}));
  CHECK(!is_zero({0, 1}));
  CHECK(add({1, 2}, {3, -4}) == Vec{4, -2});
  CHECK(sub({1, 2}, {3, -4}) == Vec{-2, 6});
  CHECK(scaled({1, -2}, -3) == Vec{-3, 6});
  CHECK(vec_str({1, 0, -1}) == "(1,0,-1)");
}

TEST_CASE("checked_narrow rejects overflow") {
  I128 big = I128(1) << 100;
  CHECK_THROWS_AS(checked_narrow(big), Error);
  CHECK(checked_narrow(I128(-7)) == -7);
}

TEST_CASE("exact determinant and rank on fixed matrices") {
  CHECK(exact_det({{1, 0}, {0, 1}}) == 1);
  CHECK(exact_det({{1, 2}, {3, 4}}) == -2);
  CHECK(exact_det({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}) == 24);
  CHECK(exact_rank({{1, 2}, {2, 4}}) == 1);
  CHECK(exact_rank({{1, 2}, {2, 5}}) == 2);
  CHECK(exact_rank({{1, 1, 1}, {0, 1, 1}, {1, 0, 0}}) == 2);
  CHECK(exact_rank(std::vector<Vec>{{0, 0}}) == 0);
}

TEST_CASE("exact determinant agrees with cofactor expansion on random input") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-5, 5), size(1, 5);
  for (int iter = 0; iter < 200; ++iter) {
    int n = size(rng);
    std::vector<Vec> m(n, Vec(n));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    CHECK(exact_det(m) == brute_det(m));
  }
}

TEST_CASE("rational vectors normalize and order") {
  RatVec a = ratvec_of({2, -4});
  CHECK(a.den == 1);
  RatVec b;
  b.num = {BigInt(4), BigInt(-8)};
  b.den = 2;
  b.normalize();
  CHECK(b.num[0] == 2);
  CHECK(b.num[1] == -4);
  CHECK(b.den == 1);
  CHECK(a == b);
  RatVec c = ratvec_of({1, 0});
  CHECK((c < a || a < c));
}

TEST_CASE("error carries its code") {
  try {
    fail(Errc::ZeroVector, "probe");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroVector);
    CHECK(std::string(e.what()).find("probe") != std::string::npos);
  }
}
